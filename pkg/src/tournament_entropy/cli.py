"""Command-line interface: ``tournament-entropy <subcommand> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import random
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .core import (
    RotationalSymbol,
    Tournament,
    consecutive_rotational,
    quadratic_residue_tournament,
    rotational,
    score_sequence,
    transitive,
)
from .entropy import power_sums, renyi_exact, renyi_numeric
from .enumeration import conjecture_csv, conjecture_table, enumerate_regular, enumerate_tournaments
from .order import build_order, named_4_tournaments, named_5_tournaments, power_sum_csv, to_dot
from .reproduce import SUITES, checks_as_dicts, run_verify, table_counts, table_regular, table_t4, table_t5
from .spectral import char_poly, laplacian, normalized_spectrum
from .walks import (
    Digraph,
    WalkConfig,
    entropy_upper_bounds,
    von_neumann_eigen,
    von_neumann_series_result,
    von_neumann_walk,
)

TABLES = ("t4", "t5", "counts", "regular", "conjecture")


# --- input helpers -----------------------------------------------------------


def _parse_pairs(text: str, sep: str) -> list[tuple[int, int]]:
    pairs = []
    for item in filter(None, (x.strip() for x in text.split(","))):
        a, b = item.split(sep)
        pairs.append((int(a), int(b)))
    return pairs


def _read_tournaments(args: argparse.Namespace) -> list[Tournament]:
    if getattr(args, "tournament", None):
        return [Tournament.from_text(args.tournament)]
    if getattr(args, "file", None):
        lines = [ln.strip() for ln in Path(args.file).read_text().splitlines() if ln.strip()]
        return [Tournament.from_json(ln) if ln.startswith("{") else Tournament.from_text(ln) for ln in lines]
    if getattr(args, "family", None):
        return [_generate(args)]
    raise SystemExit("error: give --tournament, --file or --family")


def _generate(args: argparse.Namespace) -> Tournament:
    n = args.n
    if n is None:
        raise SystemExit("error: --n is required")
    fam = args.family
    if fam == "transitive":
        return transitive(n)
    if fam == "consecutive":
        return consecutive_rotational(n)
    if fam == "qr":
        return quadratic_residue_tournament(n)
    if fam == "rotational":
        if not args.symbol:
            raise SystemExit("error: --symbol is required for rotational tournaments")
        return rotational(RotationalSymbol(n, frozenset(int(x) for x in args.symbol.split(","))))
    if fam == "random":
        rng = random.Random(args.seed)
        return Tournament(n, rng.getrandbits(n * (n - 1) // 2) if n > 1 else 0)
    raise SystemExit(f"error: unknown family {fam}")


def _read_graph(args: argparse.Namespace):
    if args.arcs is not None or args.edges is not None:
        if args.n is None:
            raise SystemExit("error: --n is required with --arcs/--edges")
        if args.edges is not None:
            return Digraph.undirected(args.n, _parse_pairs(args.edges, "-"))
        return Digraph(args.n, frozenset(_parse_pairs(args.arcs, ">")))
    return Digraph.from_tournament(_read_tournaments(args)[0])


def _emit(args: argparse.Namespace, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _complex(z: complex) -> list[float]:
    return [z.real, z.imag]


# --- subcommands -------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    t = _generate(args)
    _emit(args, t.to_json() if args.format == "json" else t.to_text())
    return 0


def cmd_enum(args: argparse.Namespace) -> int:
    if args.regular:
        ckpt = Path(args.checkpoint) if args.checkpoint else None
        ts = list(enumerate_regular(args.n, long=args.long, shards=args.shards, checkpoint_dir=ckpt))
    else:
        ts = list(enumerate_tournaments(args.n, allow_large=args.long, shards=args.shards or 1))
    if args.count_only:
        text = str(len(ts))
    elif args.format == "json":
        text = "\n".join(t.to_json() for t in ts)
    elif args.format == "csv":
        lines = ["bits,scores,raw2,raw3,raw4"]
        for t in ts:
            ps = power_sums(t) if t.n >= 2 else None
            scores = " ".join(map(str, score_sequence(t).scores))
            lines.append(f"{t.to_text().split('=')[-1]},{scores},"
                         + (f"{ps.raw2},{ps.raw3},{ps.raw4}" if ps else ",,"))
        text = "\n".join(lines)
    else:
        text = "\n".join(t.to_text() for t in ts)
    _emit(args, text)
    print(f"{len(ts)} classes", file=sys.stderr)
    return 0


def cmd_entropy(args: argparse.Namespace) -> int:
    rows = []
    for t in _read_tournaments(args):
        row = {"tournament": t.to_text(), "alpha": args.alpha}
        if not args.exact:
            row["numeric"] = str(renyi_numeric(t, args.alpha))
        if float(args.alpha).is_integer() and args.alpha >= 2 and t.n >= 2:
            row["exact"] = str(renyi_exact(t, int(args.alpha)))
        elif args.exact:
            raise ValueError("--exact needs an integer alpha >= 2 and n >= 2")
        if args.raw and t.n >= 2:
            ps = power_sums(t)
            row.update(raw2=ps.raw2, raw3=ps.raw3, raw4=ps.raw4)
        rows.append(row)
    if args.format == "json":
        _emit(args, _dumps(rows))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        _emit(args, buf.getvalue())
    else:
        _emit(args, "\n".join(" ".join(f"{k}={v}" for k, v in r.items()) for r in rows))
    return 0


def cmd_spectrum(args: argparse.Namespace) -> int:
    t = _read_tournaments(args)[0]
    cp = char_poly(laplacian(t))
    spec = normalized_spectrum(t)
    obj = {
        "tournament": t.to_text(),
        "char_poly": [str(c) for c in cp.coeffs],
        "normalized_eigenvalues": [_complex(z) for z in spec.eigenvalues],
    }
    if args.format == "json":
        _emit(args, _dumps(obj))
    else:
        lines = [f"char_poly {' '.join(map(str, cp.coeffs))}"]
        lines += [f"{z.real:.15g} {z.imag:+.15g}i" for z in spec.eigenvalues]
        _emit(args, "\n".join(lines))
    return 0


def cmd_vn(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    bounds = entropy_upper_bounds(g)
    obj = {
        "method": args.method,
        "epsilon": args.epsilon,
        "degree_bound": bounds.degree_bound,
        "log_bound": bounds.log_bound,
        "is_acyclic": bounds.is_acyclic,
    }
    if args.method == "eigen":
        obj["estimate"] = von_neumann_eigen(g)
        obj["stderr"] = 0.0
    elif args.method == "series":
        res = von_neumann_series_result(g, args.epsilon)
        obj.update(estimate=res.value, stderr=0.0, terms=res.terms, tail_bound=res.tail_bound)
    else:
        est, err = von_neumann_walk(g, WalkConfig(trials=args.trials, seed=args.seed), args.epsilon)
        obj.update(estimate=est, stderr=err, trials=args.trials, seed=args.seed)
    if args.format == "json":
        _emit(args, _dumps(obj))
    else:
        _emit(args, "\n".join(f"{k} {obj[k]}" for k in sorted(obj)))
    return 0


def cmd_hasse(args: argparse.Namespace) -> int:
    if args.n == 4:
        named = named_4_tournaments()
    elif args.n == 5:
        named = named_5_tournaments()
    else:
        named = [(f"T{i}", t) for i, t in enumerate(enumerate_tournaments(args.n))]
    order = build_order([t for _, t in named], args.alpha, [lab for lab, _ in named])
    if args.format == "csv":
        _emit(args, power_sum_csv(named))
    else:
        _emit(args, to_dot(order, merge=not args.twins))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    checks = run_verify(args.suite, long=args.long)
    if args.format == "json":
        _emit(args, _dumps(checks_as_dicts(checks)))
    else:
        _emit(args, "\n".join(
            f"{'PASS' if c.passed else 'FAIL'} {c.suite}/{c.name} [{c.anchor}] {c.detail}".rstrip() for c in checks))
    return 0 if all(c.passed for c in checks) else 1


def cmd_tables(args: argparse.Namespace) -> int:
    if args.which == "t4":
        text = table_t4()
    elif args.which == "t5":
        text = table_t5()
    elif args.which == "counts":
        text = table_counts(args.n or 10)
    elif args.which == "regular":
        text = table_regular((3, 5, 7, 9, 11) if args.long else (3, 5, 7, 9))
    else:
        text = conjecture_csv(conjecture_table(args.n or 7, args.alpha or 6))
    _emit(args, text)
    return 0


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--tournament", help='inline tournament, e.g. "n=3 bits=1"')
    source.add_argument("--file", help="file of tournaments, one per line (text or JSON)")
    source.add_argument("--family", choices=("transitive", "consecutive", "qr", "rotational", "random"))
    source.add_argument("--n", type=int)
    source.add_argument("--symbol", help="comma-separated symbol for rotational tournaments")

    p = argparse.ArgumentParser(prog="tournament-entropy", description=__doc__)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", parents=[common], help="generate a tournament")
    s.add_argument("--family", required=True,
                   choices=("transitive", "consecutive", "qr", "rotational", "random"))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--symbol")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("enum", parents=[common], help="enumerate isomorphism classes")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--regular", action="store_true", help="regular tournaments only")
    s.add_argument("--long", action="store_true", help="allow long-running sizes")
    s.add_argument("--shards", type=int, help="parallel worker shards")
    s.add_argument("--checkpoint", help="directory for resumable shard checkpoints")
    s.add_argument("--count-only", action="store_true", help="print only the number of classes")
    s.add_argument("--format", choices=("text", "json", "csv"), default="text")
    s.set_defaults(func=cmd_enum)

    s = sub.add_parser("entropy", parents=[common, source], help="Renyi entropy of tournaments")
    s.add_argument("--alpha", type=float, default=2.0)
    s.add_argument("--exact", action="store_true", help="exact power-sum route only")
    s.add_argument("--raw", action="store_true", help="also print raw power sums")
    s.add_argument("--format", choices=("text", "json", "csv"), default="text")
    s.set_defaults(func=cmd_entropy)

    s = sub.add_parser("spectrum", parents=[common, source], help="characteristic polynomial and spectrum")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("vn", parents=[common, source], help="von Neumann entropy")
    s.add_argument("--arcs", help='digraph arcs, e.g. "0>1,1>2" (needs --n)')
    s.add_argument("--edges", help='undirected edges, e.g. "0-1,1-2" (needs --n)')
    s.add_argument("--method", choices=("eigen", "series", "walk"), default="series")
    s.add_argument("--epsilon", type=float, default=1e-7)
    s.add_argument("--trials", type=int, default=100_000)
    s.add_argument("--format", choices=("text", "json"), default="json")
    s.set_defaults(func=cmd_vn)

    s = sub.add_parser("hasse", parents=[common], help="Hasse diagram of an entropy order")
    s.add_argument("--n", type=int, default=5)
    s.add_argument("--alpha", type=int, choices=(2, 3, 4), default=2)
    s.add_argument("--twins", action="store_true", help="one node per tournament instead of merged ties")
    s.add_argument("--format", choices=("dot", "csv"), default="dot")
    s.set_defaults(func=cmd_hasse)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", choices=tuple(SUITES))
    s.add_argument("--long", action="store_true", help="include n=11 where relevant")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("tables", parents=[common], help="reproduce a table as CSV")
    s.add_argument("which", choices=TABLES)
    s.add_argument("--n", type=int, help="largest n (counts, conjecture)")
    s.add_argument("--alpha", type=int, help="largest alpha (conjecture)")
    s.add_argument("--long", action="store_true", help="include regular n=11")
    s.add_argument("--format", choices=("csv",), default="csv")
    s.set_defaults(func=cmd_tables)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    print(f"tournament-entropy {__version__} seed={args.seed} args={' '.join(argv)}", file=sys.stderr)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
