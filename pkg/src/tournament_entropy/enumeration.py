"""Isomorphism-free generation of tournaments, regular tournaments and score sequences."""

from __future__ import annotations

import json
import logging
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterator, Optional, Sequence

from .canon import canonical_labeling, certificate
from .core import ScoreSequence, Tournament, TournamentError

log = logging.getLogger(__name__)

GENERAL_CAP = 8
REGULAR_CAP = 11


class EnumerationLimitError(ValueError):
    pass


@dataclass(frozen=True)
class EnumerationBudget:
    max_n: int = GENERAL_CAP
    max_count: Optional[int] = None
    parallel_shards: int = 1

    def __post_init__(self) -> None:
        if self.max_n < 1:
            raise ValueError("max_n must be at least 1")
        if self.parallel_shards < 1:
            raise ValueError("parallel_shards must be positive")


# --- all tournaments -------------------------------------------------------


def _extend(parent_masks: Sequence[int]) -> dict[int, None]:
    """Canonical certificates of all one-vertex extensions of ``parent_masks``."""
    k = len(parent_masks)
    new_bit = 1 << k
    found: dict[int, None] = {}
    for pattern in range(1 << k):
        masks = [m if pattern >> i & 1 else m | new_bit for i, m in enumerate(parent_masks)]
        masks.append(pattern)
        found[canonical_labeling(masks)[1]] = None
    return found


def _masks_from_cert(n: int, cert: int) -> tuple[int, ...]:
    return Tournament(n, cert).out_masks


def _extend_shard(args: tuple[int, list[int]]) -> list[int]:
    n, certs = args
    out: dict[int, None] = {}
    for c in certs:
        out.update(_extend(_masks_from_cert(n - 1, c)))
    return list(out)


def _split(items: list, shards: int) -> list[list]:
    return [items[i::shards] for i in range(shards) if items[i::shards]]


@lru_cache(maxsize=None)
def _tournament_classes(n: int, shards: int = 1) -> tuple[int, ...]:
    if n == 1:
        return (0,)
    parents = list(_tournament_classes(n - 1, shards))
    if shards > 1 and len(parents) > shards:
        with ProcessPoolExecutor(max_workers=shards) as pool:
            parts = pool.map(_extend_shard, [(n, chunk) for chunk in _split(parents, shards)])
            certs = set().union(*map(set, parts))
    else:
        certs = set(_extend_shard((n, parents)))
    return tuple(sorted(certs))


def enumerate_tournaments(
    n: int, *, allow_large: bool = False, shards: int = 1
) -> Iterator[Tournament]:
    """One canonically labeled representative per isomorphism class, ordered by canonical form."""
    if n < 1:
        raise TournamentError("n must be positive")
    if n > GENERAL_CAP:
        if not allow_large:
            raise EnumerationLimitError(f"n={n} exceeds the cap of {GENERAL_CAP}; pass allow_large")
        warnings.warn(f"enumerating all {n}-tournaments is very slow", RuntimeWarning)
    for cert in _tournament_classes(n, max(1, shards)):
        yield Tournament(n, cert)


# --- regular tournaments ---------------------------------------------------
#
# A regular (2m+1)-tournament is split around a root vertex r into the out-set
# O = N+(r) and in-set I = N-(r), both of size m.  Given the two induced
# m-tournaments, the arcs between O and I form a 0/1 matrix whose row and
# column sums are forced by regularity.  Every regular tournament arises this
# way from each of its vertices; only roots whose (out-set class, in-set class)
# pair is lexicographically least are kept, and the rest is deduplicated by
# canonical certificate.


@lru_cache(maxsize=None)
def _class_table(m: int) -> tuple[tuple[int, ...], list[int]]:
    """Class reps of m-tournaments and a lookup from labeled arc bits to class index."""
    reps = _tournament_classes(m) if m <= GENERAL_CAP else None
    if reps is None:
        raise EnumerationLimitError("out-set tournaments too large")
    index = {c: i for i, c in enumerate(reps)}
    size = 1 << (m * (m - 1) // 2)
    table = [0] * size
    for bits in range(size):
        table[bits] = index[canonical_labeling(Tournament(m, bits).out_masks)[1]]
    return reps, table


def _bipartite_fills(rows: list[int], cols: list[int]) -> Iterator[list[tuple[int, ...]]]:
    """0/1 matrices with the given row and column sums, as lists of column tuples per row."""
    m_rows = len(rows)
    caps = list(cols)
    chosen: list[tuple[int, ...]] = []

    def rec(a: int) -> Iterator[list[tuple[int, ...]]]:
        if a == m_rows:
            yield list(chosen)
            return
        remaining_rows = m_rows - a - 1
        avail = [b for b, c in enumerate(caps) if c > 0]
        for pick in combinations(avail, rows[a]):
            for b in pick:
                caps[b] -= 1
            if all(c <= remaining_rows for c in caps):
                chosen.append(pick)
                yield from rec(a + 1)
                chosen.pop()
            for b in pick:
                caps[b] += 1

    if sum(rows) == sum(cols):
        yield from rec(0)


def _root_keys(masks: Sequence[int], n: int, table: list[int]) -> list[tuple[int, int]]:
    full = (1 << n) - 1
    keys = []
    for v in range(n):
        outs = masks[v]
        ins = full & ~outs & ~(1 << v)
        o = [u for u in range(n) if outs >> u & 1]
        i = [u for u in range(n) if ins >> u & 1]
        keys.append((table[certificate(masks, o)], table[certificate(masks, i)]))
    return keys


def _regular_shard(args: tuple[int, list[tuple[int, int]]]) -> list[int]:
    n, pairs = args
    m = (n - 1) // 2
    reps, table = _class_table(m)
    found: dict[int, None] = {}
    for co, ci in pairs:
        o_masks = _masks_from_cert(m, reps[co])
        i_masks = _masks_from_cert(m, reps[ci])
        so = [x.bit_count() for x in o_masks]
        si = [x.bit_count() for x in i_masks]
        rows = [m - s for s in so]
        cols = [1 + s for s in si]
        for fill in _bipartite_fills(rows, cols):
            masks = [0] * n
            masks[0] = sum(1 << (1 + a) for a in range(m))
            for a in range(m):
                v = 1 + a
                mk = 0
                for b in range(m):
                    if o_masks[a] >> b & 1:
                        mk |= 1 << (1 + b)
                for b in fill[a]:
                    mk |= 1 << (1 + m + b)
                masks[v] = mk
            for b in range(m):
                w = 1 + m + b
                mk = 1  # beats the root
                for c in range(m):
                    if i_masks[b] >> c & 1:
                        mk |= 1 << (1 + m + c)
                for a in range(m):
                    if b not in fill[a]:
                        mk |= 1 << (1 + a)
                masks[w] = mk
            keys = _root_keys(masks, n, table)
            if min(keys) != keys[0]:
                continue
            found[canonical_labeling(masks)[1]] = None
    return list(found)


def _regular_classes(
    n: int, shards: int = 1, checkpoint_dir: Optional[Path] = None
) -> tuple[int, ...]:
    m = (n - 1) // 2
    reps, _ = _class_table(m)
    pairs = [(a, b) for a in range(len(reps)) for b in range(len(reps))]
    chunks = _split(pairs, max(1, min(shards, len(pairs))))
    done: dict[int, list[int]] = {}
    if checkpoint_dir is not None:
        checkpoint_dir.mkdir(parents=True, exist_ok=True)
        for idx in range(len(chunks)):
            f = checkpoint_dir / f"regular-{n}-shard-{idx}-of-{len(chunks)}.json"
            if f.exists():
                done[idx] = json.loads(f.read_text())
    todo = [i for i in range(len(chunks)) if i not in done]

    def record(idx: int, certs: list[int]) -> None:
        done[idx] = certs
        log.info("regular n=%d: shard %d/%d done (%d certificates)", n, len(done), len(chunks), len(certs))
        if checkpoint_dir is not None:
            f = checkpoint_dir / f"regular-{n}-shard-{idx}-of-{len(chunks)}.json"
            f.write_text(json.dumps(certs))

    if len(todo) > 1 and shards > 1:
        with ProcessPoolExecutor(max_workers=shards) as pool:
            for idx, certs in zip(todo, pool.map(_regular_shard, [(n, chunks[i]) for i in todo])):
                record(idx, certs)
    else:
        for idx in todo:
            record(idx, _regular_shard((n, chunks[idx])))
    certs = set()
    for part in done.values():
        certs.update(part)
    return tuple(sorted(certs))


@lru_cache(maxsize=None)
def _regular_cached(n: int) -> tuple[int, ...]:
    return _regular_classes(n, shards=max(1, min(os.cpu_count() or 1, 8)))


def enumerate_regular(
    n: int,
    *,
    long: bool = False,
    shards: Optional[int] = None,
    checkpoint_dir: Optional[Path] = None,
) -> Iterator[Tournament]:
    """One representative per isomorphism class of regular n-tournaments."""
    if n % 2 == 0 or n < 1:
        raise TournamentError(f"regular tournaments need odd n, got {n}")
    if n > REGULAR_CAP and not long:
        raise EnumerationLimitError(f"n={n} regular enumeration needs long=True")
    if n == 1:
        yield Tournament(1, 0)
        return
    if shards is None and checkpoint_dir is None:
        certs = _regular_cached(n)
    else:
        certs = _regular_classes(n, shards or 1, checkpoint_dir)
    for cert in certs:
        yield Tournament(n, cert)


# --- score sequences -------------------------------------------------------


def enumerate_score_sequences(n: int) -> Iterator[ScoreSequence]:
    """All Landau-valid nondecreasing score sequences of length n, lexicographically."""
    if n < 1:
        raise ValueError("n must be positive")
    total = comb(n, 2)
    seq: list[int] = []

    def rec(k: int, low: int, acc: int) -> Iterator[tuple[int, ...]]:
        if k == n:
            if acc == total:
                yield tuple(seq)
            return
        rest = n - k
        for s in range(low, n):
            if acc + s < comb(k + 1, 2):
                continue
            if acc + rest * s > total:
                break
            if acc + s + (rest - 1) * (n - 1) < total:
                continue
            seq.append(s)
            yield from rec(k + 1, s, acc + s)
            seq.pop()

    for s in rec(0, 0, 0):
        yield ScoreSequence(s)


def count_score_sequences(n: int) -> int:
    return sum(1 for _ in enumerate_score_sequences(n))


# --- distinct entropy values ----------------------------------------------


def _raw_power_sum(t: Tournament, alpha: int) -> int:
    from .entropy import power_sums
    from .spectral import laplacian, trace_of_power

    if alpha in (2, 3, 4):
        return getattr(power_sums(t), f"raw{alpha}")
    return trace_of_power(laplacian(t), alpha)


def distinct_entropy_value_count(n: int, alpha: int) -> int:
    """Number of distinct exact power sums of order ``alpha`` over all n-tournaments."""
    if alpha < 2 or n < 2:
        raise ValueError("need n >= 2 and alpha >= 2")
    if alpha in (2, 3):
        # both power sums are functions of the score sequence
        values = set()
        for seq in enumerate_score_sequences(n):
            s = seq.scores
            if alpha == 2:
                values.add(sum(x * x for x in s))
            else:
                values.add(sum(x**3 for x in s) - 3 * comb(n, 3) + 3 * sum(comb(x, 2) for x in s))
        return len(values)
    if n > GENERAL_CAP:
        raise EnumerationLimitError(f"exhaustive counting limited to n <= {GENERAL_CAP}")
    return len({_raw_power_sum(t, alpha) for t in enumerate_tournaments(n)})


def conjecture_table(n_max: int, alpha_max: int, n_min: int = 2) -> list[dict]:
    """Rows ``(n, alpha, h, S_n, ratio)`` of distinct-value counts against score-sequence counts."""
    if n_max > GENERAL_CAP:
        raise EnumerationLimitError(f"n_max must be <= {GENERAL_CAP}")
    rows = []
    for n in range(n_min, n_max + 1):
        s_n = count_score_sequences(n)
        for alpha in range(2, alpha_max + 1):
            h = distinct_entropy_value_count(n, alpha)
            ratio = Fraction(h, s_n)
            rows.append({"n": n, "alpha": alpha, "h": h, "S": s_n, "ratio": ratio})
    return rows


def conjecture_csv(rows: list[dict]) -> str:
    lines = ["n,alpha,h,S,ratio,ratio_float"]
    for r in rows:
        lines.append(f"{r['n']},{r['alpha']},{r['h']},{r['S']},{r['h']}/{r['S']},{float(r['ratio']):.6f}")
    return "\n".join(lines) + "\n"
