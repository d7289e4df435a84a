"""Partial orders on tournaments induced by Renyi entropies, with Hasse export.

``T1 <_a T2`` when ``H_a(T1) < H_a(T2)``.  Since ``1/(1 - a) < 0`` this is
``f_a(T1) > f_a(T2)`` on the exact power sums, so comparisons never touch
floating point and ties (incomparabilities) are decided exactly.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from typing import Optional, Sequence

from .core import Tournament, canonical_form, score_sequence
from .entropy import exact_power_sum, power_sums
from .enumeration import enumerate_tournaments


@dataclass(frozen=True)
class OrderElement:
    label: str
    tournament: Tournament
    value: Fraction


@dataclass(frozen=True)
class EntropyOrder:
    alpha: int
    elements: tuple[OrderElement, ...]

    def less(self, a: str, b: str) -> bool:
        """``a <_alpha b``: strictly lower entropy."""
        va, vb = self._value(a), self._value(b)
        return va > vb

    def _value(self, label: str) -> Fraction:
        for e in self.elements:
            if e.label == label:
                return e.value
        raise KeyError(label)

    @property
    def relation(self) -> set[tuple[str, str]]:
        return {(a.label, b.label) for a in self.elements for b in self.elements if a.value > b.value}

    def classes(self) -> list[tuple[str, ...]]:
        """Equal-value classes, lowest entropy first."""
        ordered = sorted(self.elements, key=lambda e: (-e.value, e.label))
        return [tuple(e.label for e in grp) for _, grp in groupby(ordered, key=lambda e: e.value)]


def build_order(
    ts: Sequence[Tournament], alpha: int, labels: Optional[Sequence[str]] = None
) -> EntropyOrder:
    if not ts:
        raise ValueError("need at least one tournament")
    if len({t.n for t in ts}) != 1:
        raise ValueError("all tournaments must have the same number of vertices")
    if alpha not in (2, 3, 4):
        raise ValueError("alpha must be 2, 3 or 4")
    if labels is None:
        labels = [f"T{i}" for i in range(len(ts))]
    if len(labels) != len(ts) or len(set(labels)) != len(labels):
        raise ValueError("labels must be unique and match the tournaments")
    elements = tuple(OrderElement(lab, t, exact_power_sum(t, alpha)) for lab, t in zip(labels, ts))
    return EntropyOrder(alpha, elements)


def hasse_edges(order: EntropyOrder) -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
    """Covering pairs ``(lower, upper)`` of the quotient by equal values.

    Exact values are totally ordered, so the quotient is a chain and its
    transitive reduction links consecutive classes.
    """
    cls = order.classes()
    return list(zip(cls, cls[1:]))


def element_covers(order: EntropyOrder) -> set[tuple[str, str]]:
    """Covers between individual tournaments (tied elements kept as twins)."""
    return {(a, b) for lo, hi in hasse_edges(order) for a in lo for b in hi}


def _quote(s: str) -> str:
    return '"' + s.replace('"', r"\"") + '"'


def to_dot(order: EntropyOrder, merge: bool = True) -> str:
    """DOT graph with edges pointing up the order; ``merge`` collapses ties into one node."""
    lines = [f"digraph H{order.alpha} {{", "  rankdir=BT;"]
    if merge:
        for c in order.classes():
            lines.append(f"  {_quote('|'.join(c))} [label={_quote(', '.join(c))}];")
        for lo, hi in hasse_edges(order):
            lines.append(f"  {_quote('|'.join(lo))} -> {_quote('|'.join(hi))};")
    else:
        for c in order.classes():
            for lab in c:
                lines.append(f"  {_quote(lab)};")
        for a, b in sorted(element_covers(order)):
            lines.append(f"  {_quote(a)} -> {_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def power_sum_csv(labelled: Sequence[tuple[str, Tournament]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "raw2", "raw3", "raw4"])
    for lab, t in labelled:
        ps = power_sums(t)
        w.writerow([lab, ps.raw2, ps.raw3, ps.raw4])
    return buf.getvalue()


# Names of the 4- and 5-tournaments, keyed by (raw2, raw3, raw4).  The two
# classes sharing (22, 40, 46) are told apart by canonical-form order.
_T4_NAMES = {(1, 1, 2, 2): "TS4", (0, 2, 2, 2): "TK4", (1, 1, 1, 3): "TO4", (0, 1, 2, 3): "TT4"}
_T5_NAMES = {
    (20, 25, -20): "R5",
    (22, 40, 50): "UR3",
    (24, 55, 116): "U1",
    (24, 55, 120): "U2",
    (26, 76, 258): "E",
    (26, 64, 138): "D",
    (28, 79, 208): "C",
    (28, 85, 280): "B",
    (28, 91, 328): "A",
    (30, 100, 354): "TT5",
}
_UR_TWINS = (22, 40, 46)


def named_4_tournaments() -> list[tuple[str, Tournament]]:
    """``TS4, TK4, TO4, TT4``; for four vertices the score sequence fixes the class."""
    by_name = {_T4_NAMES[score_sequence(t).scores]: t for t in enumerate_tournaments(4)}
    return [(name, by_name[name]) for name in ("TS4", "TK4", "TO4", "TT4")]


T5_ORDER = ("R5", "UR1", "UR2", "UR3", "U1", "U2", "E", "D", "C", "B", "A", "TT5")


def named_5_tournaments() -> list[tuple[str, Tournament]]:
    named: dict[str, Tournament] = {}
    twins = []
    for t in enumerate_tournaments(5):
        ps = power_sums(t)
        key = (ps.raw2, ps.raw3, ps.raw4)
        if key == _UR_TWINS:
            twins.append(t)
        else:
            named[_T5_NAMES[key]] = t
    twins.sort(key=canonical_form)
    named["UR1"], named["UR2"] = twins
    return [(name, named[name]) for name in T5_ORDER]
