"""Renyi entropies of tournaments: exact power sums, numeric evaluation and closed forms."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .core import Tournament, count_3cycles
from .spectral import GraphLike, ZeroTraceError, laplacian, matmul, normalized_spectrum, power_sum_trace, trace

IMAG_TOL = 1e-9
# A power sum below ZERO_TOL times sum(|lambda|^alpha) is cancellation noise
# and counts as zero: cos(pi/2) evaluates to 6e-17, which must not produce a
# finite entropy, while genuinely tiny sums at large alpha stay defined.
ZERO_TOL = 1e-12


class Reason(str, Enum):
    OK = "OK"
    NONPOSITIVE_SUM = "NONPOSITIVE_SUM"
    NONREAL_SUM = "NONREAL_SUM"
    ZERO_TRACE = "ZERO_TRACE"


@dataclass(frozen=True)
class EntropyValue:
    value: Optional[float]
    reason: Reason = Reason.OK

    def __post_init__(self) -> None:
        if (self.value is not None) != (self.reason is Reason.OK):
            raise ValueError("value must be present exactly when reason is OK")

    @property
    def defined(self) -> bool:
        return self.reason is Reason.OK

    def __str__(self) -> str:
        return f"{self.value!r}" if self.defined else f"UNDEFINED({self.reason.value})"


def _from_sum(total: float, alpha: float, magnitude: float) -> EntropyValue:
    if total <= ZERO_TOL * magnitude:
        return EntropyValue(None, Reason.NONPOSITIVE_SUM)
    return EntropyValue(math.log2(total) / (1 - alpha))


@dataclass(frozen=True)
class PowerSums:
    """Unnormalized power sums ``raw_k = tr((D - A)^k)`` of an n-tournament."""

    n: int
    raw2: int
    raw3: int
    raw4: int

    @property
    def scale(self) -> int:
        return comb(self.n, 2)

    @property
    def f2(self) -> Fraction:
        return Fraction(self.raw2, self.scale**2)

    @property
    def f3(self) -> Fraction:
        return Fraction(self.raw3, self.scale**3)

    @property
    def f4(self) -> Fraction:
        return Fraction(self.raw4, self.scale**4)

    def f(self, alpha: int) -> Fraction:
        return getattr(self, f"f{alpha}")

    def raw(self, alpha: int) -> int:
        return getattr(self, f"raw{alpha}")


def power_sums(t: Tournament) -> PowerSums:
    """Power sums from scores, 3-cycles and closed walks.

    ``raw4`` expands ``tr((D-A)^4)``; every term with fewer than three factors
    of ``A`` vanishes on a tournament, the four cyclic placements of a single
    ``D`` among three ``A`` share the trace ``tr(DA^3)``, leaving
    ``tr(D^4) - 4 tr(DA^3) + tr(A^4)``.
    """
    if t.n < 2:
        raise ValueError("power sums need n >= 2")
    s = t.scores
    raw2 = sum(x * x for x in s)
    raw3 = sum(x**3 for x in s) - 3 * count_3cycles(t)
    a = t.adjacency()
    a2 = matmul(a, a)
    a3 = matmul(a2, a)
    d_a3 = sum(s[i] * a3[i][i] for i in range(t.n))
    tr_a4 = sum(a2[i][j] * a2[j][i] for i in range(t.n) for j in range(t.n))
    raw4 = sum(x**4 for x in s) - 4 * d_a3 + tr_a4
    return PowerSums(t.n, raw2, raw3, raw4)


def exact_power_sum(t: Tournament, alpha: int) -> Fraction:
    if alpha in (2, 3, 4):
        return power_sums(t).f(alpha)
    if alpha == 1:
        return Fraction(1)
    return power_sum_trace(t, alpha)


def renyi_exact(t: Tournament, alpha: int) -> EntropyValue:
    """``log2(f_alpha) / (1 - alpha)`` from the exact power sum."""
    if alpha < 2 or int(alpha) != alpha:
        raise ValueError("exact entropy needs an integer alpha >= 2")
    f = exact_power_sum(t, int(alpha))
    if f <= 0:
        return EntropyValue(None, Reason.NONPOSITIVE_SUM)
    return EntropyValue(math.log2(f) / (1 - alpha))


def h_star(t: Tournament, alpha: int) -> Fraction:
    """Negated power sum; smaller values mean larger Renyi entropy."""
    if alpha < 2:
        raise ValueError("alpha must be >= 2")
    return -exact_power_sum(t, alpha)


def spectral_power_sum(eigenvalues: Sequence[complex], alpha: float) -> complex:
    """``sum(lambda^alpha)`` with principal powers; conjugate pairs combine to ``2 r^a cos(a theta)``."""
    total = 0j
    pending = list(eigenvalues)
    while pending:
        z = pending.pop()
        if abs(z) == 0:
            continue
        if z.imag != 0:
            k = min(range(len(pending)), key=lambda i: abs(pending[i] - z.conjugate()), default=None)
            if k is not None and abs(pending[k] - z.conjugate()) <= 1e-9 * (1 + abs(z)):
                pending.pop(k)
                r, theta = abs(z), cmath.phase(z)
                total += 2 * r**alpha * math.cos(alpha * theta)
                continue
        total += complex(z) ** alpha
    return total


def renyi_numeric(g: GraphLike, alpha: float) -> EntropyValue:
    if alpha <= 0 or alpha == 1:
        raise ValueError("alpha must be positive and different from 1")
    try:
        spec = normalized_spectrum(g)
    except ZeroTraceError:
        return EntropyValue(None, Reason.ZERO_TRACE)
    total = spectral_power_sum(spec.eigenvalues, alpha)
    if abs(total.imag) > IMAG_TOL:
        return EntropyValue(None, Reason.NONREAL_SUM)
    magnitude = sum(abs(z) ** alpha for z in spec.eigenvalues if z != 0)
    return _from_sum(total.real, alpha, magnitude)


def _check_alpha(alpha: float) -> None:
    if alpha <= 0 or alpha == 1:
        raise ValueError("alpha must be positive and different from 1")


def closed_form_C3(alpha: float) -> EntropyValue:
    _check_alpha(alpha)
    magnitude = 2 * (1 / math.sqrt(3)) ** alpha
    return _from_sum(magnitude * math.cos(math.pi * alpha / 6), alpha, magnitude)


def closed_form_TT3(alpha: float) -> EntropyValue:
    _check_alpha(alpha)
    total = (1 / 3) ** alpha + (2 / 3) ** alpha
    return _from_sum(total, alpha, total)


def regularize_step(t: Tournament) -> Optional[Tournament]:
    """Move one unit of score from a high vertex to one at least two lower.

    Picks the lexicographically least pair ``(i, j)`` with ``s_i + 2 <= s_j``.
    If ``j -> i`` the arc is reversed; otherwise the least ``u`` with
    ``j -> u -> i`` is used and the path is reversed, which leaves ``u``'s
    score unchanged.  Returns ``None`` once all scores are within one.
    """
    s = t.scores
    n = t.n
    for i in range(n):
        for j in range(n):
            if s[i] + 2 > s[j]:
                continue
            if t.beats(j, i):
                return t.reverse_arc(i, j)
            for u in range(n):
                if t.beats(j, u) and t.beats(u, i):
                    return t.reverse_arc(j, u).reverse_arc(u, i)
            raise AssertionError("no 2-path from j to i; tournament invariant broken")
    return None


def transitivize_step(t: Tournament) -> Optional[Tournament]:
    """Reverse the arc between the least pair of vertices sharing a score."""
    s = t.scores
    for i in range(t.n):
        for j in range(i + 1, t.n):
            if s[i] == s[j]:
                return t.reverse_arc(i, j)
    return None


def shannon(dist: Sequence[float]) -> float:
    if any(p < 0 for p in dist) or abs(sum(dist) - 1) > 1e-12:
        raise ValueError("not a probability distribution")
    return sum(p * math.log2(1 / p) for p in dist if p > 0)


def laplacian_trace(g: GraphLike) -> int:
    return trace(laplacian(g))
