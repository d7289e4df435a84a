"""Exact Laplacian characteristic polynomials and their complex roots.

The combinatorial side stays in exact integers: Laplacians are integer
matrices, characteristic polynomials come from the Faddeev-LeVerrier
recurrence with arbitrary-precision integers, and power sums of the
normalized spectrum are exact fractions.  Floating point enters only in
:func:`roots`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Protocol, Sequence

IntMatrix = list[list[int]]

DEFAULT_TOL = 1e-10


class GraphLike(Protocol):
    n: int

    def arcs(self): ...


class ZeroTraceError(ValueError):
    """The Laplacian has zero trace (no arcs), so the entropy is undefined."""


class RootFindingError(RuntimeError):
    pass


# --- matrices --------------------------------------------------------------


def laplacian(g: GraphLike) -> IntMatrix:
    """``D - A`` with out-degrees on the diagonal."""
    n = g.n
    lap = [[0] * n for _ in range(n)]
    for i, j in g.arcs():
        if i == j:
            raise ValueError("loops are not allowed")
        lap[i][j] -= 1
        lap[i][i] += 1
    return lap


def trace(m: IntMatrix) -> int:
    return sum(m[i][i] for i in range(len(m)))


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def trace_of_power(m: IntMatrix, k: int) -> int:
    if k < 1:
        raise ValueError("power must be >= 1")
    p = m
    for _ in range(k - 1):
        p = matmul(p, m)
    return trace(p)


def normalization_constant(g: GraphLike) -> Fraction:
    tr = trace(laplacian(g))
    if tr == 0:
        raise ZeroTraceError("entropy undefined: the graph has no arcs")
    return Fraction(1, tr)


def power_sum_trace(g: GraphLike, k: int) -> Fraction:
    """Exact ``sum(lambda^k)`` over the normalized-Laplacian spectrum via ``tr(L^k)``."""
    lap = laplacian(g)
    tr = trace(lap)
    if tr == 0:
        raise ZeroTraceError("entropy undefined: the graph has no arcs")
    return Fraction(trace_of_power(lap, k), tr**k)


# --- characteristic polynomial ---------------------------------------------


@dataclass(frozen=True)
class CharPoly:
    """Integer coefficients of ``det(xI - M)``, highest degree first."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc


def char_poly(m: IntMatrix) -> CharPoly:
    """Faddeev-LeVerrier recurrence in exact integer arithmetic."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    coeffs = [1]
    mk = [[0] * n for _ in range(n)]  # M_0 = 0
    c_prev = 1
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        mk = matmul(m, mk)
        for i in range(n):
            mk[i][i] += c_prev
        t = trace(matmul(m, mk))
        if t % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        c_prev = -t // k
        coeffs.append(c_prev)
    return CharPoly(tuple(coeffs))


# --- exact polynomial helpers (coefficients lowest degree first) -----------


def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _deriv(p: list) -> list:
    return _trim([i * p[i] for i in range(1, len(p))] or [Fraction(0)])


def _divmod(a: list, b: list) -> tuple[list, list]:
    a = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lead = Fraction(b[-1])
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a.pop()
        if not a:
            a = [Fraction(0)]
    return _trim(q), _trim(a)


def _monic(p: list) -> list:
    lead = Fraction(p[-1])
    return [Fraction(c) / lead for c in p]


def _gcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while any(b):
        _, r = _divmod(a, b)
        a, b = b, r
    return _monic(a)


def _sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def squarefree_decomposition(coeffs_low: Sequence[int]) -> list[tuple[list[Fraction], int]]:
    """Yun's algorithm: ``p = c * prod f_i^i`` with each ``f_i`` square-free and monic."""
    a = _monic([Fraction(c) for c in coeffs_low])
    if len(a) == 1:
        return []
    b = _deriv(a)
    c = _gcd(a, b)
    w, _ = _divmod(a, c)
    y, _ = _divmod(b, c)
    z = _sub(y, _deriv(w))
    out = []
    i = 1
    while len(w) > 1:
        g = _gcd(w, z)
        if len(g) > 1:
            out.append((g, i))
        w, _ = _divmod(w, g)
        y, _ = _divmod(z, g)
        z = _sub(y, _deriv(w))
        i += 1
    return out


# --- root finding ------------------------------------------------------------


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[complex, ...]
    residual_tol: float = DEFAULT_TOL

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def scaled(self, factor: float) -> "Spectrum":
        return Spectrum(tuple(factor * z for z in self.eigenvalues), self.residual_tol)

    def power_sum(self, k: float) -> complex:
        return sum(complex(z) ** k for z in self.eigenvalues if z != 0)

    def is_real(self, tol: float = 1e-9) -> bool:
        return all(abs(z.imag) <= tol for z in self.eigenvalues)

    def multiplicities(self, tol: float = 1e-7) -> list[tuple[complex, int]]:
        """Cluster eigenvalues closer than ``tol``."""
        groups: list[list[complex]] = []
        for z in sorted(self.eigenvalues, key=lambda z: (round(z.real, 6), round(z.imag, 6))):
            for g in groups:
                if abs(g[0] - z) < tol:
                    g.append(z)
                    break
            else:
                groups.append([z])
        return [(sum(g) / len(g), len(g)) for g in groups]


def _aberth(coeffs_low: Sequence[float], max_iter: int = 500) -> list[complex]:
    """All roots of a polynomial with simple roots by Aberth-Ehrlich iteration."""
    deg = len(coeffs_low) - 1
    lead = coeffs_low[-1]
    c = [x / lead for x in coeffs_low]
    if deg == 1:
        return [complex(-c[0])]
    if deg == 2:
        disc = cmath.sqrt(c[1] * c[1] - 4 * c[0])
        r1 = (-c[1] - disc) / 2 if c[1] >= 0 else (-c[1] + disc) / 2
        r2 = c[0] / r1 if r1 != 0 else -c[1] - r1
        return [complex(r1), complex(r2)]
    radius = 1 + max(abs(x) for x in c[:-1])
    # start inside a circle scaled to the root magnitudes
    r0 = min(radius, max(abs(c[0]) ** (1.0 / deg), 1e-3) * 1.5)
    z = [r0 * cmath.exp(1j * (2 * math.pi * k / deg + 0.4)) for k in range(deg)]
    dc = [i * c[i] for i in range(1, deg + 1)]
    for _ in range(max_iter):
        done = True
        for i in range(deg):
            zi = z[i]
            p = 0j
            for a in reversed(c):
                p = p * zi + a
            dp = 0j
            for a in reversed(dc):
                dp = dp * zi + a
            if p == 0:
                continue
            # stop once p(z) is at the level of Horner rounding error
            noise = 0.0
            for a in reversed(c):
                noise = noise * abs(zi) + abs(a)
            if abs(p) <= 8 * 2.2e-16 * noise:
                continue
            s = sum(1 / (zi - z[j]) for j in range(deg) if j != i)
            ratio = p / dp if dp != 0 else complex(1e-3)
            delta = ratio / (1 - ratio * s)
            z[i] = zi - delta
            if abs(delta) > 1e-13 * (1 + abs(zi)):
                done = False
        if done:
            return z
    raise RootFindingError(f"Aberth iteration did not converge in {max_iter} steps: {z}")


def _conjugate_pairs(zs: list[complex], tol: float) -> list[complex]:
    real = []
    upper = []
    lower = []
    for z in zs:
        if abs(z.imag) <= tol * (1 + abs(z)):
            real.append(complex(z.real, 0.0))
        elif z.imag > 0:
            upper.append(z)
        else:
            lower.append(z)
    if len(upper) != len(lower):
        raise RootFindingError("non-real roots do not come in conjugate pairs")
    out = list(real)
    for z in upper:
        k = min(range(len(lower)), key=lambda i: abs(lower[i] - z.conjugate()))
        w = lower.pop(k)
        avg = (z + w.conjugate()) / 2
        out.extend([avg, avg.conjugate()])
    return out


def roots(p: CharPoly, tol: float = DEFAULT_TOL) -> Spectrum:
    """All complex roots with multiplicity.

    Zero roots are split off exactly, the rest is separated into square-free
    factors so that the iteration only ever sees simple roots.
    """
    if p.degree < 1:
        raise ValueError("polynomial must have degree >= 1")
    low = list(reversed(p.coeffs))
    zeros = 0
    while low and low[0] == 0 and len(low) > 1:
        low.pop(0)
        zeros += 1
    found: list[complex] = [0j] * zeros
    for factor, mult in squarefree_decomposition(low):
        fl = [float(x) for x in factor]
        rs = _conjugate_pairs(_aberth(fl), 1e-9)
        found.extend(rs * mult)
    scale = max(abs(c) for c in p.coeffs)
    for z in found:
        bound = tol * scale * max(1.0, abs(z)) ** p.degree
        if abs(p(complex(z))) > bound:
            raise RootFindingError(f"residual too large at {z}: |p| = {abs(p(complex(z)))}")
    found.sort(key=lambda z: (round(z.real, 9), round(z.imag, 9)))
    return Spectrum(tuple(found), tol)


def normalized_spectrum(g: GraphLike, tol: float = DEFAULT_TOL) -> Spectrum:
    """Spectrum of ``L / tr(L)``."""
    lap = laplacian(g)
    tr = trace(lap)
    if tr == 0:
        raise ZeroTraceError("entropy undefined: the graph has no arcs")
    return roots(char_poly(lap), tol).scaled(1.0 / tr)


def doubly_regular_spectrum(n: int) -> Spectrum:
    """Closed-form normalized spectrum shared by all doubly regular n-tournaments."""
    if n < 3 or n % 4 != 3:
        raise ValueError(f"doubly regular tournaments need n = 3 (mod 4), got {n}")
    m = (n - 1) // 2
    z = complex(1.0, 1.0 / math.sqrt(n)) / (n - 1)
    return Spectrum((0j,) + (z,) * m + (z.conjugate(),) * m)
