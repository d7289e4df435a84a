"""Von Neumann entropy of digraphs through lazy random walks.

For a loopless digraph with ``g`` arcs the matrix ``M = (I - L/g)^T`` is
column stochastic: from ``v`` the walk moves to each out-neighbour with
probability ``1/g`` and otherwise stays.  Since ``spec(M) = 1 - spec(L/g)``
the entropy expands as

    S = (tr M - sum_{j>=2} tr(M^j) / (j (j - 1))) / ln 2

and ``tr(M^j)`` is the total probability that walks of length ``j`` return
to their starting vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import Tournament
from .entropy import shannon
from .spectral import ZeroTraceError, char_poly, laplacian, roots, trace


@dataclass(frozen=True)
class Digraph:
    n: int
    arc_set: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "arc_set", frozenset(self.arc_set))
        for i, j in self.arc_set:
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"arc ({i}, {j}) outside 0..{self.n - 1}")

    @classmethod
    def from_tournament(cls, t: Tournament) -> "Digraph":
        return cls(t.n, frozenset(t.arcs()))

    @classmethod
    def undirected(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Digraph":
        arcs = set()
        for u, v in edges:
            arcs.add((u, v))
            arcs.add((v, u))
        return cls(n, frozenset(arcs))

    def arcs(self):
        return iter(sorted(self.arc_set))

    @property
    def out_degrees(self) -> list[int]:
        d = [0] * self.n
        for i, _ in self.arc_set:
            d[i] += 1
        return d

    @property
    def g(self) -> int:
        return len(self.arc_set)

    def out_lists(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in sorted(self.arc_set):
            out[i].append(j)
        return out


def as_digraph(graph) -> Digraph:
    return Digraph.from_tournament(graph) if isinstance(graph, Tournament) else graph


@dataclass(frozen=True)
class WalkConfig:
    trials: int = 100_000
    max_length: int = 4096
    seed: int = 0
    chunk: int = 1 << 16

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.max_length < 2:
            raise ValueError("max_length must be >= 2")


def _require_arcs(g: Digraph) -> None:
    if g.g == 0:
        raise ZeroTraceError("entropy undefined: the digraph has no arcs")


def scaled_markov_matrix(graph, scales: Sequence[float]) -> np.ndarray:
    """``(I - S L)^T`` with ``S = diag(1/s_i)``; stochastic whenever ``s_i >= d_i^+``."""
    g = as_digraph(graph)
    lap = np.array(laplacian(g), dtype=float)
    s = np.diag([1.0 / x for x in scales])
    return (np.eye(g.n) - s @ lap).T


def markov_matrix(graph) -> np.ndarray:
    g = as_digraph(graph)
    _require_arcs(g)
    return scaled_markov_matrix(g, [g.g] * g.n)


def return_probabilities(graph, j: int) -> np.ndarray:
    """Diagonal of ``M^j``: probability that a length-``j`` walk ends where it started."""
    if j < 0:
        raise ValueError("walk length must be >= 0")
    m = markov_matrix(graph)
    return np.diag(np.linalg.matrix_power(m, j)).copy()


def is_acyclic(graph) -> bool:
    g = as_digraph(graph)
    indeg = [0] * g.n
    out = g.out_lists()
    for i in range(g.n):
        for j in out[i]:
            indeg[j] += 1
    stack = [v for v in range(g.n) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen == g.n


def closed_class_count(graph) -> int:
    """Number of strongly connected components with no arc leaving them."""
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import connected_components

    g = as_digraph(graph)
    if g.n == 0:
        return 0
    rows = [i for i, _ in g.arc_set]
    cols = [j for _, j in g.arc_set]
    adj = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(g.n, g.n))
    k, labels = connected_components(adj, directed=True, connection="strong")
    leaving = set()
    for i, j in g.arc_set:
        if labels[i] != labels[j]:
            leaving.add(labels[i])
    return k - len(leaving)


def _stationary_projector(m: np.ndarray) -> np.ndarray:
    p = m.copy()
    for _ in range(80):
        q = p @ p
        # rounding would otherwise push the unit eigenvalue above 1
        q /= q.sum(axis=0, keepdims=True)
        if np.max(np.abs(q - p)) < 1e-14:
            return q
        p = q
    raise ArithmeticError("Markov powers did not converge")


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms: int
    tail_bound: float
    limit_trace: int


def series_partial(graph, terms: int) -> float:
    """``(tr M - sum_{j=2}^{J} tr(M^j)/(j(j-1))) / ln 2`` with no tail correction."""
    m = markov_matrix(graph)
    p = m.copy()
    total = np.trace(m)
    for j in range(2, terms + 1):
        p = p @ m
        total -= np.trace(p) / (j * (j - 1))
    return float(total / math.log(2))


def von_neumann_series_result(graph, epsilon: float = 1e-9, max_terms: int = 1 << 22) -> SeriesResult:
    """Series evaluation with the stationary part of the tail summed exactly.

    ``tr(M^j) = c + tr(X^j)`` with ``c`` the number of closed classes and
    ``X = M - M^inf``.  The constant part contributes ``c / J`` beyond ``J``;
    the rest is bounded by ``n K B / ((J-1)(1-B))`` with ``B = ||X^J||_2`` and
    ``K = max_{i<J} ||X^i||_2``, and ``J`` doubles until that bound is at most
    ``epsilon`` (in bits).
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    g = as_digraph(graph)
    m = markov_matrix(g)
    n = g.n
    c = closed_class_count(g)
    x = m - _stationary_projector(m)
    ln2 = math.log(2)
    acc = np.trace(m)
    power = x.copy()
    k_norm = max(1.0, float(np.linalg.norm(x, 2)))
    j = 1
    checkpoint = 2
    while True:
        j += 1
        power = power @ x
        acc -= (c + np.trace(power)) / (j * (j - 1))
        if j == checkpoint:
            b = float(np.linalg.norm(power, 2))
            if b < 1:
                bound = n * k_norm * b / ((j - 1) * (1 - b)) / ln2
                if bound <= epsilon:
                    value = (acc - c / j) / ln2
                    return SeriesResult(float(value), j, bound, c)
            k_norm = max(k_norm, b)
            checkpoint *= 2
        elif j > checkpoint // 2:
            k_norm = max(k_norm, float(np.linalg.norm(power, 2)))
        if j >= max_terms:
            raise ArithmeticError(f"series did not reach tolerance {epsilon} within {max_terms} terms")


def von_neumann_series(graph, epsilon: float = 1e-9) -> float:
    return von_neumann_series_result(graph, epsilon).value


def _f(lam: complex) -> complex:
    if lam == 0:
        return 0j
    return -lam * np.log(lam) / math.log(2)


def von_neumann_eigen(graph, allow_complex: bool = False, tol: float = 1e-9) -> float:
    """``sum lambda log2(1/lambda)`` over the normalized-Laplacian spectrum.

    Only defined directly for real spectra; with ``allow_complex`` the
    principal logarithm is used and the (real) sum of conjugate pairs returned.
    """
    g = as_digraph(graph)
    _require_arcs(g)
    lap = laplacian(g)
    spec = roots(char_poly(lap)).scaled(1.0 / trace(lap))
    if not spec.is_real(tol) and not allow_complex:
        raise ValueError("spectrum is not real; use the series form")
    total = sum(_f(complex(z.real, 0) if abs(z.imag) <= tol else z) for z in spec.eigenvalues)
    if abs(total.imag) > 1e-9:
        raise ArithmeticError("eigenvalue form produced a non-real entropy")
    return float(total.real)


def walk_length_for(graph, epsilon: float) -> int:
    return von_neumann_series_result(graph, epsilon).terms


def von_neumann_walk(graph, config: WalkConfig = WalkConfig(), epsilon: float = 1e-4) -> tuple[float, float]:
    """Monte Carlo estimate and standard error of the entropy from return frequencies.

    Each trial runs one lazy walk from every vertex for ``J`` steps (``J`` from
    the series tail bound, capped by ``config.max_length``).  Returns beyond
    ``J`` are credited as ``I_J / J``, using the last indicator as a proxy
    for the limiting return probability.
    """
    g = as_digraph(graph)
    _require_arcs(g)
    n, total = g.n, g.g
    length = max(2, min(walk_length_for(g, epsilon), config.max_length))
    out = g.out_lists()
    step = np.empty((n, total), dtype=np.int64)
    for v in range(n):
        step[v, :] = v
        step[v, : len(out[v])] = out[v]
    weights = np.array([0.0, 0.0] + [1.0 / (j * (j - 1)) for j in range(2, length + 1)])
    seeds = np.random.SeedSequence(config.seed).spawn(-(-config.trials // config.chunk))
    ys = []
    for idx, ss in enumerate(seeds):
        size = min(config.chunk, config.trials - idx * config.chunk)
        rng = np.random.Generator(np.random.PCG64(ss))
        start = np.repeat(np.arange(n)[None, :], size, axis=0)
        state = start.copy()
        y = np.zeros(size)
        for j in range(1, length + 1):
            state = step[state, rng.integers(0, total, size=state.shape)]
            if j >= 2:
                hits = (state == start).sum(axis=1)
                y += weights[j] * hits
                if j == length:
                    y += hits / length
        ys.append(y)
    y = np.concatenate(ys)
    ln2 = math.log(2)
    estimate = (n - 1 - y.mean()) / ln2
    stderr = (y.std(ddof=1) / math.sqrt(len(y)) if len(y) > 1 else 0.0) / ln2
    return float(estimate), float(stderr)


@dataclass(frozen=True)
class EntropyBounds:
    degree_bound: float
    log_bound: float
    is_acyclic: bool


def entropy_upper_bounds(graph) -> EntropyBounds:
    g = as_digraph(graph)
    _require_arcs(g)
    dist = [d / g.g for d in g.out_degrees]
    return EntropyBounds(shannon(dist), math.log2(g.n), is_acyclic(g))
