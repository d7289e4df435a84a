"""Tournaments: representation, constructors, predicates and subtournament counts.

A :class:`Tournament` stores one orientation bit per unordered pair ``{i, j}``
with ``i < j``, packed into an integer.  Pairs are ordered row-major,
``(0,1), (0,2), ..., (0,n-1), (1,2), ..., (n-2,n-1)``, and bit ``k`` (least
significant bit first) is set iff the arc of the ``k``-th pair points from the
smaller to the larger vertex.  This layout is what the text and JSON formats
serialize, so it is stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

from .canon import canonical_labeling, certificate, pair_index


class TournamentError(ValueError):
    """Invalid tournament input."""


class LoopError(TournamentError):
    pass


class DuplicatePairError(TournamentError):
    pass


class MissingPairError(TournamentError):
    pass


class VertexRangeError(TournamentError):
    pass


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


@dataclass(frozen=True)
class Tournament:
    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise TournamentError(f"vertex count must be positive, got {self.n}")
        if not 0 <= self.bits < 1 << num_pairs(self.n):
            raise TournamentError("arc bits out of range for n")

    @classmethod
    def from_out_masks(cls, masks: Sequence[int]) -> "Tournament":
        n = len(masks)
        bits = 0
        k = 0
        for i in range(n):
            row = masks[i]
            for j in range(i + 1, n):
                if row >> j & 1:
                    bits |= 1 << k
                k += 1
        return cls(n, bits)

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        n = self.n
        masks = [0] * n
        k = 0
        b = self.bits
        for i in range(n):
            for j in range(i + 1, n):
                if b >> k & 1:
                    masks[i] |= 1 << j
                else:
                    masks[j] |= 1 << i
                k += 1
        return tuple(masks)

    @cached_property
    def scores(self) -> tuple[int, ...]:
        """Out-degrees indexed by vertex (not sorted)."""
        return tuple(m.bit_count() for m in self.out_masks)

    def beats(self, i: int, j: int) -> bool:
        return bool(self.out_masks[i] >> j & 1)

    def out_neighbors(self, v: int) -> list[int]:
        m = self.out_masks[v]
        return [u for u in range(self.n) if m >> u & 1]

    def in_neighbors(self, v: int) -> list[int]:
        return [u for u in range(self.n) if u != v and not self.out_masks[v] >> u & 1]

    def arcs(self) -> Iterator[tuple[int, int]]:
        for i in range(self.n):
            for j in self.out_neighbors(i):
                yield i, j

    def adjacency(self) -> list[list[int]]:
        return [[int(self.beats(i, j)) for j in range(self.n)] for i in range(self.n)]

    def reverse_arc(self, i: int, j: int) -> "Tournament":
        if i == j:
            raise LoopError("no arc between a vertex and itself")
        a, b = min(i, j), max(i, j)
        return Tournament(self.n, self.bits ^ (1 << pair_index(a, b, self.n)))

    def relabel(self, order: Sequence[int]) -> "Tournament":
        """Tournament in which new vertex ``p`` is old vertex ``order[p]``."""
        if sorted(order) != list(range(self.n)):
            raise TournamentError("relabeling must be a permutation")
        return Tournament(self.n, certificate(self.out_masks, order))

    def converse(self) -> "Tournament":
        return Tournament(self.n, self.bits ^ ((1 << num_pairs(self.n)) - 1))

    def to_text(self) -> str:
        width = max(1, -(-num_pairs(self.n) // 4))
        return f"n={self.n} bits={self.bits:0{width}x}"

    @classmethod
    def from_text(cls, line: str) -> "Tournament":
        fields = dict(part.split("=", 1) for part in line.split())
        try:
            return cls(int(fields["n"]), int(fields["bits"], 16))
        except KeyError as exc:
            raise TournamentError(f"malformed tournament line: {line!r}") from exc

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "arcs": [list(a) for a in self.arcs()]})

    @classmethod
    def from_json(cls, text: str) -> "Tournament":
        obj = json.loads(text)
        return from_arcs(obj["n"], [tuple(a) for a in obj["arcs"]])

    def __repr__(self) -> str:
        return f"Tournament({self.to_text()})"


@dataclass(frozen=True)
class ScoreSequence:
    scores: tuple[int, ...]

    def __post_init__(self) -> None:
        if list(self.scores) != sorted(self.scores):
            raise ValueError("score sequence must be nondecreasing")
        if not is_landau(self.scores):
            raise ValueError(f"{self.scores} violates Landau's condition")

    def __iter__(self):
        return iter(self.scores)

    def __len__(self) -> int:
        return len(self.scores)


def is_landau(scores: Sequence[int]) -> bool:
    s = sorted(scores)
    total = 0
    for k, x in enumerate(s, start=1):
        if x < 0:
            return False
        total += x
        if total < comb(k, 2):
            return False
    return total == comb(len(s), 2)


@dataclass(frozen=True)
class RotationalSymbol:
    n: int
    members: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(self.members))
        n = self.n
        if n < 1 or n % 2 == 0:
            raise TournamentError(f"rotational tournaments need odd n, got {n}")
        if any(not 1 <= d < n for d in self.members):
            raise TournamentError("symbol members must lie in 1..n-1")
        for d in range(1, n):
            if (d in self.members) == ((n - d) in self.members):
                raise TournamentError(f"exactly one of {d}, {n - d} must be in the symbol")


def from_arcs(n: int, arc_list: Iterable[tuple[int, int]]) -> Tournament:
    """Build a tournament from ordered pairs ``(tail, head)`` covering every pair once."""
    if n < 1:
        raise TournamentError(f"vertex count must be positive, got {n}")
    seen: set[tuple[int, int]] = set()
    bits = 0
    for i, j in arc_list:
        if not (0 <= i < n and 0 <= j < n):
            raise VertexRangeError(f"arc ({i}, {j}) has a vertex outside 0..{n - 1}")
        if i == j:
            raise LoopError(f"loop at vertex {i}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise DuplicatePairError(f"pair {key} given more than once")
        seen.add(key)
        if i < j:
            bits |= 1 << pair_index(i, j, n)
    if len(seen) != num_pairs(n):
        missing = next((i, j) for i, j in combinations(range(n), 2) if (i, j) not in seen)
        raise MissingPairError(f"pair {missing} has no arc")
    return Tournament(n, bits)


def transitive(n: int) -> Tournament:
    """TT_n with ``i -> j`` iff ``i > j``, so vertex ``i`` has score ``i``."""
    return Tournament.from_out_masks([(1 << i) - 1 for i in range(n)])


def rotational(symbol: RotationalSymbol) -> Tournament:
    n = symbol.n
    masks = []
    for i in range(n):
        m = 0
        for d in symbol.members:
            m |= 1 << ((i + d) % n)
        masks.append(m)
    return Tournament.from_out_masks(masks)


def consecutive_rotational(n: int) -> Tournament:
    if n < 3 or n % 2 == 0:
        raise TournamentError(f"consecutive rotational tournaments need odd n >= 3, got {n}")
    return rotational(RotationalSymbol(n, frozenset(range(1, (n - 1) // 2 + 1))))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def quadratic_residue_tournament(p: int) -> Tournament:
    if not _is_prime(p) or p % 4 != 3:
        raise TournamentError(f"need a prime p = 3 (mod 4), got {p}")
    residues = frozenset((x * x) % p for x in range(1, p))
    return rotational(RotationalSymbol(p, residues))


def score_sequence(t: Tournament) -> ScoreSequence:
    return ScoreSequence(tuple(sorted(t.scores)))


def is_regular(t: Tournament) -> bool:
    return t.n % 2 == 1 and all(2 * s == t.n - 1 for s in t.scores)


def is_nearly_regular(t: Tournament) -> bool:
    n = t.n
    if n % 2:
        return False
    h = n // 2
    return sorted(t.scores) == [h - 1] * h + [h] * h


def is_transitive(t: Tournament) -> bool:
    return count_3cycles(t) == 0


def _outset_intersections(t: Tournament) -> Iterator[int]:
    out = t.out_masks
    for x, y in combinations(range(t.n), 2):
        yield (out[x] & out[y]).bit_count()


def is_doubly_regular(t: Tournament) -> bool:
    if not is_regular(t) or t.n % 4 != 3:
        return False
    k = (t.n - 3) // 4
    return all(c == k for c in _outset_intersections(t))


def is_quasi_doubly_regular(t: Tournament) -> bool:
    if not is_regular(t) or t.n % 4 != 1:
        return False
    k = (t.n - 1) // 4
    return all(c in (k - 1, k) for c in _outset_intersections(t))


def count_3cycles(t: Tournament) -> int:
    return comb(t.n, 3) - sum(comb(s, 2) for s in t.scores)


def cycles_through(t: Tournament) -> list[int]:
    """Number of 3-cycles containing each vertex."""
    full = (1 << t.n) - 1
    out = t.out_masks
    res = []
    for v in range(t.n):
        ins = full & ~out[v] & ~(1 << v)
        res.append(sum((out[u] & ins).bit_count() for u in t.out_neighbors(v)))
    return res


_FOUR_TYPES = {
    (1, 1, 2, 2): "c4",
    (0, 1, 2, 3): "t4",
    (1, 1, 1, 3): "to4",
    (0, 2, 2, 2): "tk4",
}


def count_c4_t4(t: Tournament) -> tuple[int, int, int, int]:
    """Counts ``(c4, t4, to4, tk4)`` of induced 4-subtournaments by type.

    For four vertices the score sequence determines the isomorphism type, so
    each subset is classified by its induced scores.
    """
    if t.n < 4:
        raise TournamentError("4-subtournament counts need n >= 4")
    out = t.out_masks
    counts = {"c4": 0, "t4": 0, "to4": 0, "tk4": 0}
    for quad in combinations(range(t.n), 4):
        m = 0
        for v in quad:
            m |= 1 << v
        key = tuple(sorted((out[v] & m).bit_count() for v in quad))
        counts[_FOUR_TYPES[key]] += 1
    return counts["c4"], counts["t4"], counts["to4"], counts["tk4"]


def canonical_form(t: Tournament) -> bytes:
    """Byte string equal for two tournaments iff they are isomorphic."""
    _, cert = canonical_labeling(t.out_masks)
    width = max(1, -(-num_pairs(t.n) // 8))
    return t.n.to_bytes(2, "big") + cert.to_bytes(width, "big")


def canonical_representative(t: Tournament) -> Tournament:
    order, cert = canonical_labeling(t.out_masks)
    return Tournament(t.n, cert)


def is_isomorphic(a: Tournament, b: Tournament) -> bool:
    return a.n == b.n and canonical_form(a) == canonical_form(b)


def induced_subtournament(t: Tournament, vertices: Iterable[int]) -> Tournament:
    vs = sorted(set(vertices))
    if not vs:
        raise TournamentError("vertex subset must be non-empty")
    if vs[0] < 0 or vs[-1] >= t.n:
        raise VertexRangeError(f"subset {vs} not inside 0..{t.n - 1}")
    return Tournament(len(vs), certificate(t.out_masks, vs))


def hierarchy(t: Tournament) -> Fraction:
    """Landau's hierarchy score ``12/(n^3-n) * sum (s_i - (n-1)/2)^2``."""
    n = t.n
    if n < 2:
        raise TournamentError("hierarchy needs n >= 2")
    centre = Fraction(n - 1, 2)
    return Fraction(12, n**3 - n) * sum((s - centre) ** 2 for s in t.scores)
