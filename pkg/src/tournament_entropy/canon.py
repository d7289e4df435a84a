"""Canonical labeling of tournaments by individualization and refinement.

A tournament is given as a tuple of out-neighbourhood bitmasks.  The search
tree is built from an isomorphism-invariant refinement of ordered vertex
partitions; every leaf is a labeling and the canonical labeling is the leaf
whose relabeled arc bitstring is smallest.  Automorphisms discovered along the
way (two leaves with the same certificate) prune sibling subtrees that lie in
the same orbit of the path stabilizer.
"""

from __future__ import annotations

from typing import Sequence

Masks = Sequence[int]


def pair_index(i: int, j: int, n: int) -> int:
    """Position of the unordered pair ``(i, j)``, ``i < j``, in row-major order."""
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def certificate(out: Masks, order: Sequence[int]) -> int:
    """Arc bits of the tournament relabeled so that ``order[p]`` becomes ``p``."""
    n = len(order)
    bits = 0
    k = 0
    for p in range(n):
        row = out[order[p]]
        for q in range(p + 1, n):
            if row >> order[q] & 1:
                bits |= 1 << k
            k += 1
    return bits


def _vertex_invariant(out: Masks, v: int, n: int) -> tuple[int, int]:
    # (score, number of 3-cycles through v)
    full = (1 << n) - 1
    outs = out[v]
    ins = full & ~outs & ~(1 << v)
    cyc = 0
    m = outs
    while m:
        low = m & -m
        u = low.bit_length() - 1
        cyc += (out[u] & ins).bit_count()
        m ^= low
    return outs.bit_count(), cyc


def refine(out: Masks, cells: list[list[int]]) -> list[list[int]]:
    """Split cells by out-neighbour counts into every cell until equitable."""
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        new: list[list[int]] = []
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                row = out[v]
                key = tuple((row & m).bit_count() for m in masks)
                groups.setdefault(key, []).append(v)
            if len(groups) == 1:
                new.append(c)
            else:
                for key in sorted(groups):
                    new.append(groups[key])
        if len(new) == len(cells):
            return new
        cells = new


def _orbit_roots(gens: list[list[int]], fixed: Sequence[int], n: int) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        if any(g[v] != v for v in fixed):
            continue
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


def canonical_labeling(out: Masks) -> tuple[tuple[int, ...], int]:
    """Return ``(order, cert)``: ``order[p]`` is the vertex placed at position ``p``.

    ``cert`` is the arc bitstring (as an integer) of the canonically relabeled
    tournament; two tournaments are isomorphic iff their certificates agree.
    """
    n = len(out)
    if n <= 1:
        return tuple(range(n)), 0
    keyed: dict[tuple[int, int], list[int]] = {}
    for v in range(n):
        keyed.setdefault(_vertex_invariant(out, v, n), []).append(v)
    cells = refine(out, [keyed[k] for k in sorted(keyed)])

    best: list = [None, None]  # cert, order
    gens: list[list[int]] = []

    def search(cells: list[list[int]], path: list[int]) -> None:
        target = -1
        size = n + 1
        for idx, c in enumerate(cells):
            if 1 < len(c) < size:
                target, size = idx, len(c)
        if target < 0:
            order = [c[0] for c in cells]
            cert = certificate(out, order)
            if best[0] is None or cert < best[0]:
                best[0], best[1] = cert, order
            elif cert == best[0]:
                gamma = [0] * n
                for p in range(n):
                    gamma[best[1][p]] = order[p]
                gens.append(gamma)
            return
        cell = cells[target]
        tried: set[int] = set()
        for v in sorted(cell):
            if tried:
                roots = _orbit_roots(gens, path, n)
                if roots[v] in {roots[u] for u in tried}:
                    continue
            tried.add(v)
            rest = [w for w in cell if w != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            search(refine(out, child), path + [v])

    search(cells, [])
    return tuple(best[1]), best[0]


def brute_force_certificate(out: Masks) -> int:
    """Minimum arc bitstring over all n! labelings; an oracle for small n."""
    from itertools import permutations

    n = len(out)
    return min(certificate(out, p) for p in permutations(range(n)))
