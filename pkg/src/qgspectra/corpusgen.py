"""Exhaustive corpora of simple graphs, built offline.

Generates every isomorphism class of simple graphs on n vertices by
single-vertex extension with canonical-form deduplication, then filters for
connectivity; trees are grown by leaf attachment.  Output is sorted graph6
lines, one graph per line, suitable as search input.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import UnsupportedInputError
from .multigraph import CombinatorialGraph, encode_graph6

Masks = tuple[int, ...]


def _refine(n: int, masks: Masks, colors: list[int]) -> list[int]:
    while True:
        sigs = []
        for v in range(n):
            m = masks[v]
            neigh = []
            while m:
                low = m & -m
                neigh.append(colors[low.bit_length() - 1])
                m ^= low
            neigh.sort()
            sigs.append((colors[v], tuple(neigh)))
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _twins(masks: Masks, u: int, v: int) -> bool:
    # swapping u and v is an automorphism
    drop = ~((1 << u) | (1 << v))
    return masks[u] & drop == masks[v] & drop


def canon_code(n: int, masks: Masks) -> bytes:
    """Canonical certificate of a simple graph given as adjacency bitmasks.

    Color refinement plus individualization; within a branching cell only
    one representative per twin orbit is explored, which keeps complete
    and near-complete graphs linear instead of factorial.
    """
    best: bytes | None = None

    def leaf(colors: list[int]) -> None:
        nonlocal best
        order = sorted(range(n), key=colors.__getitem__)
        bits = bytearray()
        for j in range(1, n):
            mj = masks[order[j]]
            for i in range(j):
                bits.append((mj >> order[i]) & 1)
        cand = bytes(bits)
        if best is None or cand < best:
            best = cand

    def recurse(colors: list[int]) -> None:
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            leaf(colors)
            return
        reps: list[int] = []
        for v in target:
            if any(_twins(masks, v, r) for r in reps):
                continue
            reps.append(v)
        for v in reps:
            split = [2 * c for c in colors]
            split[v] -= 1
            recurse(_refine(n, masks, split))

    recurse(_refine(n, masks, [0] * n))
    assert best is not None
    return bytes([n]) + best


def all_graph_masks(n: int) -> list[Masks]:
    """All isomorphism classes of simple graphs on n vertices."""
    if n < 1:
        raise UnsupportedInputError("need at least one vertex")
    level: list[Masks] = [(0,)]
    for k in range(1, n):
        seen: dict[bytes, Masks] = {}
        for masks in level:
            for s in range(1 << k):
                grown = tuple(
                    masks[i] | (((s >> i) & 1) << k) for i in range(k)
                ) + (s,)
                code = canon_code(k + 1, grown)
                if code not in seen:
                    seen[code] = grown
        level = list(seen.values())
    return level


def _masks_connected(n: int, masks: Masks) -> bool:
    seen = 1
    frontier = masks[0]
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        v = low.bit_length() - 1
        if not (seen >> v) & 1:
            seen |= 1 << v
            frontier |= masks[v] & ~seen
    return seen == (1 << n) - 1


def _masks_to_graph(n: int, masks: Masks) -> CombinatorialGraph:
    edges = []
    for v in range(n):
        m = masks[v] >> (v + 1)
        u = v + 1
        while m:
            if m & 1:
                edges.append((v, u))
            m >>= 1
            u += 1
    return CombinatorialGraph(n, tuple(edges))


def connected_corpus(n: int) -> list[str]:
    """Sorted graph6 lines for every connected simple graph on n vertices."""
    lines = [
        encode_graph6(_masks_to_graph(n, masks))
        for masks in all_graph_masks(n)
        if _masks_connected(n, masks)
    ]
    lines.sort()
    return lines


def tree_masks(n: int) -> list[Masks]:
    """All isomorphism classes of trees on n vertices, by leaf attachment."""
    if n < 1:
        raise UnsupportedInputError("need at least one vertex")
    level: list[Masks] = [(0,)]
    for k in range(1, n):
        seen: dict[bytes, Masks] = {}
        for masks in level:
            for v in range(k):
                grown = tuple(
                    masks[i] | ((1 << k) if i == v else 0) for i in range(k)
                ) + (1 << v,)
                code = canon_code(k + 1, grown)
                if code not in seen:
                    seen[code] = grown
        level = list(seen.values())
    return level


def tree_corpus(n: int) -> list[str]:
    """Sorted graph6 lines for every tree on n vertices."""
    lines = [encode_graph6(_masks_to_graph(n, masks)) for masks in tree_masks(n)]
    lines.sort()
    return lines


def write_corpus(lines: Iterable[str], path: str) -> None:
    with open(path, "w", encoding="ascii") as handle:
        for line in lines:
            handle.write(line)
            handle.write("\n")
