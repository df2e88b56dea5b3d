"""Combinatorial and metric multigraphs.

A ``CombinatorialGraph`` is an undirected multigraph: self-loops and parallel
edges are allowed, vertices are ``0..n-1``, and each edge is stored with its
endpoints in nondecreasing order.  A ``MetricGraph`` adds a positive integer
length per edge and a global rational ``unit``, so every physical edge length
is ``length * unit`` and stays exactly representable.

Edge order is part of the identity of a graph here: directed bonds are indexed
``2*i`` (stored orientation) and ``2*i + 1`` (reverse) for edge ``i``, and all
downstream matrices follow that indexing.

Also in this module: graph6 parsing/encoding for simple graphs, a canonical
labeling for small multigraphs (individualization plus refinement), the vertex
characteristic polynomial ``det(x*T - A)`` used as a cheap spectral prefilter,
and the surgery helpers (subdivide, smooth, rescale).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Sequence

from .errors import UnsupportedInputError
from .exactdet import det_poly_matrix
from .intpoly import Poly

GRAPH6_HEADER = b">>graph6<<"


def _normalize_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class CombinatorialGraph:
    """Undirected multigraph on vertices 0..num_vertices-1."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.num_vertices < 1:
            raise UnsupportedInputError("a graph needs at least one vertex")
        norm = []
        for u, v in self.edges:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise UnsupportedInputError(f"edge ({u}, {v}) references a missing vertex")
            norm.append(_normalize_edge(u, v))
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def valences(self) -> list[int]:
        """Edge-end counts; a self-loop contributes two at its vertex."""
        d = [0] * self.num_vertices
        for u, v in self.edges:
            d[u] += 1
            d[v] += 1
        return d

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            if u == v or (u, v) in seen:
                return False
            seen.add((u, v))
        return True

    def is_connected(self) -> bool:
        return _connected(self.num_vertices, self.edges)

    def is_tree(self) -> bool:
        return self.is_connected() and self.num_edges == self.num_vertices - 1


@dataclass(frozen=True)
class MetricGraph:
    """Multigraph with exact edge lengths ``length * unit``."""

    num_vertices: int
    edges: tuple[tuple[int, int, int], ...]
    unit: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        if self.num_vertices < 1:
            raise UnsupportedInputError("a graph needs at least one vertex")
        unit = Fraction(self.unit)
        if unit <= 0:
            raise UnsupportedInputError("unit length must be positive")
        object.__setattr__(self, "unit", unit)
        norm = []
        for u, v, ell in self.edges:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise UnsupportedInputError(f"edge ({u}, {v}) references a missing vertex")
            if not isinstance(ell, int) or ell < 1:
                raise UnsupportedInputError("edge lengths must be positive integers")
            a, b = _normalize_edge(u, v)
            norm.append((a, b, ell))
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def valences(self) -> list[int]:
        d = [0] * self.num_vertices
        for u, v, _ in self.edges:
            d[u] += 1
            d[v] += 1
        return d

    def total_length_units(self) -> int:
        return sum(ell for _, _, ell in self.edges)

    def total_length(self) -> Fraction:
        return self.unit * self.total_length_units()

    def combinatorial(self) -> CombinatorialGraph:
        return CombinatorialGraph(self.num_vertices, tuple((u, v) for u, v, _ in self.edges))

    def is_connected(self) -> bool:
        return _connected(self.num_vertices, [(u, v) for u, v, _ in self.edges])

    def with_unit(self, unit: Fraction) -> MetricGraph:
        return MetricGraph(self.num_vertices, self.edges, unit)


def equilateral(graph: CombinatorialGraph, unit: Fraction | int = 1) -> MetricGraph:
    """All edges get length 1 at the given unit."""
    return MetricGraph(graph.num_vertices, tuple((u, v, 1) for u, v in graph.edges), Fraction(unit))


def _connected(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if not seen[y]:
                seen[y] = True
                count += 1
                stack.append(y)
    return count == n


# -- graph6 -------------------------------------------------------------------


def parse_graph6(line: str | bytes) -> CombinatorialGraph:
    """Parse one graph6 line (simple graphs, up to 62 vertices).

    The optional ``>>graph6<<`` header is accepted.  Malformed input raises
    ``UnsupportedInputError`` naming the offending byte offset.  The edge list
    follows the format's bit order (column-major upper triangle), which fixes
    the bond indexing downstream.
    """
    data = line.encode("ascii") if isinstance(line, str) else bytes(line)
    data = data.strip()
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER) :]
    if not data:
        raise UnsupportedInputError("empty graph6 record")
    b0 = data[0]
    if b0 == 126:
        raise UnsupportedInputError(
            "byte offset 0: long-form graph6 (more than 62 vertices) is not supported"
        )
    n = b0 - 63
    if not 0 <= n <= 62:
        raise UnsupportedInputError(f"byte offset 0: invalid vertex-count byte {b0}")
    if n == 0:
        raise UnsupportedInputError("byte offset 0: the empty graph has no vertices")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) != 1 + nbytes:
        raise UnsupportedInputError(
            f"byte offset {min(len(data), 1 + nbytes)}: expected {1 + nbytes} bytes for "
            f"{n} vertices, got {len(data)}"
        )
    bits: list[int] = []
    for off in range(1, len(data)):
        val = data[off] - 63
        if not 0 <= val <= 63:
            raise UnsupportedInputError(f"byte offset {off}: invalid data byte {data[off]}")
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    for off, bit in enumerate(bits[nbits:]):
        if bit:
            raise UnsupportedInputError(
                f"byte offset {1 + (nbits + off) // 6}: nonzero padding bit"
            )
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return CombinatorialGraph(n, tuple(edges))


def encode_graph6(graph: CombinatorialGraph) -> str:
    """Encode a simple graph as one graph6 line (no header)."""
    if not graph.is_simple():
        raise UnsupportedInputError("graph6 encodes simple graphs only")
    n = graph.num_vertices
    if n > 62:
        raise UnsupportedInputError("graph6 short form holds at most 62 vertices")
    present = set(graph.edges)
    bits: list[int] = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if (i, j) in present else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


# -- canonical labeling -------------------------------------------------------


def _multi_adjacency(
    n: int, edges: Iterable[tuple[int, int]]
) -> tuple[list[dict[int, int]], list[int]]:
    adj: list[dict[int, int]] = [dict() for _ in range(n)]
    loops = [0] * n
    for u, v in edges:
        if u == v:
            loops[u] += 1
        else:
            adj[u][v] = adj[u].get(v, 0) + 1
            adj[v][u] = adj[v].get(u, 0) + 1
    return adj, loops


def _refine(
    n: int, adj: list[dict[int, int]], loops: list[int], colors: list[int]
) -> list[int]:
    while True:
        sigs = [
            (
                colors[v],
                loops[v],
                tuple(sorted((colors[u], m) for u, m in adj[v].items())),
            )
            for v in range(n)
        ]
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _certificate(
    n: int, adj: list[dict[int, int]], loops: list[int], order: Sequence[int]
) -> tuple[int, ...]:
    out = [loops[v] for v in order]
    for a in range(n):
        va = order[a]
        row = adj[va]
        for b in range(a + 1, n):
            out.append(row.get(order[b], 0))
    return tuple(out)


def canonical_order(graph: CombinatorialGraph) -> list[int]:
    """A canonical vertex order: position i holds the original vertex id."""
    n = graph.num_vertices
    adj, loops = _multi_adjacency(n, graph.edges)
    best: tuple[tuple[int, ...], list[int]] | None = None

    def recurse(colors: list[int]) -> None:
        nonlocal best
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            order = sorted(range(n), key=colors.__getitem__)
            cert = _certificate(n, adj, loops, order)
            if best is None or cert < best[0]:
                best = (cert, order)
            return
        for v in target:
            split = [2 * c for c in colors]
            split[v] -= 1
            recurse(_refine(n, adj, loops, split))

    recurse(_refine(n, adj, loops, [0] * n))
    assert best is not None
    return best[1]


def canonical_key(graph: CombinatorialGraph) -> tuple[int, ...]:
    """Isomorphism-invariant certificate; equal keys mean isomorphic graphs."""
    n = graph.num_vertices
    adj, loops = _multi_adjacency(n, graph.edges)
    return (n,) + _certificate(n, adj, loops, canonical_order(graph))


def canonical_relabel(graph: CombinatorialGraph) -> CombinatorialGraph:
    order = canonical_order(graph)
    pos = {v: i for i, v in enumerate(order)}
    edges = sorted(_normalize_edge(pos[u], pos[v]) for u, v in graph.edges)
    return CombinatorialGraph(graph.num_vertices, tuple(edges))


def is_isomorphic(g1: CombinatorialGraph, g2: CombinatorialGraph) -> bool:
    if g1.num_vertices != g2.num_vertices or g1.num_edges != g2.num_edges:
        return False
    if sorted(g1.valences()) != sorted(g2.valences()):
        return False
    return canonical_key(g1) == canonical_key(g2)


# -- vertex characteristic polynomial ------------------------------------------


def char_poly(graph: CombinatorialGraph) -> Poly:
    """``det(x*T - A)`` with T the valency diagonal, A the adjacency matrix.

    Defined for simple graphs.  The single-vertex graph yields the zero
    polynomial (degenerate but harmless: it only ever meets other
    single-vertex graphs in a prefilter bucket).
    """
    if not graph.is_simple():
        raise UnsupportedInputError("the characteristic prefilter is defined for simple graphs")
    n = graph.num_vertices
    present = set(graph.edges)
    d = graph.valences()
    rows: list[list[Poly]] = []
    for i in range(n):
        row: list[Poly] = []
        for j in range(n):
            if i == j:
                row.append((0, d[i]) if d[i] else ())
            else:
                row.append((-1,) if _normalize_edge(i, j) in present else ())
        rows.append(row)
    return det_poly_matrix(rows)


# -- surgery -------------------------------------------------------------------


def subdivide(graph: MetricGraph, edge_index: int, parts: Sequence[int]) -> MetricGraph:
    """Split one edge into consecutive parts along its stored orientation.

    New vertices are appended after the existing ones, and the part edges
    replace the original edge at its position in the edge list.
    """
    if not 0 <= edge_index < graph.num_edges:
        raise UnsupportedInputError("edge index out of range")
    parts = tuple(parts)
    if len(parts) < 2 or any(not isinstance(p, int) or p < 1 for p in parts):
        raise UnsupportedInputError("parts must be at least two positive integers")
    u, v, ell = graph.edges[edge_index]
    if sum(parts) != ell:
        raise UnsupportedInputError("parts must sum to the edge length")
    n = graph.num_vertices
    chain = [u] + list(range(n, n + len(parts) - 1)) + [v]
    new_edges = [(chain[i], chain[i + 1], parts[i]) for i in range(len(parts))]
    edges = (
        graph.edges[:edge_index] + tuple(new_edges) + graph.edges[edge_index + 1 :]
    )
    return MetricGraph(n + len(parts) - 1, edges, graph.unit)


def smooth(graph: MetricGraph, vertex: int) -> MetricGraph:
    """Remove a valence-2 vertex, merging its two edges into one.

    Refuses the degenerate case where the vertex sits on a single self-loop
    (removal would leave a vertexless cycle).  Inverts ``subdivide`` exactly.
    """
    if not 0 <= vertex < graph.num_vertices:
        raise UnsupportedInputError("vertex out of range")
    incident = [
        (i, e) for i, e in enumerate(graph.edges) if vertex in (e[0], e[1])
    ]
    if len(incident) == 1 and incident[0][1][0] == incident[0][1][1]:
        raise UnsupportedInputError("cannot smooth a vertex that closes a self-loop")
    ends = sum((2 if e[0] == e[1] == vertex else 1) for _, e in incident)
    if ends != 2 or len(incident) != 2:
        raise UnsupportedInputError("only valence-2 vertices with two distinct edges smooth")
    (i1, e1), (i2, e2) = incident
    far1 = e1[0] if e1[1] == vertex else e1[1]
    far2 = e2[0] if e2[1] == vertex else e2[1]
    merged = (far1, far2, e1[2] + e2[2])
    edges = [merged if i == i1 else e for i, e in enumerate(graph.edges) if i != i2]
    remap = lambda x: x - 1 if x > vertex else x  # noqa: E731
    if graph.num_vertices == 1:
        raise UnsupportedInputError("cannot remove the only vertex")
    edges = tuple((remap(u), remap(v), ell) for u, v, ell in edges)
    return MetricGraph(graph.num_vertices - 1, edges, graph.unit)


def fraction_gcd(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(
        int_gcd(a.numerator * b.denominator, b.numerator * a.denominator),
        a.denominator * b.denominator,
    )


def common_rescale(g1: MetricGraph, g2: MetricGraph) -> tuple[MetricGraph, MetricGraph]:
    """Rewrite both graphs over the largest common unit.

    Requires equal total (physical) lengths; integer edge lengths are scaled
    by the exact unit ratios, so nothing is rounded.
    """
    if g1.total_length() != g2.total_length():
        raise UnsupportedInputError("common rescale needs equal total lengths")
    unit = fraction_gcd(g1.unit, g2.unit)
    out = []
    for g in (g1, g2):
        m = g.unit / unit
        assert m.denominator == 1
        mi = m.numerator
        out.append(
            MetricGraph(
                g.num_vertices,
                tuple((u, v, ell * mi) for u, v, ell in g.edges),
                unit,
            )
        )
    return out[0], out[1]
