"""Builders for named metric-graph families and the surgeries that combine
them, plus validators matching computed secular polynomials against closed
product forms.

Each family is a small frozen dataclass with a ``build()`` method; the
module-level ``build`` and ``parse_family``/``family_text`` give the CLI a
uniform entry point.  Builders emit integer edge lengths, halving the length
unit where a construction needs half-integer arcs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

from .errors import UnsupportedInputError, VerificationError
from .intpoly import Poly, mul, mul_many, pow_poly, proportional
from .multigraph import (
    CombinatorialGraph,
    MetricGraph,
    canonical_key,
    canonical_relabel,
    equilateral,
    fraction_gcd,
)
from .secular import SecularPolynomial, secular_polynomial


def _positive_int(name: str, value: object) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise UnsupportedInputError(f"{name} must be a positive integer")
    return value


def _positive_tuple(name: str, values: Sequence[int]) -> tuple[int, ...]:
    out = tuple(values)
    if not out:
        raise UnsupportedInputError(f"{name} must be nonempty")
    for v in out:
        _positive_int(name, v)
    return out


@dataclass(frozen=True)
class Path:
    """Single edge of the given length between two endpoints."""

    length: int

    def __post_init__(self) -> None:
        _positive_int("length", self.length)

    def build(self) -> MetricGraph:
        return MetricGraph(2, ((0, 1, self.length),))


@dataclass(frozen=True)
class Loop:
    """Circle of the given circumference through one vertex."""

    length: int

    def __post_init__(self) -> None:
        _positive_int("length", self.length)

    def build(self) -> MetricGraph:
        return MetricGraph(1, ((0, 0, self.length),))


@dataclass(frozen=True)
class Star:
    """Center vertex with one pendant edge per listed length."""

    lengths: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lengths", _positive_tuple("leaf length", self.lengths))

    def build(self) -> MetricGraph:
        edges = tuple((0, i + 1, ell) for i, ell in enumerate(self.lengths))
        return MetricGraph(len(self.lengths) + 1, edges)


@dataclass(frozen=True)
class Complete:
    """Complete graph on the given number of vertices, unit edges."""

    vertices: int

    def __post_init__(self) -> None:
        if not isinstance(self.vertices, int) or self.vertices < 2:
            raise UnsupportedInputError("a complete graph needs at least two vertices")

    def build(self) -> MetricGraph:
        n = self.vertices
        edges = tuple((u, v, 1) for u in range(n) for v in range(u + 1, n))
        return MetricGraph(n, edges)


@dataclass(frozen=True)
class Flower:
    """Several loops of one length sharing a single vertex."""

    petals: int
    petal_length: int = 1

    def __post_init__(self) -> None:
        _positive_int("petal count", self.petals)
        _positive_int("petal length", self.petal_length)

    def build(self) -> MetricGraph:
        edges = tuple((0, 0, self.petal_length) for _ in range(self.petals))
        return MetricGraph(1, edges)


@dataclass(frozen=True)
class Pumpkin:
    """Two vertices joined by ``degree`` parallel edges of one length.

    Degree one is a path and degree two a loop seen through two vertices.
    """

    degree: int
    length: int = 1

    def __post_init__(self) -> None:
        _positive_int("degree", self.degree)
        _positive_int("length", self.length)

    def build(self) -> MetricGraph:
        edges = tuple((0, 1, self.length) for _ in range(self.degree))
        return MetricGraph(2, edges)


@dataclass(frozen=True)
class PumpkinChain:
    """Pumpkins concatenated at cut vertices, one (degree, length) per link."""

    segments: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        segs = tuple((d, ell) for d, ell in self.segments)
        if not segs:
            raise UnsupportedInputError("a pumpkin chain needs at least one segment")
        for d, ell in segs:
            _positive_int("degree", d)
            _positive_int("length", ell)
        object.__setattr__(self, "segments", segs)

    def build(self) -> MetricGraph:
        edges = []
        for i, (d, ell) in enumerate(self.segments):
            edges.extend((i, i + 1, ell) for _ in range(d))
        return MetricGraph(len(self.segments) + 1, tuple(edges))


@dataclass(frozen=True)
class ChainOfLoops:
    """Circles strung along a line, consecutive ones sharing a cut vertex.

    Each circumference splits into two equal arcs between neighbouring
    vertices; an odd circumference halves the length unit of the whole
    graph so the arcs stay integral.
    """

    circumferences: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "circumferences", _positive_tuple("circumference", self.circumferences)
        )

    def build(self) -> MetricGraph:
        cs = self.circumferences
        halved = any(c % 2 for c in cs)
        arcs = [c if halved else c // 2 for c in cs]
        edges = []
        for i, a in enumerate(arcs):
            edges.append((i, i + 1, a))
            edges.append((i, i + 1, a))
        unit = Fraction(1, 2) if halved else Fraction(1)
        return MetricGraph(len(cs) + 1, tuple(edges), unit)


@dataclass(frozen=True)
class RingOfLoops:
    """Circles strung around a cycle; needs at least two of them."""

    circumferences: tuple[int, ...]

    def __post_init__(self) -> None:
        cs = _positive_tuple("circumference", self.circumferences)
        if len(cs) < 2:
            raise UnsupportedInputError("a ring needs at least two loops")
        object.__setattr__(self, "circumferences", cs)

    def build(self) -> MetricGraph:
        cs = self.circumferences
        m = len(cs)
        halved = any(c % 2 for c in cs)
        arcs = [c if halved else c // 2 for c in cs]
        edges = []
        for i, a in enumerate(arcs):
            edges.append((i, (i + 1) % m, a))
            edges.append((i, (i + 1) % m, a))
        unit = Fraction(1, 2) if halved else Fraction(1)
        return MetricGraph(m, tuple(edges), unit)


@dataclass(frozen=True)
class Tadpole:
    """Loop with a pendant tail hanging off its vertex."""

    loop_length: int
    tail_length: int

    def __post_init__(self) -> None:
        _positive_int("loop length", self.loop_length)
        _positive_int("tail length", self.tail_length)

    def build(self) -> MetricGraph:
        return MetricGraph(2, ((0, 0, self.loop_length), (0, 1, self.tail_length)))


@dataclass(frozen=True)
class StarWithPumpkinLeaves:
    """Center vertex whose leaves are whole pumpkins.

    Leaf ``i`` is a pumpkin with ``edge_counts[i]`` parallel edges of length
    ``edge_lengths[i]`` between the center and its own outer vertex.
    """

    edge_counts: tuple[int, ...]
    edge_lengths: tuple[int, ...]

    def __post_init__(self) -> None:
        counts = _positive_tuple("edge count", self.edge_counts)
        lengths = _positive_tuple("edge length", self.edge_lengths)
        if len(counts) != len(lengths):
            raise UnsupportedInputError("need one edge length per leaf")
        object.__setattr__(self, "edge_counts", counts)
        object.__setattr__(self, "edge_lengths", lengths)

    def build(self) -> MetricGraph:
        edges = []
        for i, (k, ell) in enumerate(zip(self.edge_counts, self.edge_lengths)):
            edges.extend((0, i + 1, ell) for _ in range(k))
        return MetricGraph(len(self.edge_counts) + 1, tuple(edges))


@dataclass(frozen=True)
class ConnectedPumpkinPair:
    """Two pumpkins sharing one vertex, all edges of one length."""

    first: int
    second: int
    length: int = 1

    def __post_init__(self) -> None:
        _positive_int("edge count", self.first)
        _positive_int("edge count", self.second)
        _positive_int("length", self.length)

    def build(self) -> MetricGraph:
        return StarWithPumpkinLeaves(
            (self.first, self.second), (self.length, self.length)
        ).build()


FamilySpec = Union[
    Path,
    Loop,
    Star,
    Complete,
    Flower,
    Pumpkin,
    PumpkinChain,
    ChainOfLoops,
    RingOfLoops,
    Tadpole,
    StarWithPumpkinLeaves,
    ConnectedPumpkinPair,
]


def build(spec: FamilySpec) -> MetricGraph:
    """Construct the metric graph a family spec describes."""
    if not isinstance(spec, FamilySpec.__args__):  # type: ignore[attr-defined]
        raise UnsupportedInputError(f"not a family spec: {spec!r}")
    return spec.build()


# --- surgeries -----------------------------------------------------------


def graft(
    host: MetricGraph, host_vertex: int, attachment: MetricGraph, attachment_vertex: int
) -> MetricGraph:
    """Identify one vertex of the attachment with one vertex of the host.

    The host keeps its vertex numbers; remaining attachment vertices follow
    in their original order.  Differing length units are reconciled to the
    common refinement.
    """
    if not 0 <= host_vertex < host.num_vertices:
        raise UnsupportedInputError("host vertex out of range")
    if not 0 <= attachment_vertex < attachment.num_vertices:
        raise UnsupportedInputError("attachment vertex out of range")
    unit = fraction_gcd(host.unit, attachment.unit)
    hs = int(host.unit / unit)
    gs = int(attachment.unit / unit)
    mapping = {}
    nxt = host.num_vertices
    for w in range(attachment.num_vertices):
        if w == attachment_vertex:
            mapping[w] = host_vertex
        else:
            mapping[w] = nxt
            nxt += 1
    edges = [(u, v, ell * hs) for u, v, ell in host.edges]
    edges.extend((mapping[u], mapping[v], ell * gs) for u, v, ell in attachment.edges)
    return MetricGraph(nxt, tuple(edges), unit)


def double(graph: MetricGraph) -> MetricGraph:
    """Two copies of a connected graph identified at every vertex.

    Every edge becomes a parallel pair between its original endpoints.
    """
    if not graph.is_connected():
        raise UnsupportedInputError("doubling is defined for connected graphs")
    edges = []
    for e in graph.edges:
        edges.append(e)
        edges.append(e)
    return MetricGraph(graph.num_vertices, tuple(edges), graph.unit)


def replace_edges(
    graph: MetricGraph, pattern: MetricGraph, end_a: int, end_b: int
) -> MetricGraph:
    """Substitute a copy of ``pattern`` for every edge of ``graph``.

    Each stored edge (u, v) receives a fresh copy with ``end_a`` on u and
    ``end_b`` on v.  The host must have unit edge lengths so every edge is
    replaced by the same amount of graph; the result inherits the pattern's
    length unit.
    """
    if any(ell != 1 for _, _, ell in graph.edges):
        raise UnsupportedInputError("edge replacement needs unit edge lengths")
    if not 0 <= end_a < pattern.num_vertices or not 0 <= end_b < pattern.num_vertices:
        raise UnsupportedInputError("pattern end vertex out of range")
    if end_a == end_b:
        raise UnsupportedInputError("pattern ends must be two distinct vertices")
    nxt = graph.num_vertices
    edges = []
    for u, v, _ in graph.edges:
        mapping = {end_a: u, end_b: v}
        for w in range(pattern.num_vertices):
            if w not in mapping:
                mapping[w] = nxt
                nxt += 1
        edges.extend((mapping[x], mapping[y], ell) for x, y, ell in pattern.edges)
    return MetricGraph(nxt, tuple(edges), pattern.unit)


def permute_pumpkin_chain(spec: PumpkinChain, order: Sequence[int]) -> MetricGraph:
    """Rebuild a pumpkin chain with its links reordered.

    Position i of the new chain takes segment ``order[i]``.  Only
    reorderings within maximal runs of equal degree keep the spectrum, so
    anything moving a link across a degree boundary is rejected.
    """
    segs = spec.segments
    m = len(segs)
    if sorted(order) != list(range(m)):
        raise UnsupportedInputError("order must be a permutation of the segments")
    start = 0
    for i in range(1, m + 1):
        if i == m or segs[i][0] != segs[start][0]:
            if sorted(order[start:i]) != list(range(start, i)):
                raise UnsupportedInputError(
                    "permutation moves a pumpkin across a degree boundary"
                )
            start = i
    return PumpkinChain(tuple(segs[j] for j in order)).build()


# --- marked one-dimensional pieces ---------------------------------------


def marked_interval(length: int, position: int) -> MetricGraph:
    """Interval with a vertex placed ``position`` from its left end.

    The marked point is vertex 0; interior marks give three vertices, end
    marks collapse to the plain two-vertex interval.
    """
    _positive_int("length", length)
    if not 0 <= position <= length:
        raise UnsupportedInputError("position must lie on the interval")
    if position == 0 or position == length:
        return MetricGraph(2, ((0, 1, length),))
    return MetricGraph(3, ((0, 1, position), (0, 2, length - position)))


def marked_loop(circumference: int, position: int) -> MetricGraph:
    """Loop with a base vertex 0 and a second vertex ``position`` along.

    ``position`` congruent to 0 collapses to the one-vertex loop.
    """
    _positive_int("circumference", circumference)
    p = position % circumference
    if p == 0:
        return MetricGraph(1, ((0, 0, circumference),))
    return MetricGraph(2, ((0, 1, p), (0, 1, circumference - p)))


# --- reference isospectral sets ------------------------------------------


def isospectral_loop_triple() -> tuple[MetricGraph, MetricGraph, MetricGraph]:
    """The circle of length eight and its two non-isomorphic companions.

    The second member hangs two length-2 pendants off a length-4 loop; the
    third doubles a unit edge and decorates its ends with pendant pairs of
    lengths (2, 2) and (1, 1).  All three share one secular polynomial.
    """
    circle = Loop(8).build()
    lasso = MetricGraph(3, ((0, 0, 4), (0, 1, 2), (0, 2, 2)))
    doubled = MetricGraph(
        6, ((0, 1, 1), (0, 1, 1), (0, 2, 2), (0, 3, 2), (1, 4, 1), (1, 5, 1))
    )
    return circle, lasso, doubled


def tadpole_pair() -> tuple[MetricGraph, MetricGraph]:
    """Isospectral pair of total length five with unequal loop lengths.

    A tadpole (loop four, tail one) against a doubled unit edge carrying a
    pendant on one end and two pendants on the other.
    """
    a = MetricGraph(2, ((0, 0, 4), (0, 1, 1)))
    b = MetricGraph(5, ((0, 1, 1), (1, 2, 1), (1, 2, 1), (2, 3, 1), (2, 4, 1)))
    return a, b


def tadpole_pair_form() -> Poly:
    """Shared secular polynomial of the pair, up to normalization."""
    return mul(pow_poly((-1, 0, 1), 2), (3, 0, 7, 0, 7, 0, 3))


# --- closed product forms ------------------------------------------------


def _z_minus(e: int) -> Poly:
    return (-1,) + (0,) * (e - 1) + (1,)


def _z_plus(e: int) -> Poly:
    return (1,) + (0,) * (e - 1) + (1,)


def _loop_multiset_form(circumferences: Sequence[int], ring: bool) -> Poly:
    halved = any(c % 2 for c in circumferences)
    lam = [2 * c if halved else c for c in circumferences]
    total = sum(lam)
    parts = [_z_minus(x) for x in lam]
    if ring:
        parts.append(pow_poly(_z_minus(total // 2), 2))
    else:
        parts.append(_z_minus(total))
    return mul_many(parts)


def _pumpkin_star_form(counts: Sequence[int], length: int) -> Poly:
    s = len(counts)
    k = sum(counts)
    return mul(
        pow_poly(_z_minus(2 * length), k - s + 1),
        pow_poly(_z_plus(2 * length), s - 1),
    )


def closed_form(spec: FamilySpec) -> Poly:
    """Known product form of the family's secular polynomial.

    Returned up to overall sign and scale in the same length unit the
    builder uses.  Families without a closed form are rejected.
    """
    if isinstance(spec, Path):
        return _z_minus(2 * spec.length)
    if isinstance(spec, Loop):
        return pow_poly(_z_minus(spec.length), 2)
    if isinstance(spec, Complete):
        v = spec.vertices
        if v < 3:
            raise UnsupportedInputError("the complete-graph form needs three or more vertices")
        f = v - 1
        p = v * (v - 3) // 2
        return mul_many(
            [pow_poly((f, 2, f), f), pow_poly(_z_minus(1), p + 2), pow_poly(_z_plus(1), p)]
        )
    if isinstance(spec, Flower):
        s, ell = spec.petals, spec.petal_length
        return mul(pow_poly(_z_minus(ell), s + 1), pow_poly(_z_plus(ell), s - 1))
    if isinstance(spec, Pumpkin):
        return _pumpkin_star_form((spec.degree,), spec.length)
    if isinstance(spec, Star):
        lengths = set(spec.lengths)
        if len(lengths) != 1:
            raise UnsupportedInputError("the star form needs equal leaf lengths")
        return _pumpkin_star_form((1,) * len(spec.lengths), lengths.pop())
    if isinstance(spec, ChainOfLoops):
        return _loop_multiset_form(spec.circumferences, ring=False)
    if isinstance(spec, RingOfLoops):
        return _loop_multiset_form(spec.circumferences, ring=True)
    if isinstance(spec, ConnectedPumpkinPair):
        return _pumpkin_star_form((spec.first, spec.second), spec.length)
    if isinstance(spec, StarWithPumpkinLeaves):
        lengths = set(spec.edge_lengths)
        if len(lengths) != 1:
            raise UnsupportedInputError("the pumpkin-star form needs equal edge lengths")
        return _pumpkin_star_form(spec.edge_counts, lengths.pop())
    raise UnsupportedInputError(f"no closed form for {family_name(spec)}")


@dataclass(frozen=True)
class FormulaReport:
    """Outcome of one closed-form check: both polynomials plus the verdict."""

    family: str
    matched: bool
    computed: SecularPolynomial
    form: Poly


def validate_formula(spec: FamilySpec, raise_on_mismatch: bool = True) -> FormulaReport:
    """Compare the computed secular polynomial against the closed form.

    Proportionality up to scale and a z-power is the match criterion; a
    mismatch raises unless the report is wanted regardless.
    """
    computed = secular_polynomial(build(spec), validate=False)
    form = closed_form(spec)
    ok = proportional(computed.coeffs, form)
    report = FormulaReport(family_name(spec), ok, computed, form)
    if not ok and raise_on_mismatch:
        raise VerificationError(
            f"{report.family}: computed secular polynomial disagrees with the closed form"
        )
    return report


def validate_doubling(graph: MetricGraph, raise_on_mismatch: bool = True) -> FormulaReport:
    """Check the doubling identity on one graph.

    Identifying two copies at every vertex multiplies the secular
    polynomial by (z^(2 l) - 1) for each original edge of length l.
    """
    base = secular_polynomial(graph, validate=False)
    doubled = secular_polynomial(double(graph), validate=False)
    form = mul_many([base.coeffs] + [_z_minus(2 * ell) for _, _, ell in graph.edges])
    ok = proportional(doubled.coeffs, form)
    report = FormulaReport("doubling-product", ok, doubled, form)
    if not ok and raise_on_mismatch:
        raise VerificationError("doubling-product: secular polynomial of the doubled graph disagrees")
    return report


def validate_tadpole_pair(raise_on_mismatch: bool = True) -> FormulaReport:
    """Check both members of the reference pair against the stored form."""
    a, b = tadpole_pair()
    pa = secular_polynomial(a, validate=False)
    pb = secular_polynomial(b, validate=False)
    form = tadpole_pair_form()
    ok = (
        pa.coeffs == pb.coeffs
        and pa.denom == pb.denom
        and proportional(pa.coeffs, form)
    )
    report = FormulaReport("tadpole-pair", ok, pa, form)
    if not ok and raise_on_mismatch:
        raise VerificationError("tadpole-pair: members disagree with the stored polynomial")
    return report


# --- pendant-tree decorations of a cycle ---------------------------------


@dataclass(frozen=True)
class EnumerationTruncated:
    """End-of-stream marker when a cap cut the enumeration short."""

    produced: int
    total: int


def _rooted_tree_shapes(max_size: int) -> dict[int, list[tuple]]:
    """Canonical shapes of rooted trees, keyed by vertex count.

    A shape is the sorted tuple of its child shapes.
    """
    shapes: dict[int, list[tuple]] = {1: [()]}
    for s in range(2, max_size + 1):
        acc: set[tuple] = set()
        # root plus a non-decreasing multiset of child subtrees
        def rec(remaining: int, floor: tuple, children: list) -> None:
            if remaining == 0:
                acc.add(tuple(children))
                return
            for size in range(1, remaining + 1):
                for shape in shapes[size]:
                    item = (size, shape)
                    if item < floor:
                        continue
                    children.append(shape)
                    rec(remaining - size, item, children)
                    children.pop()

        rec(s - 1, (0, ()), [])
        shapes[s] = sorted(acc)
    return shapes


def _attach_shape(shape: tuple, root: int, nxt: int, edges: list) -> int:
    for child in shape:
        cid = nxt
        nxt += 1
        edges.append((root, cid))
        nxt = _attach_shape(child, cid, nxt, edges)
    return nxt


def decorated_loop_enumerator(
    loop_vertices: int,
    max_total_vertices: int,
    max_graphs: int | None = None,
) -> Iterator[MetricGraph | EnumerationTruncated]:
    """All equilateral pendant-tree decorations of a cycle, up to isomorphism.

    Streams one canonical representative per class, ordered by canonical
    encoding, with total vertex count capped at ``max_total_vertices``.
    When ``max_graphs`` cuts the stream short, a truncation marker follows
    the last graph.
    """
    n = loop_vertices
    if n < 3:
        raise UnsupportedInputError("the cycle needs at least three vertices")
    if max_total_vertices < n:
        raise UnsupportedInputError("vertex budget is below the bare cycle")
    budget = max_total_vertices - n
    shapes = _rooted_tree_shapes(budget + 1)
    sized = [(s, shape) for s in range(1, budget + 2) for shape in shapes[s]]
    seen: dict[tuple, MetricGraph] = {}

    def emit(chosen: list[tuple]) -> None:
        edges = [(i, (i + 1) % n) for i in range(n)]
        nxt = n
        for i, shape in enumerate(chosen):
            nxt = _attach_shape(shape, i, nxt, edges)
        comb = CombinatorialGraph(nxt, tuple(edges))
        key = canonical_key(comb)
        if key not in seen:
            seen[key] = equilateral(canonical_relabel(comb))

    def rec(pos: int, remaining: int, chosen: list) -> None:
        if pos == n:
            emit(chosen)
            return
        for s, shape in sized:
            if s - 1 > remaining:
                break
            chosen.append(shape)
            rec(pos + 1, remaining - (s - 1), chosen)
            chosen.pop()

    rec(0, budget, [])
    ordered = [seen[k] for k in sorted(seen)]
    cut = len(ordered) if max_graphs is None else min(max_graphs, len(ordered))
    for g in ordered[:cut]:
        yield g
    if cut < len(ordered):
        yield EnumerationTruncated(produced=cut, total=len(ordered))


# --- CLI text forms -------------------------------------------------------


def _parse_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UnsupportedInputError(f"bad {what}: {text!r}") from None


def _parse_ints(text: str, what: str, sep: str = ",") -> tuple[int, ...]:
    items = [t for t in text.split(sep) if t != ""]
    if not items:
        raise UnsupportedInputError(f"need at least one {what}")
    return tuple(_parse_int(t, what) for t in items)


def _split_at(text: str, default: int | None = None) -> tuple[str, int]:
    head, sep, tail = text.partition("@")
    if not sep:
        if default is None:
            raise UnsupportedInputError(f"missing @length in {text!r}")
        return head, default
    return head, _parse_int(tail, "length")


def parse_family(text: str) -> FamilySpec:
    """Parse the textual family form, e.g. ``loop:8``, ``complete:4``,
    ``chain-of-loops:1,1,2``, or ``pumpkin-star:4+3+3@1``."""
    name, sep, args = text.partition(":")
    name = name.strip().lower()
    args = args.strip()
    if not sep or not args:
        raise UnsupportedInputError(f"family form is name:args, got {text!r}")
    if name == "path":
        return Path(_parse_int(args, "length"))
    if name == "loop":
        return Loop(_parse_int(args, "length"))
    if name == "star":
        return Star(_parse_ints(args, "leaf length"))
    if name == "complete":
        return Complete(_parse_int(args, "vertex count"))
    if name == "flower":
        head, ell = _split_at(args, default=1)
        return Flower(_parse_int(head, "petal count"), ell)
    if name == "pumpkin":
        head, ell = _split_at(args, default=1)
        return Pumpkin(_parse_int(head, "degree"), ell)
    if name == "pumpkin-chain":
        segs = []
        for part in args.split(","):
            head, ell = _split_at(part.strip(), default=1)
            segs.append((_parse_int(head, "degree"), ell))
        return PumpkinChain(tuple(segs))
    if name == "chain-of-loops":
        return ChainOfLoops(_parse_ints(args, "circumference"))
    if name == "ring-of-loops":
        return RingOfLoops(_parse_ints(args, "circumference"))
    if name == "tadpole":
        parts = _parse_ints(args, "length")
        if len(parts) != 2:
            raise UnsupportedInputError("tadpole takes loop,tail")
        return Tadpole(parts[0], parts[1])
    if name == "pumpkin-star":
        head, sep2, tail = args.partition("@")
        counts = _parse_ints(head, "edge count", sep="+")
        if not sep2:
            lengths = (1,) * len(counts)
        else:
            lengths = _parse_ints(tail, "edge length")
            if len(lengths) == 1:
                lengths = lengths * len(counts)
        return StarWithPumpkinLeaves(counts, lengths)
    if name == "pumpkin-pair":
        head, ell = _split_at(args, default=1)
        counts = _parse_ints(head, "edge count", sep="+")
        if len(counts) != 2:
            raise UnsupportedInputError("pumpkin-pair takes k1+k2")
        return ConnectedPumpkinPair(counts[0], counts[1], ell)
    raise UnsupportedInputError(f"unknown family {name!r}")


def family_name(spec: FamilySpec) -> str:
    names = {
        Path: "path",
        Loop: "loop",
        Star: "star",
        Complete: "complete",
        Flower: "flower",
        Pumpkin: "pumpkin",
        PumpkinChain: "pumpkin-chain",
        ChainOfLoops: "chain-of-loops",
        RingOfLoops: "ring-of-loops",
        Tadpole: "tadpole",
        StarWithPumpkinLeaves: "pumpkin-star",
        ConnectedPumpkinPair: "pumpkin-pair",
    }
    try:
        return names[type(spec)]
    except KeyError:
        raise UnsupportedInputError(f"not a family spec: {spec!r}") from None


def family_text(spec: FamilySpec) -> str:
    """Inverse of parse_family, for manifests and reports."""
    name = family_name(spec)
    if isinstance(spec, (Path, Loop)):
        return f"{name}:{spec.length}"
    if isinstance(spec, Star):
        return f"{name}:{','.join(map(str, spec.lengths))}"
    if isinstance(spec, Complete):
        return f"{name}:{spec.vertices}"
    if isinstance(spec, Flower):
        return f"{name}:{spec.petals}@{spec.petal_length}"
    if isinstance(spec, Pumpkin):
        return f"{name}:{spec.degree}@{spec.length}"
    if isinstance(spec, PumpkinChain):
        return f"{name}:{','.join(f'{d}@{ell}' for d, ell in spec.segments)}"
    if isinstance(spec, (ChainOfLoops, RingOfLoops)):
        return f"{name}:{','.join(map(str, spec.circumferences))}"
    if isinstance(spec, Tadpole):
        return f"{name}:{spec.loop_length},{spec.tail_length}"
    if isinstance(spec, StarWithPumpkinLeaves):
        counts = "+".join(map(str, spec.edge_counts))
        lengths = ",".join(map(str, spec.edge_lengths))
        return f"{name}:{counts}@{lengths}"
    assert isinstance(spec, ConnectedPumpkinPair)
    return f"{name}:{spec.first}+{spec.second}@{spec.length}"
