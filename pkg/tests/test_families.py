"""Family builders, surgeries, and closed-form validators."""

from __future__ import annotations

import random

import pytest

from conftest import random_connected_graph
from qgspectra.errors import UnsupportedInputError
from qgspectra.families import (
    ChainOfLoops,
    Complete,
    ConnectedPumpkinPair,
    EnumerationTruncated,
    Flower,
    Loop,
    Path,
    Pumpkin,
    PumpkinChain,
    RingOfLoops,
    Star,
    StarWithPumpkinLeaves,
    Tadpole,
    build,
    closed_form,
    decorated_loop_enumerator,
    double,
    family_text,
    graft,
    isospectral_loop_triple,
    marked_interval,
    marked_loop,
    parse_family,
    permute_pumpkin_chain,
    replace_edges,
    tadpole_pair,
    validate_doubling,
    validate_formula,
    validate_tadpole_pair,
)
from qgspectra.multigraph import MetricGraph, is_isomorphic
from qgspectra.secular import is_isospectral, secular_polynomial


def partitions(total, max_part=None, min_parts=1):
    max_part = total if max_part is None else max_part
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in partitions(total - first, first):
            yield (first,) + rest


def test_basic_builders():
    k4 = Complete(4).build()
    assert k4.num_vertices == 4 and k4.num_edges == 6
    assert all(ell == 1 for _, _, ell in k4.edges)

    chain = ChainOfLoops((1, 1, 2)).build()
    assert chain.num_vertices == 4
    assert chain.total_length() == 4

    star = StarWithPumpkinLeaves((4, 3, 3), (1, 1, 1)).build()
    assert star.num_vertices == 4 and star.num_edges == 10
    assert sorted(star.valences()) == [3, 3, 4, 10]

    pair = ConnectedPumpkinPair(3, 1).build()
    assert pair.num_edges == 4 and pair.num_vertices == 3

    assert Tadpole(4, 1).build().edges == ((0, 0, 4), (0, 1, 1))
    assert Flower(3, 2).build().edges == ((0, 0, 2),) * 3
    assert Pumpkin(1, 5).build().edges == Path(5).build().edges


def test_builder_validation():
    with pytest.raises(UnsupportedInputError):
        Loop(0)
    with pytest.raises(UnsupportedInputError):
        Star(())
    with pytest.raises(UnsupportedInputError):
        Complete(1)
    with pytest.raises(UnsupportedInputError):
        RingOfLoops((4,))
    with pytest.raises(UnsupportedInputError):
        StarWithPumpkinLeaves((2, 2), (1,))
    with pytest.raises(UnsupportedInputError):
        build("loop:8")  # type: ignore[arg-type]


def test_chain_arc_units():
    even = ChainOfLoops((2, 4)).build()
    assert even.unit == 1
    assert even.edges == ((0, 1, 1), (0, 1, 1), (1, 2, 2), (1, 2, 2))
    odd = ChainOfLoops((1, 2)).build()
    assert odd.unit * 2 == 1
    assert odd.total_length() == 3
    ring = RingOfLoops((2, 2)).build()
    assert ring.num_vertices == 2 and ring.num_edges == 4


def test_loop_triple_shares_one_secular_polynomial():
    # circle of length 8: roots exactly at z^8 = 1, all doubled
    frozen = (1,) + (0,) * 7 + (-2,) + (0,) * 7 + (1,)
    members = isospectral_loop_triple()
    for g in members:
        p = secular_polynomial(g)
        assert p.coeffs == frozen
        assert p.denom == 1
    a, b, c = members
    assert not is_isomorphic(a.combinatorial(), b.combinatorial())
    assert not is_isomorphic(b.combinatorial(), c.combinatorial())
    assert not is_isomorphic(a.combinatorial(), c.combinatorial())


def test_tadpole_pair_frozen_polynomial():
    frozen = (3, 0, 1, 0, -4, 0, -4, 0, 1, 0, 3)
    a, b = tadpole_pair()
    pa = secular_polynomial(a)
    pb = secular_polynomial(b)
    assert pa.coeffs == frozen and pa.denom == 3
    assert pb.coeffs == frozen and pb.denom == 3
    assert not is_isomorphic(a.combinatorial(), b.combinatorial())
    assert validate_tadpole_pair().matched


def test_complete_graph_form():
    for v in range(3, 7):
        assert validate_formula(Complete(v)).matched
    assert secular_polynomial(Complete(4).build()).denom == 27
    with pytest.raises(UnsupportedInputError):
        closed_form(Complete(2))


def test_loop_multiset_forms():
    for total in range(1, 9):
        for parts in partitions(total):
            assert validate_formula(ChainOfLoops(parts)).matched
            if len(parts) >= 2:
                assert validate_formula(RingOfLoops(parts)).matched


def test_pumpkin_star_and_pair_forms():
    for k1 in range(1, 5):
        for k2 in range(1, k1 + 1):
            assert validate_formula(ConnectedPumpkinPair(k1, k2)).matched
    assert validate_formula(ConnectedPumpkinPair(2, 2, 3)).matched
    for k in range(1, 8):
        for counts in partitions(k, min_parts=1):
            if len(counts) <= 3:
                spec = StarWithPumpkinLeaves(counts, (1,) * len(counts))
                assert validate_formula(spec).matched
    assert validate_formula(Pumpkin(5, 2)).matched
    assert validate_formula(Star((2, 2, 2, 2))).matched
    with pytest.raises(UnsupportedInputError):
        closed_form(Star((1, 2)))
    with pytest.raises(UnsupportedInputError):
        closed_form(Tadpole(4, 1))


def test_flower_form():
    for s in range(1, 5):
        for ell in (1, 2):
            assert validate_formula(Flower(s, ell)).matched


def test_formula_report_contents():
    from qgspectra.intpoly import proportional

    report = validate_formula(Complete(5), raise_on_mismatch=False)
    assert report.matched and report.family == "complete"
    assert proportional(report.computed.coeffs, report.form)
    # a mispaired form must not count as proportional
    assert not proportional(report.computed.coeffs, closed_form(Complete(6)))
    assert not proportional(closed_form(Flower(3, 1)), closed_form(Flower(2, 1)))


def test_connected_pumpkin_pair_allocations_isospectral():
    for k in range(2, 7):
        members = [
            ConnectedPumpkinPair(a, k - a).build() for a in range(1, k // 2 + 1)
        ]
        for other in members[1:]:
            assert is_isospectral(members[0], other)


def test_graft_counts_and_units():
    rng = random.Random(404)
    for _ in range(10):
        h = random_connected_graph(rng, max_vertices=5)
        g = random_connected_graph(rng, max_vertices=5)
        u = rng.randrange(h.num_vertices)
        v = rng.randrange(g.num_vertices)
        joined = graft(h, u, g, v)
        assert joined.num_vertices == h.num_vertices + g.num_vertices - 1
        assert joined.num_edges == h.num_edges + g.num_edges
        assert joined.total_length() == h.total_length() + g.total_length()
    # figure-eight: two circles at one point
    eight = graft(Loop(4).build(), 0, Loop(4).build(), 0)
    assert eight.num_vertices == 1 and eight.num_edges == 2
    # unit reconciliation
    mixed = graft(ChainOfLoops((1, 1)).build(), 0, Path(1).build(), 0)
    assert mixed.unit * 2 == 1
    assert mixed.total_length() == 3


def test_double_and_doubling_identity():
    single = double(Path(1).build())
    assert single.edges == ((0, 1, 1), (0, 1, 1))
    with pytest.raises(UnsupportedInputError):
        double(MetricGraph(3, ((0, 1, 1),)))
    rng = random.Random(1010)
    for _ in range(8):
        g = random_connected_graph(rng, max_vertices=5, max_extra=2, max_len=3)
        assert validate_doubling(g).matched


def test_permute_pumpkin_chain():
    spec = PumpkinChain(((2, 1), (2, 2), (2, 1)))
    base = spec.build()
    assert permute_pumpkin_chain(spec, (0, 1, 2)).edges == base.edges
    shuffled = permute_pumpkin_chain(spec, (1, 2, 0))
    assert is_isospectral(base, shuffled)
    mixed = PumpkinChain(((2, 1), (3, 1), (3, 2)))
    with pytest.raises(UnsupportedInputError):
        permute_pumpkin_chain(mixed, (1, 0, 2))
    with pytest.raises(UnsupportedInputError):
        permute_pumpkin_chain(mixed, (0, 0, 1))
    legal = permute_pumpkin_chain(mixed, (0, 2, 1))
    assert is_isospectral(mixed.build(), legal)


def splice_between(host, w1, w2, chain, end0, end1):
    # identify both chain ends with host vertices; all unit-1 graphs here
    assert host.unit == chain.unit
    mapping = {end0: w1, end1: w2}
    nxt = host.num_vertices
    for w in range(chain.num_vertices):
        if w not in mapping:
            mapping[w] = nxt
            nxt += 1
    edges = list(host.edges)
    edges.extend((mapping[u], mapping[v], ell) for u, v, ell in chain.edges)
    return MetricGraph(nxt, tuple(edges))


def test_same_degree_chain_order_is_spectrally_silent():
    rng = random.Random(77)
    for _ in range(25):
        d = rng.randint(1, 4)
        segs = tuple((d, rng.randint(1, 3)) for _ in range(rng.randint(2, 4)))
        spec = PumpkinChain(segs)
        order = list(range(len(segs)))
        rng.shuffle(order)
        assert is_isospectral(spec.build(), permute_pumpkin_chain(spec, order))
    # and spliced between two vertices of a fixed ambient graph
    host = random_connected_graph(random.Random(5), max_vertices=4, max_len=2)
    for _ in range(10):
        d = rng.randint(1, 3)
        segs = tuple((d, rng.randint(1, 2)) for _ in range(3))
        spec = PumpkinChain(segs)
        order = list(range(3))
        rng.shuffle(order)
        m = len(segs)
        w1 = rng.randrange(host.num_vertices)
        w2 = rng.randrange(host.num_vertices)
        if w1 == w2:
            continue
        a = splice_between(host, w1, w2, spec.build(), 0, m)
        reordered = PumpkinChain(tuple(segs[j] for j in order)).build()
        b = splice_between(host, w1, w2, reordered, 0, m)
        assert is_isospectral(a, b)


def test_replace_edges():
    host = ConnectedPumpkinPair(2, 1).build()
    # a bare edge pattern reproduces the host
    same = replace_edges(host, Path(1).build(), 0, 1)
    assert secular_polynomial(same).coeffs == secular_polynomial(host).coeffs
    # a path of two unit edges subdivides every edge
    pattern = MetricGraph(3, ((0, 2, 1), (2, 1, 1)))
    refined = replace_edges(host, pattern, 0, 1)
    assert refined.total_length() == 2 * host.total_length()
    assert is_isospectral(refined, host.with_unit(2))
    with pytest.raises(UnsupportedInputError):
        replace_edges(Path(2).build(), pattern, 0, 1)
    with pytest.raises(UnsupportedInputError):
        replace_edges(host, pattern, 1, 1)


def test_replace_edges_preserves_isospectrality():
    rng = random.Random(181)
    a = StarWithPumpkinLeaves((4, 1), (1, 1)).build()
    b = StarWithPumpkinLeaves((3, 2), (1, 1)).build()
    assert is_isospectral(a, b)
    for _ in range(3):
        pattern = random_connected_graph(rng, max_vertices=4, max_extra=1, max_len=2)
        if pattern.num_vertices == 1:
            continue
        ea, eb = 0, pattern.num_vertices - 1
        ra = replace_edges(a, pattern, ea, eb)
        rb = replace_edges(b, pattern, ea, eb)
        assert is_isospectral(ra, rb)


def test_marked_pieces():
    assert marked_interval(4, 2).edges == ((0, 1, 2), (0, 2, 2))
    assert marked_interval(4, 0).edges == ((0, 1, 4),)
    assert marked_loop(4, 1).edges == ((0, 1, 1), (0, 1, 3))
    assert marked_loop(4, 4).edges == ((0, 0, 4),)
    with pytest.raises(UnsupportedInputError):
        marked_interval(4, 5)


def test_decorated_loop_enumerator():
    triangle = list(decorated_loop_enumerator(3, 3))
    assert len(triangle) == 1
    assert triangle[0].num_edges == 3
    assert len(list(decorated_loop_enumerator(4, 5))) == 2
    graphs = list(decorated_loop_enumerator(4, 6))
    assert len(graphs) == 6
    keys = [g.edges for g in graphs]
    assert keys == sorted(keys) or len(set(keys)) == 6  # deterministic, distinct
    assert all(all(ell == 1 for _, _, ell in g.edges) for g in graphs)
    capped = list(decorated_loop_enumerator(4, 6, max_graphs=3))
    assert len(capped) == 4
    assert isinstance(capped[-1], EnumerationTruncated)
    assert capped[-1].produced == 3 and capped[-1].total == 6
    assert [g.edges for g in capped[:3]] == [g.edges for g in graphs[:3]]
    with pytest.raises(UnsupportedInputError):
        next(decorated_loop_enumerator(2, 5))
    with pytest.raises(UnsupportedInputError):
        next(decorated_loop_enumerator(4, 3))


def test_parse_family_round_trip():
    texts = [
        "path:3",
        "loop:8",
        "star:1,2,3",
        "complete:4",
        "flower:5@2",
        "pumpkin:4@2",
        "pumpkin-chain:3@1,3@2,2@1",
        "chain-of-loops:1,1,2",
        "ring-of-loops:2,2,4",
        "tadpole:4,1",
        "pumpkin-star:4+3+3@1,1,1",
        "pumpkin-pair:7+5@1",
    ]
    for text in texts:
        spec = parse_family(text)
        assert family_text(spec) == text
        assert parse_family(family_text(spec)) == spec
        assert build(spec).num_vertices >= 1
    assert parse_family("pumpkin-star:4+3+3@1") == StarWithPumpkinLeaves(
        (4, 3, 3), (1, 1, 1)
    )
    assert parse_family("flower:5") == Flower(5, 1)
    for bad in ["loop", "loop:", "loop:x", "mystery:3", "tadpole:4", "pumpkin-pair:1@1"]:
        with pytest.raises(UnsupportedInputError):
            parse_family(bad)
