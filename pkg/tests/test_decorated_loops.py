"""Searches over pendant-tree decorations of a cycle.

These corpora mix graph sizes, so isospectral sets can pair a small graph
with a rescaled larger one.  The characteristic-polynomial prefilter is
blind to such sets (the polynomials differ in degree), which makes this
family the reference exercise for prefilter-off searches.
"""

from __future__ import annotations

import os
from collections import Counter

import pytest

from qgspectra.families import decorated_loop_enumerator
from qgspectra.multigraph import encode_graph6
from qgspectra.search import SearchConfig, search

RUN_EXTENDED = os.environ.get("RUN_EXTENDED") == "1"


def corpus(cycle: int, cap: int) -> list[str]:
    return [encode_graph6(g.combinatorial()) for g in decorated_loop_enumerator(cycle, cap)]


def mixed_size_sets(sets):
    return [
        tuple(m.graph6 for m in s.members)
        for s in sets
        if len({m.graph.num_vertices for m in s.members}) > 1
    ]


def test_cycle4_decorations_to_ten_vertices():
    lines = corpus(4, 10)
    assert len(lines) == 316
    full = search(lines, SearchConfig(prefilter=False))
    assert Counter(s.size for s in full) == {2: 22, 3: 1}
    assert sorted(mixed_size_sets(full)) == [
        ("Cr", "GQ?GPk"),
        ("DIk", "ICO_??RBo"),
    ]
    triplet = next(s for s in full if s.size == 3)
    assert {m.graph6 for m in triplet.members} == {"ICO?GGBMG", "ICO?GGWGw", "ICO?_GKGw"}

    prefiltered = search(lines)
    assert Counter(s.size for s in prefiltered) == {2: 20, 3: 1}
    assert mixed_size_sets(prefiltered) == []


@pytest.mark.skipif(not RUN_EXTENDED, reason="extended tier; set RUN_EXTENDED=1")
def test_cycle6_decorations_to_twelve_vertices():
    lines = corpus(6, 12)
    assert len(lines) == 608
    full = search(lines, SearchConfig(prefilter=False))
    assert Counter(s.size for s in full) == {2: 28, 3: 1}
    assert mixed_size_sets(full) == [("EqGW", "KQ?GP?O@?C?N")]
