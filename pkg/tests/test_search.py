"""Bulk isospectral discovery over graph6 corpora."""

from __future__ import annotations

import json
import warnings

import pytest

from qgspectra.corpusgen import connected_corpus, tree_corpus
from qgspectra.errors import UnsupportedInputError
from qgspectra.multigraph import CombinatorialGraph, encode_graph6
from qgspectra.search import (
    SearchConfig,
    prefilter_soundness_audit,
    search,
    sets_to_jsonl,
    tree_search,
    write_jsonl,
)

# the lone non-isomorphic equilateral pair on six vertices, and the shared
# primitive characteristic vector of its members
PAIR6 = ("EUuw", "EUvW")
CHAR6 = (1, 10, 21, -64, -224, 0, 256)


def _quiet(lines, config=SearchConfig()):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        return search(lines, config)


def test_six_vertex_corpus_has_exactly_one_pair():
    sets = _quiet(connected_corpus(6))
    assert len(sets) == 1
    found = sets[0]
    assert found.size == 2
    assert {m.graph6 for m in found.members} == set(PAIR6)
    assert found.char == CHAR6
    assert found.char_conflict == ()
    assert all(m.graph.num_edges == 10 for m in found.members)
    # ten edges of one tenth each: degree 2 * 10 in z, unit 1/10
    assert len(found.secular.coeffs) == 21
    assert found.secular.unit.denominator == 10


def test_pair_only_corpus_is_found_directly():
    sets = _quiet(list(PAIR6))
    assert len(sets) == 1 and sets[0].size == 2


def test_tree_corpora_counts():
    for n in range(4, 9):
        assert tree_search(tree_corpus(n)) == []
    assert [s.size for s in tree_search(tree_corpus(9))] == [2]
    assert [s.size for s in tree_search(tree_corpus(10))] == [2, 2]


def test_worker_count_does_not_change_output():
    corpus = connected_corpus(6)
    one = sets_to_jsonl(search(corpus, SearchConfig(jobs=1)))
    two = sets_to_jsonl(search(corpus, SearchConfig(jobs=2)))
    assert one == two


def test_prefilter_audit_clean_on_six_vertices():
    report = prefilter_soundness_audit(connected_corpus(6))
    assert report.identical
    assert report.sets_with_prefilter == 1
    assert report.sets_without_prefilter == 1
    assert report.char_conflicts == ()


def test_audit_rejects_more_than_seven_vertices():
    big = encode_graph6(
        CombinatorialGraph(8, tuple((i, i + 1) for i in range(7)))
    )
    with pytest.raises(UnsupportedInputError):
        prefilter_soundness_audit([big])


def test_cross_size_interval_pair_without_prefilter():
    # a single edge and a two-edge path are the same metric interval after
    # normalizing to total length one; only the exhaustive mode can see
    # across vertex counts
    p2 = encode_graph6(CombinatorialGraph(2, ((0, 1),)))
    p3 = encode_graph6(CombinatorialGraph(3, ((0, 1), (1, 2))))
    sets = search([p2, p3], SearchConfig(prefilter=False))
    assert len(sets) == 1
    found = sets[0]
    assert found.size == 2
    assert found.char is None
    assert len(found.char_conflict) == 2
    assert {m.graph.num_vertices for m in found.members} == {2, 3}


def test_native_units_marker():
    marked = _quiet(list(PAIR6), SearchConfig(native_units=True))[0]
    plain = _quiet(list(PAIR6))[0]
    assert marked.to_json_dict()["normalization"] == "native-units"
    assert "normalization" not in plain.to_json_dict()
    assert marked.secular.unit == 1
    assert plain.secular.unit.denominator == 10


def test_disconnected_and_edgeless_inputs_warn_and_skip():
    loose = encode_graph6(CombinatorialGraph(4, ((0, 1), (0, 2), (1, 2))))
    with pytest.warns(UserWarning, match="disconnected"):
        assert search([loose]) == []
    with pytest.warns(UserWarning, match="edgeless"):
        assert search(["@"]) == []


def test_tree_search_skips_cycles():
    triangle = encode_graph6(CombinatorialGraph(3, ((0, 1), (1, 2), (0, 2))))
    with pytest.warns(UserWarning, match="non-tree"):
        assert tree_search([triangle]) == []


def test_duplicate_corpus_entries_collapse_with_warning():
    lines = [PAIR6[0], PAIR6[1], PAIR6[0]]
    with pytest.warns(UserWarning, match="corpus inconsistency"):
        sets = search(lines)
    assert len(sets) == 1 and sets[0].size == 2


def test_sources_flow_through():
    lines = [("corpus.g6:12", PAIR6[0]), ("corpus.g6:40", PAIR6[1])]
    found = _quiet(lines)[0]
    assert {m.source for m in found.members} == {"corpus.g6:12", "corpus.g6:40"}


def test_jsonl_output(tmp_path):
    sets = _quiet(list(PAIR6))
    text = sets_to_jsonl(sets)
    lines = text.splitlines()
    assert len(lines) == 1
    record = json.loads(lines[0])
    assert record["size"] == 2
    assert record["char_poly"] == list(CHAR6)
    assert {m["graph6"] for m in record["members"]} == set(PAIR6)
    assert json.dumps(record, separators=(",", ":")) == lines[0]
    out = tmp_path / "sets.jsonl"
    write_jsonl(sets, str(out))
    assert out.read_text() == text


def test_empty_and_singleton_corpora():
    assert search([]) == []
    assert _quiet([PAIR6[0]]) == []
    assert _quiet(["", PAIR6[0], ""]) == []


def test_bad_worker_count_rejected():
    with pytest.raises(UnsupportedInputError):
        SearchConfig(jobs=0)
