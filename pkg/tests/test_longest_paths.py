import random

import pytest

from lptlab.errors import BudgetExceededError, PathValidationError
from lptlab.graphs import graph_from_edges
from lptlab.longest_paths import (
    PathSeq,
    enumerate_longest_paths,
    is_longest_path,
    is_valid_path,
    longest_path_length,
    longest_path_length_dp,
    path_seq,
    path_to_dot,
    paths_to_json,
)

P4 = graph_from_edges(4, [(0, 1), (1, 2), (2, 3)])
K3 = graph_from_edges(3, [(0, 1), (1, 2), (0, 2)])
CLAW = graph_from_edges(4, [(0, 1), (0, 2), (0, 3)])
FIG2 = graph_from_edges(
    7,
    [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (1, 6), (2, 5), (2, 6)],
)


def test_path_seq_validation():
    p = path_seq(P4, (0, 1, 2, 3))
    assert p.length == 3
    with pytest.raises(PathValidationError):
        path_seq(P4, (0, 2))
    with pytest.raises(PathValidationError):
        path_seq(P4, (0, 1, 0))
    with pytest.raises(PathValidationError):
        path_seq(P4, ())
    assert not is_valid_path(P4, (3, 1))


def test_path_seq_canonical_orientation():
    assert path_seq(P4, (3, 2, 1, 0)).vertices == (0, 1, 2, 3)
    with pytest.raises(PathValidationError):
        PathSeq((3, 2, 1, 0))


def test_longest_path_length_examples():
    assert longest_path_length(P4) == 3
    assert longest_path_length(CLAW) == 2
    assert longest_path_length(FIG2) == 6


def test_length_dp_oracle_agrees_on_examples():
    for g in (P4, K3, CLAW, FIG2):
        assert longest_path_length(g) == longest_path_length_dp(g)


def test_length_dp_oracle_agrees_on_catalog(connected_catalog):
    for graphs in connected_catalog.values():
        for g in graphs:
            assert longest_path_length(g) == longest_path_length_dp(g)


def test_enumerate_examples():
    assert [p.vertices for p in enumerate_longest_paths(P4).paths] == [(0, 1, 2, 3)]
    assert [p.vertices for p in enumerate_longest_paths(K3).paths] == [
        (0, 1, 2),
        (0, 2, 1),
        (1, 0, 2),
    ]
    assert [p.vertices for p in enumerate_longest_paths(CLAW).paths] == [
        (1, 0, 2),
        (1, 0, 3),
        (2, 0, 3),
    ]


def test_enumerate_edgeless_and_single():
    single = graph_from_edges(1, [])
    lps = enumerate_longest_paths(single)
    assert lps.length == 0 and [p.vertices for p in lps.paths] == [(0,)]
    empty3 = graph_from_edges(3, [])
    lps = enumerate_longest_paths(empty3)
    assert lps.length == 0 and len(lps.paths) == 3


def test_no_reversed_duplicates(connected_catalog):
    for graphs in connected_catalog.values():
        for g in graphs:
            seen = set()
            for p in enumerate_longest_paths(g).paths:
                assert p.vertices not in seen
                assert tuple(reversed(p.vertices)) not in seen
                seen.add(p.vertices)


def test_all_paths_have_exact_length(connected_catalog):
    for n in (4, 5):
        for g in connected_catalog[n]:
            lps = enumerate_longest_paths(g)
            for p in lps.paths:
                assert p.length == lps.length
                assert is_valid_path(g, p.vertices)


def test_maximality_no_endpoint_extension(connected_catalog):
    for n in (4, 5, 6):
        for g in connected_catalog[n]:
            lps = enumerate_longest_paths(g)
            for p in lps.paths:
                used = p.vertex_set
                for end in (p.vertices[0], p.vertices[-1]):
                    assert all(w in used for w in g.neighbors(end))


def test_start_order_independence(connected_catalog):
    rng = random.Random(11)
    sample = connected_catalog[5][::3] + connected_catalog[6][::17]
    for g in sample:
        base = enumerate_longest_paths(g)
        order = list(range(g.n))
        rng.shuffle(order)
        shuffled = enumerate_longest_paths(g, start_order=order)
        assert [p.vertices for p in base.paths] == [p.vertices for p in shuffled.paths]


def test_pairwise_intersection_up_to_n6(connected_catalog):
    # two longest paths of a connected graph always share a vertex
    for graphs in connected_catalog.values():
        for g in graphs:
            masks = enumerate_longest_paths(g).vertex_masks
            for i in range(len(masks)):
                for j in range(i + 1, len(masks)):
                    assert masks[i] & masks[j]


def test_budget_error_is_loud():
    k8 = graph_from_edges(8, [(i, j) for i in range(8) for j in range(i + 1, 8)])
    with pytest.raises(BudgetExceededError):
        enumerate_longest_paths(k8, budget=100)


def test_is_longest_path_examples():
    assert is_longest_path(P4, path_seq(P4, (0, 1, 2, 3)))
    assert not is_longest_path(P4, path_seq(P4, (0, 1, 2)))
    assert not is_longest_path(K3, path_seq(K3, (0, 1)))
    with pytest.raises(PathValidationError):
        is_longest_path(P4, PathSeq((0, 2)))


def test_vertex_masks_deduplicate():
    lps = enumerate_longest_paths(K3)
    assert len(lps.paths) == 3
    assert len(lps.vertex_masks) == 1
    assert lps.vertex_sets == (frozenset({0, 1, 2}),)


def test_exports():
    lps = enumerate_longest_paths(P4)
    assert paths_to_json(lps.paths) == [[0, 1, 2, 3]]
    dot = path_to_dot(P4, lps.paths[0])
    assert "0 -- 1 [color=red" in dot and "graph G {" in dot
