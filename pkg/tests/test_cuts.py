from itertools import combinations

import pytest

from lptlab.cuts import (
    CutClassification,
    Disposition,
    Extremes,
    classify,
    comp_of,
    s_equivalent,
    touch_count,
)
from lptlab.errors import PathValidationError, PreconditionError
from lptlab.graphs import component_id_map, components_after_removal, graph_from_edges
from lptlab.longest_paths import PathSeq, path_seq

P4 = graph_from_edges(4, [(0, 1), (1, 2), (2, 3)])
C6 = graph_from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
K4 = graph_from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])


def test_touch_count_examples():
    assert touch_count(PathSeq((0, 1, 2, 3)), {1, 3}) == 2
    assert touch_count(PathSeq((0, 1, 2)), set()) == 0
    assert touch_count(PathSeq((0, 1, 2)), {0, 1, 2}) == 3


def test_classify_contains_all():
    c = classify(P4, path_seq(P4, (0, 1, 2, 3)), {1})
    assert c.disposition is Disposition.CONTAINS_ALL
    assert c.touch_count == 1
    assert c.extremes is Extremes.NOT_APPLICABLE
    assert c.component_id is None


def test_classify_fenced_example():
    c = classify(C6, path_seq(C6, (1, 2)), {0, 3})
    assert c.disposition is Disposition.FENCED
    assert c.component_id == 1


def test_classify_crossing_separated_example():
    # oracle: components of C6 - {0,3} are {1,2} and {4,5}
    comps = {frozenset(c) for c in components_after_removal(C6, {0, 3})}
    assert comps == {frozenset({1, 2}), frozenset({4, 5})}
    c = classify(C6, path_seq(C6, (5, 0, 1)), {0, 3})
    assert c.disposition is Disposition.CROSSING
    assert c.extremes is Extremes.SEPARATED


def test_classify_inside():
    c = classify(P4, path_seq(P4, (1, 2)), {0, 1, 2, 3})
    assert c.disposition is Disposition.INSIDE


def test_classify_crossing_joined():
    # s = {0,1,2}; path 3-0-5-1-4 dips into component {5} and returns,
    # with both endpoints in component {3,4} and vertex 2 untouched
    g = graph_from_edges(6, [(3, 0), (0, 5), (5, 1), (1, 4), (3, 4), (2, 0)])
    p = path_seq(g, (3, 0, 5, 1, 4))
    c = classify(g, p, {0, 1, 2})
    assert c.touch_count == 2
    assert c.disposition is Disposition.CROSSING
    assert c.extremes is Extremes.JOINED


def test_classify_validates_path():
    with pytest.raises(PathValidationError):
        classify(P4, PathSeq((0, 2)), {1})


def test_classify_reversal_symmetric(connected_catalog):
    for g in connected_catalog[5]:
        from lptlab.longest_paths import enumerate_longest_paths

        lps = enumerate_longest_paths(g)
        for p in lps.paths[:6]:
            rev = path_seq(g, tuple(reversed(p.vertices)))
            for s in ({0}, {1, 2}, {0, 4}):
                assert classify(g, p, s) == classify(g, rev, s)


def test_fenced_means_one_component(connected_catalog):
    # restates the definition against the component oracle
    from lptlab.longest_paths import enumerate_longest_paths

    for g in connected_catalog[5]:
        lps = enumerate_longest_paths(g)
        subsets = [set(c) for r in range(1, 3) for c in combinations(range(g.n), r)]
        for p in lps.paths[:4]:
            for s in subsets:
                c = classify(g, p, s)
                if c.disposition in (Disposition.FENCED, Disposition.CROSSING):
                    s_mask = sum(1 << v for v in s)
                    ids = {
                        component_id_map(g, s_mask)[v]
                        for v in p.vertices
                        if v not in s
                    }
                    assert (len(ids) == 1) == (c.disposition is Disposition.FENCED)
                    if c.disposition is Disposition.FENCED:
                        assert c.component_id == ids.pop()


def test_crossing_extremes_exactly_one_tag(connected_catalog):
    from lptlab.longest_paths import enumerate_longest_paths

    for g in connected_catalog[5]:
        lps = enumerate_longest_paths(g)
        subsets = [set(c) for c in combinations(range(g.n), 1)] + [
            set(c) for c in combinations(range(g.n), 2)
        ]
        for p in lps.paths:
            for s in subsets:
                c = classify(g, p, s)
                a, b = p.endpoints()
                if c.disposition is Disposition.CROSSING and a not in s and b not in s:
                    assert c.extremes in (Extremes.JOINED, Extremes.SEPARATED)
                else:
                    assert c.extremes is Extremes.NOT_APPLICABLE


def test_comp_of_examples():
    assert comp_of(C6, {0, 3}, {1}) == frozenset({1})
    assert len(comp_of(C6, {0, 3}, {1, 4})) == 2
    assert comp_of(P4, {1}, {2, 3}) == frozenset({2})
    with pytest.raises(PreconditionError):
        comp_of(P4, {1, 2}, {1})


def test_s_equivalent_examples():
    p = PathSeq((0, 1, 2))
    q = PathSeq((2, 3))
    assert s_equivalent(p, q, {2})
    assert not s_equivalent(p, q, {2, 0})
    assert s_equivalent(p, q, set())


def test_classification_is_frozen():
    c = CutClassification(0, Disposition.INSIDE, Extremes.NOT_APPLICABLE)
    with pytest.raises(Exception):
        c.touch_count = 5  # type: ignore[misc]
