import random
from itertools import combinations

import pytest

from lptlab.errors import DisconnectedError, InfeasibleError
from lptlab.graphs import graph_from_edges
from lptlab.longest_paths import enumerate_longest_paths
from lptlab.transversal import (
    SetFamily,
    TransversalResult,
    gallai_vertex,
    is_transversal,
    lpt,
    min_hitting_set,
)

P4 = graph_from_edges(4, [(0, 1), (1, 2), (2, 3)])
P5 = graph_from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
C6 = graph_from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
CLAW = graph_from_edges(4, [(0, 1), (0, 2), (0, 3)])


def brute_force_hitting_set(sets):
    """Independent oracle: scan subsets by size then lexicographic order."""
    universe = sorted(set().union(*sets))
    for k in range(1, len(universe) + 1):
        for combo in combinations(universe, k):
            chosen = set(combo)
            if all(chosen & s for s in sets):
                return frozenset(chosen)
    raise AssertionError("no hitting set")


def test_min_hitting_set_examples():
    fam = SetFamily(4, (frozenset({1, 2}), frozenset({2, 3})))
    assert min_hitting_set(fam) == {2}
    fam = SetFamily(3, (frozenset({1}), frozenset({2})))
    assert min_hitting_set(fam) == {1, 2}
    fam = SetFamily(
        5,
        (frozenset({1, 2}), frozenset({3, 4}), frozenset({1, 3}), frozenset({2, 4})),
    )
    got = min_hitting_set(fam)
    assert got == brute_force_hitting_set(fam.sets)
    assert got == {1, 4} and len(got) == 2


def test_min_hitting_set_empty_set_infeasible():
    with pytest.raises(InfeasibleError):
        SetFamily(3, (frozenset(),))


def test_min_hitting_set_against_oracle_random():
    rng = random.Random(123)
    for _ in range(120):
        universe = rng.randint(2, 8)
        sets = []
        for _ in range(rng.randint(1, 6)):
            size = rng.randint(1, universe)
            sets.append(frozenset(rng.sample(range(universe), size)))
        fam = SetFamily(universe, tuple(sets))
        assert min_hitting_set(fam) == brute_force_hitting_set(sets)


def test_lpt_examples():
    r = lpt(P4)
    assert r.size == 1 and r.witness == {0}
    assert lpt(C6).size == 1
    assert isinstance(r, TransversalResult)


def test_lpt_rejects_disconnected():
    g = graph_from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(DisconnectedError):
        lpt(g)
    with pytest.raises(DisconnectedError):
        gallai_vertex(g)


def test_lpt_certificate_hits_each_path():
    r = lpt(C6)
    assert len(r.certificate) >= 1
    for vertices, witness_vertex in r.certificate:
        assert witness_vertex in r.witness
        assert witness_vertex in vertices


def test_is_transversal_examples():
    assert is_transversal(CLAW, {0})
    assert not is_transversal(CLAW, {1})


def test_gallai_examples():
    assert gallai_vertex(CLAW) == 0
    assert gallai_vertex(P5) == 0


def test_witness_minimality(connected_catalog):
    for n in (4, 5, 6):
        for g in connected_catalog[n]:
            lps = enumerate_longest_paths(g)
            r = lpt(g, lps=lps)
            assert is_transversal(g, r.witness, lps=lps)
            for smaller in combinations(sorted(r.witness), r.size - 1):
                assert not is_transversal(g, set(smaller), lps=lps)


def test_lpt_isomorphism_invariant(connected_catalog):
    rng = random.Random(99)
    sample = connected_catalog[5][::4] + connected_catalog[6][::23]
    for g in sample:
        base = lpt(g).size
        for _ in range(3):
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert lpt(g.relabeled(perm)).size == base


def test_lpt_gallai_relationship(connected_catalog):
    for graphs in connected_catalog.values():
        for g in graphs:
            lps = enumerate_longest_paths(g)
            r = lpt(g, lps=lps)
            gv = gallai_vertex(g, lps=lps)
            assert r.size >= 1
            assert (r.size == 1) == (gv is not None)
            if gv is not None:
                assert is_transversal(g, {gv}, lps=lps)
