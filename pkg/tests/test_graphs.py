import random
from itertools import combinations, permutations

import pytest

from lptlab.errors import Graph6Error, GraphConstructionError, UnsupportedSizeError
from lptlab.graphs import (
    Graph,
    _bipartite_canon_key,
    _min_codes_bruteforce,
    _min_column_codes,
    canonical_form,
    canonical_graph,
    components_after_removal,
    connected_components,
    enumerate_connected_bipartite_graphs,
    enumerate_connected_graphs,
    enumerate_graphs,
    graph_from_bitstring,
    graph_from_edges,
    is_connected,
    parse_edge_list,
    parse_graph6,
    read_graph6_file,
    write_edge_list,
    write_graph6,
)

K3 = graph_from_edges(3, [(0, 1), (1, 2), (0, 2)])
P3 = graph_from_edges(3, [(0, 1), (1, 2)])
P4 = graph_from_edges(4, [(0, 1), (1, 2), (2, 3)])
K4 = graph_from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
C6 = graph_from_edges(6, [(i, (i + 1) % 6) for i in range(6)])


def reference_graph6(g: Graph) -> str:
    """Independent encoder straight from the format definition: byte n+63,
    then upper-triangle bits in column order packed six per byte, each
    group value +63, zero padding."""
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append("1" if g.has_edge(i, j) else "0")
    while len(bits) % 6:
        bits.append("0")
    out = chr(g.n + 63)
    for k in range(0, len(bits), 6):
        out += chr(int("".join(bits[k : k + 6]), 2) + 63)
    return out


# -- construction ------------------------------------------------------

def test_graph_from_edges_examples():
    assert K3.edges() == [(0, 1), (0, 2), (1, 2)]
    assert P4.edges() == [(0, 1), (1, 2), (2, 3)]
    assert graph_from_edges(1, []).n == 1
    dup = graph_from_edges(3, [(0, 1), (1, 0), (0, 1)])
    assert dup.m == 1


def test_graph_from_edges_errors():
    with pytest.raises(GraphConstructionError, match=r"\(0, 3\)"):
        graph_from_edges(3, [(0, 3)])
    with pytest.raises(GraphConstructionError, match="loop"):
        graph_from_edges(3, [(1, 1)])


def test_graph_invariants_on_catalog(connected_catalog):
    for graphs in connected_catalog.values():
        for g in graphs:
            for u in range(g.n):
                assert not g.has_edge(u, u)
                for v in range(g.n):
                    assert g.has_edge(u, v) == g.has_edge(v, u)


def test_graph_is_immutable():
    with pytest.raises(Exception):
        K3.n = 5  # type: ignore[misc]


# -- graph6 ------------------------------------------------------------

def test_graph6_hand_encoded_oracle():
    assert reference_graph6(K3) == "Bw"
    assert reference_graph6(P3) == "Bg"
    assert reference_graph6(graph_from_edges(1, [])) == "@"


def test_parse_graph6_examples():
    assert parse_graph6("Bw") == K3
    assert parse_graph6("Bg") == P3
    assert parse_graph6("@") == graph_from_edges(1, [])


def test_write_graph6_examples():
    assert write_graph6(K3) == "Bw"
    assert write_graph6(P3) == "Bg"
    assert write_graph6(graph_from_edges(1, [])) == "@"


def test_graph6_matches_reference_encoder(connected_catalog):
    for graphs in connected_catalog.values():
        for g in graphs:
            assert write_graph6(g) == reference_graph6(g)


def test_graph6_round_trip_on_catalog(connected_catalog):
    for graphs in connected_catalog.values():
        for g in graphs:
            assert parse_graph6(write_graph6(g)) == g


def test_graph6_errors():
    with pytest.raises(Graph6Error, match="offset 2"):
        parse_graph6("Bww")  # trailing garbage
    with pytest.raises(Graph6Error, match="too short"):
        parse_graph6("D")  # n=5 needs data bytes
    with pytest.raises(Graph6Error, match="offset 1"):
        parse_graph6("B" + chr(30))  # byte outside 63..126
    with pytest.raises(Graph6Error, match="multi-byte"):
        parse_graph6("~??")
    with pytest.raises(Graph6Error, match="padding"):
        parse_graph6("B" + chr(63 + 1))  # nonzero bit in the padding tail
    with pytest.raises(UnsupportedSizeError):
        write_graph6(Graph(63, tuple([0] * 63)))


def test_read_graph6_file():
    text = "Bw\nBg\n\n@\n"
    graphs = read_graph6_file(text)
    assert graphs == [K3, P3, graph_from_edges(1, [])]


def test_edge_list_round_trip():
    text = write_edge_list(P4)
    assert text == "4 3\n0 1\n1 2\n2 3\n"
    assert parse_edge_list(text) == P4


# -- components --------------------------------------------------------

def test_connected_components_examples():
    assert connected_components(P4) == [[0, 1, 2, 3]]
    two_k2 = graph_from_edges(4, [(0, 1), (2, 3)])
    assert connected_components(two_k2) == [[0, 1], [2, 3]]
    empty3 = graph_from_edges(3, [])
    assert connected_components(empty3) == [[0], [1], [2]]


def test_components_after_removal_examples():
    assert components_after_removal(P4, {1}) == [[0], [2, 3]]
    assert components_after_removal(K4, {0, 1}) == [[2, 3]]
    assert components_after_removal(C6, {0, 3}) == [[1, 2], [4, 5]]


# -- enumeration -------------------------------------------------------

def test_connected_counts_match_published_values(connected_catalog):
    # connected graphs up to isomorphism: 1, 1, 2, 6, 21, 112 for n = 1..6
    expected = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112}
    for n, want in expected.items():
        assert len(connected_catalog[n]) == want


def test_connected_count_n7():
    assert sum(1 for _ in enumerate_connected_graphs(7)) == 853


def test_all_graph_counts_match_published_values():
    # all graphs up to isomorphism: 1, 2, 4, 11, 34, 156 for n = 1..6
    expected = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156}
    for n, want in expected.items():
        assert sum(1 for _ in enumerate_graphs(n)) == want


def test_enumeration_cross_checked_against_atlas():
    # independent oracle: the networkx graph atlas
    import networkx as nx
    from networkx.generators.atlas import graph_atlas_g

    atlas_connected = {n: 0 for n in range(1, 7)}
    for G in graph_atlas_g()[1:]:
        n = G.number_of_nodes()
        if 1 <= n <= 6 and n and nx.is_connected(G):
            atlas_connected[n] += 1
    for n in range(1, 7):
        assert atlas_connected[n] == sum(1 for _ in enumerate_connected_graphs(n))


def test_labeled_enumeration_mask_ascending():
    labeled = list(enumerate_connected_graphs(3, dedup=False))
    # connected labeled graphs on 3 vertices: three paths and the triangle
    assert len(labeled) == 4
    masks = [sum(1 << k for k, (i, j) in enumerate([(0, 1), (0, 2), (1, 2)]) if g.has_edge(i, j))
             for g in labeled]
    assert masks == sorted(masks)


def test_enumeration_rejects_out_of_range():
    with pytest.raises(UnsupportedSizeError):
        list(enumerate_connected_graphs(0))
    with pytest.raises(UnsupportedSizeError):
        list(enumerate_connected_graphs(10))


def test_dedup_representatives_are_canonical(connected_catalog):
    for graphs in connected_catalog.values():
        for g in graphs:
            assert canonical_graph(g) == g


# -- canonical forms ---------------------------------------------------

def test_canonical_form_identifies_isomorphic_p3():
    a = graph_from_edges(3, [(0, 1), (1, 2)])
    b = graph_from_edges(3, [(1, 0), (0, 2)])
    assert canonical_form(a) == canonical_form(b)


def test_canonical_form_separates_p3_k3():
    assert canonical_form(P3) != canonical_form(K3)


def test_canonical_form_permutation_invariant():
    rng = random.Random(42)
    for g in (P4, K4, C6, graph_from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])):
        base = canonical_form(g)
        for _ in range(10):
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert canonical_form(g.relabeled(perm)) == base


def test_canonical_form_equals_bruteforce_minimum(connected_catalog):
    for n in range(2, 6):
        for g in connected_catalog[n]:
            assert _min_column_codes(g) == _min_codes_bruteforce(g)


def test_canonical_form_injective_up_to_n6():
    # as many distinct forms as isomorphism classes, exhaustively
    for n, classes in ((4, 11), (5, 34), (6, 156)):
        forms = {canonical_form(g) for g in enumerate_graphs(n)}
        assert len(forms) == classes


def test_canonical_size_cap():
    with pytest.raises(UnsupportedSizeError):
        canonical_form(Graph(10, tuple([0] * 10)))


def test_graph_from_bitstring_round_trip(connected_catalog):
    for g in connected_catalog[5]:
        assert graph_from_bitstring(5, canonical_form(g)) == canonical_graph(g)


# -- bipartite catalog ---------------------------------------------------

def _is_bipartite(g: Graph) -> bool:
    color = {}
    for s in range(g.n):
        if s in color:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in g.neighbors(u):
                if v not in color:
                    color[v] = 1 - color[u]
                    stack.append(v)
                elif color[v] == color[u]:
                    return False
    return True


def test_bipartite_counts_match_general_catalog(connected_catalog):
    for n in range(1, 7):
        via_general = sum(1 for g in connected_catalog[n] if _is_bipartite(g))
        via_bipartite = sum(1 for _ in enumerate_connected_bipartite_graphs(n))
        assert via_general == via_bipartite


def test_bipartite_counts_published():
    # connected bipartite graphs up to isomorphism, n = 1..8
    expected = [1, 1, 1, 3, 5, 17, 44, 182]
    got = [sum(1 for _ in enumerate_connected_bipartite_graphs(n)) for n in range(1, 9)]
    assert got == expected


def test_bipartite_members_are_bipartite_and_deduplicated():
    seen = set()
    for g in enumerate_connected_bipartite_graphs(7):
        assert is_connected(g) and _is_bipartite(g)
        form = canonical_form(g)
        assert form not in seen
        seen.add(form)


def test_bipartite_canon_key_invariance():
    rng = random.Random(5)
    for _ in range(40):
        p, q = rng.randint(1, 3), rng.randint(2, 4)
        rows = tuple(rng.randint(1, (1 << q) - 1) for _ in range(p))
        base = _bipartite_canon_key(p, q, tuple(sorted(rows)))
        for perm in permutations(range(p)):
            shuffled = tuple(sorted(rows[i] for i in perm))
            assert _bipartite_canon_key(p, q, shuffled) == base
