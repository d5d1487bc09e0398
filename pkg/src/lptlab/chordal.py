"""Chordal recognition, clique machinery, and the clique-lemma checkers.

The two clique lemmas (at most two nonequivalent extreme-joined 2-touching
longest paths; pairwise common clique vertex for the extreme-separated
ones) hold for arbitrary graphs; the fenced-path case split and the main
bound lpt <= max(1, omega - 2) need chordality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .cuts import Disposition, Extremes, classify
from .errors import (
    DisconnectedError,
    NotChordalError,
    PreconditionError,
    ValidationError,
)
from .graphs import Graph, bits, is_connected, popcount
from .longest_paths import DEFAULT_BUDGET, LongestPathSet, PathSeq, enumerate_longest_paths
from .transversal import lpt
from .treedec import TreeDecomposition


@dataclass(frozen=True)
class EliminationOrdering:
    """Perfect elimination ordering: order[0] is eliminated first, and every
    vertex's neighbors later in the order form a clique."""

    order: tuple[int, ...]


def _mcs_order(g: Graph) -> list[int]:
    """Maximum-cardinality search visit order, ties to the smallest id."""
    weights = [0] * g.n
    visited = 0
    visit = []
    for _ in range(g.n):
        best_v = -1
        best_w = -1
        for v in range(g.n):
            if visited >> v & 1:
                continue
            if weights[v] > best_w:
                best_w = weights[v]
                best_v = v
        visit.append(best_v)
        visited |= 1 << best_v
        for u in bits(g.rows[best_v] & ~visited):
            weights[u] += 1
    return visit


def is_perfect_elimination_ordering(g: Graph, order: Iterable[int]) -> bool:
    order = list(order)
    if sorted(order) != list(range(g.n)):
        return False
    pos = {v: i for i, v in enumerate(order)}
    for i, v in enumerate(order):
        later = [u for u in bits(g.rows[v]) if pos[u] > i]
        for a in range(len(later)):
            for b in range(a + 1, len(later)):
                if not g.has_edge(later[a], later[b]):
                    return False
    return True


def is_chordal(g: Graph) -> EliminationOrdering | None:
    """A perfect elimination ordering via maximum-cardinality search, or None."""
    order = tuple(reversed(_mcs_order(g)))
    if is_perfect_elimination_ordering(g, order):
        return EliminationOrdering(order)
    return None


def maximal_cliques_chordal(g: Graph, peo: EliminationOrdering) -> tuple[list[frozenset[int]], int]:
    """All maximal cliques of a chordal graph plus omega.

    Every maximal clique appears as some vertex together with its later
    neighbors in the ordering; the rest is a maximality filter.
    """
    if not is_perfect_elimination_ordering(g, peo.order):
        raise ValidationError("ordering is not a perfect elimination ordering for this graph")
    pos = {v: i for i, v in enumerate(peo.order)}
    candidates = []
    for i, v in enumerate(peo.order):
        clique = frozenset({v} | {u for u in bits(g.rows[v]) if pos[u] > i})
        candidates.append(clique)
    maximal = [
        c for c in candidates
        if not any(c < other for other in candidates)
    ]
    uniq = sorted(set(maximal), key=sorted)
    omega = max((len(c) for c in uniq), default=0)
    return uniq, omega


def build_clique_tree(g: Graph, peo: EliminationOrdering) -> TreeDecomposition:
    """Clique tree: bags are exactly the maximal cliques, joined by a
    maximum-weight spanning tree on intersection sizes (ties by smallest
    bag indices)."""
    if not is_connected(g):
        raise DisconnectedError("clique tree needs a connected graph")
    cliques, _ = maximal_cliques_chordal(g, peo)
    k = len(cliques)
    if k == 1:
        return TreeDecomposition(1, (), (cliques[0],))
    weighted = []
    for i in range(k):
        for j in range(i + 1, k):
            weighted.append((-len(cliques[i] & cliques[j]), i, j))
    weighted.sort()
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    for _, i, j in weighted:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            edges.append((i, j))
            if len(edges) == k - 1:
                break
    return TreeDecomposition(k, tuple(edges), tuple(cliques))


def clique_number(g: Graph) -> int:
    """omega(G) by branch and bound; brute force is fine at desk scale."""
    best = 0

    def grow(clique_size: int, allowed: int):
        nonlocal best
        if clique_size + popcount(allowed) <= best:
            return
        if not allowed:
            if clique_size > best:
                best = clique_size
            return
        v = (allowed & -allowed).bit_length() - 1
        grow(clique_size + 1, allowed & g.rows[v] & ~(1 << v))
        grow(clique_size, allowed & ~(1 << v))

    grow(0, g.vertex_mask)
    return best


def all_cliques(g: Graph, min_size: int = 1) -> Iterator[frozenset[int]]:
    """Every clique of g with at least min_size vertices, ascending by the
    sorted vertex tuple."""
    out = []

    def grow(current: tuple[int, ...], allowed: int):
        if len(current) >= min_size:
            out.append(frozenset(current))
        for v in bits(allowed):
            grow(current + (v,), allowed & g.rows[v] & ~((1 << (v + 1)) - 1))

    grow((), g.vertex_mask)
    yield from sorted(out, key=sorted)


def _require_clique(g: Graph, k: frozenset[int]) -> None:
    members = sorted(k)
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            if not g.has_edge(members[i], members[j]):
                raise PreconditionError(f"{members[i]} and {members[j]} are not adjacent; K is not a clique")


@dataclass(frozen=True)
class LemmaVerdict:
    holds: bool
    clique: frozenset[int]
    evidence: dict


def check_lemma_extreme_join(g: Graph, k: Iterable[int], lps: LongestPathSet) -> LemmaVerdict:
    """Longest paths that cross K, 2-touch K and are extreme-joined fall
    into at most two K-equivalence classes (classes = touched pairs)."""
    k = frozenset(k)
    _require_clique(g, k)
    classes: dict[frozenset[int], PathSeq] = {}
    for p in lps.paths:
        c = classify(g, p, k)
        if (
            c.disposition is Disposition.CROSSING
            and c.touch_count == 2
            and c.extremes is Extremes.JOINED
        ):
            touched = p.vertex_set & k
            classes.setdefault(touched, p)
    holds = len(classes) <= 2
    evidence = {
        "class_count": len(classes),
        "touched_pairs": sorted(sorted(t) for t in classes),
    }
    if not holds:
        evidence["offending_paths"] = [list(classes[key].vertices) for key in sorted(classes, key=sorted)]
    return LemmaVerdict(holds, k, evidence)


def check_lemma_extreme_separated(g: Graph, k: Iterable[int], lps: LongestPathSet) -> LemmaVerdict:
    """Every two longest paths extreme-separated by K touching K at most
    twice share a vertex of K."""
    k = frozenset(k)
    _require_clique(g, k)
    qualifying = []
    for p in lps.paths:
        c = classify(g, p, k)
        if c.extremes is Extremes.SEPARATED and c.touch_count <= 2:
            qualifying.append(p)
    for i in range(len(qualifying)):
        pi = qualifying[i].vertex_set & k
        for j in range(i + 1, len(qualifying)):
            if not pi & qualifying[j].vertex_set:
                return LemmaVerdict(
                    False,
                    k,
                    {
                        "offending_pair": [
                            list(qualifying[i].vertices),
                            list(qualifying[j].vertices),
                        ]
                    },
                )
    return LemmaVerdict(True, k, {"qualifying_count": len(qualifying)})


def check_lemma_fenceds(
    g: Graph,
    k: Iterable[int],
    lps: LongestPathSet | None = None,
    lpt_value: int | None = None,
    omega: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> LemmaVerdict:
    """The four-way case split for a clique of a connected chordal graph:
    (a) the global bound already holds, (b) some longest path misses K,
    (c) a fenced 1-touch vertex with no crossing 1-touch companion,
    (d) the same for an edge and 2-touching paths.  Branches (c) and (d)
    are read as conjunctions; both sub-flags land in the evidence."""
    k = frozenset(k)
    if not k:
        raise PreconditionError("K must be a nonempty clique")
    if not is_connected(g):
        raise DisconnectedError("fenced-path lemma needs a connected graph")
    if is_chordal(g) is None:
        raise NotChordalError("fenced-path lemma needs a chordal graph")
    _require_clique(g, k)
    if lps is None:
        lps = enumerate_longest_paths(g, budget)
    if omega is None:
        omega = clique_number(g)
    if lpt_value is None:
        lpt_value = lpt(g, lps=lps, budget=budget).size

    branch_a = lpt_value <= max(1, omega - 2)

    infos = [(p, classify(g, p, k)) for p in lps.paths]
    branch_b = any(c.touch_count == 0 for _, c in infos)

    branch_c = False
    c_witness = None
    c_subflags = None
    for v in sorted(k):
        fenced_here = any(
            c.touch_count == 1 and v in p.vertex_set and c.disposition is Disposition.FENCED
            for p, c in infos
        )
        crossing_here = any(
            c.touch_count == 1 and v in p.vertex_set and c.disposition is Disposition.CROSSING
            for p, c in infos
        )
        if fenced_here and not crossing_here:
            branch_c = True
            c_witness = v
            c_subflags = {"fenced_exists": fenced_here, "no_crossing": not crossing_here}
            break

    branch_d = False
    d_witness = None
    d_subflags = None
    members = sorted(k)
    for a in range(len(members)):
        for b in range(a + 1, len(members)):
            pair = frozenset((members[a], members[b]))
            fenced_here = any(
                c.touch_count == 2
                and p.vertex_set & k == pair
                and c.disposition is Disposition.FENCED
                for p, c in infos
            )
            crossing_here = any(
                c.touch_count == 2
                and p.vertex_set & k == pair
                and c.disposition is Disposition.CROSSING
                for p, c in infos
            )
            if fenced_here and not crossing_here:
                branch_d = True
                d_witness = (members[a], members[b])
                d_subflags = {"fenced_exists": fenced_here, "no_crossing": not crossing_here}
                break
        if branch_d:
            break

    holds = branch_a or branch_b or branch_c or branch_d
    return LemmaVerdict(
        holds,
        k,
        {
            "a": branch_a,
            "b": branch_b,
            "c": branch_c,
            "d": branch_d,
            "lpt": lpt_value,
            "omega": omega,
            "c_witness": c_witness,
            "c_subflags": c_subflags,
            "d_witness": d_witness,
            "d_subflags": d_subflags,
        },
    )


def check_chordal_theorem(
    g: Graph,
    lps: LongestPathSet | None = None,
    lpt_value: int | None = None,
    omega: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> LemmaVerdict:
    """lpt(G) <= max(1, omega(G) - 2) for connected chordal G."""
    if not is_connected(g):
        raise DisconnectedError("chordal bound needs a connected graph")
    if is_chordal(g) is None:
        raise NotChordalError("chordal bound needs a chordal graph")
    if omega is None:
        omega = clique_number(g)
    if lpt_value is None:
        lpt_value = lpt(g, lps=lps, budget=budget).size
    bound = max(1, omega - 2)
    return LemmaVerdict(
        lpt_value <= bound,
        frozenset(),
        {"lpt": lpt_value, "omega": omega, "bound": bound},
    )
