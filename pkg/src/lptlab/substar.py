"""Full substar intersection models over host trees and their checks.

A full substar centered at host node x keeps at least d(x) - 1 of x's
neighbors as leaves; the intersection graphs of such star families are the
full substar graphs (a subclass of chordal graphs, being intersection
graphs of subtrees).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Iterator

from .errors import (
    DisconnectedError,
    PreconditionError,
    StructureError,
    UnsupportedSizeError,
    ValidationError,
)
from .graphs import Graph, graph_from_edges, is_connected
from .longest_paths import DEFAULT_BUDGET, LongestPathSet, enumerate_longest_paths
from .transversal import gallai_vertex, lpt
from .treedec import check_is_tree

MAX_HOST_NODES = 7
MAX_STAR_COUNT = 8


@dataclass(frozen=True)
class HostTree:
    nodes: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        check_is_tree(self.nodes, self.edges)

    def neighbors(self, x: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == x:
                out.append(b)
            elif b == x:
                out.append(a)
        return sorted(out)

    def degree(self, x: int) -> int:
        return len(self.neighbors(x))

    def branch_nodes(self, x: int, y: int) -> frozenset[int]:
        """Nodes of the component of T - x containing y."""
        if y == x or not 0 <= y < self.nodes:
            raise PreconditionError(f"bad branch query ({x}, {y})")
        adj = {v: self.neighbors(v) for v in range(self.nodes)}
        seen = {y}
        stack = [y]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w != x and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return frozenset(seen)


@dataclass(frozen=True)
class Star:
    center: int
    leaves: frozenset[int]

    @property
    def vertex_set(self) -> frozenset[int]:
        return self.leaves | {self.center}


@dataclass(frozen=True)
class SubstarModel:
    host: HostTree
    stars: tuple[Star, ...]


def validate_model(m: SubstarModel) -> None:
    """Fullness and leaf containment for every star."""
    for i, star in enumerate(m.stars):
        if not 0 <= star.center < m.host.nodes:
            raise ValidationError(f"star {i}: center {star.center} outside the host tree")
        nbrs = set(m.host.neighbors(star.center))
        if not star.leaves <= nbrs:
            raise ValidationError(f"star {i}: leaves {sorted(star.leaves)} not all adjacent to center")
        if len(star.leaves) < m.host.degree(star.center) - 1:
            raise ValidationError(
                f"star {i}: only {len(star.leaves)} leaves at a center of degree "
                f"{m.host.degree(star.center)}; not a full substar"
            )


def intersection_graph(m: SubstarModel) -> Graph:
    """Vertices are the stars; adjacent iff their host vertex sets meet."""
    validate_model(m)
    sets = [s.vertex_set for s in m.stars]
    edges = []
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if sets[i] & sets[j]:
                edges.append((i, j))
    return graph_from_edges(len(sets), edges)


def center_sets(m: SubstarModel, x: int, y: int) -> tuple[frozenset[int], frozenset[int]]:
    """(C_X, C^X_Y): graph vertices centered at x, and centered in the
    branch of T - x holding y.  Requires y adjacent to x."""
    if y not in m.host.neighbors(x):
        raise PreconditionError(f"{y} is not a host neighbor of {x}")
    branch = m.host.branch_nodes(x, y)
    c_x = frozenset(i for i, s in enumerate(m.stars) if s.center == x)
    c_xy = frozenset(i for i, s in enumerate(m.stars) if s.center in branch)
    return c_x, c_xy


@dataclass(frozen=True)
class SubstarVerdict:
    holds: bool
    evidence: dict


def check_previous_onebranch(m: SubstarModel, lps: LongestPathSet | None = None,
                             budget: int = DEFAULT_BUDGET) -> SubstarVerdict:
    """For every star vertex x (centered at X) and every longest path P
    avoiding x, some host neighbor Y of X satisfies: V(P) inside
    C^X_Y union C_X, at most one vertex of C_X on P, and if exactly one
    then Y is outside the star of x."""
    g = intersection_graph(m)
    if not is_connected(g):
        raise DisconnectedError("lemma check needs a connected intersection graph")
    if lps is None:
        lps = enumerate_longest_paths(g, budget)
    path_sets = lps.vertex_sets
    checked = 0
    for x_vertex, star in enumerate(m.stars):
        big_x = star.center
        nbrs = m.host.neighbors(big_x)
        c_x = frozenset(i for i, s in enumerate(m.stars) if s.center == big_x)
        for pset in path_sets:
            if x_vertex in pset:
                continue
            checked += 1
            if len(pset & c_x) > 1:
                return SubstarVerdict(
                    False,
                    {"x": x_vertex, "path_set": sorted(pset), "reason": "two C_X vertices"},
                )
            ok = False
            for y in nbrs:
                _, c_xy = center_sets(m, big_x, y)
                if not pset <= (c_xy | c_x):
                    continue
                if len(pset & c_x) == 1 and y in star.vertex_set:
                    continue
                ok = True
                break
            if not ok:
                return SubstarVerdict(
                    False,
                    {"x": x_vertex, "path_set": sorted(pset), "reason": "no qualifying branch"},
                )
    return SubstarVerdict(True, {"instances_checked": checked})


def check_substar_theorem(m: SubstarModel, lps: LongestPathSet | None = None,
                          budget: int = DEFAULT_BUDGET) -> SubstarVerdict:
    """lpt = 1 for a connected full substar graph, with the per-node
    branch-confinement record feeding the contrapositive reading of the
    one-branch lemma: a node with no branch-confined longest path forces
    lpt = 1."""
    g = intersection_graph(m)
    if not is_connected(g):
        raise DisconnectedError("theorem check needs a connected intersection graph")
    if lps is None:
        lps = enumerate_longest_paths(g, budget)
    result = lpt(g, lps=lps, budget=budget)
    gallai = gallai_vertex(g, lps=lps, budget=budget)
    per_node = {}
    for big_x in range(m.host.nodes):
        confined = False
        for y in m.host.neighbors(big_x):
            _, c_xy = center_sets(m, big_x, y)
            if any(pset <= c_xy for pset in lps.vertex_sets):
                confined = True
                break
        c_x_empty = all(s.center != big_x for s in m.stars)
        per_node[big_x] = {"branch_confined": confined, "c_x_empty": c_x_empty}
    contrapositive_ok = all(
        rec["branch_confined"] or result.size == 1 for rec in per_node.values()
    )
    return SubstarVerdict(
        result.size == 1 and contrapositive_ok,
        {
            "lpt": result.size,
            "gallai": gallai,
            "per_node": per_node,
        },
    )


def star_types(host: HostTree) -> list[Star]:
    """All full substars of the host: per center, the full neighborhood or
    any all-but-one leaf subset, leaf subsets in lexicographic order."""
    out = []
    for x in range(host.nodes):
        nbrs = host.neighbors(x)
        d = len(nbrs)
        subsets = set()
        subsets.add(tuple(nbrs))
        if d >= 1:
            for sub in combinations(nbrs, d - 1):
                subsets.add(sub)
        for sub in sorted(subsets):
            out.append(Star(x, frozenset(sub)))
    return out


def enumerate_models(host: HostTree, star_count: int,
                     allow_twins: bool = True) -> Iterator[SubstarModel]:
    """All models with the given star count, fullness enforced by
    construction; deterministic order.  With allow_twins off, models with
    two stars of identical host vertex set are suppressed."""
    if host.nodes > MAX_HOST_NODES:
        raise UnsupportedSizeError(f"host trees supported up to {MAX_HOST_NODES} nodes")
    if star_count > MAX_STAR_COUNT:
        raise UnsupportedSizeError(f"star count supported up to {MAX_STAR_COUNT}")
    if star_count <= 0:
        return
    types = star_types(host)
    for combo in combinations_with_replacement(range(len(types)), star_count):
        stars = tuple(types[i] for i in combo)
        if not allow_twins:
            sets = [s.vertex_set for s in stars]
            if len(set(sets)) != len(sets):
                continue
        yield SubstarModel(host, stars)


@lru_cache(maxsize=None)
def enumerate_host_trees(max_nodes: int) -> tuple[HostTree, ...]:
    """Non-isomorphic trees with 1..max_nodes nodes."""
    if max_nodes > MAX_HOST_NODES:
        raise UnsupportedSizeError(f"host trees supported up to {MAX_HOST_NODES} nodes")
    from .graphs import enumerate_graphs, is_connected as g_connected

    out = []
    for m in range(1, max_nodes + 1):
        for g in enumerate_graphs(m):
            if g.m == m - 1 and g_connected(g):
                out.append(HostTree(m, tuple(g.edges())))
    return tuple(out)


# -- model text format -------------------------------------------------

def write_model(m: SubstarModel) -> str:
    """Host node count, host edge list, then one star per line:
    "name center leaf leaf ..."."""
    lines = [str(m.host.nodes)]
    lines.extend(f"{a} {b}" for a, b in m.host.edges)
    for i, s in enumerate(m.stars):
        parts = [f"s{i}", str(s.center)] + [str(v) for v in sorted(s.leaves)]
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def parse_model(text: str) -> SubstarModel:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValidationError("empty model text")
    nodes = int(lines[0])
    edges = []
    stars = []
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0].isdigit():
            if len(parts) != 2:
                raise ValidationError(f"bad host edge line {ln!r}")
            edges.append((int(parts[0]), int(parts[1])))
        else:
            center = int(parts[1])
            leaves = frozenset(int(x) for x in parts[2:])
            stars.append(Star(center, leaves))
    host = HostTree(nodes, tuple(edges))
    model = SubstarModel(host, tuple(stars))
    validate_model(model)
    return model
