"""Exact longest-path length and exhaustive enumeration of all longest paths.

The enumerator is the oracle every theorem check consumes, so it is exact
by construction: depth-first search from every start vertex, pruned only
by a sound reachability upper bound, with an explicit node-expansion
budget instead of silent truncation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceededError, PathValidationError
from .graphs import Graph, _flood, bits, popcount

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class PathSeq:
    """A vertex-simple path as an ordered vertex sequence.

    Canonical orientation: first vertex id < last vertex id (single-vertex
    paths exempt).  Use path_seq() to validate against a graph.
    """

    vertices: tuple[int, ...]

    def __post_init__(self):
        if not self.vertices:
            raise PathValidationError("empty vertex sequence")
        if len(self.vertices) > 1 and self.vertices[0] > self.vertices[-1]:
            raise PathValidationError(
                f"non-canonical orientation: {self.vertices[0]} > {self.vertices[-1]}"
            )

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @property
    def mask(self) -> int:
        out = 0
        for v in self.vertices:
            out |= 1 << v
        return out

    def endpoints(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self):
        return len(self.vertices)


def canonical_orientation(vertices: tuple[int, ...]) -> tuple[int, ...]:
    if len(vertices) > 1 and vertices[0] > vertices[-1]:
        return tuple(reversed(vertices))
    return tuple(vertices)


def path_seq(g: Graph, vertices) -> PathSeq:
    """Validated PathSeq over g, normalized to canonical orientation."""
    vertices = tuple(vertices)
    if not vertices:
        raise PathValidationError("empty vertex sequence")
    if len(set(vertices)) != len(vertices):
        raise PathValidationError(f"repeated vertex in {vertices}")
    for v in vertices:
        if not 0 <= v < g.n:
            raise PathValidationError(f"vertex {v} out of range for n={g.n}")
    for a, b in zip(vertices, vertices[1:]):
        if not g.has_edge(a, b):
            raise PathValidationError(f"({a}, {b}) is not an edge")
    return PathSeq(canonical_orientation(vertices))


def is_valid_path(g: Graph, vertices) -> bool:
    try:
        path_seq(g, vertices)
    except PathValidationError:
        return False
    return True


@dataclass(frozen=True)
class LongestPathSet:
    """All longest paths of a graph: exact, reversal-deduplicated, sorted."""

    length: int
    paths: tuple[PathSeq, ...]
    vertex_masks: tuple[int, ...]

    @property
    def vertex_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(bits(m)) for m in self.vertex_masks)

    def __len__(self):
        return len(self.paths)


class _Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self):
        self.used += 1
        if self.used > self.limit:
            raise BudgetExceededError("longest-path search budget exceeded", self.used)


def _reach_bound(rows, v: int, unvisited: int) -> int:
    """Number of vertices on any extension from v: v plus what it can still reach."""
    return popcount(_flood(rows, v, unvisited))


def longest_path_length(g: Graph, budget: int = DEFAULT_BUDGET, start_order=None) -> int:
    """Exact L(G) in edges; 0 for edgeless graphs."""
    if g.n < 1:
        raise PathValidationError("longest path length needs n >= 1")
    return _longest_length_pass(g, _Budget(budget), start_order)[0]


def _longest_length_pass(g: Graph, budget: _Budget, start_order=None):
    rows = g.rows
    full = g.vertex_mask
    best = 0
    order = list(start_order) if start_order is not None else list(range(g.n))

    def dfs(v: int, visited: int, length: int):
        nonlocal best
        budget.spend()
        if length > best:
            best = length
        unvisited = full & ~visited
        ext = rows[v] & unvisited
        if not ext:
            return
        if length + popcount(unvisited) <= best:
            return
        if length + _reach_bound(rows, v, unvisited) - 1 <= best:
            return
        for w in bits(ext):
            dfs(w, visited | 1 << w, length + 1)

    for s in order:
        dfs(s, 1 << s, 0)
    return best, budget


def enumerate_longest_paths(
    g: Graph, budget: int = DEFAULT_BUDGET, start_order=None
) -> LongestPathSet:
    """Complete duplicate-free set of longest paths, lexicographically sorted.

    Two passes sharing one budget: the first finds L(G), the second collects
    every path of that exact length.  Exceeding the budget raises, never
    truncates.
    """
    if g.n < 1:
        raise PathValidationError("enumeration needs n >= 1")
    shared = _Budget(budget)
    target, _ = _longest_length_pass(g, shared, start_order)

    rows = g.rows
    full = g.vertex_mask
    found: set[tuple[int, ...]] = set()
    order = list(start_order) if start_order is not None else list(range(g.n))
    stack: list[int] = []

    def dfs(v: int, visited: int):
        shared.spend()
        length = len(stack) - 1
        if length == target:
            found.add(canonical_orientation(tuple(stack)))
            return
        unvisited = full & ~visited
        if length + popcount(unvisited) < target:
            return
        if length + _reach_bound(rows, v, unvisited) - 1 < target:
            return
        for w in bits(rows[v] & unvisited):
            stack.append(w)
            dfs(w, visited | 1 << w)
            stack.pop()

    for s in order:
        stack.append(s)
        dfs(s, 1 << s)
        stack.pop()

    ordered = sorted(found)
    masks = []
    seen_masks = set()
    for seq in ordered:
        m = 0
        for v in seq:
            m |= 1 << v
        if m not in seen_masks:
            seen_masks.add(m)
            masks.append(m)
    return LongestPathSet(
        length=target,
        paths=tuple(PathSeq(seq) for seq in ordered),
        vertex_masks=tuple(sorted(masks)),
    )


def is_longest_path(g: Graph, p: PathSeq, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff p is a longest path of g.  Raises if p is not a path of g."""
    p = path_seq(g, p.vertices)
    return p.length == longest_path_length(g, budget)


def longest_path_length_dp(g: Graph) -> int:
    """Independent length oracle: Held-Karp style DP over (vertex set, endpoint).

    Kept deliberately separate from the DFS enumerator so the two exact
    routes can cross-check each other.
    """
    if g.n < 1:
        raise PathValidationError("longest path length needs n >= 1")
    if g.n > 20:
        raise PathValidationError("DP oracle supports n <= 20")
    rows = g.rows
    size = 1 << g.n
    dp = [0] * size
    for v in range(g.n):
        dp[1 << v] = 1 << v
    best = 0
    for mask in range(1, size):
        ends = dp[mask]
        if not ends:
            continue
        k = popcount(mask) - 1
        if k > best:
            best = k
        for v in bits(ends):
            for w in bits(rows[v] & ~mask):
                dp[mask | 1 << w] |= 1 << w
    return best


def paths_to_json(paths) -> list[list[int]]:
    """Longest paths as plain JSON-ready vertex arrays."""
    return [list(p.vertices) for p in paths]


def path_to_dot(g: Graph, p: PathSeq | None = None) -> str:
    """DOT text for g; when p is given its edges are highlighted."""
    on_path = set()
    if p is not None:
        on_path = {tuple(sorted(e)) for e in zip(p.vertices, p.vertices[1:])}
    lines = ["graph G {"]
    if g.name:
        lines.append(f'  label="{g.name}";')
    for v in range(g.n):
        lines.append(f"  {v};")
    for u, v in g.edges():
        style = " [color=red, penwidth=2.0]" if (u, v) in on_path else ""
        lines.append(f"  {u} -- {v}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
