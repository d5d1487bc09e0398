"""Tree decompositions: validation, exact treewidth, branches, smoothing.

Exact treewidth uses the elimination-ordering subset DP (2^n states); a
brute-force search over all orderings is kept alongside as the oracle for
cross-validation at n <= 8.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import (
    InternalInconsistencyError,
    PreconditionError,
    StructureError,
    UnsupportedSizeError,
    ValidationError,
)
from .graphs import Graph, _flood, bits, is_connected, popcount
from .longest_paths import DEFAULT_BUDGET, LongestPathSet, enumerate_longest_paths
from .transversal import lpt

MAX_EXACT_TW_N = 16


@dataclass(frozen=True)
class TreeDecomposition:
    """Host tree on nodes 0..m-1 plus one bag per node."""

    nodes: int
    edges: tuple[tuple[int, int], ...]
    bags: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.nodes < 1:
            raise StructureError("decomposition tree needs at least one node")
        if len(self.bags) != self.nodes:
            raise StructureError("one bag per tree node required")

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.nodes)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return [sorted(x) for x in adj]


def check_is_tree(nodes: int, edges) -> None:
    """Raise StructureError unless (nodes, edges) is a tree."""
    if nodes < 1:
        raise StructureError("a tree needs at least one node")
    if len(edges) != nodes - 1:
        raise StructureError(f"a tree on {nodes} nodes needs {nodes - 1} edges, got {len(edges)}")
    adj = [[] for _ in range(nodes)]
    seen_pairs = set()
    for a, b in edges:
        if not (0 <= a < nodes and 0 <= b < nodes) or a == b:
            raise StructureError(f"bad tree edge ({a}, {b})")
        key = (min(a, b), max(a, b))
        if key in seen_pairs:
            raise StructureError(f"duplicate tree edge ({a}, {b})")
        seen_pairs.add(key)
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != nodes:
        raise StructureError("tree edges do not connect all nodes")


@dataclass(frozen=True)
class DecompositionCheck:
    ok: bool
    failed_condition: str | None = None
    witness: object = None


def validate_decomposition(g: Graph, td: TreeDecomposition) -> DecompositionCheck:
    """Check (T1) coverage, (T2) edge coverage, (T3) subtree connectivity.

    Returns the first failing condition with a witness; raises if the host
    tree is not a tree at all.
    """
    check_is_tree(td.nodes, td.edges)
    covered = set()
    for b in td.bags:
        covered |= b
    for v in range(g.n):
        if v not in covered:
            return DecompositionCheck(False, "T1", v)
    for u, v in g.edges():
        if not any(u in b and v in b for b in td.bags):
            return DecompositionCheck(False, "T2", (u, v))
    adj = td.neighbors()
    for v in range(g.n):
        holders = [t for t in range(td.nodes) if v in td.bags[t]]
        seen = {holders[0]}
        stack = [holders[0]]
        holder_set = set(holders)
        while stack:
            t = stack.pop()
            for w in adj[t]:
                if w in holder_set and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != holder_set:
            return DecompositionCheck(False, "T3", v)
    return DecompositionCheck(True)


# -- exact treewidth --------------------------------------------------

def _fill_degree_mask(rows, eliminated: int, v: int) -> int:
    """Mask of vertices outside `eliminated` adjacent to v once `eliminated`
    is gone (reachable from v through eliminated vertices)."""
    seen = 1 << v
    frontier = seen
    out = 0
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= rows[u]
        nxt &= ~seen
        out |= nxt & ~eliminated
        frontier = nxt & eliminated
        seen |= nxt
    return out & ~(1 << v)


def exact_treewidth(g: Graph) -> tuple[int, TreeDecomposition]:
    """Exact tw(G) by subset DP over elimination prefixes, with an optimal
    decomposition reconstructed from the minimizing ordering."""
    n = g.n
    if n > MAX_EXACT_TW_N:
        raise UnsupportedSizeError(f"exact treewidth supports n <= {MAX_EXACT_TW_N}, got {n}")
    if n == 0:
        return -1, TreeDecomposition(1, (), (frozenset(),))
    rows = g.rows
    size = 1 << n
    dp = [0] * size
    dp[0] = -1
    for mask in range(1, size):
        best = n
        rest = mask
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            sub = mask ^ low
            deg = popcount(_fill_degree_mask(rows, sub, v))
            prev = dp[sub]
            cost = prev if prev > deg else deg
            if cost < best:
                best = cost
        dp[mask] = best
    width = dp[size - 1]

    # recover one optimal elimination order, ties to the smallest vertex
    order = [0] * n
    mask = size - 1
    for pos in range(n - 1, -1, -1):
        chosen = None
        for v in bits(mask):
            sub = mask ^ (1 << v)
            deg = popcount(_fill_degree_mask(rows, sub, v))
            cost = max(dp[sub], deg)
            if cost == dp[mask]:
                chosen = v
                break
        order[pos] = chosen
        mask ^= 1 << chosen

    td = decomposition_from_elimination(g, order)
    return width, td


def decomposition_from_elimination(g: Graph, order) -> TreeDecomposition:
    """Tree decomposition induced by an elimination ordering.

    Bag of the i-th eliminated vertex v: {v} plus v's neighbors in the
    graph with the earlier vertices eliminated; node i attaches to the node
    of the earliest-eliminated bag member after v.
    """
    n = g.n
    if n == 0:
        return TreeDecomposition(1, (), (frozenset(),))
    rows = g.rows
    index_of = {v: i for i, v in enumerate(order)}
    bags = []
    edges = []
    eliminated = 0
    for i, v in enumerate(order):
        q = _fill_degree_mask(rows, eliminated, v)
        bags.append(frozenset(bits(q)) | {v})
        if q:
            parent = min(bits(q), key=lambda u: index_of[u])
            edges.append((i, index_of[parent]))
        elif i < n - 1:
            edges.append((i, i + 1))
        eliminated |= 1 << v
    return TreeDecomposition(n, tuple(edges), tuple(bags))


def treewidth_by_ordering_search(g: Graph) -> int:
    """Brute-force oracle: minimum over all n! elimination orderings."""
    n = g.n
    if n > 8:
        raise UnsupportedSizeError(f"ordering search supports n <= 8, got {n}")
    if n == 0:
        return -1
    best = n
    for perm in permutations(range(n)):
        rows = list(g.rows)
        alive = g.vertex_mask
        worst = 0
        for v in perm:
            nbrs = rows[v] & alive & ~(1 << v)
            d = popcount(nbrs)
            if d > worst:
                worst = d
                if worst >= best:
                    break
            for u in bits(nbrs):
                rows[u] |= nbrs & ~(1 << u)
            alive ^= 1 << v
        if worst < best:
            best = worst
    return best


# -- smooth (full) decompositions -------------------------------------

def make_full_decomposition(td: TreeDecomposition, k: int) -> TreeDecomposition:
    """Equivalent decomposition with every bag of size k+1 and adjacent bags
    meeting in exactly k vertices.

    Standard construction: contract subset-adjacent bags, pad small bags
    from a neighbor, then interpolate along edges whose intersection is
    still below k.  Deterministic smallest-id choices throughout.
    """
    check_is_tree(td.nodes, td.edges)
    if td.width > k:
        raise ValidationError(f"decomposition width {td.width} exceeds k={k}")
    universe: set[int] = set()
    for b in td.bags:
        universe |= b
    if len(universe) < k + 1:
        raise ValidationError(f"graph has {len(universe)} vertices; bags of size {k + 1} impossible")

    bags: dict[int, set[int]] = {t: set(b) for t, b in enumerate(td.bags)}
    adj: dict[int, set[int]] = {t: set() for t in bags}
    for a, b in td.edges:
        adj[a].add(b)
        adj[b].add(a)
    next_id = td.nodes

    def contract_round() -> bool:
        for s in sorted(bags):
            for t in sorted(adj[s]):
                if bags[s] <= bags[t]:
                    for w in adj[s]:
                        if w != t:
                            adj[w].discard(s)
                            adj[w].add(t)
                            adj[t].add(w)
                    adj[t].discard(s)
                    del bags[s], adj[s]
                    return True
        return False

    while True:
        while contract_round():
            pass
        small = [s for s in sorted(bags) if len(bags[s]) < k + 1]
        if not small:
            break
        s = small[0]
        if not adj[s]:
            bags[s].add(min(universe - bags[s]))
            continue
        grown = False
        for t in sorted(adj[s]):
            extra = bags[t] - bags[s]
            if extra:
                bags[s].add(min(extra))
                grown = True
                break
        if not grown:
            raise InternalInconsistencyError("padding stalled with subset neighbors left")

    edge_list = sorted(
        (min(a, b), max(a, b)) for a in bags for b in adj[a] if a < b
    )
    pending = list(edge_list)
    final_edges = []
    while pending:
        a, b = pending.pop(0)
        inter = bags[a] & bags[b]
        if len(inter) >= k:
            final_edges.append((a, b))
            continue
        drop = min(bags[a] - bags[b])
        add = min(bags[b] - bags[a])
        mid = (bags[a] - {drop}) | {add}
        u = next_id
        next_id += 1
        bags[u] = mid
        adj[a].discard(b)
        adj[b].discard(a)
        adj[a].add(u)
        adj[b].add(u)
        adj[u] = {a, b}
        pending.insert(0, (u, b))
        final_edges.append((a, u))

    ids = sorted(bags)
    renum = {t: i for i, t in enumerate(ids)}
    out_edges = tuple(sorted((min(renum[a], renum[b]), max(renum[a], renum[b])))
                      for a, b in final_edges)
    return TreeDecomposition(
        len(ids), out_edges, tuple(frozenset(bags[t]) for t in ids)
    )


# -- branches ----------------------------------------------------------

def _tree_components_without(td: TreeDecomposition, t: int) -> dict[int, int]:
    """Map each node != t to the id (smallest node) of its branch at t."""
    adj = td.neighbors()
    branch: dict[int, int] = {}
    for start in range(td.nodes):
        if start == t or start in branch:
            continue
        comp = [start]
        seen = {start, t}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        cid = min(comp)
        for u in comp:
            branch[u] = cid
    return branch


def branch_of_node(td: TreeDecomposition, t: int, t2: int) -> int:
    """Stable id (smallest node) of the component of T - t holding t2."""
    if t2 == t:
        raise PreconditionError("t2 must differ from t")
    return _tree_components_without(td, t)[t2]


def branch_of_vertex(td: TreeDecomposition, t: int, v: int) -> int:
    """Branch at t holding vertex v; requires v outside the bag of t.

    Well-defined for valid decompositions: all bags holding v sit in one
    branch.  Verified here; disagreement means the decomposition is broken.
    """
    if v in td.bags[t]:
        raise PreconditionError(f"vertex {v} is in the bag of node {t}")
    holders = [x for x in range(td.nodes) if v in td.bags[x]]
    if not holders:
        raise ValidationError(f"vertex {v} is in no bag")
    branch = _tree_components_without(td, t)
    ids = {branch[x] for x in holders}
    if len(ids) != 1:
        raise InternalInconsistencyError(
            f"vertex {v} appears in several branches at node {t}; decomposition invalid"
        )
    return ids.pop()


def find_transversal_bag(g: Graph, td: TreeDecomposition,
                         lps: LongestPathSet | None = None,
                         budget: int = DEFAULT_BUDGET) -> int:
    """Smallest node whose bag meets every longest path.

    Existence is guaranteed for valid decompositions of connected graphs;
    finding none is a falsifying event and aborts loudly.
    """
    if lps is None:
        lps = enumerate_longest_paths(g, budget)
    for t in range(td.nodes):
        bag_mask = 0
        for v in td.bags[t]:
            bag_mask |= 1 << v
        if all(m & bag_mask for m in lps.vertex_masks):
            return t
    raise InternalInconsistencyError("no bag is a longest path transversal")


@dataclass(frozen=True)
class TwVerdict:
    holds: bool
    lpt: int
    tw: int


def check_tw_theorem(g: Graph, lps: LongestPathSet | None = None,
                     budget: int = DEFAULT_BUDGET) -> TwVerdict:
    """lpt(G) <= tw(G) for connected G."""
    if not is_connected(g):
        raise PreconditionError("theorem check needs a connected graph")
    width, _ = exact_treewidth(g)
    result = lpt(g, lps=lps, budget=budget)
    return TwVerdict(result.size <= width, result.size, width)


# -- PACE-style .td serialization --------------------------------------

def write_td(td: TreeDecomposition, graph_n: int) -> str:
    """PACE .td text: 1-indexed bags and vertices."""
    lines = [f"s td {td.nodes} {max(len(b) for b in td.bags)} {graph_n}"]
    for i, b in enumerate(td.bags, start=1):
        inner = " ".join(str(v + 1) for v in sorted(b))
        lines.append(f"b {i} {inner}".rstrip())
    for a, b in td.edges:
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


def parse_td(text: str) -> TreeDecomposition:
    nodes = None
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if parts[1] != "td" or len(parts) != 5:
                raise ValidationError(f"bad solution line: {line!r}")
            nodes = int(parts[2])
        elif parts[0] == "b":
            bags[int(parts[1]) - 1] = frozenset(int(x) - 1 for x in parts[2:])
        else:
            a, b = int(parts[0]) - 1, int(parts[1]) - 1
            edges.append((a, b))
    if nodes is None:
        raise ValidationError("missing 's td' header")
    bag_tuple = tuple(bags.get(i, frozenset()) for i in range(nodes))
    return TreeDecomposition(nodes, tuple(edges), bag_tuple)
