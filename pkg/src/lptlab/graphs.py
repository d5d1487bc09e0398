"""Graph representation, graph6 serialization, and small-graph catalogs.

Graphs are simple and undirected, with vertex ids 0..n-1 and adjacency
stored as one bitmask per row.  Everything downstream assumes desk scale
(n <= 16 for exact work, n <= 62 for serialization).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from typing import Iterable, Iterator

from .errors import (
    Graph6Error,
    GraphConstructionError,
    UnsupportedSizeError,
)

MAX_GRAPH6_N = 62
MAX_CANON_N = 9


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of *mask* in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices 0..n-1 with bitmask rows."""

    n: int
    rows: tuple[int, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphConstructionError(f"negative vertex count {self.n}")
        if len(self.rows) != self.n:
            raise GraphConstructionError(
                f"expected {self.n} adjacency rows, got {len(self.rows)}"
            )
        full = (1 << self.n) - 1
        for u, row in enumerate(self.rows):
            if row & ~full:
                raise GraphConstructionError(f"row {u} references vertices >= {self.n}")
            if row >> u & 1:
                raise GraphConstructionError(f"loop at vertex {u}")
        for u in range(self.n):
            for v in bits(self.rows[u]):
                if not self.rows[v] >> u & 1:
                    raise GraphConstructionError(f"asymmetric adjacency at ({u}, {v})")

    # -- basic queries ------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors_mask(self, u: int) -> int:
        return self.rows[u]

    def neighbors(self, u: int) -> list[int]:
        return list(bits(self.rows[u]))

    def degree(self, u: int) -> int:
        return popcount(self.rows[u])

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            row = self.rows[u] >> (u + 1) << (u + 1)
            for v in bits(row):
                out.append((u, v))
        return out

    @property
    def m(self) -> int:
        return sum(popcount(r) for r in self.rows) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def relabeled(self, perm: Iterable[int]) -> "Graph":
        """Graph with vertex i renamed perm[i]."""
        perm = list(perm)
        rows = [0] * self.n
        for u in range(self.n):
            for v in bits(self.rows[u]):
                rows[perm[u]] |= 1 << perm[v]
        return Graph(self.n, tuple(rows))

    def with_name(self, name: str) -> "Graph":
        return Graph(self.n, self.rows, name)

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"Graph(n={self.n}, m={self.m}{tag})"


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]], name: str | None = None) -> Graph:
    """Build a graph from an unordered edge list; duplicates are merged."""
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphConstructionError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphConstructionError(f"loop edge ({u}, {v})")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows), name)


# -- graph6 ----------------------------------------------------------

def _triangle_bit_pairs(n: int) -> Iterator[tuple[int, int]]:
    # column order: (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...
    for j in range(1, n):
        for i in range(j):
            yield i, j


def parse_graph6(line: str) -> Graph:
    """Decode one graph6 record (single-byte size form, n <= 62)."""
    if not line:
        raise Graph6Error("empty graph6 record", offset=0)
    data = line.rstrip("\n")
    first = ord(data[0])
    if first == 126:
        raise Graph6Error("multi-byte graph6 size encoding not supported", offset=0)
    if not 63 <= first <= 126:
        raise Graph6Error(f"size byte {first} outside 63..126", offset=0)
    n = first - 63
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) != 1 + need:
        if len(data) > 1 + need:
            raise Graph6Error(
                f"trailing garbage after graph6 record for n={n}", offset=1 + need
            )
        raise Graph6Error(
            f"record too short for n={n}: need {1 + need} bytes, got {len(data)}",
            offset=len(data),
        )
    rows = [0] * n
    pairs = _triangle_bit_pairs(n)
    bit_index = 0
    for k in range(need):
        byte = ord(data[1 + k])
        if not 63 <= byte <= 126:
            raise Graph6Error(f"data byte {byte} outside 63..126", offset=1 + k)
        group = byte - 63
        for shift in range(5, -1, -1):
            bit = group >> shift & 1
            if bit_index < nbits:
                i, j = next(pairs)
                if bit:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
            elif bit:
                raise Graph6Error("nonzero padding bits", offset=1 + k)
            bit_index += 1
    return Graph(n, tuple(rows))


def write_graph6(g: Graph) -> str:
    """Encode a graph as a single-line graph6 record."""
    if g.n > MAX_GRAPH6_N:
        raise UnsupportedSizeError(f"graph6 supports n <= {MAX_GRAPH6_N}, got {g.n}")
    out = [chr(g.n + 63)]
    group = 0
    filled = 0
    for i, j in _triangle_bit_pairs(g.n):
        group = group << 1 | (g.rows[i] >> j & 1)
        filled += 1
        if filled == 6:
            out.append(chr(group + 63))
            group, filled = 0, 0
    if filled:
        group <<= 6 - filled
        out.append(chr(group + 63))
    return "".join(out)


def read_graph6_file(text: str) -> list[Graph]:
    """Parse a graph6 file: one record per line, blank lines ignored."""
    return [parse_graph6(ln) for ln in text.splitlines() if ln.strip()]


# -- edge-list fixture format ----------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse the "n m" header plus one "u v" line per edge."""
    tokens = text.split()
    if len(tokens) < 2:
        raise GraphConstructionError("edge-list text needs an 'n m' header")
    n, m = int(tokens[0]), int(tokens[1])
    flat = tokens[2:]
    if len(flat) != 2 * m:
        raise GraphConstructionError(
            f"edge-list header declares {m} edges but {len(flat) // 2} pairs follow"
        )
    edges = [(int(flat[2 * k]), int(flat[2 * k + 1])) for k in range(m)]
    return graph_from_edges(n, edges)


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# -- connectivity ----------------------------------------------------

def _flood(rows: tuple[int, ...], start: int, allowed: int) -> int:
    """Bitmask of vertices reachable from *start* inside *allowed*."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= rows[u]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def connected_components(g: Graph) -> list[list[int]]:
    """Partition of the vertex set into components, ordered by smallest member."""
    out = []
    remaining = g.vertex_mask
    while remaining:
        start = (remaining & -remaining).bit_length() - 1
        comp = _flood(g.rows, start, remaining)
        out.append(list(bits(comp)))
        remaining &= ~comp
    return out


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return _flood(g.rows, 0, g.vertex_mask) == g.vertex_mask


def components_after_removal(g: Graph, removed: Iterable[int]) -> list[list[int]]:
    """Components of the induced subgraph on V minus *removed*.

    Component id convention everywhere downstream: the smallest member.
    """
    removed_mask = 0
    for v in removed:
        removed_mask |= 1 << v
    out = []
    remaining = g.vertex_mask & ~removed_mask
    while remaining:
        start = (remaining & -remaining).bit_length() - 1
        comp = _flood(g.rows, start, remaining) & ~removed_mask
        out.append(list(bits(comp)))
        remaining &= ~comp
    return out


def component_id_map(g: Graph, removed_mask: int) -> dict[int, int]:
    """Map every vertex outside removed_mask to its component id (smallest member)."""
    ids = {}
    remaining = g.vertex_mask & ~removed_mask
    while remaining:
        start = (remaining & -remaining).bit_length() - 1
        comp = _flood(g.rows, start, remaining) & ~removed_mask
        for v in bits(comp):
            ids[v] = start
        remaining &= ~comp
    return ids


# -- canonical forms -------------------------------------------------

def _column_codes(rows: tuple[int, ...], perm) -> tuple[int, ...]:
    """Column codes of the graph relabeled so position j holds vertex perm[j].

    Column j packs bits (i, j) for i = 0..j-1, first bit most significant,
    so tuple comparison of code vectors equals lexicographic comparison of
    the packed upper-triangle bit string.
    """
    n = len(perm)
    cols = []
    for j in range(1, n):
        code = 0
        rj = rows[perm[j]]
        for i in range(j):
            code = code << 1 | (rj >> perm[i] & 1)
        cols.append(code)
    return tuple(cols)


def _min_codes_bruteforce(g: Graph) -> tuple[int, ...]:
    """Reference minimization over all n! orderings (oracle for the pruned search)."""
    if g.n <= 1:
        return ()
    return min(_column_codes(g.rows, p) for p in permutations(range(g.n)))


def _min_column_codes(g: Graph) -> tuple[int, ...]:
    """Smallest column-code vector over all vertex orderings.

    Exact greedy-with-ties search: the lexicographically minimal ordering
    must place a minimum-code vertex at every position (a smaller column
    dominates everything later), so only the code-minimal candidates are
    branched on, and twins among them collapse to one representative
    (swapping twins is an automorphism of the remaining choice).  Agrees
    with _min_codes_bruteforce, which is kept as its oracle.
    """
    n = g.n
    if n > MAX_CANON_N:
        raise UnsupportedSizeError(f"canonical form supports n <= {MAX_CANON_N}, got {n}")
    if n <= 1:
        return ()
    rows = g.rows
    best: list[int] | None = None
    prefix = [0] * (n - 1)
    all_v = list(range(n))

    # pref[v] carries v's adjacency bits to the placed prefix (first placed
    # vertex most significant), so the candidate code at each depth is a
    # lookup instead of a rescan
    def dfs(depth: int, used: int, pref: list[int]):
        nonlocal best
        if depth == n:
            if best is None or prefix < best:
                best = prefix[:]
            return
        min_code = -1
        ties: list[int] = []
        for v in all_v:
            if used >> v & 1:
                continue
            code = pref[v]
            if min_code < 0 or code < min_code:
                min_code = code
                ties = [v]
            elif code == min_code:
                ties.append(v)
        reps: list[int] = []
        for v in ties:
            for u in reps:
                if rows[v] & ~(1 << u) == rows[u] & ~(1 << v):
                    break
            else:
                reps.append(v)
        if depth >= 1:
            prefix[depth - 1] = min_code
        for v in reps:
            rv = rows[v]
            child = [pref[u] << 1 | (rv >> u & 1) for u in all_v]
            dfs(depth + 1, used | 1 << v, child)

    dfs(0, 0, [0] * n)
    return tuple(best)  # type: ignore[return-value]


def canonical_form(g: Graph) -> str:
    """Canonical upper-triangle bit string: minimum over all vertex orderings.

    Equal for isomorphic graphs, distinct otherwise; bit order matches
    graph6 (columns (0,1),(0,2),(1,2),(0,3),...).
    """
    codes = _min_column_codes(g)
    return "".join(format(code, f"0{j}b") for j, code in enumerate(codes, start=1))


def graph_from_bitstring(n: int, bitstring: str) -> Graph:
    rows = [0] * n
    for ch, (i, j) in zip(bitstring, _triangle_bit_pairs(n)):
        if ch == "1":
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def canonical_graph(g: Graph) -> Graph:
    """The canonically labeled representative of g's isomorphism class."""
    return graph_from_bitstring(g.n, canonical_form(g))


# -- catalogs --------------------------------------------------------

def _catalog_cache_path(n: int) -> str | None:
    if os.environ.get("LPTLAB_NO_CACHE"):
        return None
    root = os.environ.get("LPTLAB_CACHE_DIR") or os.path.join(
        os.path.expanduser("~"), ".cache", "lptlab"
    )
    return os.path.join(root, f"all-graphs-v1-n{n}.txt")


def _augment_forms(args) -> set[str]:
    """Canonical forms of all one-vertex extensions of the given bases."""
    n, base_forms = args
    seen = set()
    for form in base_forms:
        base = graph_from_bitstring(n - 1, form)
        rows_base = base.rows + (0,)
        for nb in range(1 << (n - 1)):
            rows = list(rows_base)
            rows[n - 1] = nb
            for v in bits(nb):
                rows[v] |= 1 << (n - 1)
            seen.add(canonical_form(Graph(n, tuple(rows))))
    return seen


@lru_cache(maxsize=None)
def _all_graph_forms(n: int) -> tuple[str, ...]:
    """Canonical bit strings of all graphs on n vertices, ascending.

    Built by vertex augmentation from the (n-1)-catalog: every n-vertex
    graph is some smaller graph plus one vertex with some neighborhood, so
    canonicalizing all such extensions of the (n-1)-representatives covers
    every isomorphism class.  Results are cached on disk (a catalog is a
    pure function of n); prime with build_catalog(n, jobs) to parallelize.
    """
    if n > MAX_CANON_N:
        raise UnsupportedSizeError(f"graph catalog supports n <= {MAX_CANON_N}, got {n}")
    if n <= 1:
        return ("",)
    path = _catalog_cache_path(n)
    if path and os.path.exists(path):
        forms = tuple(ln for ln in open(path).read().splitlines() if ln)
        if forms:
            return forms
    forms = tuple(sorted(_augment_forms((n, _all_graph_forms(n - 1)))))
    _write_catalog_cache(path, forms)
    return forms


def _write_catalog_cache(path: str | None, forms: tuple[str, ...]) -> None:
    if not path:
        return
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            fh.write("\n".join(forms) + "\n")
        os.replace(tmp, path)
    except OSError:
        pass


def build_catalog(n: int, jobs: int = 1) -> int:
    """Build (and cache) the n-vertex catalog, optionally in parallel.

    Returns the number of isomorphism classes.
    """
    if n > MAX_CANON_N:
        raise UnsupportedSizeError(f"graph catalog supports n <= {MAX_CANON_N}, got {n}")
    path = _catalog_cache_path(n)
    if (path and os.path.exists(path)) or n <= 2 or jobs <= 1:
        return len(_all_graph_forms(n))
    for k in range(2, n):
        _all_graph_forms(k)
    bases = _all_graph_forms(n - 1)
    chunk = max(1, len(bases) // (jobs * 8))
    tasks = [(n, bases[i : i + chunk]) for i in range(0, len(bases), chunk)]
    from multiprocessing import Pool

    seen: set[str] = set()
    with Pool(processes=jobs) as pool:
        for part in pool.imap_unordered(_augment_forms, tasks):
            seen |= part
    forms = tuple(sorted(seen))
    _write_catalog_cache(path, forms)
    _all_graph_forms.cache_clear()
    return len(_all_graph_forms(n))


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """All graphs on n vertices up to isomorphism, canonically labeled."""
    for form in _all_graph_forms(n):
        yield graph_from_bitstring(n, form)


def enumerate_connected_graphs(n: int, dedup: bool = True) -> Iterator[Graph]:
    """Connected graphs on n vertices.

    Without dedup: every labeled connected graph, edge masks ascending (the
    mask packs the upper triangle in graph6 bit order, LSB first).  With
    dedup: one canonically labeled representative per isomorphism class,
    canonical bit strings ascending.
    """
    if not 1 <= n <= MAX_CANON_N:
        raise UnsupportedSizeError(f"supported range is 1 <= n <= {MAX_CANON_N}, got {n}")
    if dedup:
        for g in enumerate_graphs(n):
            if is_connected(g):
                yield g
        return
    pair_list = list(_triangle_bit_pairs(n))
    for mask in range(1 << len(pair_list)):
        g = graph_from_edges(n, [pair_list[k] for k in bits(mask)])
        if is_connected(g):
            yield g


def labeled_graph_at(n: int, mask: int) -> Graph:
    """The labeled graph whose edge mask is *mask* (hunt-cursor support)."""
    pair_list = list(_triangle_bit_pairs(n))
    return graph_from_edges(n, [pair_list[k] for k in bits(mask)])


# -- bipartite catalog ------------------------------------------------

def _bipartite_graph(p: int, q: int, rows: tuple[int, ...]) -> Graph:
    """Graph on p+q vertices from a p-row biadjacency matrix (X first)."""
    full_rows = []
    cols = [0] * q
    for i, r in enumerate(rows):
        full_rows.append(r << p)
        for j in bits(r):
            cols[j] |= 1 << i
    full_rows.extend(cols)
    return Graph(p + q, tuple(full_rows))


def _transpose_biadjacency(p: int, q: int, rows: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sum((rows[i] >> j & 1) << i for i in range(p)) for j in range(q))


def _side_min_key(p: int, q: int, rows: tuple[int, ...]) -> tuple:
    best = None
    for perm in permutations(range(p)):
        permuted = tuple(rows[perm[i]] for i in range(p))
        cand = tuple(sorted(_transpose_biadjacency(p, q, permuted)))
        if best is None or cand < best:
            best = cand
    return best


def _bipartite_canon_key(p: int, q: int, rows: tuple[int, ...]) -> tuple:
    """Complete bipartite-isomorphism invariant for a connected biadjacency.

    Minimum over row permutations of the sorted column vector; for p == q
    the transposed orientation competes too.  The bipartition of a
    connected bipartite graph is unique up to swapping sides, so (p, q)
    with p <= q plus this key separates isomorphism classes exactly.
    """
    best = _side_min_key(p, q, rows)
    if p == q:
        t_best = _side_min_key(q, p, _transpose_biadjacency(p, q, rows))
        if t_best < best:
            best = t_best
    return (p, q, best)


@lru_cache(maxsize=None)
def _connected_bipartite_forms(n: int) -> tuple[str, ...]:
    """Canonical forms of connected bipartite graphs on n vertices.

    Enumerates biadjacency matrices with nondecreasing nonzero rows (every
    class has such a representative) and dedups by _bipartite_canon_key.
    Used for the n = 9 sweep where the general catalog is out of reach;
    cross-checked against it for n <= 8.
    """
    if n == 1:
        return (canonical_form(Graph(1, (0,))),)
    reps: dict[tuple, tuple[int, int, tuple[int, ...]]] = {}
    for p in range(1, n // 2 + 1):
        q = n - p
        for rows in combinations_with_replacement(range(1, 1 << q), p):
            col_cover = 0
            for r in rows:
                col_cover |= r
            if col_cover != (1 << q) - 1:
                continue
            g = _bipartite_graph(p, q, rows)
            if not is_connected(g):
                continue
            key = _bipartite_canon_key(p, q, rows)
            if key not in reps:
                reps[key] = (p, q, rows)
    forms = {canonical_form(_bipartite_graph(p, q, rows)) for p, q, rows in reps.values()}
    return tuple(sorted(forms))


def enumerate_connected_bipartite_graphs(n: int) -> Iterator[Graph]:
    """Connected bipartite graphs on n vertices up to isomorphism."""
    if not 1 <= n <= 9:
        raise UnsupportedSizeError(f"supported range is 1 <= n <= 9, got {n}")
    for form in _connected_bipartite_forms(n):
        yield graph_from_bitstring(n, form)
