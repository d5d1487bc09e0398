"""Bipartite permutation graphs: line representations, strong orderings,
ordered-path normalization, and the class-specific theorem checks.

Recognition is brute-force search for a pair of side orderings satisfying
the crossing closure; at desk scale that doubles as a trustworthy oracle,
and the condition searched for is exactly the one the proofs consume.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, permutations
from typing import Iterable

from .errors import (
    DisconnectedError,
    InternalInconsistencyError,
    NotBipartiteError,
    PreconditionError,
    UnsupportedSizeError,
    ValidationError,
)
from .graphs import Graph, bits, graph_from_edges, is_connected
from .longest_paths import (
    DEFAULT_BUDGET,
    LongestPathSet,
    PathSeq,
    enumerate_longest_paths,
    path_seq,
)

MAX_ORDERING_N = 12


def bipartition(g: Graph) -> tuple[list[int], list[int]]:
    """Two-color the graph; X is the side of the smallest vertex per
    component.  Raises on an odd cycle."""
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            u = queue.pop(0)
            for w in bits(g.rows[u]):
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    raise NotBipartiteError(f"odd cycle through edge ({u}, {w})")
    xs = [v for v in range(g.n) if color[v] == 0]
    ys = [v for v in range(g.n) if color[v] == 1]
    return xs, ys


@dataclass(frozen=True)
class StrongOrdering:
    """Orderings of both sides under which crossing edge pairs close into
    complete bipartite quadruples."""

    x_order: tuple[int, ...]
    y_order: tuple[int, ...]


def satisfies_strong_ordering(g: Graph, x_order, y_order) -> bool:
    """The crossing closure: x_i1 <= x_i2, y_j1 <= y_j2 with the two
    crossing edges present forces all four edges."""
    xo = list(x_order)
    yo = list(y_order)
    p, q = len(xo), len(yo)
    for a in range(p):
        ra = g.rows[xo[a]]
        for b in range(a, p):
            rb = g.rows[xo[b]]
            for c in range(q):
                yc = 1 << yo[c]
                for d in range(c, q):
                    yd = 1 << yo[d]
                    if (ra & yd) and (rb & yc):
                        if not (ra & yc) or not (rb & yd):
                            return False
    return True


def find_strong_ordering(g: Graph) -> StrongOrdering | None:
    """Some strong ordering of g, or None.  Natural (ascending) orders are
    tried first, then all ordering pairs lexicographically."""
    if g.n > MAX_ORDERING_N:
        raise UnsupportedSizeError(f"ordering search supports n <= {MAX_ORDERING_N}, got {g.n}")
    xs, ys = bipartition(g)
    if satisfies_strong_ordering(g, xs, ys):
        return StrongOrdering(tuple(xs), tuple(ys))
    for xo in permutations(xs):
        for yo in permutations(ys):
            if satisfies_strong_ordering(g, xo, yo):
                return StrongOrdering(tuple(xo), tuple(yo))
    return None


# -- ordered paths -----------------------------------------------------

def _positions(so: StrongOrdering) -> tuple[dict[int, int], dict[int, int]]:
    xpos = {v: i for i, v in enumerate(so.x_order)}
    ypos = {v: i for i, v in enumerate(so.y_order)}
    return xpos, ypos


def _is_ordered_reading(so: StrongOrdering, vertices: tuple[int, ...]) -> bool:
    xpos, ypos = _positions(so)
    sides = []
    for v in vertices:
        if v in xpos:
            sides.append("X")
        elif v in ypos:
            sides.append("Y")
        else:
            return False
    for a, b in zip(sides, sides[1:]):
        if a == b:
            return False
    xs = [xpos[v] for v in vertices if v in xpos]
    ys = [ypos[v] for v in vertices if v in ypos]
    return xs == sorted(set(xs)) and ys == sorted(set(ys))


def is_ordered_path(so: StrongOrdering, p: PathSeq) -> bool:
    """Alternating path whose side subsequences are strictly increasing in
    one of the two reading directions.  Direction-agnostic because PathSeq
    stores paths in canonical orientation, which may reverse the ordered
    reading."""
    return _is_ordered_reading(so, p.vertices) or _is_ordered_reading(
        so, tuple(reversed(p.vertices))
    )


def order_path(g: Graph, so: StrongOrdering, p: PathSeq) -> PathSeq:
    """The ordered companion path: same vertex set, side subsequences sorted
    by the strong ordering, interleaved with the larger side first (on ties
    the side whose extreme has the smaller order index starts).

    The interleaving is guaranteed to be a path; a validation failure here
    would falsify that guarantee and aborts loudly.
    """
    p = path_seq(g, p.vertices)
    xpos, ypos = _positions(so)
    a_side = sorted((v for v in p.vertices if v in xpos), key=xpos.get)
    b_side = sorted((v for v in p.vertices if v in ypos), key=ypos.get)
    if not a_side or not b_side:
        if len(p.vertices) > 1:
            raise PreconditionError("path misses one side entirely but has an edge")
        return p

    def interleave(first, second):
        out = []
        for i in range(len(second)):
            out.append(first[i])
            out.append(second[i])
        if len(first) > len(second):
            out.append(first[-1])
        return out

    if len(a_side) > len(b_side):
        ordered = interleave(a_side, b_side)
    elif len(b_side) > len(a_side):
        ordered = interleave(b_side, a_side)
    else:
        first_v, last_v = p.vertices[0], p.vertices[-1]
        x_extreme = first_v if first_v in xpos else last_v
        y_extreme = last_v if first_v in xpos else first_v
        i_star = a_side.index(x_extreme)
        j_star = b_side.index(y_extreme)
        if i_star <= j_star:
            ordered = interleave(a_side, b_side)
        else:
            ordered = interleave(b_side, a_side)

    try:
        result = path_seq(g, ordered)
    except Exception as exc:
        raise InternalInconsistencyError(
            f"ordered companion of {p.vertices} is not a path: {exc}"
        ) from exc
    if result.vertex_set != p.vertex_set:
        raise InternalInconsistencyError("ordered companion changed the vertex set")
    if not is_ordered_path(so, result):
        raise InternalInconsistencyError("companion path is not ordered")
    return result


@dataclass(frozen=True)
class BpgVerdict:
    holds: bool
    evidence: dict


def check_edge_transversal(g: Graph, so: StrongOrdering,
                           lps: LongestPathSet | None = None,
                           budget: int = DEFAULT_BUDGET) -> BpgVerdict:
    """Every edge's endpoint pair meets every longest path.

    The proof covers ordered longest paths; unordered ones follow because
    their ordered companions keep the vertex set, so the check quantifies
    over all longest paths directly.
    """
    if not is_connected(g):
        raise DisconnectedError("edge-transversal lemma needs a connected graph")
    if lps is None:
        lps = enumerate_longest_paths(g, budget)
    for u, v in g.edges():
        pair = (1 << u) | (1 << v)
        for m in lps.vertex_masks:
            if not m & pair:
                return BpgVerdict(False, {"edge": (u, v), "missed_by_mask": m})
    return BpgVerdict(True, {"edges_checked": g.m, "longest_paths": len(lps.paths)})


def bpg_gallai_vertex(g: Graph, so: StrongOrdering,
                      lps: LongestPathSet | None = None,
                      budget: int = DEFAULT_BUDGET) -> int:
    """Whichever of the two order-minimal vertices lies on all longest
    paths (the first of x_order preferred).  The theorem guarantees one
    does; neither working is a falsifying event."""
    if not is_connected(g):
        raise DisconnectedError("needs a connected graph")
    if lps is None:
        lps = enumerate_longest_paths(g, budget)
    candidates = [order[0] for order in (so.x_order, so.y_order) if order]
    for candidate in candidates:
        cb = 1 << candidate
        if all(m & cb for m in lps.vertex_masks):
            return candidate
    raise InternalInconsistencyError(
        "neither order-minimal vertex is a longest path transversal"
    )


# -- line representations ----------------------------------------------

@dataclass(frozen=True)
class LineRepresentation:
    """Segment model: per vertex a (top, bottom) position pair and a side.

    Positions on each line are distinct integers; within each side the top
    and bottom orders agree (same-side segments never cross).
    """

    side: tuple[str, ...]
    top: tuple[int, ...]
    bottom: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.side)

    def x_vertices(self) -> list[int]:
        return [v for v in range(self.n) if self.side[v] == "X"]

    def y_vertices(self) -> list[int]:
        return [v for v in range(self.n) if self.side[v] == "Y"]


def validate_representation(rep: LineRepresentation) -> None:
    n = rep.n
    if not (len(rep.top) == len(rep.bottom) == n):
        raise ValidationError("side/top/bottom lengths differ")
    for tag in rep.side:
        if tag not in ("X", "Y"):
            raise ValidationError(f"bad side tag {tag!r}")
    if len(set(rep.top)) != n:
        raise ValidationError("top positions are not distinct")
    if len(set(rep.bottom)) != n:
        raise ValidationError("bottom positions are not distinct")
    for group in (rep.x_vertices(), rep.y_vertices()):
        for u, v in combinations(group, 2):
            if (rep.top[u] - rep.top[v]) * (rep.bottom[u] - rep.bottom[v]) < 0:
                raise ValidationError(f"same-side segments ({u}, {v}) cross")


def graph_from_line_representation(rep: LineRepresentation) -> Graph:
    """Adjacent iff the two segments cross:
    (top_x - top_y) * (bottom_x - bottom_y) < 0."""
    validate_representation(rep)
    edges = []
    for x in rep.x_vertices():
        for y in rep.y_vertices():
            if (rep.top[x] - rep.top[y]) * (rep.bottom[x] - rep.bottom[y]) < 0:
                edges.append((x, y))
    return graph_from_edges(rep.n, edges)


def line_representation_from_ordering(g: Graph, so: StrongOrdering) -> LineRepresentation:
    """Synthesize a segment model realizing a strong ordering.

    Tops: some merge of x_order and y_order; bottoms: forced pairwise by
    sigma-monotonicity within sides plus crossing-iff-adjacent across.
    Tries every merge and keeps the first whose forced relation is a total
    order and whose derived graph round-trips to g.
    """
    xo, yo = list(so.x_order), list(so.y_order)
    p, q = len(xo), len(yo)
    n = p + q
    for x_slots in combinations(range(n), p):
        top = [0] * g.n
        side = [""] * g.n
        x_slotset = set(x_slots)
        xi = yi = 0
        for pos in range(n):
            if pos in x_slotset:
                v = xo[xi]
                xi += 1
                side[v] = "X"
            else:
                v = yo[yi]
                yi += 1
                side[v] = "Y"
            top[v] = pos + 1
        before = {v: 0 for v in range(n)}
        for u, v in combinations(range(n), 2):
            if side[u] == side[v]:
                lower, higher = (u, v) if top[u] < top[v] else (v, u)
            else:
                crossing = g.has_edge(u, v)
                topwise = (u, v) if top[u] < top[v] else (v, u)
                lower, higher = (topwise[1], topwise[0]) if crossing else topwise
            before[higher] += 1
        if sorted(before.values()) != list(range(n)):
            continue
        bottom = [before[v] + 1 for v in range(n)]
        rep = LineRepresentation(tuple(side), tuple(top), tuple(bottom))
        try:
            derived = graph_from_line_representation(rep)
        except ValidationError:
            continue
        if derived.rows == g.rows:
            return rep
    raise InternalInconsistencyError(
        "no segment model realizes this strong ordering"
    )


def parse_line_representation(text: str) -> LineRepresentation:
    """Two whitespace-separated lines of vertex names (x... / y...), giving
    the top and bottom left-to-right orders."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 2:
        raise ValidationError("expected exactly two nonblank lines")
    top_names = lines[0].split()
    bottom_names = lines[1].split()
    if sorted(top_names) != sorted(bottom_names):
        raise ValidationError("top and bottom lines name different segments")
    x_names = [nm for nm in top_names if nm.startswith("x")]
    y_names = [nm for nm in top_names if nm.startswith("y")]
    if len(x_names) + len(y_names) != len(top_names):
        raise ValidationError("names must start with 'x' or 'y'")
    ids = {}
    for i, nm in enumerate(x_names):
        ids[nm] = i
    for j, nm in enumerate(y_names):
        ids[nm] = len(x_names) + j
    n = len(top_names)
    side = ["X" if v < len(x_names) else "Y" for v in range(n)]
    top = [0] * n
    bottom = [0] * n
    for pos, nm in enumerate(top_names, start=1):
        top[ids[nm]] = pos
    for pos, nm in enumerate(bottom_names, start=1):
        bottom[ids[nm]] = pos
    rep = LineRepresentation(tuple(side), tuple(top), tuple(bottom))
    validate_representation(rep)
    return rep


def write_line_representation(rep: LineRepresentation) -> str:
    validate_representation(rep)
    xs = rep.x_vertices()
    ys = rep.y_vertices()
    xs_by_top = sorted(xs, key=lambda v: rep.top[v])
    ys_by_top = sorted(ys, key=lambda v: rep.top[v])
    names = {}
    for i, v in enumerate(xs_by_top, start=1):
        names[v] = f"x{i}"
    for j, v in enumerate(ys_by_top, start=1):
        names[v] = f"y{j}"
    top_line = " ".join(names[v] for v in sorted(range(rep.n), key=lambda v: rep.top[v]))
    bottom_line = " ".join(names[v] for v in sorted(range(rep.n), key=lambda v: rep.bottom[v]))
    return top_line + "\n" + bottom_line + "\n"


# -- representation property checks ------------------------------------

@dataclass(frozen=True)
class RepresentationCheck:
    ok: bool
    failed_prop: str | None = None
    detail: object = None


def check_representation_props(rep: LineRepresentation) -> RepresentationCheck:
    """Machine checks of the proven segment-model properties on the derived
    graph: one-sided neighborhoods, interval neighborhoods, crossing
    closure, and the nested closure.  Violations indicate a bug."""
    validate_representation(rep)
    g = graph_from_line_representation(rep)
    xs = sorted(rep.x_vertices(), key=lambda v: rep.top[v])
    ys = sorted(rep.y_vertices(), key=lambda v: rep.top[v])

    # one-sided neighborhoods on the top line
    for y in ys:
        for u, v in combinations([x for x in xs if g.has_edge(x, y)], 2):
            if (rep.top[u] - rep.top[y]) * (rep.top[v] - rep.top[y]) <= 0:
                return RepresentationCheck(False, "sameside", (u, v, y))
    for x in xs:
        for u, v in combinations([y for y in ys if g.has_edge(x, y)], 2):
            if (rep.top[u] - rep.top[x]) * (rep.top[v] - rep.top[x]) <= 0:
                return RepresentationCheck(False, "sameside", (u, v, x))

    # interval neighborhoods in index order
    for x in xs:
        nbr_idx = [j for j, y in enumerate(ys) if g.has_edge(x, y)]
        if nbr_idx and nbr_idx != list(range(nbr_idx[0], nbr_idx[-1] + 1)):
            return RepresentationCheck(False, "middle", (x, nbr_idx))
    for y in ys:
        nbr_idx = [i for i, x in enumerate(xs) if g.has_edge(x, y)]
        if nbr_idx and nbr_idx != list(range(nbr_idx[0], nbr_idx[-1] + 1)):
            return RepresentationCheck(False, "middle", (y, nbr_idx))

    # crossing closure
    for (i1, x1), (i2, x2) in combinations_with_replacement(list(enumerate(xs)), 2):
        for (j1, y1), (j2, y2) in combinations_with_replacement(list(enumerate(ys)), 2):
            if g.has_edge(x1, y2) and g.has_edge(x2, y1):
                if not (g.has_edge(x1, y1) and g.has_edge(x2, y2)):
                    return RepresentationCheck(False, "cruzados", (x1, x2, y1, y2))

    # nested crossing closure
    for xq in combinations_with_replacement(range(len(xs)), 4):
        for yq in combinations_with_replacement(range(len(ys)), 4):
            if g.has_edge(xs[xq[0]], ys[yq[3]]) and g.has_edge(xs[xq[3]], ys[yq[0]]):
                inner_x = (xs[xq[1]], xs[xq[2]])
                inner_y = (ys[yq[1]], ys[yq[2]])
                for ix in inner_x:
                    for iy in inner_y:
                        if not g.has_edge(ix, iy):
                            return RepresentationCheck(
                                False, "cruzados-contraidos", (xq, yq, ix, iy)
                            )
    return RepresentationCheck(True)


def random_line_representation(rng, max_side: int = 6) -> LineRepresentation:
    """Random valid segment model: independent random interleavings of the
    two sides on each line; within-side monotonicity holds by construction."""
    p = rng.randint(1, max_side)
    q = rng.randint(1, max_side)
    n = p + q
    side = ["X"] * p + ["Y"] * q

    def random_positions():
        x_slots = sorted(rng.sample(range(n), p))
        pos = [0] * n
        xi = 0
        yi = 0
        x_slotset = set(x_slots)
        for slot in range(n):
            if slot in x_slotset:
                pos[xi] = slot + 1
                xi += 1
            else:
                pos[p + yi] = slot + 1
                yi += 1
        return pos

    top = random_positions()
    bottom = random_positions()
    return LineRepresentation(tuple(side), tuple(top), tuple(bottom))


def enumerate_all_paths(g: Graph) -> list[PathSeq]:
    """Every simple path of g (canonical orientation), for the sweep that
    exercises order_path on all paths rather than only longest ones."""
    out = set()
    from .longest_paths import canonical_orientation

    def dfs(v, visited, stack):
        out.add(canonical_orientation(tuple(stack)))
        for w in bits(g.rows[v] & ~visited):
            stack.append(w)
            dfs(w, visited | 1 << w, stack)
            stack.pop()

    for s in range(g.n):
        dfs(s, 1 << s, [s])
    return [PathSeq(seq) for seq in sorted(out)]
