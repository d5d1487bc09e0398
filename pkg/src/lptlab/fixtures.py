"""Named fixture graphs, including the classical 12-vertex example.

The 12-vertex graph (Walther/Voss and, independently, Zamfirescu) is a
hexagon whose three antipodal vertex pairs are joined through connector
vertices, with one pendant vertex hanging from each connector.
Equivalently: K_{3,3} with three independent edges subdivided and a
pendant on each subdivision vertex, which certifies treewidth >= 3 via
the K_{3,3} minor.

Integrity gate for the "walther" fixture before any use: 12 vertices,
no Gallai vertex, lpt exactly 2.  The exact treewidth (3) is computed
and attached to the loaded record; the acceptance suite asserts the
documented expectation against it separately.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FixtureIntegrityError
from .graphs import Graph, graph_from_edges
from .longest_paths import enumerate_longest_paths
from .transversal import gallai_vertex, lpt
from .treedec import exact_treewidth


def walther_graph() -> Graph:
    """The classical 12-vertex graph with no vertex on all longest paths."""
    hexagon = [(i, (i + 1) % 6) for i in range(6)]
    connectors = [(0, 6), (3, 6), (1, 7), (4, 7), (2, 8), (5, 8)]
    pendants = [(6, 9), (7, 10), (8, 11)]
    return graph_from_edges(12, hexagon + connectors + pendants, name="walther")


def bpg_fig2_graph() -> Graph:
    """Bipartite permutation example: X = {0,1,2}, Y = {3,4,5,6}, nine edges."""
    edges = [
        (0, 3), (0, 4), (0, 5),
        (1, 3), (1, 4), (1, 5), (1, 6),
        (2, 5), (2, 6),
    ]
    return graph_from_edges(7, edges, name="bpg-fig2")


def _path(n: int, name: str) -> Graph:
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)], name=name)


def _cycle(n: int, name: str) -> Graph:
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)], name=name)


def _complete(n: int, name: str) -> Graph:
    return graph_from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)], name=name)


_BUILDERS = {
    "walther": walther_graph,
    "bpg-fig2": bpg_fig2_graph,
    "p3": lambda: _path(3, "p3"),
    "p4": lambda: _path(4, "p4"),
    "p5": lambda: _path(5, "p5"),
    "c4": lambda: _cycle(4, "c4"),
    "c5": lambda: _cycle(5, "c5"),
    "c6": lambda: _cycle(6, "c6"),
    "k3": lambda: _complete(3, "k3"),
    "k4": lambda: _complete(4, "k4"),
    "k5": lambda: _complete(5, "k5"),
    "claw": lambda: graph_from_edges(4, [(0, 1), (0, 2), (0, 3)], name="claw"),
    "diamond": lambda: graph_from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)], name="diamond"),
}


@dataclass(frozen=True)
class FixtureRecord:
    graph: Graph
    treewidth: int | None = None


def fixture_names() -> list[str]:
    return sorted(_BUILDERS)


def load_fixture(name: str) -> Graph:
    """The named graph; the walther fixture is validated before use."""
    if name not in _BUILDERS:
        raise FixtureIntegrityError(
            f"unknown fixture {name!r}; known: {', '.join(fixture_names())}"
        )
    g = _BUILDERS[name]()
    if name == "walther":
        validate_walther(g)
    return g


def validate_walther(g: Graph) -> FixtureRecord:
    """Reject a candidate encoding unless it has 12 vertices, no Gallai
    vertex, and lpt exactly 2; returns the record with its exact treewidth."""
    if g.n != 12:
        raise FixtureIntegrityError(f"walther encoding has {g.n} vertices, want 12")
    lps = enumerate_longest_paths(g)
    if gallai_vertex(g, lps=lps) is not None:
        raise FixtureIntegrityError("walther encoding has a vertex on all longest paths")
    size = lpt(g, lps=lps).size
    if size != 2:
        raise FixtureIntegrityError(f"walther encoding has lpt {size}, want 2")
    width, _ = exact_treewidth(g)
    return FixtureRecord(g, treewidth=width)
