"""Command-line surface: lpt, tw, verify, gen, hunt, dot."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import LptLabError
from .fixtures import fixture_names, load_fixture
from .graphs import (
    canonical_form,
    enumerate_connected_graphs,
    graph_from_bitstring,
    parse_edge_list,
    parse_graph6,
    write_graph6,
)
from .harness import (
    EXIT_CONFIG,
    SuiteConfig,
    hunt_chordal_lpt2,
    load_hunt_state,
    run_suite,
)
from .longest_paths import DEFAULT_BUDGET, enumerate_longest_paths, path_to_dot
from .transversal import gallai_vertex, lpt
from .treedec import exact_treewidth, write_td


def _resolve_graph(spec: str):
    """Fixture name, file path (graph6 or edge list), or graph6 literal."""
    if spec in fixture_names():
        return load_fixture(spec)
    if os.path.exists(spec):
        text = open(spec).read()
        stripped = text.strip()
        first = stripped.splitlines()[0] if stripped else ""
        if first and first.split()[0].isdigit():
            return parse_edge_list(text)
        return parse_graph6(first)
    return parse_graph6(spec)


def _cmd_lpt(args) -> int:
    g = _resolve_graph(args.graph)
    lps = enumerate_longest_paths(g, args.budget)
    result = lpt(g, lps=lps, budget=args.budget)
    gv = gallai_vertex(g, lps=lps, budget=args.budget)
    out = {
        "n": g.n,
        "L": lps.length,
        "lpt": result.size,
        "witness": sorted(result.witness),
        "gallai": gv,
    }
    print(json.dumps(out, sort_keys=True))
    return 0


def _cmd_tw(args) -> int:
    g = _resolve_graph(args.graph)
    width, td = exact_treewidth(g)
    print(json.dumps({"n": g.n, "tw": width}, sort_keys=True))
    if args.td:
        with open(args.td, "w") as fh:
            fh.write(write_td(td, g.n))
    return 0


def _cmd_verify(args) -> int:
    cfg = SuiteConfig(
        suite=args.suite,
        n_max=args.n_max,
        dedup=args.dedup,
        jobs=args.jobs,
        seed=args.seed,
        budget=args.budget,
        fixture=args.fixture,
        host_max=args.host_max,
        star_max=args.star_max,
        chordal_only=args.chordal_only,
    )
    report = run_suite(cfg)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report.to_json())
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(report.to_csv())
    for suite, ctr in sorted(report.counters.items()):
        print(
            f"{suite}: {ctr['graphs']} records, {ctr['violations']} violations, "
            f"{ctr['skipped']} skipped",
            file=sys.stderr,
        )
    print(f"wall time: {report.wall_time:.2f}s", file=sys.stderr)
    code = report.exit_code()
    if code:
        for v in report.violations[:20]:
            print(f"VIOLATION {v}", file=sys.stderr)
        for v in report.internal_inconsistencies[:20]:
            print(f"INTERNAL {v}", file=sys.stderr)
        for v in report.budget_errors[:20]:
            print(f"BUDGET/ERROR {v}", file=sys.stderr)
    return code


def _cmd_gen(args) -> int:
    emitted = set()
    if args.klass in ("chordal", "all", "bpg"):
        from .bpg import find_strong_ordering
        from .chordal import is_chordal

        for g in enumerate_connected_graphs(args.n, dedup=True):
            if args.klass == "chordal" and is_chordal(g) is None:
                continue
            if args.klass == "bpg":
                try:
                    if find_strong_ordering(g) is None:
                        continue
                except LptLabError:
                    continue
            line = write_graph6(g)
            if line not in emitted:
                emitted.add(line)
                print(line)
        return 0
    if args.klass == "substar":
        from .graphs import is_connected
        from .substar import enumerate_host_trees, enumerate_models, intersection_graph

        forms = set()
        for host in enumerate_host_trees(min(args.n + 1, 7)):
            for model in enumerate_models(host, args.n):
                g = intersection_graph(model)
                if is_connected(g):
                    forms.add(canonical_form(g))
        for form in sorted(forms):
            print(write_graph6(graph_from_bitstring(args.n, form)))
        return 0
    raise LptLabError(f"unknown class {args.klass!r}")


def _cmd_hunt(args) -> int:
    if args.target != "chordal-lpt2":
        print(f"unknown hunt target {args.target!r}", file=sys.stderr)
        return EXIT_CONFIG
    n, mask = args.n, 0
    if args.resume and os.path.exists(args.resume):
        state = load_hunt_state(args.resume)
        n, mask = state["n"], state["mask"]
        print(f"resuming at n={n} mask={mask}", file=sys.stderr)
    while n <= args.n_max:
        hit = hunt_chordal_lpt2(
            n,
            state_path=args.resume,
            mask_start=mask,
            budget=args.budget,
            log=lambda msg: print(msg, file=sys.stderr),
        )
        if hit:
            print(json.dumps(hit, sort_keys=True))
            return 1
        print(f"n={n}: no connected chordal graph with lpt > 1", file=sys.stderr)
        n, mask = n + 1, 0
    return 0


def _cmd_dot(args) -> int:
    g = _resolve_graph(args.graph)
    highlight = None
    if args.highlight_longest:
        lps = enumerate_longest_paths(g, args.budget)
        highlight = lps.paths[min(args.path_index, len(lps.paths) - 1)]
    sys.stdout.write(path_to_dot(g, highlight))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lptlab",
        description="Exact longest-path-transversal laboratory for small graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lpt", help="exact lpt of one graph")
    p.add_argument("graph", help="graph6 string, file, or fixture name")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=_cmd_lpt)

    p = sub.add_parser("tw", help="exact treewidth of one graph")
    p.add_argument("graph")
    p.add_argument("--td", help="write the optimal decomposition here (.td format)")
    p.set_defaults(func=_cmd_tw)

    p = sub.add_parser("verify", help="run a verification suite over the catalog")
    p.add_argument("suite", choices=["gallai", "chordal", "tw", "bpg", "substar", "lemmas", "all"])
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--dedup", action="store_true", default=True)
    p.add_argument("--no-dedup", dest="dedup", action="store_false")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--fixture", help="run on a named fixture instead of the catalog")
    p.add_argument("--host-max", type=int, default=4)
    p.add_argument("--star-max", type=int, default=4)
    p.add_argument("--chordal-only", action="store_true")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--csv", help="write the CSV summary here")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("gen", help="stream a graph-class catalog as graph6")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--class", dest="klass", default="all",
                   choices=["chordal", "bpg", "substar", "all"])
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("hunt", help="counterexample search with resumable cursor")
    p.add_argument("target", help="currently: chordal-lpt2")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--resume", help="state file for the edge-mask cursor")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=_cmd_hunt)

    p = sub.add_parser("dot", help="DOT export, optionally highlighting a longest path")
    p.add_argument("graph")
    p.add_argument("--highlight-longest", action="store_true")
    p.add_argument("--path-index", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=_cmd_dot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LptLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
