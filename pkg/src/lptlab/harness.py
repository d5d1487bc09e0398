"""Suite orchestration: catalog sweeps, fixtures, reports, parallelism.

Workers receive plain serializable tasks (graph6 strings, star tuples) and
return plain dicts; the aggregator is the single writer of the report and
merges results in catalog order, so reports are byte-identical across runs
with the same configuration regardless of worker scheduling.  Wall time is
kept off the serialized report for the same reason.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from multiprocessing import Pool

from . import bpg as bpg_mod
from . import chordal as chordal_mod
from . import substar as substar_mod
from . import treedec as treedec_mod
from .errors import (
    BudgetExceededError,
    ConfigError,
    InternalInconsistencyError,
    LptLabError,
)
from .fixtures import load_fixture
from .graphs import (
    Graph,
    build_catalog,
    enumerate_connected_bipartite_graphs,
    enumerate_connected_graphs,
    is_connected,
    labeled_graph_at,
    parse_graph6,
    write_graph6,
)
from .longest_paths import DEFAULT_BUDGET, enumerate_longest_paths
from .transversal import gallai_vertex, lpt

SUITES = ("gallai", "chordal", "tw", "bpg", "substar", "lemmas", "all")

EXIT_CLEAN = 0
EXIT_VIOLATION = 1
EXIT_INTERNAL = 2
EXIT_CONFIG = 3


@dataclass
class SuiteConfig:
    suite: str = "all"
    n_max: int = 6
    dedup: bool = True
    jobs: int = 1
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    fixture: str | None = None
    host_max: int = 4
    star_max: int = 4
    chordal_only: bool = False
    all_paths_max: int = 8

    def validate(self) -> None:
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {SUITES}")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if self.n_max < 1 or self.n_max > 9:
            raise ConfigError("n_max must be between 1 and 9")
        if self.host_max < 1 or self.host_max > 7:
            raise ConfigError("host_max must be between 1 and 7")
        if self.star_max < 0 or self.star_max > 8:
            raise ConfigError("star_max must be between 0 and 8")
        if self.budget < 1:
            raise ConfigError("budget must be positive")


@dataclass
class SuiteReport:
    config: dict
    records: list = field(default_factory=list)
    counters: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    internal_inconsistencies: list = field(default_factory=list)
    budget_errors: list = field(default_factory=list)
    wall_time: float = 0.0

    def exit_code(self) -> int:
        if self.internal_inconsistencies:
            return EXIT_INTERNAL
        if self.budget_errors:
            return EXIT_CONFIG
        if self.violations:
            return EXIT_VIOLATION
        return EXIT_CLEAN

    def to_json_dict(self) -> dict:
        # wall time deliberately excluded: reports must be byte-identical
        return {
            "config": self.config,
            "records": self.records,
            "counters": self.counters,
            "violations": self.violations,
            "internal_inconsistencies": self.internal_inconsistencies,
            "budget_errors": self.budget_errors,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        cols = ["suite", "graph6", "n", "m", "L", "lpt", "omega", "tw", "verdicts"]
        lines = [",".join(cols)]
        for rec in self.records:
            verdicts = rec.get("verdicts", {})
            vtext = ";".join(
                f"{k}={'ok' if v else 'FAIL'}" for k, v in sorted(verdicts.items())
            )
            row = [
                str(rec.get("suite", "")),
                str(rec.get("graph6", "")),
                str(rec.get("n", "")),
                str(rec.get("m", "")),
                str(rec.get("L", "")),
                str(rec.get("lpt", "")),
                str(rec.get("omega", "")),
                str(rec.get("tw", "")),
                vtext,
            ]
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


# -- per-graph workers -------------------------------------------------

def _base_record(suite: str, g: Graph) -> dict:
    return {"suite": suite, "graph6": write_graph6(g), "n": g.n, "m": g.m}


def _finish(rec: dict, failures: list) -> dict:
    rec["violations"] = failures
    return rec


def _gallai_task(args) -> dict:
    g6, budget = args
    g = parse_graph6(g6)
    rec = _base_record("gallai", g)
    try:
        lps = enumerate_longest_paths(g, budget)
    except BudgetExceededError as exc:
        rec["budget_error"] = str(exc)
        return rec
    result = lpt(g, lps=lps, budget=budget)
    gv = gallai_vertex(g, lps=lps, budget=budget)
    rec.update({"L": lps.length, "lpt": result.size, "gallai": gv})
    masks = lps.vertex_masks
    pairwise = all(
        masks[i] & masks[j] for i in range(len(masks)) for j in range(i + 1, len(masks))
    )
    verdicts = {
        "pairwise_intersection": pairwise,
        "lpt_positive": result.size >= 1,
        "gallai_iff_lpt1": (result.size == 1) == (gv is not None),
    }
    rec["verdicts"] = verdicts
    return _finish(rec, [k for k, ok in verdicts.items() if not ok])


def _chordal_task(args) -> dict:
    g6, budget = args
    g = parse_graph6(g6)
    rec = _base_record("chordal", g)
    peo = chordal_mod.is_chordal(g)
    if peo is None:
        rec["chordal"] = False
        rec["verdicts"] = {}
        return _finish(rec, [])
    rec["chordal"] = True
    try:
        lps = enumerate_longest_paths(g, budget)
    except BudgetExceededError as exc:
        rec["budget_error"] = str(exc)
        return rec
    cliques, omega = chordal_mod.maximal_cliques_chordal(g, peo)
    result = lpt(g, lps=lps, budget=budget)
    verdict = chordal_mod.check_chordal_theorem(
        g, lps=lps, lpt_value=result.size, omega=omega, budget=budget
    )
    tree = chordal_mod.build_clique_tree(g, peo)
    tree_check = treedec_mod.validate_decomposition(g, tree)
    verdicts = {
        "chordal_bound": verdict.holds,
        "clique_tree_valid": tree_check.ok,
        "clique_tree_width": tree.width == omega - 1,
    }
    rec.update(
        {
            "L": lps.length,
            "lpt": result.size,
            "omega": omega,
            "maximal_cliques": len(cliques),
            "lpt_above_one": result.size > 1,
            "verdicts": verdicts,
        }
    )
    return _finish(rec, [k for k, ok in verdicts.items() if not ok])


def _tw_task(args) -> dict:
    g6, budget = args
    g = parse_graph6(g6)
    rec = _base_record("tw", g)
    try:
        lps = enumerate_longest_paths(g, budget)
    except BudgetExceededError as exc:
        rec["budget_error"] = str(exc)
        return rec
    width, td = treedec_mod.exact_treewidth(g)
    result = lpt(g, lps=lps, budget=budget)
    rec.update({"L": lps.length, "lpt": result.size, "tw": width})
    verdicts = {"tw_theorem": result.size <= width}
    verdicts["optimal_td_valid"] = treedec_mod.validate_decomposition(g, td).ok
    try:
        bag = treedec_mod.find_transversal_bag(g, td, lps=lps, budget=budget)
        rec["transversal_bag"] = bag
        verdicts["transversal_bag_found"] = True
    except InternalInconsistencyError as exc:
        rec["internal_inconsistency"] = str(exc)
        verdicts["transversal_bag_found"] = False
    if width >= 0 and g.n >= width + 1:
        full = treedec_mod.make_full_decomposition(td, max(width, 0))
        sizes_ok = all(len(b) == width + 1 for b in full.bags)
        inter_ok = all(
            len(full.bags[a] & full.bags[b]) == width for a, b in full.edges
        )
        verdicts["full_decomposition"] = (
            sizes_ok and inter_ok and treedec_mod.validate_decomposition(g, full).ok
        )
    peo = chordal_mod.is_chordal(g)
    rec["chordal"] = peo is not None
    if peo is not None:
        _, omega = chordal_mod.maximal_cliques_chordal(g, peo)
        rec["omega"] = omega
        verdicts["tw_equals_omega_minus_1"] = width == omega - 1
    rec["verdicts"] = verdicts
    return _finish(rec, [k for k, ok in verdicts.items() if not ok])


def _lemmas_task(args) -> dict:
    g6, budget, chordal_only = args
    g = parse_graph6(g6)
    rec = _base_record("lemmas", g)
    peo = chordal_mod.is_chordal(g)
    rec["chordal"] = peo is not None
    if chordal_only and peo is None:
        rec["skipped"] = True
        rec["verdicts"] = {}
        return _finish(rec, [])
    try:
        lps = enumerate_longest_paths(g, budget)
    except BudgetExceededError as exc:
        rec["budget_error"] = str(exc)
        return rec
    failures = []
    join_checked = sep_checked = fenced_checked = 0
    for k in chordal_mod.all_cliques(g, 2):
        if not chordal_mod.check_lemma_extreme_join(g, k, lps).holds:
            failures.append(f"extreme_join@{sorted(k)}")
        if not chordal_mod.check_lemma_extreme_separated(g, k, lps).holds:
            failures.append(f"extreme_separated@{sorted(k)}")
        join_checked += 1
        sep_checked += 1
    if peo is not None:
        _, omega = chordal_mod.maximal_cliques_chordal(g, peo)
        lpt_value = lpt(g, lps=lps, budget=budget).size
        rec["omega"] = omega
        rec["lpt"] = lpt_value
        for k in chordal_mod.all_cliques(g, 1):
            verdict = chordal_mod.check_lemma_fenceds(
                g, k, lps=lps, lpt_value=lpt_value, omega=omega, budget=budget
            )
            if not verdict.holds:
                failures.append(f"fenceds@{sorted(k)}")
            fenced_checked += 1
    rec["L"] = lps.length
    rec["cliques_join_checked"] = join_checked
    rec["cliques_sep_checked"] = sep_checked
    rec["cliques_fenced_checked"] = fenced_checked
    rec["verdicts"] = {
        "extreme_join": not any(f.startswith("extreme_join") for f in failures),
        "extreme_separated": not any(f.startswith("extreme_separated") for f in failures),
        "fenceds": not any(f.startswith("fenceds") for f in failures),
    }
    return _finish(rec, failures)


def _bpg_task(args) -> dict:
    g6, budget, all_paths_max = args
    g = parse_graph6(g6)
    rec = _base_record("bpg", g)
    so = bpg_mod.find_strong_ordering(g)
    if so is None:
        rec["strong_orderable"] = False
        rec["verdicts"] = {}
        return _finish(rec, [])
    rec["strong_orderable"] = True
    rec["x_order"] = list(so.x_order)
    rec["y_order"] = list(so.y_order)
    try:
        lps = enumerate_longest_paths(g, budget)
    except BudgetExceededError as exc:
        rec["budget_error"] = str(exc)
        return rec
    result = lpt(g, lps=lps, budget=budget)
    rec.update({"L": lps.length, "lpt": result.size})
    verdicts = {"lpt_is_one": result.size == 1}
    edge_check = bpg_mod.check_edge_transversal(g, so, lps=lps, budget=budget)
    verdicts["edge_transversal"] = edge_check.holds
    order_heads = [order[0] for order in (so.x_order, so.y_order) if order]
    try:
        gv = bpg_mod.bpg_gallai_vertex(g, so, lps=lps, budget=budget)
        rec["bpg_gallai"] = gv
        verdicts["gallai_is_order_minimal"] = gv in order_heads
    except InternalInconsistencyError as exc:
        rec["internal_inconsistency"] = str(exc)
        verdicts["gallai_is_order_minimal"] = False
    paths = (
        bpg_mod.enumerate_all_paths(g) if g.n <= all_paths_max else list(lps.paths)
    )
    ordered_ok = True
    for p in paths:
        try:
            bpg_mod.order_path(g, so, p)
        except InternalInconsistencyError as exc:
            ordered_ok = False
            rec["internal_inconsistency"] = str(exc)
            break
    verdicts["order_path"] = ordered_ok
    rec["paths_ordered"] = len(paths)
    try:
        rep = bpg_mod.line_representation_from_ordering(g, so)
        props = bpg_mod.check_representation_props(rep)
        verdicts["representation_roundtrip"] = True
        verdicts["representation_props"] = props.ok
    except InternalInconsistencyError as exc:
        rec["internal_inconsistency"] = str(exc)
        verdicts["representation_roundtrip"] = False
    rec["verdicts"] = verdicts
    return _finish(rec, [k for k, ok in verdicts.items() if not ok])


def _substar_task(args) -> dict:
    host_nodes, host_edges, stars, budget = args
    host = substar_mod.HostTree(host_nodes, tuple(tuple(e) for e in host_edges))
    model = substar_mod.SubstarModel(
        host, tuple(substar_mod.Star(c, frozenset(lv)) for c, lv in stars)
    )
    g = substar_mod.intersection_graph(model)
    rec = {
        "suite": "substar",
        "graph6": write_graph6(g),
        "n": g.n,
        "m": g.m,
        "model": substar_mod.write_model(model),
    }
    if not is_connected(g):
        rec["connected"] = False
        rec["verdicts"] = {}
        return _finish(rec, [])
    rec["connected"] = True
    try:
        lps = enumerate_longest_paths(g, budget)
    except BudgetExceededError as exc:
        rec["budget_error"] = str(exc)
        return rec
    theorem = substar_mod.check_substar_theorem(model, lps=lps, budget=budget)
    prev = substar_mod.check_previous_onebranch(model, lps=lps, budget=budget)
    verdicts = {
        "chordal": chordal_mod.is_chordal(g) is not None,
        "lpt_is_one": theorem.evidence["lpt"] == 1,
        "substar_theorem": theorem.holds,
        "previous_onebranch": prev.holds,
    }
    rec.update({"L": lps.length, "lpt": theorem.evidence["lpt"], "verdicts": verdicts})
    return _finish(rec, [k for k, ok in verdicts.items() if not ok])


_TASK_RUNNERS = {
    "gallai": _gallai_task,
    "chordal": _chordal_task,
    "tw": _tw_task,
    "lemmas": _lemmas_task,
    "bpg": _bpg_task,
    "substar": _substar_task,
}


def _run_one(packed):
    suite, args = packed
    try:
        return _TASK_RUNNERS[suite](args)
    except InternalInconsistencyError as exc:
        return {"suite": suite, "internal_inconsistency": str(exc), "task": repr(args)}
    except LptLabError as exc:
        return {"suite": suite, "error": f"{type(exc).__name__}: {exc}", "task": repr(args)}


# -- task generation ---------------------------------------------------

def _graph_universe(cfg: SuiteConfig, n_min: int = 1):
    if cfg.fixture is not None:
        yield load_fixture(cfg.fixture)
        return
    for n in range(n_min, cfg.n_max + 1):
        yield from enumerate_connected_graphs(n, dedup=cfg.dedup)


def _bipartite_universe(cfg: SuiteConfig):
    if cfg.fixture is not None:
        yield load_fixture(cfg.fixture)
        return
    for n in range(1, cfg.n_max + 1):
        yield from enumerate_connected_bipartite_graphs(n)


def _tasks_for(cfg: SuiteConfig, suite: str) -> list:
    if suite == "gallai":
        return [("gallai", (write_graph6(g), cfg.budget)) for g in _graph_universe(cfg)]
    if suite == "chordal":
        return [("chordal", (write_graph6(g), cfg.budget)) for g in _graph_universe(cfg)]
    if suite == "tw":
        # the lpt <= tw theorem is false for the one-vertex graph (lpt 1, tw 0)
        return [("tw", (write_graph6(g), cfg.budget)) for g in _graph_universe(cfg, n_min=2)]
    if suite == "lemmas":
        return [
            ("lemmas", (write_graph6(g), cfg.budget, cfg.chordal_only))
            for g in _graph_universe(cfg)
        ]
    if suite == "bpg":
        return [
            ("bpg", (write_graph6(g), cfg.budget, cfg.all_paths_max))
            for g in _bipartite_universe(cfg)
        ]
    if suite == "substar":
        tasks = []
        for host in substar_mod.enumerate_host_trees(cfg.host_max):
            for count in range(1, cfg.star_max + 1):
                for model in substar_mod.enumerate_models(host, count):
                    stars = tuple((s.center, tuple(sorted(s.leaves))) for s in model.stars)
                    tasks.append(
                        ("substar", (host.nodes, tuple(host.edges), stars, cfg.budget))
                    )
        return tasks
    raise ConfigError(f"no task generator for suite {suite!r}")


def _bpg_random_rep_records(cfg: SuiteConfig) -> list:
    """Seeded random segment models: validity and property checks."""
    rng = random.Random(cfg.seed)
    records = []
    for i in range(200):
        rep = bpg_mod.random_line_representation(rng, max_side=6)
        g = bpg_mod.graph_from_line_representation(rep)
        props = bpg_mod.check_representation_props(rep)
        natural = bpg_mod.satisfies_strong_ordering(
            g, rep.x_vertices(), rep.y_vertices()
        )
        ok = props.ok and natural
        records.append(
            {
                "suite": "bpg",
                "random_rep_index": i,
                "graph6": write_graph6(g),
                "n": g.n,
                "m": g.m,
                "verdicts": {"representation_props": props.ok, "natural_strong": natural},
                "violations": [] if ok else ["random_representation"],
            }
        )
    return records


def run_suite(cfg: SuiteConfig) -> SuiteReport:
    """Execute one suite (or all) and aggregate a deterministic report."""
    cfg.validate()
    started = time.monotonic()
    suites = [s for s in SUITES if s not in ("all",)] if cfg.suite == "all" else [cfg.suite]
    if cfg.fixture is None and cfg.dedup and any(
        s in ("gallai", "chordal", "tw", "lemmas") for s in suites
    ):
        build_catalog(cfg.n_max, jobs=cfg.jobs)
    tasks: list = []
    for s in suites:
        tasks.extend(_tasks_for(cfg, s))

    if cfg.jobs > 1 and len(tasks) > 1:
        with Pool(processes=cfg.jobs) as pool:
            results = list(pool.imap(_run_one, tasks, chunksize=16))
    else:
        results = [_run_one(t) for t in tasks]

    if "bpg" in suites and cfg.fixture is None:
        results.extend(_bpg_random_rep_records(cfg))

    report = SuiteReport(config=asdict(cfg))
    counters: dict = {}
    for rec in results:
        report.records.append(rec)
        suite = rec.get("suite", "?")
        counters.setdefault(suite, {"graphs": 0, "violations": 0, "skipped": 0})
        counters[suite]["graphs"] += 1
        for name in rec.get("violations", []):
            counters[suite]["violations"] += 1
            report.violations.append(
                {"suite": suite, "graph6": rec.get("graph6"), "check": name}
            )
        if rec.get("skipped") or rec.get("chordal") is False or rec.get("strong_orderable") is False or rec.get("connected") is False:
            counters[suite]["skipped"] += 1
        if "internal_inconsistency" in rec:
            report.internal_inconsistencies.append(
                {"suite": suite, "graph6": rec.get("graph6"), "detail": rec["internal_inconsistency"]}
            )
        if "budget_error" in rec:
            report.budget_errors.append(
                {"suite": suite, "graph6": rec.get("graph6"), "detail": rec["budget_error"]}
            )
        if "error" in rec:
            report.budget_errors.append(
                {"suite": suite, "graph6": rec.get("graph6"), "detail": rec["error"]}
            )
    report.counters = counters
    report.wall_time = time.monotonic() - started
    return report


# -- counterexample hunt ------------------------------------------------

def hunt_chordal_lpt2(n: int, state_path: str | None = None,
                      mask_start: int = 0, budget: int = DEFAULT_BUDGET,
                      checkpoint_every: int = 20000, log=None) -> dict | None:
    """Stream labeled connected chordal graphs on n vertices by ascending
    edge mask, stopping at the first with lpt > 1.  The cursor is
    checkpointed to a resumable state file; no silent skips."""
    pairs = n * (n - 1) // 2
    total = 1 << pairs
    mask = mask_start

    def checkpoint(m):
        if state_path:
            with open(state_path, "w") as fh:
                json.dump({"n": n, "mask": m}, fh)

    while mask < total:
        if mask % checkpoint_every == 0:
            checkpoint(mask)
            if log:
                log(f"cursor n={n} mask={mask}/{total}")
        g = labeled_graph_at(n, mask)
        mask += 1
        if not is_connected(g):
            continue
        if chordal_mod.is_chordal(g) is None:
            continue
        result = lpt(g, budget=budget)
        if result.size > 1:
            checkpoint(mask)
            return {
                "graph6": write_graph6(g),
                "n": n,
                "mask": mask - 1,
                "lpt": result.size,
                "witness": sorted(result.witness),
            }
    checkpoint(total)
    return None


def load_hunt_state(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)
