"""Benchmark harness: run matching problems over instance suites under a
time budget and summarize success rates.

A suite is a list of cases, each naming a problem kind and two graphs
(generated or loaded from files). Every (case, backend) cell records status,
cost, wall time and whether the budget expired; a cell counts as solved when
it reached a definitive answer (SAT, UNSAT or proven optimum) in time.
"""

from __future__ import annotations

import concurrent.futures
import csv
import io
import json
import time
from dataclasses import dataclass

from .bridge import SolverConfig, SolverStatus, run_solver
from .editing import MODE_RELABEL, CostModel
from .encode import ProblemKind, render_job
from .generators import gen_chain, gen_cycle, gen_random
from .graphs import PropertyGraph, load_graph
from .search import (
    GedResult,
    SearchOptions,
    SearchTimeout,
    min_edit_matching,
    search_hom,
    search_iso,
    search_sub,
)

CSV_COLUMNS = ("instance", "kind", "backend", "status", "cost", "ms", "timed_out")

_DECISION_KINDS = {ProblemKind.HOM, ProblemKind.ISO, ProblemKind.SUB}
_SOLVED = {"SAT", "UNSAT", "OPTIMUM"}


@dataclass(frozen=True)
class BenchCase:
    instance: str
    kind: ProblemKind
    g1: PropertyGraph
    g2: PropertyGraph


@dataclass(frozen=True)
class BenchResult:
    instance: str
    kind: str
    backend: str
    status: str
    cost: int | None
    ms: float
    timed_out: bool

    @property
    def solved(self) -> bool:
        return self.status in _SOLVED and not self.timed_out


def _graph_from_spec(spec: dict, default_prefix: str) -> PropertyGraph:
    if "file" in spec:
        return load_graph(spec["file"])
    gen = spec.get("gen")
    prefix = spec.get("prefix", default_prefix)
    if gen == "chain":
        return gen_chain(int(spec["k"]), prefix)
    if gen == "cycle":
        return gen_cycle(int(spec["k"]), prefix)
    if gen == "random":
        return gen_random(int(spec["n"]), float(spec.get("p", 0.1)), int(spec.get("seed", 0)), prefix)
    raise ValueError(f"unrecognized graph spec {spec!r}")


def load_suite(path: str) -> list[BenchCase]:
    """Read a JSON suite file: {"cases": [{"id", "kind", "g1", "g2"}, ...]}."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    cases = []
    for entry in data["cases"]:
        cases.append(
            BenchCase(
                instance=str(entry["id"]),
                kind=ProblemKind.from_name(entry["kind"]),
                g1=_graph_from_spec(entry["g1"], "a"),
                g2=_graph_from_spec(entry["g2"], "b"),
            )
        )
    return cases


_SHAPES = {"chain": gen_chain, "cycle": gen_cycle}


def synthetic_matrix() -> list[BenchCase]:
    """Chain/cycle pairs for k in 10..100 across all four shape pairs and all
    problems, plus random graphs with edge probability 0.1; the subgraph rows
    additionally embed a one-shorter chain into the cycle."""
    cases: list[BenchCase] = []
    ks = range(10, 101, 10)
    for kind in (ProblemKind.HOM, ProblemKind.ISO, ProblemKind.SUB, ProblemKind.GED):
        for s1 in ("chain", "cycle"):
            for s2 in ("chain", "cycle"):
                for k in ks:
                    cases.append(
                        BenchCase(
                            f"{kind.value}-{s1}{k}-{s2}{k}",
                            kind,
                            _SHAPES[s1](k, "a"),
                            _SHAPES[s2](k, "b"),
                        )
                    )
        for n in range(5, 51, 5):
            cases.append(
                BenchCase(
                    f"{kind.value}-rand{n}",
                    kind,
                    gen_random(n, 0.1, seed=2 * n, prefix="a"),
                    gen_random(n, 0.1, seed=2 * n + 1, prefix="b"),
                )
            )
    for k in range(2, 101, 10):
        cases.append(
            BenchCase(
                f"sub-chain{k - 1}-cycle{k}",
                ProblemKind.SUB,
                gen_chain(k - 1, "a"),
                gen_cycle(k, "b"),
            )
        )
    return cases


def native_matrix(ged_max_k: int = 8) -> list[BenchCase]:
    """The decision matrix plus edit distance on chain-versus-cycle pairs
    small enough for the exact native search."""
    cases: list[BenchCase] = []
    for kind in (ProblemKind.HOM, ProblemKind.ISO, ProblemKind.SUB):
        for s1 in ("chain", "cycle"):
            for s2 in ("chain", "cycle"):
                for k in range(10, 101, 10):
                    cases.append(
                        BenchCase(
                            f"{kind.value}-{s1}{k}-{s2}{k}",
                            kind,
                            _SHAPES[s1](k, "a"),
                            _SHAPES[s2](k, "b"),
                        )
                    )
    for k in range(1, ged_max_k + 1):
        cases.append(
            BenchCase(
                f"ged-chain{k}-cycle{k}",
                ProblemKind.GED,
                gen_chain(k, "a"),
                gen_cycle(k, "b"),
            )
        )
    return cases


PRESETS = {"synthetic-matrix": synthetic_matrix, "native-matrix": native_matrix}


def _run_native(case: BenchCase, budget: float) -> tuple[str, int | None, bool]:
    opts = SearchOptions(budget=budget)
    if case.kind in _DECISION_KINDS:
        searcher = {
            ProblemKind.HOM: search_hom,
            ProblemKind.ISO: search_iso,
            ProblemKind.SUB: search_sub,
        }[case.kind]
        try:
            witness = searcher(case.g1, case.g2, opts)
        except SearchTimeout:
            return "TIMEOUT", None, True
        return ("SAT", None, False) if witness is not None else ("UNSAT", None, False)
    if case.kind is ProblemKind.GED:
        result: GedResult = min_edit_matching(case.g1, case.g2, opts)
    elif case.kind is ProblemKind.GED_RELABEL:
        result = min_edit_matching(
            case.g1, case.g2, SearchOptions(mode=MODE_RELABEL, budget=budget)
        )
    elif case.kind is ProblemKind.GEDC_WEIGHTED:
        result = min_edit_matching(
            case.g1,
            case.g2,
            SearchOptions(mode=MODE_RELABEL, cost_model=CostModel.gedc(), budget=budget),
        )
    else:
        raise ValueError(f"the native backend cannot run {case.kind.value}")
    if result.optimal:
        return "OPTIMUM", result.cost, False
    return "TIMEOUT", result.cost, True


def _run_asp(case: BenchCase, budget: float, solver: SolverConfig) -> tuple[str, int | None, bool]:
    cm = CostModel.gedc() if case.kind is ProblemKind.GEDC_WEIGHTED else None
    program = render_job(case.g1, case.g2, case.kind, cm)
    cfg = SolverConfig(solver.executable, solver.args, budget, solver.models)
    ans = run_solver(program, cfg)
    cost = sum(ans.costs) if ans.costs is not None else None
    return ans.status.value, cost, ans.status is SolverStatus.TIMEOUT


def _run_cell(case: BenchCase, backend: str, budget: float, solver: SolverConfig | None) -> BenchResult:
    start = time.monotonic()
    try:
        if backend == "native":
            status, cost, timed_out = _run_native(case, budget)
        elif backend == "asp":
            if solver is None:
                raise ValueError("the asp backend needs a solver configuration")
            status, cost, timed_out = _run_asp(case, budget, solver)
        else:
            raise ValueError(f"unknown backend {backend!r}")
    except Exception:
        status, cost, timed_out = "ERROR", None, False
    ms = (time.monotonic() - start) * 1000.0
    return BenchResult(case.instance, case.kind.value, backend, status, cost, ms, timed_out)


def run_bench(
    cases: list[BenchCase],
    backends: tuple[str, ...] = ("native",),
    budget: float = 30.0,
    solver: SolverConfig | None = None,
    workers: int = 1,
) -> list[BenchResult]:
    """Run every (case, backend) cell; per-cell errors are recorded as ERROR
    rows and the run continues. Results come back sorted."""
    cells = [(case, backend) for case in cases for backend in backends]
    if workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(lambda cb: _run_cell(cb[0], cb[1], budget, solver), cells)
            )
    else:
        results = [_run_cell(case, backend, budget, solver) for case, backend in cells]
    return sorted(results, key=lambda r: (r.instance, r.kind, r.backend))


def success_rates(results: list[BenchResult]) -> dict[tuple[str, str], float]:
    """Fraction of solved cells per (kind, backend) group."""
    groups: dict[tuple[str, str], list[BenchResult]] = {}
    for r in results:
        groups.setdefault((r.kind, r.backend), []).append(r)
    return {key: sum(r.solved for r in rows) / len(rows) for key, rows in sorted(groups.items())}


def render_csv(results: list[BenchResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CSV_COLUMNS)
    for r in results:
        writer.writerow(
            [r.instance, r.kind, r.backend, r.status, "" if r.cost is None else r.cost,
             f"{r.ms:.1f}", str(r.timed_out).lower()]
        )
    return buf.getvalue()


def render_summary(results: list[BenchResult]) -> str:
    lines = [f"{'kind':<10} {'backend':<8} {'cells':>5} {'solved':>6} {'rate':>7}"]
    for (kind, backend), rate in success_rates(results).items():
        rows = [r for r in results if r.kind == kind and r.backend == backend]
        solved = sum(r.solved for r in rows)
        lines.append(f"{kind:<10} {backend:<8} {len(rows):>5} {solved:>6} {rate:>6.0%}")
    return "\n".join(lines)
