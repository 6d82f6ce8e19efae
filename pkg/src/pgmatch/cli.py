"""Command-line interface.

Exit codes for solving commands follow the solver-status mapping:
SAT/OPTIMUM 0, UNSAT 1, TIMEOUT 2, ERROR 3.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bench import PRESETS, load_suite, render_csv, render_summary, run_bench
from .bridge import (
    EXIT_CODES,
    SolverConfig,
    SolverStatus,
    decode_edit_script,
    decode_matching,
    default_solver,
    run_solver,
)
from .editing import (
    MODE_LABEL_HARD,
    MODE_RELABEL,
    CostModel,
    format_script,
)
from .encode import ProblemKind, render_job
from .generators import gen_chain, gen_cycle, gen_random
from .graphs import format_graph, load_graph
from .search import (
    SearchOptions,
    SearchTimeout,
    min_edit_matching,
    search_hom,
    search_iso,
    search_sub,
)


def _cost_model(name: str) -> CostModel:
    if name == "unit":
        return CostModel.unit()
    if name == "gedc":
        return CostModel.gedc()
    with open(name, encoding="utf-8") as fh:
        data = json.load(fh)
    return CostModel(
        weights={k: int(v) for k, v in data.items() if k not in ("node_sub", "edge_sub")},
        node_sub=int(data.get("node_sub", 1)),
        edge_sub=int(data.get("edge_sub", 1)),
    )


def _print_matching(m) -> None:
    for v, w in m.node_map.items():
        print(f"node {v} -> {w}")
    for e, f in m.edge_map.items():
        print(f"edge {e} -> {f}")


def _write_out(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_check(args) -> int:
    g1, g2 = load_graph(args.g1), load_graph(args.g2)
    opts = SearchOptions(
        mode=MODE_RELABEL if args.relabel else MODE_LABEL_HARD,
        properties="soft" if args.soft_props else "hard",
        budget=args.timeout,
        node_order=args.order,
    )
    searcher = {"hom": search_hom, "iso": search_iso, "sub": search_sub}[args.mode]
    try:
        witness = searcher(g1, g2, opts)
    except SearchTimeout:
        print("status: TIMEOUT")
        return EXIT_CODES[SolverStatus.TIMEOUT]
    if witness is None:
        print("status: UNSAT")
        return EXIT_CODES[SolverStatus.UNSAT]
    print("status: SAT")
    _print_matching(witness)
    return EXIT_CODES[SolverStatus.SAT]


def _cmd_ged(args) -> int:
    g1, g2 = load_graph(args.g1), load_graph(args.g2)
    opts = SearchOptions(
        mode=MODE_RELABEL if args.relabel else MODE_LABEL_HARD,
        cost_model=_cost_model(args.weights),
        budget=args.timeout,
        node_order=args.order,
    )
    result = min_edit_matching(g1, g2, opts)
    print(f"status: {'OPTIMUM' if result.optimal else 'TIMEOUT'}")
    print(f"cost: {result.cost}")
    sys.stdout.write(format_script(result.script))
    if result.optimal:
        return EXIT_CODES[SolverStatus.OPTIMUM]
    return EXIT_CODES[SolverStatus.TIMEOUT]


def _cmd_encode(args) -> int:
    g1, g2 = load_graph(args.g1), load_graph(args.g2)
    kind = ProblemKind.from_name(args.kind)
    cm = _cost_model(args.weights) if kind is ProblemKind.GEDC_WEIGHTED else None
    _write_out(render_job(g1, g2, kind, cm, neq=args.neq), args.output)
    return 0


def _cmd_solve(args) -> int:
    g1, g2 = load_graph(args.g1), load_graph(args.g2)
    kind = ProblemKind.from_name(args.kind)
    cm = _cost_model(args.weights) if kind is ProblemKind.GEDC_WEIGHTED else None
    cfg = _solver_config(args)
    if cfg is None:
        print("no solver configured (use --solver or PGMATCH_SOLVER)", file=sys.stderr)
        return EXIT_CODES[SolverStatus.ERROR]
    program = render_job(g1, g2, kind, cm, neq=args.neq)
    ans = run_solver(program, cfg)
    print(f"status: {ans.status.value}")
    if ans.status in (SolverStatus.SAT, SolverStatus.OPTIMUM, SolverStatus.TIMEOUT):
        if kind in (ProblemKind.GED, ProblemKind.GED_RELABEL, ProblemKind.GEDC_WEIGHTED):
            mode = MODE_LABEL_HARD if kind is ProblemKind.GED else MODE_RELABEL
            script, cost = decode_edit_script(ans, g1, g2, mode, cm or _cost_model("unit"))
            print(f"cost: {cost}")
            sys.stdout.write(format_script(script))
        elif ans.atoms:
            _print_matching(decode_matching(ans, g1, g2))
    return EXIT_CODES[ans.status]


def _solver_config(args) -> SolverConfig | None:
    if args.solver:
        return SolverConfig(
            args.solver, tuple(args.solver_arg or ()), args.timeout, args.models
        )
    cfg = default_solver(args.timeout)
    if cfg is not None and args.models is not None:
        cfg = SolverConfig(cfg.executable, cfg.args, args.timeout, args.models)
    return cfg


def _cmd_gen(args) -> int:
    if args.shape == "chain":
        g = gen_chain(args.k, args.prefix)
    elif args.shape == "cycle":
        g = gen_cycle(args.k, args.prefix)
    else:
        g = gen_random(args.n, args.p, args.seed, args.prefix)
    _write_out(format_graph(g), args.output)
    return 0


def _cmd_bench(args) -> int:
    if args.suite in PRESETS:
        cases = PRESETS[args.suite]()
    else:
        cases = load_suite(args.suite)
    backends = tuple(args.backends.split(","))
    solver = _solver_config(args) if "asp" in backends else None
    results = run_bench(cases, backends, args.timeout, solver, args.workers)
    _write_out(render_csv(results), args.output)
    print(render_summary(results), file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pgmatch",
        description="Match property graphs and compute edit distances, "
        "natively or through an external answer-set solver.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, solver_flags=False):
        p.add_argument("--timeout", type=float, default=30.0, help="time budget in seconds")
        if solver_flags:
            p.add_argument("--solver", help="solver executable (default: $PGMATCH_SOLVER)")
            p.add_argument("--solver-arg", action="append", help="extra solver argument")
            p.add_argument("--models", type=int, default=None, help="model count limit")

    p = sub.add_parser("check", help="decide hom/iso/sub with the native search")
    p.add_argument("--mode", choices=["hom", "iso", "sub"], required=True)
    p.add_argument("--relabel", action="store_true", help="ignore label equality")
    p.add_argument("--soft-props", action="store_true", help="minimize property mismatches")
    p.add_argument("--order", choices=["degree-desc", "lex"], default="degree-desc")
    add_common(p)
    p.add_argument("g1")
    p.add_argument("g2")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("ged", help="minimum edit cost and canonical script")
    p.add_argument("--relabel", action="store_true", help="allow in-place relabeling")
    p.add_argument("--weights", default="unit", help="unit, gedc, or a JSON weights file")
    p.add_argument("--order", choices=["degree-desc", "lex"], default="degree-desc")
    add_common(p)
    p.add_argument("g1")
    p.add_argument("g2")
    p.set_defaults(func=_cmd_ged)

    p = sub.add_parser("encode", help="print the solver job for a problem")
    p.add_argument("--kind", required=True, help="hom|iso|sub|ged|ged-relabel|gedc|approx-sub-old|approx-sub-new")
    p.add_argument("--weights", default="gedc", help="weights for the gedc kind")
    p.add_argument("--neq", choices=["!=", "<>"], default="!=", help="inequality rendering")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("g1")
    p.add_argument("g2")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("solve", help="run the external solver and decode its model")
    p.add_argument("--kind", required=True)
    p.add_argument("--weights", default="gedc", help="weights for the gedc kind")
    p.add_argument("--neq", choices=["!=", "<>"], default="!=")
    add_common(p, solver_flags=True)
    p.add_argument("g1")
    p.add_argument("g2")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("gen", help="generate a synthetic graph")
    shapes = p.add_subparsers(dest="shape", required=True)
    pc = shapes.add_parser("chain")
    pc.add_argument("--k", type=int, required=True)
    pcy = shapes.add_parser("cycle")
    pcy.add_argument("--k", type=int, required=True)
    pr = shapes.add_parser("random")
    pr.add_argument("--n", type=int, required=True)
    pr.add_argument("--p", type=float, default=0.1)
    pr.add_argument("--seed", type=int, default=0)
    for sp in (pc, pcy, pr):
        sp.add_argument("--prefix", default="")
        sp.add_argument("-o", "--output", default=None)
        sp.set_defaults(func=_cmd_gen)

    p = sub.add_parser("bench", help="run a benchmark suite and emit CSV")
    p.add_argument("--suite", required=True, help="suite file or preset: " + ", ".join(PRESETS))
    p.add_argument("--backends", default="native", help="comma-separated: native,asp")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output", default=None)
    add_common(p, solver_flags=True)
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 0
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CODES[SolverStatus.ERROR]


if __name__ == "__main__":
    sys.exit(main())
