"""Render matching problems as answer-set programs and, when a solver is
installed, run one end to end."""

import os
import shutil

from pgmatch import (
    CostModel,
    PropertyGraph,
    SolverConfig,
    decode_matching,
    encode_graph_facts,
    encode_problem,
    render_job,
    run_solver,
)
from pgmatch.encode import ProblemKind

g1 = PropertyGraph({"v1": "a", "v2": "b"}, {"e1": ("v1", "v2", "x")}, {("v1", "k"): "d"})
g2 = PropertyGraph({"w1": "a", "w2": "b"}, {"f1": ("w1", "w2", "x")}, {("w1", "k"): "d"})

# Graphs become flat fact sets; suffix 1 and 2 keep the two sides apart.
for fact in encode_graph_facts(g1, 1):
    print(fact.render())

# Each problem kind is a fixed rule set over those facts.
print()
print(encode_problem(ProblemKind.SUB).text)

# A complete job is facts plus rules, deterministic byte for byte.
job = render_job(g1, g2, ProblemKind.ISO)
print("job has", len(job.splitlines()), "lines")

# The weighted variant carries its costs as #const lines.
weighted = encode_problem(ProblemKind.GEDC_WEIGHTED, CostModel.gedc())
print(weighted.text.splitlines()[0], "...", weighted.constants)

# With a solver configured (PGMATCH_SOLVER or clingo on PATH) the bridge
# runs the job and decodes the pairing relation from the model.
solver_path = os.environ.get("PGMATCH_SOLVER") or shutil.which("clingo")
if solver_path:
    ans = run_solver(job, SolverConfig(solver_path, budget=10.0))
    print("solver status:", ans.status.value)
    if ans.atoms:
        print("decoded:", decode_matching(ans, g1, g2).node_map)
else:
    print("no solver configured; skipping the live run")
