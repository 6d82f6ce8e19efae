"""Generate synthetic instance families and benchmark the native search."""

from pgmatch import gen_chain, gen_cycle, gen_random
from pgmatch.bench import BenchCase, render_csv, render_summary, run_bench
from pgmatch.encode import ProblemKind

# Chains, cycles and seeded random graphs; prefixes keep id spaces disjoint.
print("chain(3):", sorted(gen_chain(3, "a").nodes))
print("cycle(3):", sorted(gen_cycle(3, "b").nodes))
print("random(6, 0.2):", len(gen_random(6, 0.2, seed=1).edges), "edges")

cases = []
for k in (4, 8, 12):
    cases.append(BenchCase(f"hom-{k}", ProblemKind.HOM, gen_chain(k, "a"), gen_cycle(k, "b")))
    cases.append(BenchCase(f"iso-{k}", ProblemKind.ISO, gen_cycle(k, "a"), gen_cycle(k, "b")))
    cases.append(BenchCase(f"sub-{k}", ProblemKind.SUB, gen_chain(k - 1, "a"), gen_cycle(k, "b")))
for k in (2, 4, 6):
    cases.append(BenchCase(f"ged-{k}", ProblemKind.GED, gen_chain(k, "a"), gen_cycle(k, "b")))

results = run_bench(cases, backends=("native",), budget=30.0)
print()
print(render_csv(results))
print(render_summary(results))

# Larger sweeps come prepackaged: see pgmatch.bench.native_matrix and
# synthetic_matrix, or the `pgmatch bench --suite` command.
