"""Exact edit distance: matchings, derived scripts, weights, relabeling."""

from pgmatch import (
    CostModel,
    PropertyGraph,
    SearchOptions,
    apply_script,
    format_script,
    min_edit_matching,
    oracle_ged,
    rename_graph,
    script_from_matching,
    Matching,
)

g1 = PropertyGraph(
    {"v1": "proc", "v2": "file"},
    {"e1": ("v1", "v2", "read")},
    {("v1", "pid"): "17"},
)
g2 = PropertyGraph(
    {"w1": "proc", "w2": "file", "w3": "file"},
    {"f1": ("w1", "w2", "read"), "f2": ("w1", "w3", "read")},
    {("w1", "pid"): "42"},
)

# The minimum-cost search returns the optimal matching, the edit script it
# determines, and the script's cost (the graph edit distance).
result = min_edit_matching(g1, g2)
print("distance:", result.cost, "optimal:", result.optimal)
print("matching:", result.matching.node_map)
print("script:")
print(format_script(result.script))

# The exhaustive oracle agrees on graphs this small.
print("oracle says:", oracle_ged(g1, g2))

# Applying the script to g1 yields g2 once matched ids are renamed.
edited = apply_script(g1, result.script)
print("reaches target:", rename_graph(edited, result.matching.id_map()) == g2)

# Any partial isomorphism determines a script; a worse matching costs more.
worse, worse_cost = script_from_matching(Matching(), g1, g2)
print("empty matching pays", worse_cost, "vs optimal", result.cost)

# Weighted distance: substitution-style weights make relabeling a node (2)
# cheaper than deleting and reinserting it (4 + 4).
a = PropertyGraph({"v1": "carbon"})
b = PropertyGraph({"w1": "nitrogen"})
weighted = SearchOptions(mode="relabel", cost_model=CostModel.gedc())
print("relabel distance:", min_edit_matching(a, b, weighted).cost)
print("label-hard distance:", min_edit_matching(a, b, SearchOptions(cost_model=CostModel.gedc())).cost)
