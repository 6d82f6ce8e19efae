"""Build property graphs, validate them, and check structural maps by hand."""

from pgmatch import (
    Matching,
    PropertyGraph,
    check_homomorphism,
    check_isomorphism,
    check_subgraph_embedding,
    format_graph,
    parse_graph,
    validate,
)

# A property graph is three plain mappings: node id -> label,
# edge id -> (src, tgt, label), and (owner, key) -> value.
g = PropertyGraph(
    nodes={"alice": "user", "bob": "user", "doc": "file"},
    edges={"r1": ("alice", "doc", "read"), "w1": ("bob", "doc", "write")},
    props={("doc", "path"): "/tmp/x", ("r1", "time"): "t1"},
)
print("graph:")
print(format_graph(g))
print("violations:", validate(g))

# The text format round-trips, quoting anything unusual.
weird = PropertyGraph({"node 1": "label with spaces"})
print("quoted form:", format_graph(weird).strip())
assert parse_graph(format_graph(weird)) == weird

# An invalid graph is constructible; validate reports what is wrong with it.
broken = PropertyGraph({"v": "a"}, {"e": ("v", "ghost", "x")})
print("broken graph:", validate(broken))

# A matching pairs nodes with nodes and edges with edges. The identity is
# always a homomorphism, an isomorphism, and an embedding of g into itself.
ident = Matching({v: v for v in g.nodes}, {e: e for e in g.edges})
print("identity hom:", check_homomorphism(ident, g, g))
print("identity iso:", check_isomorphism(ident, g, g))
print("identity sub:", check_subgraph_embedding(ident, g, g))

# Homomorphisms may collapse nodes: a 2-edge chain folds onto a 2-cycle.
chain = PropertyGraph(
    {"v0": "n", "v1": "n", "v2": "n"},
    {"c0": ("v0", "v1", "e"), "c1": ("v1", "v2", "e")},
)
cycle = PropertyGraph(
    {"u0": "n", "u1": "n"},
    {"d0": ("u0", "u1", "e"), "d1": ("u1", "u0", "e")},
)
fold = Matching({"v0": "u0", "v1": "u1", "v2": "u0"}, {"c0": "d0", "c1": "d1"})
print("chain folds onto cycle:", check_homomorphism(fold, chain, cycle))
print("fold is not injective, so not an embedding:", check_subgraph_embedding(fold, chain, cycle))
