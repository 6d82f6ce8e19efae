"""Edit operations: preconditions, script application, and canonical form."""

from pgmatch import (
    PreconditionViolated,
    PropertyGraph,
    apply_op,
    apply_script,
    canonicalize,
    format_script,
    is_canonical,
    script_cost,
    CostModel,
)
from pgmatch.editing import (
    DeleteNode,
    DeleteProp,
    InsertEdge,
    InsertNode,
    InsertProp,
    UpdateProp,
)

empty = PropertyGraph()

# Scripts are plain lists of operations, applied left to right.
script = [
    InsertNode("v1", "host"),
    InsertNode("v2", "host"),
    InsertEdge("e1", "v1", "v2", "link"),
    InsertProp("v1", "owner", "ops"),
]
g = apply_script(empty, script)
print("built graph with", len(g.nodes), "nodes and", len(g.edges), "edges")
print("script cost (unit):", script_cost(script, CostModel.unit()))

# Preconditions are enforced: a node that still anchors an edge cannot go.
try:
    apply_op(g, DeleteNode("v1"))
except PreconditionViolated as exc:
    print("rejected:", exc)

# Canonical form orders operations into phases: property deletions first,
# then edge and node deletions, updates, and finally insertions.
messy = [
    InsertNode("v3", "host"),
    InsertProp("v3", "owner", "dev"),
    UpdateProp("v3", "owner", "ops"),
    DeleteProp("v1", "owner"),
]
print("messy is canonical:", is_canonical(messy))
canon = canonicalize(messy, g)
print("canonicalized:")
print(format_script(canon))
print("same result:", apply_script(g, canon) == apply_script(g, messy))
print("never longer:", len(canon), "<=", len(messy))

# Inverse operations cancel outright.
wash = [InsertNode("tmp", "t"), DeleteNode("tmp")]
print("insert-then-delete collapses to:", canonicalize(wash, g))
