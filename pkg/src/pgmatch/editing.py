"""Edit operations on property graphs: application semantics, costs,
canonical form, the canonicalizing rewrite system, and derivation of edit
scripts from matchings.

An edit script is a plain list of operations, applied left to right. The
canonical form orders operations into phases::

    delP  delE  delV  updP  (relV relE)  insV  insE  insP

Relabeling operations (relV/relE) are an extension used only when matching
with in-place relabeling enabled; the rewrite system itself covers the seven
core operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import ClassVar, Union

from .graphs import Matching, PropertyGraph, UnknownIdError
from .records import RecordSyntaxError, format_record, parse_records


class PreconditionViolated(Exception):
    """An edit operation was applied to a graph that does not admit it.

    ``index`` is the position of the failing operation when raised from
    script application, ``None`` for a single operation.
    """

    def __init__(self, op: "EditOp", reason: str, index: int | None = None):
        self.op = op
        self.reason = reason
        self.index = index
        where = "" if index is None else f" at index {index}"
        super().__init__(f"{format_op(op)}{where}: {reason}")


class InvalidMatchingError(ValueError):
    """A matching handed to script derivation is not a partial isomorphism."""


@dataclass(frozen=True)
class InsertNode:
    kind: ClassVar[str] = "insV"
    node: str
    label: str


@dataclass(frozen=True)
class InsertEdge:
    kind: ClassVar[str] = "insE"
    edge: str
    src: str
    tgt: str
    label: str


@dataclass(frozen=True)
class InsertProp:
    kind: ClassVar[str] = "insP"
    owner: str
    key: str
    value: str


@dataclass(frozen=True)
class DeleteNode:
    kind: ClassVar[str] = "delV"
    node: str


@dataclass(frozen=True)
class DeleteEdge:
    kind: ClassVar[str] = "delE"
    edge: str


@dataclass(frozen=True)
class DeleteProp:
    kind: ClassVar[str] = "delP"
    owner: str
    key: str


@dataclass(frozen=True)
class UpdateProp:
    kind: ClassVar[str] = "updP"
    owner: str
    key: str
    value: str


@dataclass(frozen=True)
class RelabelNode:
    kind: ClassVar[str] = "relV"
    node: str
    label: str


@dataclass(frozen=True)
class RelabelEdge:
    kind: ClassVar[str] = "relE"
    edge: str
    label: str


EditOp = Union[
    InsertNode,
    InsertEdge,
    InsertProp,
    DeleteNode,
    DeleteEdge,
    DeleteProp,
    UpdateProp,
    RelabelNode,
    RelabelEdge,
]

EditScript = list  # list[EditOp]; scripts are ordinary lists

PHASE_ORDER = ("delP", "delE", "delV", "updP", "relV", "relE", "insV", "insE", "insP")
CORE_KINDS = frozenset({"delP", "delE", "delV", "updP", "insV", "insE", "insP"})

MODE_LABEL_HARD = "label-hard"
MODE_RELABEL = "relabel"

_PHASE_INDEX = {kind: i for i, kind in enumerate(PHASE_ORDER)}


def op_sort_key(op: EditOp) -> tuple:
    """Deterministic order: phase, then owning id, then key."""
    payload = {
        "insV": lambda o: (o.node,),
        "insE": lambda o: (o.edge,),
        "insP": lambda o: (o.owner, o.key),
        "delV": lambda o: (o.node,),
        "delE": lambda o: (o.edge,),
        "delP": lambda o: (o.owner, o.key),
        "updP": lambda o: (o.owner, o.key),
        "relV": lambda o: (o.node,),
        "relE": lambda o: (o.edge,),
    }[op.kind](op)
    return (_PHASE_INDEX[op.kind],) + payload


def apply_op(g: PropertyGraph, op: EditOp, index: int | None = None) -> PropertyGraph:
    """Apply one edit operation, returning the edited graph.

    Preconditions: inserted ids, keys or endpoints must be fresh resp.
    present; a deleted node must not be an endpoint of any edge and carry no
    properties; a deleted edge must carry no properties; deleted and updated
    properties must exist. Violations raise ``PreconditionViolated``.
    """
    nodes, edges, props = g.nodes, g.edges, g.props
    if isinstance(op, InsertNode):
        if g.has_id(op.node):
            raise PreconditionViolated(op, f"id {op.node!r} already exists", index)
        return PropertyGraph({**nodes, op.node: op.label}, edges, props)
    if isinstance(op, InsertEdge):
        if g.has_id(op.edge):
            raise PreconditionViolated(op, f"id {op.edge!r} already exists", index)
        for endpoint in (op.src, op.tgt):
            if endpoint not in nodes:
                raise PreconditionViolated(op, f"endpoint {endpoint!r} is not a node", index)
        return PropertyGraph(nodes, {**edges, op.edge: (op.src, op.tgt, op.label)}, props)
    if isinstance(op, InsertProp):
        if not g.has_id(op.owner):
            raise PreconditionViolated(op, f"owner {op.owner!r} does not exist", index)
        if (op.owner, op.key) in props:
            raise PreconditionViolated(
                op, f"property ({op.owner!r}, {op.key!r}) already exists", index
            )
        return PropertyGraph(nodes, edges, {**props, (op.owner, op.key): op.value})
    if isinstance(op, DeleteNode):
        if op.node not in nodes:
            raise PreconditionViolated(op, f"node {op.node!r} does not exist", index)
        if any(op.node in (s, t) for s, t, _ in edges.values()):
            raise PreconditionViolated(op, f"node {op.node!r} is an edge endpoint", index)
        if any(x == op.node for x, _ in props):
            raise PreconditionViolated(op, f"node {op.node!r} still has properties", index)
        return PropertyGraph({v: l for v, l in nodes.items() if v != op.node}, edges, props)
    if isinstance(op, DeleteEdge):
        if op.edge not in edges:
            raise PreconditionViolated(op, f"edge {op.edge!r} does not exist", index)
        if any(x == op.edge for x, _ in props):
            raise PreconditionViolated(op, f"edge {op.edge!r} still has properties", index)
        return PropertyGraph(nodes, {e: v for e, v in edges.items() if e != op.edge}, props)
    if isinstance(op, DeleteProp):
        if (op.owner, op.key) not in props:
            raise PreconditionViolated(
                op, f"property ({op.owner!r}, {op.key!r}) does not exist", index
            )
        return PropertyGraph(
            nodes, edges, {pk: d for pk, d in props.items() if pk != (op.owner, op.key)}
        )
    if isinstance(op, UpdateProp):
        if (op.owner, op.key) not in props:
            raise PreconditionViolated(
                op, f"property ({op.owner!r}, {op.key!r}) does not exist", index
            )
        return PropertyGraph(nodes, edges, {**props, (op.owner, op.key): op.value})
    if isinstance(op, RelabelNode):
        if op.node not in nodes:
            raise PreconditionViolated(op, f"node {op.node!r} does not exist", index)
        return PropertyGraph({**nodes, op.node: op.label}, edges, props)
    if isinstance(op, RelabelEdge):
        if op.edge not in edges:
            raise PreconditionViolated(op, f"edge {op.edge!r} does not exist", index)
        s, t, _ = edges[op.edge]
        return PropertyGraph(nodes, {**edges, op.edge: (s, t, op.label)}, props)
    raise TypeError(f"not an edit operation: {op!r}")


def apply_script(g: PropertyGraph, ops: list) -> PropertyGraph:
    """Fold ``apply_op`` left to right; fails at the first violated
    precondition, reporting the operation index."""
    for i, op in enumerate(ops):
        g = apply_op(g, op, index=i)
    return g


@dataclass(frozen=True)
class CostModel:
    """Non-negative integer weight per operation kind.

    ``node_sub`` and ``edge_sub`` price in-place relabeling. Rational weights
    must be pre-scaled to integers. Matching-based distances assume updates
    and relabels are not more expensive than the corresponding delete plus
    insert; otherwise the matching optimum can exceed the unrestricted
    script optimum.
    """

    weights: dict[str, int] = field(default_factory=dict)
    node_sub: int = 1
    edge_sub: int = 1

    def __post_init__(self) -> None:
        filled = {kind: 1 for kind in CORE_KINDS}
        filled.update(self.weights)
        unknown = set(filled) - CORE_KINDS
        if unknown:
            raise ValueError(f"unknown operation kinds in cost model: {sorted(unknown)}")
        if any(w < 0 for w in filled.values()) or self.node_sub < 0 or self.edge_sub < 0:
            raise ValueError("cost model weights must be non-negative")
        object.__setattr__(self, "weights", dict(sorted(filled.items())))

    @classmethod
    def unit(cls) -> "CostModel":
        return cls()

    @classmethod
    def gedc(cls) -> "CostModel":
        """Weighted preset: substitution cheaper than delete plus insert
        (node sub 2, ins/del 4; edge sub 1, ins/del 2; property edits 1)."""
        return cls(
            weights={"insV": 4, "delV": 4, "insE": 2, "delE": 2},
            node_sub=2,
            edge_sub=1,
        )

    def weight_of(self, op: EditOp) -> int:
        if op.kind == "relV":
            return self.node_sub
        if op.kind == "relE":
            return self.edge_sub
        return self.weights[op.kind]


def script_cost(ops: list, cm: CostModel) -> int:
    """Total weight of a script; under the unit model this is its length."""
    return sum(cm.weight_of(op) for op in ops)


def is_canonical(ops: list) -> bool:
    """True when the operation kinds follow the phase order (each phase may
    be empty; relabels sit between updates and insertions)."""
    phase = 0
    for op in ops:
        i = _PHASE_INDEX[op.kind]
        if i < phase:
            return False
        phase = i
    return True


# Rewrite actions for one marked operation inspected against its successor.
_SWAP = "swap"
_CANCEL = "cancel"
_DROP_MARKED = "drop-marked"
_UNMARK = "unmark"


def _rewrite_pair(a: EditOp, b: EditOp):
    """First matching rewrite rule for the marked operation ``a`` followed by
    ``b``. Returns an action, or ``(merge, op)`` to replace both with a new
    marked operation."""
    ka, kb = a.kind, b.kind
    if (ka, kb) in {
        ("delE", "delP"),
        ("delV", "delP"),
        ("delV", "delE"),
        ("updP", "delE"),
        ("updP", "delV"),
        ("insV", "delP"),
        ("insV", "delE"),
        ("insV", "updP"),
        ("insE", "delP"),
        ("insE", "delV"),
        ("insE", "updP"),
        ("insE", "insV"),
        ("insP", "delE"),
        ("insP", "delV"),
        ("insP", "insV"),
        ("insP", "insE"),
    }:
        return _SWAP
    if (ka, kb) == ("updP", "delP"):
        return _DROP_MARKED if (a.owner, a.key) == (b.owner, b.key) else _SWAP
    if (ka, kb) == ("insV", "delV"):
        return _CANCEL if a.node == b.node else _SWAP
    if (ka, kb) == ("insE", "delE"):
        return _CANCEL if a.edge == b.edge else _SWAP
    if (ka, kb) == ("insP", "delP"):
        return _CANCEL if (a.owner, a.key) == (b.owner, b.key) else _SWAP
    if (ka, kb) == ("insP", "updP"):
        if (a.owner, a.key) == (b.owner, b.key):
            return ("merge", InsertProp(a.owner, a.key, b.value))
        return _SWAP
    return _UNMARK


def prepend_canonical(op: EditOp, suffix: list) -> list:
    """Rewrite ``op`` followed by an already-canonical suffix into canonical
    form.

    The new operation is marked and repeatedly inspected against its
    successor: it either commutes one step to the right, cancels against an
    operation that undoes it, merges with a later update of the same
    property, or loses its mark once in place. Each step shortens the marked
    tail, so this terminates.
    """
    if op.kind not in CORE_KINDS:
        raise ValueError(f"rewrite rules cover the core operations only, not {op.kind}")
    ops = [op] + list(suffix)
    i = 0
    while True:
        if i + 1 == len(ops):
            return ops
        action = _rewrite_pair(ops[i], ops[i + 1])
        if action == _SWAP:
            ops[i], ops[i + 1] = ops[i + 1], ops[i]
            i += 1
        elif action == _CANCEL:
            del ops[i : i + 2]
            return ops
        elif action == _DROP_MARKED:
            del ops[i]
            return ops
        elif action == _UNMARK:
            return ops
        else:
            _, merged = action
            ops[i : i + 2] = [merged]


def canonicalize(ops: list, g1: PropertyGraph) -> list:
    """Equivalent canonical script, never longer than the input.

    ``ops`` must be a valid script on ``g1``; validity is checked by applying
    it first. The script is folded from the right: each operation is
    prepended to the already-canonical tail with ``prepend_canonical``.
    """
    for op in ops:
        if op.kind not in CORE_KINDS:
            raise ValueError(f"canonicalize covers the core operations only, not {op.kind}")
    apply_script(g1, ops)
    canon: list = []
    for op in reversed(ops):
        canon = prepend_canonical(op, canon)
    return canon


def _check_partial_isomorphism(
    h: Matching, g1: PropertyGraph, g2: PropertyGraph, mode: str
) -> None:
    try:
        if not h.is_injective():
            raise InvalidMatchingError("matching is not injective")
        for v, w in h.node_map.items():
            if v not in g1.nodes:
                raise InvalidMatchingError(f"unknown node {v!r} in matching")
            if w not in g2.nodes:
                raise InvalidMatchingError(f"unknown node {w!r} in matching")
            if mode == MODE_LABEL_HARD and g1.nodes[v] != g2.nodes[w]:
                raise InvalidMatchingError(
                    f"nodes {v!r} and {w!r} have different labels under {mode} matching"
                )
        for e, f in h.edge_map.items():
            if e not in g1.edges:
                raise InvalidMatchingError(f"unknown edge {e!r} in matching")
            if f not in g2.edges:
                raise InvalidMatchingError(f"unknown edge {f!r} in matching")
            s1, t1, lab1 = g1.edges[e]
            s2, t2, lab2 = g2.edges[f]
            if h.node_map.get(s1) != s2 or h.node_map.get(t1) != t2:
                raise InvalidMatchingError(
                    f"edge pair {e!r} -> {f!r} is not endpoint-consistent"
                )
            if mode == MODE_LABEL_HARD and lab1 != lab2:
                raise InvalidMatchingError(
                    f"edges {e!r} and {f!r} have different labels under {mode} matching"
                )
    except UnknownIdError as exc:
        raise InvalidMatchingError(str(exc)) from exc


def script_from_matching(
    h: Matching,
    g1: PropertyGraph,
    g2: PropertyGraph,
    mode: str = MODE_LABEL_HARD,
    cm: CostModel | None = None,
) -> tuple[list, int]:
    """Derive the canonical edit script determined by a partial isomorphism.

    Unmatched g1 structure is deleted (properties first), properties present
    on both sides with different values are updated, matched elements with
    different labels are relabeled when ``mode`` is ``relabel``, and
    unmatched g2 structure is inserted (properties last). Within each phase
    operations are emitted in lexicographic id/key order.

    Matched elements survive under their g1 ids, so inserted edges and
    properties that attach to a matched element refer to it by its g1 id.
    Applying the result to ``g1`` therefore yields ``g2`` up to renaming
    each matched element to its counterpart (see ``rename_graph``); when the
    matching pairs identically named ids the result is ``g2`` itself. An
    unmatched g2 id that collides with a surviving g1 id makes the script
    inapplicable; disjoint or matching-aligned id spaces avoid this.
    """
    if mode not in (MODE_LABEL_HARD, MODE_RELABEL):
        raise ValueError(f"unknown matching mode {mode!r}")
    cm = cm or CostModel.unit()
    _check_partial_isomorphism(h, g1, g2, mode)

    matched_to = h.id_map()
    matched_from = {y: x for x, y in matched_to.items()}

    script: list = []
    for (x, k), _d in g1.props.items():
        y = matched_to.get(x)
        if y is None or (y, k) not in g2.props:
            script.append(DeleteProp(x, k))
    script += [DeleteEdge(e) for e in g1.edges if e not in h.edge_map]
    script += [DeleteNode(v) for v in g1.nodes if v not in h.node_map]
    for (x, k), d in g1.props.items():
        y = matched_to.get(x)
        if y is not None and (y, k) in g2.props and g2.props[(y, k)] != d:
            script.append(UpdateProp(x, k, g2.props[(y, k)]))
    if mode == MODE_RELABEL:
        for v, w in h.node_map.items():
            if g1.nodes[v] != g2.nodes[w]:
                script.append(RelabelNode(v, g2.nodes[w]))
        for e, f in h.edge_map.items():
            if g1.edges[e][2] != g2.edges[f][2]:
                script.append(RelabelEdge(e, g2.edges[f][2]))
    script += [InsertNode(w, lab) for w, lab in g2.nodes.items() if w not in matched_from]
    script += [
        InsertEdge(f, matched_from.get(s, s), matched_from.get(t, t), lab)
        for f, (s, t, lab) in g2.edges.items()
        if f not in matched_from
    ]
    for (y, k), d in g2.props.items():
        x = matched_from.get(y)
        if x is None:
            script.append(InsertProp(y, k, d))
        elif (x, k) not in g1.props:
            script.append(InsertProp(x, k, d))
    script.sort(key=op_sort_key)
    return script, script_cost(script, cm)


_OP_FIELDS = {
    "insV": (InsertNode, 2),
    "insE": (InsertEdge, 4),
    "insP": (InsertProp, 3),
    "delV": (DeleteNode, 1),
    "delE": (DeleteEdge, 1),
    "delP": (DeleteProp, 2),
    "updP": (UpdateProp, 3),
    "relV": (RelabelNode, 2),
    "relE": (RelabelEdge, 2),
}


def format_op(op: EditOp) -> str:
    """One-line text rendering, e.g. ``delV v3`` or ``insE e9 v1 v2 lbl``."""
    payload = {
        "insV": lambda o: [o.node, o.label],
        "insE": lambda o: [o.edge, o.src, o.tgt, o.label],
        "insP": lambda o: [o.owner, o.key, o.value],
        "delV": lambda o: [o.node],
        "delE": lambda o: [o.edge],
        "delP": lambda o: [o.owner, o.key],
        "updP": lambda o: [o.owner, o.key, o.value],
        "relV": lambda o: [o.node, o.label],
        "relE": lambda o: [o.edge, o.label],
    }[op.kind](op)
    return format_record([op.kind] + payload)


def format_script(ops: list) -> str:
    return "\n".join(format_op(op) for op in ops) + ("\n" if ops else "")


def parse_script(text: str) -> list:
    """Parse the one-operation-per-line script format (inverse of format_script)."""
    ops: list = []
    try:
        records = parse_records(text)
    except RecordSyntaxError as exc:
        raise ValueError(str(exc)) from exc
    for lineno, tokens in records:
        kind, args = tokens[0], tokens[1:]
        if kind not in _OP_FIELDS:
            raise ValueError(f"line {lineno}: unknown operation {kind!r}")
        cls, arity = _OP_FIELDS[kind]
        if len(args) != arity:
            raise ValueError(
                f"line {lineno}: {kind} takes {arity} arguments, got {len(args)}"
            )
        ops.append(cls(*args))
    return ops
