"""Exact in-process search: homomorphism, isomorphism and subgraph-embedding
decision with witness, and minimum-cost partial-isomorphism search for
(weighted) edit distance, plus an exhaustive oracle for small graphs.

All searches are deterministic: node variables follow the configured order,
candidate values are tried lexicographically, and incumbents are replaced
only by strictly better ones.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .editing import (
    MODE_LABEL_HARD,
    MODE_RELABEL,
    CostModel,
    script_from_matching,
)
from .graphs import Matching, PropertyGraph, validate

PROPS_HARD = "hard"
PROPS_SOFT = "soft"


class SearchTimeout(Exception):
    """The time budget ran out before the search finished."""


class SizeGuardError(ValueError):
    """The exhaustive oracle refuses graphs beyond its size guard."""


@dataclass(frozen=True)
class SearchOptions:
    """Knobs shared by the native searches.

    ``mode`` controls labels: ``label-hard`` requires equal labels on matched
    elements, ``relabel`` lets them differ (charged for edit distance, free
    for decision searches). ``properties`` applies to the decision searches:
    ``hard`` enforces the property clauses, ``soft`` drops them and returns a
    witness minimizing the number of mismatched properties. Edit-distance
    search always prices properties through the cost model.
    """

    mode: str = MODE_LABEL_HARD
    properties: str = PROPS_HARD
    cost_model: CostModel = field(default_factory=CostModel.unit)
    budget: float = 30.0
    node_order: str = "degree-desc"

    def __post_init__(self) -> None:
        if self.mode not in (MODE_LABEL_HARD, MODE_RELABEL):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.properties not in (PROPS_HARD, PROPS_SOFT):
            raise ValueError(f"unknown property handling {self.properties!r}")
        if self.node_order not in ("degree-desc", "lex"):
            raise ValueError(f"unknown node order {self.node_order!r}")
        if self.budget <= 0:
            raise ValueError("budget must be positive")


@dataclass(frozen=True)
class GedResult:
    """Outcome of a minimum-edit search. ``optimal`` is False when the time
    budget expired and ``cost`` is only the best incumbent found."""

    matching: Matching
    script: list
    cost: int
    optimal: bool


def _props_by_owner(g: PropertyGraph) -> dict[str, dict[str, str]]:
    out: dict[str, dict[str, str]] = {x: {} for x in list(g.nodes) + list(g.edges)}
    for (x, k), d in g.props.items():
        out.setdefault(x, {})[k] = d
    return out


def _edges_by_pair(g: PropertyGraph) -> dict[tuple[str, str], list[str]]:
    out: dict[tuple[str, str], list[str]] = {}
    for e, (s, t, _) in g.edges.items():
        out.setdefault((s, t), []).append(e)
    for key in out:
        out[key].sort()
    return out


def _ordered_nodes(g: PropertyGraph, order: str) -> list[str]:
    if order == "lex":
        return sorted(g.nodes)
    degree = {v: 0 for v in g.nodes}
    for s, t, _ in g.edges.values():
        degree[s] += 1
        degree[t] += 1
    return sorted(g.nodes, key=lambda v: (-degree[v], v))


def _dominated(p1: dict[str, str], p2: dict[str, str]) -> bool:
    return all(p2.get(k) == v for k, v in p1.items())


def _one_way_mismatch(p1: dict[str, str], p2: dict[str, str]) -> int:
    return sum(1 for k, v in p1.items() if p2.get(k) != v)


def _symmetric_mismatch(p1: dict[str, str], p2: dict[str, str]) -> int:
    keys = set(p1) | set(p2)
    return sum(1 for k in keys if p1.get(k) != p2.get(k))


class _Deadline:
    def __init__(self, budget: float):
        self.expires = time.monotonic() + budget
        self._tick = 0

    def check(self) -> bool:
        """True when the budget has run out (checked every few hundred calls)."""
        self._tick += 1
        if self._tick & 0xFF:
            return False
        return time.monotonic() >= self.expires


class _DecisionSearch:
    """Backtracking engine shared by the three decision problems."""

    def __init__(self, kind: str, g1: PropertyGraph, g2: PropertyGraph, opts: SearchOptions):
        self.kind = kind
        self.g1, self.g2 = g1, g2
        self.opts = opts
        self.injective = kind in ("iso", "sub")
        self.label_hard = opts.mode == MODE_LABEL_HARD
        self.props_hard = opts.properties == PROPS_HARD
        self.order1 = _ordered_nodes(g1, opts.node_order)
        self.props1 = _props_by_owner(g1)
        self.props2 = _props_by_owner(g2)
        self.pairs1 = _edges_by_pair(g1)
        self.pairs2 = _edges_by_pair(g2)
        self.out1: dict[str, list[str]] = {v: [] for v in g1.nodes}
        self.in1: dict[str, list[str]] = {v: [] for v in g1.nodes}
        for e, (s, t, _) in g1.edges.items():
            self.out1[s].append(e)
            self.in1[t].append(e)
        self.nodes2_by_label: dict[str, list[str]] = {}
        for w, lab in g2.nodes.items():
            self.nodes2_by_label.setdefault(lab, []).append(w)
        for lab in self.nodes2_by_label:
            self.nodes2_by_label[lab].sort()
        self.all_nodes2 = sorted(g2.nodes)
        self.deadline = _Deadline(opts.budget)
        # soft-mode incumbent: (cost, node assignment)
        self.best_cost: int | None = None
        self.best_assignment: dict[str, str] | None = None

    # -- label and property tests ------------------------------------------

    def _node_pair_ok(self, v: str, w: str) -> bool:
        if self.label_hard and self.g1.nodes[v] != self.g2.nodes[w]:
            return False
        if self.props_hard:
            if self.kind == "iso":
                return self.props1[v] == self.props2[w]
            return _dominated(self.props1[v], self.props2[w])
        return True

    def _node_pair_cost(self, v: str, w: str) -> int:
        if self.props_hard:
            return 0
        if self.kind == "iso":
            return _symmetric_mismatch(self.props1[v], self.props2[w])
        return _one_way_mismatch(self.props1[v], self.props2[w])

    def _edge_pair_ok(self, e: str, f: str) -> bool:
        if self.label_hard and self.g1.edges[e][2] != self.g2.edges[f][2]:
            return False
        if self.props_hard:
            if self.kind == "iso":
                return self.props1[e] == self.props2[f]
            return _dominated(self.props1[e], self.props2[f])
        return True

    def _edge_pair_cost(self, e: str, f: str) -> int:
        if self.props_hard:
            return 0
        if self.kind == "iso":
            return _symmetric_mismatch(self.props1[e], self.props2[f])
        return _one_way_mismatch(self.props1[e], self.props2[f])

    # -- per-bucket edge feasibility ---------------------------------------

    def _bucket_check(self, b1: list[str], b2: list[str]) -> int | None:
        """Feasibility and soft cost of one parallel-edge bucket pair.

        Returns the minimal extra cost (0 under hard properties) or None when
        the bucket cannot be matched as the problem kind requires.
        """
        if self.kind == "hom":
            total = 0
            for e in b1:
                costs = [self._edge_pair_cost(e, f) for f in b2 if self._edge_pair_ok(e, f)]
                if not costs:
                    return None
                total += min(costs)
            return total
        if self.kind == "iso" and len(b1) != len(b2):
            return None
        if self.kind == "sub" and len(b1) > len(b2):
            return None
        if self.props_hard:
            pairs = _cover_left(b1, b2, self._edge_pair_ok)
            if pairs is None:
                return None
            if self.kind == "iso" and len(pairs) != len(b2):
                return None
            return 0
        return _min_cost_assignment(
            b1,
            b2,
            lambda e, f: self._edge_pair_cost(e, f) if self._edge_pair_ok(e, f) else None,
            perfect=self.kind == "iso",
        )[0]

    def _assign_buckets(self, v: str, assignment: dict[str, str]) -> int | None:
        """Check every edge bucket completed by assigning ``v``; returns the
        added soft cost, or None when some bucket is infeasible."""
        total = 0
        seen: set[tuple[str, str]] = set()
        for u in assignment:
            for key in ((u, v), (v, u)):
                if key in seen:
                    continue
                seen.add(key)
                b1 = self.pairs1.get(key, [])
                key2 = (assignment[key[0]], assignment[key[1]])
                b2 = self.pairs2.get(key2, [])
                if not b1 and not b2:
                    continue
                if not b1 and self.kind != "iso":
                    continue
                cost = self._bucket_check(b1, b2)
                if cost is None:
                    return None
                total += cost
        return total

    # -- candidate generation -----------------------------------------------

    def _candidates(self, v: str, assignment: dict[str, str], used: set[str]) -> list[str]:
        if self.label_hard:
            base = set(self.nodes2_by_label.get(self.g1.nodes[v], []))
        else:
            base = set(self.all_nodes2)
        # narrow through already-assigned neighbours
        for e in self.out1[v]:
            _, t, lab = self.g1.edges[e]
            if t != v and t in assignment:
                allowed = {
                    s2
                    for (s2, t2), fs in self.pairs2.items()
                    if t2 == assignment[t]
                    and (not self.label_hard or any(self.g2.edges[f][2] == lab for f in fs))
                }
                base &= allowed
        for e in self.in1[v]:
            s, _, lab = self.g1.edges[e]
            if s != v and s in assignment:
                allowed = {
                    t2
                    for (s2, t2), fs in self.pairs2.items()
                    if s2 == assignment[s]
                    and (not self.label_hard or any(self.g2.edges[f][2] == lab for f in fs))
                }
                base &= allowed
        if self.injective:
            base -= used
        return sorted(base)

    # -- main search ----------------------------------------------------------

    def run(self) -> Matching | None:
        if self.kind == "iso" and not self._iso_prechecks():
            return None
        assignment: dict[str, str] = {}
        used: set[str] = set()
        if self.props_hard:
            found = self._search_first(0, assignment, used)
            return self._finish(found) if found is not None else None
        self._search_best(0, assignment, used, 0)
        if self.best_assignment is None:
            return None
        return self._finish(self.best_assignment)

    def _iso_prechecks(self) -> bool:
        if len(self.g1.nodes) != len(self.g2.nodes) or len(self.g1.edges) != len(self.g2.edges):
            return False
        if self.label_hard:
            if sorted(self.g1.nodes.values()) != sorted(self.g2.nodes.values()):
                return False
            if sorted(l for _, _, l in self.g1.edges.values()) != sorted(
                l for _, _, l in self.g2.edges.values()
            ):
                return False
        return True

    def _search_first(self, depth: int, assignment: dict, used: set) -> dict | None:
        if self.deadline.check():
            raise SearchTimeout(f"{self.kind} search exceeded its budget")
        if depth == len(self.order1):
            return dict(assignment)
        v = self.order1[depth]
        for w in self._candidates(v, assignment, used):
            if not self._node_pair_ok(v, w):
                continue
            assignment[v] = w
            if self._assign_buckets(v, assignment) is not None:
                used.add(w)
                found = self._search_first(depth + 1, assignment, used)
                if found is not None:
                    return found
                used.discard(w)
            del assignment[v]
        return None

    def _search_best(self, depth: int, assignment: dict, used: set, acc: int) -> None:
        if self.deadline.check():
            raise SearchTimeout(f"{self.kind} search exceeded its budget")
        if self.best_cost is not None and acc >= self.best_cost:
            return
        if depth == len(self.order1):
            if self.best_cost is None or acc < self.best_cost:
                self.best_cost = acc
                self.best_assignment = dict(assignment)
            return
        v = self.order1[depth]
        for w in self._candidates(v, assignment, used):
            if not self._node_pair_ok(v, w):
                continue
            assignment[v] = w
            bucket_cost = self._assign_buckets(v, assignment)
            if bucket_cost is not None:
                used.add(w)
                self._search_best(
                    depth + 1, assignment, used, acc + self._node_pair_cost(v, w) + bucket_cost
                )
                used.discard(w)
            del assignment[v]

    # -- witness completion ----------------------------------------------------

    def _finish(self, assignment: dict[str, str]) -> Matching:
        edge_map: dict[str, str] = {}
        done: set[tuple[str, str]] = set()
        for e in sorted(self.g1.edges):
            s, t, _ = self.g1.edges[e]
            key = (s, t)
            if key in done:
                continue
            done.add(key)
            b1 = self.pairs1.get(key, [])
            b2 = self.pairs2.get((assignment[s], assignment[t]), [])
            edge_map.update(self._bucket_pairs(b1, b2))
        return Matching(dict(assignment), edge_map)

    def _bucket_pairs(self, b1: list[str], b2: list[str]) -> dict[str, str]:
        if self.kind == "hom":
            out = {}
            for e in b1:
                if self.props_hard:
                    out[e] = min(f for f in b2 if self._edge_pair_ok(e, f))
                else:
                    out[e] = min(
                        (self._edge_pair_cost(e, f), f) for f in b2 if self._edge_pair_ok(e, f)
                    )[1]
            return out
        if self.props_hard:
            pairs = _cover_left(b1, b2, self._edge_pair_ok)
        else:
            pairs = _min_cost_assignment(
                b1,
                b2,
                lambda e, f: self._edge_pair_cost(e, f) if self._edge_pair_ok(e, f) else None,
                perfect=self.kind == "iso",
            )[1]
        return dict(pairs)


def _cover_left(b1: list[str], b2: list[str], allowed) -> list[tuple[str, str]] | None:
    """Injective matching covering all of ``b1`` (augmenting paths), or None."""
    match_of: dict[str, str] = {}

    def try_assign(e: str, visited: set[str]) -> bool:
        for f in b2:
            if f in visited or not allowed(e, f):
                continue
            visited.add(f)
            if f not in match_of or try_assign(match_of[f], visited):
                match_of[f] = e
                return True
        return False

    for e in b1:
        if not try_assign(e, set()):
            return None
    return sorted((e, f) for f, e in match_of.items())


def _min_cost_assignment(
    b1: list[str], b2: list[str], pair_cost, perfect: bool
) -> tuple[int | None, list[tuple[str, str]]]:
    """Cheapest injective assignment matching all of ``b1`` (and all of
    ``b2`` when ``perfect``); (None, []) when impossible."""
    best: list = [None, []]

    def rec(i: int, used: int, acc: int, pairs: list) -> None:
        if best[0] is not None and acc >= best[0]:
            return
        if i == len(b1):
            if perfect and used != (1 << len(b2)) - 1:
                return
            best[0], best[1] = acc, list(pairs)
            return
        for j, f in enumerate(b2):
            if used & (1 << j):
                continue
            c = pair_cost(b1[i], f)
            if c is None:
                continue
            pairs.append((b1[i], f))
            rec(i + 1, used | (1 << j), acc + c, pairs)
            pairs.pop()

    rec(0, 0, 0, [])
    return best[0], best[1]


def _require_valid(g1: PropertyGraph, g2: PropertyGraph) -> None:
    for name, g in (("first", g1), ("second", g2)):
        issues = validate(g)
        if issues:
            raise ValueError(f"{name} graph is invalid: " + "; ".join(issues))


def search_hom(g1: PropertyGraph, g2: PropertyGraph, opts: SearchOptions | None = None):
    """A total structure-preserving map g1 -> g2, or None. Not necessarily
    injective: distinct nodes may share a target."""
    _require_valid(g1, g2)
    return _DecisionSearch("hom", g1, g2, opts or SearchOptions()).run()


def search_iso(g1: PropertyGraph, g2: PropertyGraph, opts: SearchOptions | None = None):
    """A full isomorphism witness between the graphs, or None."""
    _require_valid(g1, g2)
    return _DecisionSearch("iso", g1, g2, opts or SearchOptions()).run()


def search_sub(g1: PropertyGraph, g2: PropertyGraph, opts: SearchOptions | None = None):
    """An injective embedding of g1 into g2, or None."""
    _require_valid(g1, g2)
    return _DecisionSearch("sub", g1, g2, opts or SearchOptions()).run()


class _GedSearch:
    """Branch-and-bound over partial injective node matchings.

    Nodes of the first graph are decided in order (matched or deleted); edge
    buckets are settled exactly as soon as both endpoints are decided. The
    pruning bound adds, per label class, the deletions and insertions forced
    by the remaining node counts; it never exceeds the true remaining cost.
    """

    def __init__(self, g1: PropertyGraph, g2: PropertyGraph, opts: SearchOptions):
        self.g1, self.g2 = g1, g2
        self.opts = opts
        self.cm = opts.cost_model
        self.label_hard = opts.mode == MODE_LABEL_HARD
        self.order1 = _ordered_nodes(g1, opts.node_order)
        self.props1 = _props_by_owner(g1)
        self.props2 = _props_by_owner(g2)
        self.pairs1 = _edges_by_pair(g1)
        self.pairs2 = _edges_by_pair(g2)
        w = self.cm.weights
        self.w_del_v, self.w_ins_v = w["delV"], w["insV"]
        self.w_del_e, self.w_ins_e = w["delE"], w["insE"]
        self.w_del_p, self.w_ins_p, self.w_upd_p = w["delP"], w["insP"], w["updP"]
        self.del_node = {
            v: self.w_del_v + self.w_del_p * len(self.props1[v]) for v in g1.nodes
        }
        self.ins_node = {
            w2: self.w_ins_v + self.w_ins_p * len(self.props2[w2]) for w2 in g2.nodes
        }
        self.del_edge = {
            e: self.w_del_e + self.w_del_p * len(self.props1[e]) for e in g1.edges
        }
        self.ins_edge = {
            f: self.w_ins_e + self.w_ins_p * len(self.props2[f]) for f in g2.edges
        }
        self.nodes2_by_label: dict[str, list[str]] = {}
        for w2, lab in g2.nodes.items():
            self.nodes2_by_label.setdefault(lab, []).append(w2)
        for lab in self.nodes2_by_label:
            self.nodes2_by_label[lab].sort()
        self.all_nodes2 = sorted(g2.nodes)
        self.deadline = _Deadline(opts.budget)
        self.best_cost: int | None = None
        self.best_assignment: dict[str, str | None] = {}
        self.timed_out = False

    def _prop_pair_cost(self, p1: dict[str, str], p2: dict[str, str]) -> int:
        total = 0
        for k, v in p1.items():
            if k in p2:
                if p2[k] != v:
                    total += self.w_upd_p
            else:
                total += self.w_del_p
        for k in p2:
            if k not in p1:
                total += self.w_ins_p
        return total

    def _node_pair_cost(self, v: str, w: str) -> int:
        label = 0 if self.g1.nodes[v] == self.g2.nodes[w] else self.cm.node_sub
        return label + self._prop_pair_cost(self.props1[v], self.props2[w])

    def _edge_pair_cost(self, e: str, f: str) -> int | None:
        lab1, lab2 = self.g1.edges[e][2], self.g2.edges[f][2]
        if lab1 != lab2 and self.label_hard:
            return None
        label = 0 if lab1 == lab2 else self.cm.edge_sub
        return label + self._prop_pair_cost(self.props1[e], self.props2[f])

    def _bucket_cost(self, b1: list[str], b2: list[str]) -> int:
        """Exact minimum over all injective partial pairings of one bucket,
        unmatched edges priced as deletions and insertions."""
        best = [sum(self.del_edge[e] for e in b1) + sum(self.ins_edge[f] for f in b2)]

        def rec(i: int, used: int, acc: int) -> None:
            if acc >= best[0]:
                return
            if i == len(b1):
                total = acc + sum(
                    self.ins_edge[f] for j, f in enumerate(b2) if not used & (1 << j)
                )
                if total < best[0]:
                    best[0] = total
                return
            e = b1[i]
            for j, f in enumerate(b2):
                if used & (1 << j):
                    continue
                c = self._edge_pair_cost(e, f)
                if c is not None:
                    rec(i + 1, used | (1 << j), acc + c)
            rec(i + 1, used, acc + self.del_edge[e])

        rec(0, 0, 0)
        return best[0]

    def _bucket_pairs(self, b1: list[str], b2: list[str]) -> list[tuple[str, str]]:
        """Argmin pairing for one bucket, deterministic tie-break."""
        best_cost = [None]
        best_pairs: list = [[]]

        def rec(i: int, used: int, acc: int, pairs: list) -> None:
            if best_cost[0] is not None and acc >= best_cost[0] + 1:
                return
            if i == len(b1):
                total = acc + sum(
                    self.ins_edge[f] for j, f in enumerate(b2) if not used & (1 << j)
                )
                if best_cost[0] is None or total < best_cost[0] or (
                    total == best_cost[0] and pairs < best_pairs[0]
                ):
                    best_cost[0] = total
                    best_pairs[0] = list(pairs)
                return
            e = b1[i]
            for j, f in enumerate(b2):
                if used & (1 << j):
                    continue
                c = self._edge_pair_cost(e, f)
                if c is not None:
                    pairs.append((e, f))
                    rec(i + 1, used | (1 << j), acc + c, pairs)
                    pairs.pop()
            rec(i + 1, used, acc + self.del_edge[e], pairs)

        rec(0, 0, 0, [])
        return best_pairs[0]

    def _decide_cost(self, v: str, w: str | None, assignment: dict) -> int:
        """Cost settled by deciding ``v``: its own decision plus every edge
        bucket whose endpoints are now all decided."""
        total = self.del_node[v] if w is None else self._node_pair_cost(v, w)
        seen: set[tuple[str, str]] = set()
        for u in list(assignment) + [v]:
            for key in ((u, v), (v, u)):
                if key in seen:
                    continue
                seen.add(key)
                b1 = self.pairs1.get(key, [])
                u_img = w if key[0] == v else assignment.get(key[0])
                v_img = w if key[1] == v else assignment.get(key[1])
                if u_img is None or v_img is None:
                    total += sum(self.del_edge[e] for e in b1)
                else:
                    b2 = self.pairs2.get((u_img, v_img), [])
                    if b1 or b2:
                        total += self._bucket_cost(b1, b2)
        return total

    def _accounted2(self, v: str, w: str | None, assignment: dict) -> list[str]:
        """Second-graph edges settled by this decision (for leaf bookkeeping)."""
        if w is None:
            return []
        settled: list[str] = []
        seen: set[tuple[str, str]] = set()
        for u in list(assignment) + [v]:
            for key in ((u, v), (v, u)):
                if key in seen:
                    continue
                seen.add(key)
                u_img = w if key[0] == v else assignment.get(key[0])
                v_img = w if key[1] == v else assignment.get(key[1])
                if u_img is not None and v_img is not None:
                    settled += self.pairs2.get((u_img, v_img), [])
        return settled

    def _lower_bound_tail(self, depth: int, used: set[str]) -> int:
        """Forced node deletions and insertions from label-class counts."""
        if self.label_hard:
            remaining: dict[str, int] = {}
            for v in self.order1[depth:]:
                lab = self.g1.nodes[v]
                remaining[lab] = remaining.get(lab, 0) + 1
            bound = 0
            labels = set(remaining) | set(self.nodes2_by_label)
            for lab in labels:
                r1 = remaining.get(lab, 0)
                a2 = sum(1 for w in self.nodes2_by_label.get(lab, []) if w not in used)
                bound += max(0, r1 - a2) * self.w_del_v + max(0, a2 - r1) * self.w_ins_v
            return bound
        r1 = len(self.order1) - depth
        a2 = len(self.g2.nodes) - len(used)
        return max(0, r1 - a2) * self.w_del_v + max(0, a2 - r1) * self.w_ins_v

    def run(self) -> GedResult:
        empty_cost = (
            sum(self.del_node.values())
            + sum(self.del_edge.values())
            + sum(self.ins_node.values())
            + sum(self.ins_edge.values())
        )
        self.best_cost = empty_cost
        self.best_assignment = {v: None for v in self.g1.nodes}
        try:
            self._search(0, {}, set(), 0, set())
        except SearchTimeout:
            self.timed_out = True
        matching = self._rebuild_matching(self.best_assignment)
        script, cost = script_from_matching(
            matching, self.g1, self.g2, self.opts.mode, self.cm
        )
        if cost != self.best_cost:
            raise RuntimeError(
                f"cost bookkeeping diverged: search {self.best_cost}, script {cost}"
            )
        return GedResult(matching, script, cost, optimal=not self.timed_out)

    def _search(
        self, depth: int, assignment: dict, used: set, acc: int, settled2: set
    ) -> None:
        if self.deadline.check():
            raise SearchTimeout("edit-distance search exceeded its budget")
        if acc + self._lower_bound_tail(depth, used) >= self.best_cost:
            return
        if depth == len(self.order1):
            total = acc + sum(c for w2, c in self.ins_node.items() if w2 not in used)
            total += sum(c for f, c in self.ins_edge.items() if f not in settled2)
            if total < self.best_cost:
                self.best_cost = total
                self.best_assignment = dict(assignment)
            return
        v = self.order1[depth]
        if self.label_hard:
            candidates = [
                w for w in self.nodes2_by_label.get(self.g1.nodes[v], []) if w not in used
            ]
        else:
            candidates = [w for w in self.all_nodes2 if w not in used]
        options: list[tuple[int, int, str | None]] = [
            (self._decide_cost(v, w, assignment), 0, w) for w in candidates
        ]
        options.append((self._decide_cost(v, None, assignment), 1, None))
        options.sort(key=lambda o: (o[0], o[1], o[2] or ""))
        for step_cost, _, w in options:
            newly_settled = [f for f in self._accounted2(v, w, assignment) if f not in settled2]
            assignment[v] = w
            if w is not None:
                used.add(w)
            settled2.update(newly_settled)
            self._search(depth + 1, assignment, used, acc + step_cost, settled2)
            settled2.difference_update(newly_settled)
            if w is not None:
                used.discard(w)
            del assignment[v]

    def _rebuild_matching(self, assignment: dict[str, str | None]) -> Matching:
        node_map = {v: w for v, w in assignment.items() if w is not None}
        edge_map: dict[str, str] = {}
        for (s, t), b1 in sorted(self.pairs1.items()):
            ws, wt = node_map.get(s), node_map.get(t)
            if ws is None or wt is None:
                continue
            b2 = self.pairs2.get((ws, wt), [])
            if b2:
                edge_map.update(self._bucket_pairs(b1, b2))
        return Matching(node_map, edge_map)


def min_edit_matching(
    g1: PropertyGraph, g2: PropertyGraph, opts: SearchOptions | None = None
) -> GedResult:
    """Minimum-cost partial isomorphism between the graphs, with the edit
    script it determines and that script's cost.

    The search is exact when it completes; on timeout the best incumbent is
    returned with ``optimal=False``. The incumbent starts from the trivial
    delete-everything/insert-everything matching, so a result always exists.
    """
    _require_valid(g1, g2)
    return _GedSearch(g1, g2, opts or SearchOptions()).run()


def oracle_ged(
    g1: PropertyGraph, g2: PropertyGraph, opts: SearchOptions | None = None
) -> int:
    """Exhaustive minimum edit cost for small graphs (at most 7 nodes each).

    Enumerates every injective partial node matching and every compatible
    edge matching with no pruning and evaluates the derived-script cost
    arithmetically; used as an independent check of ``min_edit_matching``.
    """
    _require_valid(g1, g2)
    opts = opts or SearchOptions()
    if len(g1.nodes) > 7 or len(g2.nodes) > 7:
        raise SizeGuardError("oracle is limited to graphs with at most 7 nodes")
    cm = opts.cost_model
    label_hard = opts.mode == MODE_LABEL_HARD
    props1 = _props_by_owner(g1)
    props2 = _props_by_owner(g2)
    w = cm.weights

    def prop_pair(p1: dict, p2: dict) -> int:
        total = 0
        for k, v in p1.items():
            if k in p2:
                if p2[k] != v:
                    total += w["updP"]
            else:
                total += w["delP"]
        total += sum(w["insP"] for k in p2 if k not in p1)
        return total

    nodes1, nodes2 = sorted(g1.nodes), sorted(g2.nodes)
    edges1, edges2 = sorted(g1.edges), sorted(g2.edges)
    del_node = {v: w["delV"] + w["delP"] * len(props1[v]) for v in nodes1}
    ins_node = {x: w["insV"] + w["insP"] * len(props2[x]) for x in nodes2}
    del_edge = {e: w["delE"] + w["delP"] * len(props1[e]) for e in edges1}
    ins_edge = {f: w["insE"] + w["insP"] * len(props2[f]) for f in edges2}
    best = [
        sum(del_node.values())
        + sum(ins_node.values())
        + sum(del_edge.values())
        + sum(ins_edge.values())
    ]

    def edge_cost(e: str, f: str) -> int | None:
        lab1, lab2 = g1.edges[e][2], g2.edges[f][2]
        if lab1 != lab2 and label_hard:
            return None
        return (0 if lab1 == lab2 else cm.edge_sub) + prop_pair(props1[e], props2[f])

    def enum_edges(i: int, node_map: dict, used_f: set, acc: int) -> None:
        if i == len(edges1):
            total = acc + sum(c for f, c in ins_edge.items() if f not in used_f)
            if total < best[0]:
                best[0] = total
            return
        e = edges1[i]
        s, t, _ = g1.edges[e]
        ws, wt = node_map.get(s), node_map.get(t)
        if ws is not None and wt is not None:
            for f in edges2:
                if f in used_f:
                    continue
                fs, ft, _ = g2.edges[f]
                if fs != ws or ft != wt:
                    continue
                c = edge_cost(e, f)
                if c is not None:
                    used_f.add(f)
                    enum_edges(i + 1, node_map, used_f, acc + c)
                    used_f.discard(f)
        enum_edges(i + 1, node_map, used_f, acc + del_edge[e])

    def enum_nodes(i: int, node_map: dict, used_w: set, acc: int) -> None:
        if i == len(nodes1):
            node_total = acc + sum(c for x, c in ins_node.items() if x not in used_w)
            enum_edges(0, node_map, set(), node_total)
            return
        v = nodes1[i]
        for x in nodes2:
            if x in used_w:
                continue
            if label_hard and g1.nodes[v] != g2.nodes[x]:
                continue
            pair = (0 if g1.nodes[v] == g2.nodes[x] else cm.node_sub) + prop_pair(
                props1[v], props2[x]
            )
            node_map[v] = x
            used_w.add(x)
            enum_nodes(i + 1, node_map, used_w, acc + pair)
            used_w.discard(x)
            del node_map[v]
        enum_nodes(i + 1, node_map, used_w, acc + del_node[v])

    enum_nodes(0, {}, set(), 0)
    return best[0]
