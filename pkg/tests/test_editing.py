import random

import pytest

from conftest import random_graph, random_valid_script
from pgmatch import (
    CostModel,
    PreconditionViolated,
    PropertyGraph,
    apply_op,
    apply_script,
    canonicalize,
    format_script,
    is_canonical,
    parse_script,
    script_cost,
)
from pgmatch.editing import (
    DeleteEdge,
    DeleteNode,
    DeleteProp,
    InsertEdge,
    InsertNode,
    InsertProp,
    RelabelEdge,
    RelabelNode,
    UpdateProp,
    prepend_canonical,
)


# -- apply_op -------------------------------------------------------------------


def test_insert_node_into_empty_graph():
    g = apply_op(PropertyGraph(), InsertNode("v1", "a"))
    assert g == PropertyGraph({"v1": "a"})


def test_delete_node_with_incident_edge_is_rejected():
    g = PropertyGraph({"v0": "a", "v1": "a"}, {"e1": ("v0", "v1", "x")})
    with pytest.raises(PreconditionViolated, match="endpoint"):
        apply_op(g, DeleteNode("v0"))


def test_update_prop_replaces_value():
    g = PropertyGraph({"v1": "a"}, {}, {("v1", "k"): "d"})
    out = apply_op(g, UpdateProp("v1", "k", "d2"))
    assert out.props == {("v1", "k"): "d2"}
    assert g.props == {("v1", "k"): "d"}  # input untouched


def test_update_to_same_value_is_allowed():
    g = PropertyGraph({"v1": "a"}, {}, {("v1", "k"): "d"})
    assert apply_op(g, UpdateProp("v1", "k", "d")) == g


@pytest.mark.parametrize(
    "graph,op,fragment",
    [
        (PropertyGraph({"v": "a"}), InsertNode("v", "b"), "already exists"),
        (PropertyGraph({"v": "a"}), InsertEdge("v", "v", "v", "x"), "already exists"),
        (PropertyGraph({"v": "a"}), InsertEdge("e", "v", "w9", "x"), "not a node"),
        (PropertyGraph({"v": "a"}, {}, {("v", "k"): "d"}), InsertProp("v", "k", "d"), "already"),
        (PropertyGraph(), InsertProp("x", "k", "d"), "does not exist"),
        (PropertyGraph(), DeleteNode("v"), "does not exist"),
        (PropertyGraph({"v": "a"}, {}, {("v", "k"): "d"}), DeleteNode("v"), "properties"),
        (PropertyGraph(), DeleteEdge("e"), "does not exist"),
        (PropertyGraph(), DeleteProp("v", "k"), "does not exist"),
        (PropertyGraph({"v": "a"}), UpdateProp("v", "k", "d"), "does not exist"),
        (PropertyGraph(), RelabelNode("v", "b"), "does not exist"),
        (PropertyGraph(), RelabelEdge("e", "b"), "does not exist"),
    ],
)
def test_precondition_violations(graph, op, fragment):
    with pytest.raises(PreconditionViolated, match=fragment):
        apply_op(graph, op)


def test_delete_edge_with_properties_is_rejected():
    g = PropertyGraph({"v": "a"}, {"e": ("v", "v", "x")}, {("e", "k"): "d"})
    with pytest.raises(PreconditionViolated, match="properties"):
        apply_op(g, DeleteEdge("e"))


def test_relabel_ops_change_labels_in_place():
    g = PropertyGraph({"v": "a"}, {"e": ("v", "v", "x")})
    out = apply_op(apply_op(g, RelabelNode("v", "b")), RelabelEdge("e", "y"))
    assert out.nodes == {"v": "b"}
    assert out.edges == {"e": ("v", "v", "y")}


# -- apply_script -----------------------------------------------------------------


def test_empty_script_is_identity():
    g = PropertyGraph({"v": "a"})
    assert apply_script(g, []) == g


def test_script_failure_reports_index():
    with pytest.raises(PreconditionViolated) as err:
        apply_script(PropertyGraph(), [InsertNode("v", "a"), InsertNode("v", "a")])
    assert err.value.index == 1


def delete_all_insert_all(g1: PropertyGraph, g2: PropertyGraph) -> list:
    script = [DeleteProp(x, k) for (x, k) in g1.props]
    script += [DeleteEdge(e) for e in g1.edges]
    script += [DeleteNode(v) for v in g1.nodes]
    script += [InsertNode(v, lab) for v, lab in g2.nodes.items()]
    script += [InsertEdge(e, s, t, lab) for e, (s, t, lab) in g2.edges.items()]
    script += [InsertProp(x, k, d) for (x, k), d in g2.props.items()]
    return script


def test_delete_all_insert_all_maps_between_random_graphs():
    rng = random.Random(5)
    for _ in range(50):
        g1 = random_graph(rng, prefix="a", max_nodes=4)
        g2 = random_graph(rng, prefix="b", max_nodes=4)
        script = delete_all_insert_all(g1, g2)
        assert apply_script(g1, script) == g2
        assert is_canonical(script)


# -- costs ----------------------------------------------------------------------


def test_cost_of_empty_script_is_zero():
    assert script_cost([], CostModel.unit()) == 0
    assert script_cost([], CostModel.gedc()) == 0


def test_unit_cost_counts_operations():
    ops = [InsertNode("v", "a"), DeleteEdge("e")]
    assert script_cost(ops, CostModel.unit()) == 2


def test_gedc_weights_node_delete_insert_is_eight():
    ops = [DeleteNode("v"), InsertNode("w", "a")]
    assert script_cost(ops, CostModel.gedc()) == 8


def test_gedc_relabel_weights():
    assert script_cost([RelabelNode("v", "b")], CostModel.gedc()) == 2
    assert script_cost([RelabelEdge("e", "y")], CostModel.gedc()) == 1


def test_cost_model_rejects_negative_weights():
    with pytest.raises(ValueError):
        CostModel(weights={"insV": -1})
    with pytest.raises(ValueError):
        CostModel(node_sub=-2)
    with pytest.raises(ValueError):
        CostModel(weights={"nope": 1})


# -- canonical form ---------------------------------------------------------------


def test_empty_script_is_canonical():
    assert is_canonical([])


def test_full_phase_order_is_canonical():
    ops = [
        DeleteProp("v", "k"),
        DeleteEdge("e"),
        DeleteNode("v"),
        UpdateProp("w", "k", "d"),
        InsertNode("u", "a"),
        InsertEdge("f", "u", "u", "x"),
        InsertProp("u", "k", "d"),
    ]
    assert is_canonical(ops)


def test_insert_before_delete_is_not_canonical():
    assert not is_canonical([InsertNode("v", "a"), DeleteNode("w")])


def test_relabels_sit_between_updates_and_inserts():
    assert is_canonical([UpdateProp("v", "k", "d"), RelabelNode("v", "b"), InsertNode("w", "a")])
    assert not is_canonical([InsertNode("w", "a"), RelabelNode("v", "b")])


# -- canonicalize ------------------------------------------------------------------


def test_cancel_insert_then_delete_node():
    assert canonicalize([InsertNode("v", "a"), DeleteNode("v")], PropertyGraph()) == []


def test_cancel_insert_then_delete_edge_and_prop():
    g = PropertyGraph({"v": "a"})
    assert canonicalize([InsertEdge("e", "v", "v", "x"), DeleteEdge("e")], g) == []
    assert canonicalize([InsertProp("v", "k", "d"), DeleteProp("v", "k")], g) == []


def test_update_then_delete_collapses_to_delete():
    g = PropertyGraph({"x": "a"}, {}, {("x", "k"): "d"})
    out = canonicalize([UpdateProp("x", "k", "d2"), DeleteProp("x", "k")], g)
    assert out == [DeleteProp("x", "k")]


def test_insert_then_update_collapses_to_insert_of_newer_value():
    g = PropertyGraph({"x": "a"})
    out = canonicalize([InsertProp("x", "k", "d"), UpdateProp("x", "k", "d2")], g)
    assert out == [InsertProp("x", "k", "d2")]


def test_canonical_scripts_are_fixpoints():
    rng = random.Random(11)
    checked = 0
    for _ in range(300):
        g = random_graph(rng, prefix="g", max_nodes=4, self_loops=True)
        ops = random_valid_script(rng, g, max_len=10)
        if not is_canonical(ops):
            continue
        checked += 1
        assert canonicalize(ops, g) == ops
    assert checked >= 50


def test_canonicalize_random_scripts_sound_and_no_longer():
    rng = random.Random(17)
    for _ in range(400):
        g = random_graph(rng, prefix="g", max_nodes=4, self_loops=True)
        ops = random_valid_script(rng, g, max_len=12)
        canon = canonicalize(ops, g)
        assert is_canonical(canon)
        assert len(canon) <= len(ops)
        assert apply_script(g, canon) == apply_script(g, ops)


def test_canonicalize_rejects_invalid_scripts():
    with pytest.raises(PreconditionViolated):
        canonicalize([DeleteNode("ghost")], PropertyGraph())


def test_canonicalize_rejects_relabel_ops():
    g = PropertyGraph({"v": "a"})
    with pytest.raises(ValueError, match="core"):
        canonicalize([RelabelNode("v", "b")], g)


def test_prepend_canonical_single_steps():
    # a delete commutes left past nothing and keeps its place at the head
    suffix = [DeleteNode("w"), InsertNode("u", "a")]
    assert prepend_canonical(DeleteProp("v", "k"), suffix) == [DeleteProp("v", "k")] + suffix
    # an insert walks right past deletes it does not cancel with
    out = prepend_canonical(InsertNode("u", "a"), [DeleteNode("w")])
    assert out == [DeleteNode("w"), InsertNode("u", "a")]


def test_prepend_preserves_effect_and_canonical_form():
    rng = random.Random(29)
    for _ in range(300):
        g = random_graph(rng, prefix="g", max_nodes=3, self_loops=True)
        ops = random_valid_script(rng, g, max_len=8)
        if not ops:
            continue
        head, tail = ops[0], ops[1:]
        mid = apply_op(g, head)
        canon_tail = canonicalize(tail, mid)
        combined = prepend_canonical(head, canon_tail)
        assert is_canonical(combined)
        assert len(combined) <= 1 + len(canon_tail)
        assert apply_script(g, combined) == apply_script(mid, canon_tail)


# -- script text format --------------------------------------------------------------


def test_script_text_round_trip():
    ops = [
        DeleteProp("v1", "k"),
        DeleteEdge("e9"),
        DeleteNode("v3"),
        UpdateProp("v1", "k", "d"),
        RelabelNode("v1", "b"),
        InsertNode("w", "a"),
        InsertEdge("e9", "v1", "v2", "lbl"),
        InsertProp("e9", "k", "d"),
    ]
    text = format_script(ops)
    assert "delV v3" in text
    assert "insE e9 v1 v2 lbl" in text
    assert "updP v1 k d" in text
    assert "insP e9 k d" in text
    assert parse_script(text) == ops


def test_script_text_quoting():
    ops = [InsertNode("V 1", 'la"bel')]
    assert parse_script(format_script(ops)) == ops


def test_parse_script_rejects_bad_input():
    with pytest.raises(ValueError, match="unknown operation"):
        parse_script("frobV v1\n")
    with pytest.raises(ValueError, match="arguments"):
        parse_script("delV v1 extra\n")
