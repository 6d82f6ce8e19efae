import sys

import pytest

from conftest import FAKE_SOLVER
from pgmatch import (
    CostModel,
    DecodeMismatchError,
    ParseFailure,
    ProcessFailure,
    PropertyGraph,
    SolverConfig,
    SolverStatus,
    UnknownIdError,
    decode_edit_script,
    decode_matching,
    run_solver,
)
from pgmatch.bridge import EXIT_CODES, AnswerSet, parse_solver_output, split_atoms
from pgmatch.encode import Fact


def fake_cfg(budget: float = 10.0) -> SolverConfig:
    return SolverConfig(sys.executable, (str(FAKE_SOLVER),), budget=budget)


def answer(atom_facts, costs=None, optimal=False, status=SolverStatus.SAT) -> AnswerSet:
    return AnswerSet(tuple(atom_facts), costs, optimal, status)


# -- output parsing ---------------------------------------------------------------


def test_split_atoms_handles_quoted_spaces():
    line = 'h(v1,w1) h("V 2",w2) delete_node("a b")'
    assert split_atoms(line) == ['h(v1,w1)', 'h("V 2",w2)', 'delete_node("a b")']


def test_parse_solver_output_strict():
    text = "clingo version x\nSolving...\nAnswer: 1\nh(v1,w1) h(e1,f1)\nSATISFIABLE\n"
    models, costs, status = parse_solver_output(text)
    assert models == [[Fact("h", ("v1", "w1")), Fact("h", ("e1", "f1"))]]
    assert costs is None
    assert status == "SATISFIABLE"


def test_parse_solver_output_takes_last_model_and_costs():
    text = (
        "Answer: 1\nh(v1,w1)\nOptimization: 5\n"
        "Answer: 2\nh(v1,w2)\nOptimization: 3\nOPTIMUM FOUND\n"
    )
    models, costs, status = parse_solver_output(text)
    assert len(models) == 2
    assert models[-1] == [Fact("h", ("v1", "w2"))]
    assert costs == [3]
    assert status == "OPTIMUM FOUND"


def test_parse_solver_output_permissive_fallback():
    models, costs, status = parse_solver_output("h(v1,w1) h(e1,f1)\n")
    assert models == [[Fact("h", ("v1", "w1")), Fact("h", ("e1", "f1"))]]
    assert status is None


# -- run_solver against the scripted solver ------------------------------------------


def test_run_solver_sat():
    ans = run_solver("%fake: sat h(v1,w1)\n", fake_cfg())
    assert ans.status is SolverStatus.SAT
    assert ans.atoms == (Fact("h", ("v1", "w1")),)
    assert not ans.optimal and ans.costs is None


def test_run_solver_unsat():
    ans = run_solver("%fake: unsat\n", fake_cfg())
    assert ans.status is SolverStatus.UNSAT
    assert ans.atoms == ()


def test_run_solver_optimum():
    ans = run_solver('%fake: opt 2 delete_node(v1) node_cost(v1,1)\n', fake_cfg())
    assert ans.status is SolverStatus.OPTIMUM
    assert ans.optimal and ans.costs == (2,)
    assert Fact("delete_node", ("v1",)) in ans.atoms


def test_run_solver_timeout_keeps_partial_model():
    ans = run_solver("%fake: sat-then-sleep\n", fake_cfg(budget=1.0))
    assert ans.status is SolverStatus.TIMEOUT
    assert not ans.optimal
    assert ans.atoms == (Fact("h", ("v1", "w1")),)


def test_run_solver_timeout_without_model():
    ans = run_solver("%fake: sleep\n", fake_cfg(budget=0.5))
    assert ans.status is SolverStatus.TIMEOUT
    assert ans.atoms == ()


def test_run_solver_permissive_model_line():
    ans = run_solver("%fake: plain h(v1,w1)\n", fake_cfg())
    assert ans.status is SolverStatus.SAT
    assert ans.atoms == (Fact("h", ("v1", "w1")),)


def test_run_solver_garbage_raises_parse_failure():
    with pytest.raises(ParseFailure):
        run_solver("%fake: garbage\n", fake_cfg())


def test_run_solver_crash_raises_process_failure():
    with pytest.raises(ProcessFailure):
        run_solver("%fake: crash\n", fake_cfg())


def test_run_solver_missing_executable():
    with pytest.raises(ProcessFailure):
        run_solver("", SolverConfig("/nonexistent/solver-binary"))


def test_exit_code_mapping():
    assert EXIT_CODES[SolverStatus.SAT] == 0
    assert EXIT_CODES[SolverStatus.OPTIMUM] == 0
    assert EXIT_CODES[SolverStatus.UNSAT] == 1
    assert EXIT_CODES[SolverStatus.TIMEOUT] == 2
    assert EXIT_CODES[SolverStatus.ERROR] == 3


# -- decoding matchings ----------------------------------------------------------------


def g_pair():
    g1 = PropertyGraph({"v1": "a", "v2": "a"}, {"e1": ("v1", "v2", "x")})
    g2 = PropertyGraph({"w1": "a", "w2": "a"}, {"f1": ("w1", "w2", "x")})
    return g1, g2


def test_decode_matching_nodes_and_edges():
    g1, g2 = g_pair()
    ans = answer([Fact("h", ("v1", "w1")), Fact("h", ("v2", "w2")), Fact("h", ("e1", "f1"))])
    m = decode_matching(ans, g1, g2)
    assert m.node_map == {"v1": "w1", "v2": "w2"}
    assert m.edge_map == {"e1": "f1"}
    assert m.is_injective()


def test_decode_matching_unescapes_quoted_ids():
    g1 = PropertyGraph({"V 2": "a"})
    g2 = PropertyGraph({"w": "a"})
    m = decode_matching(answer([Fact("h", ("V 2", "w"))]), g1, g2)
    assert m.node_map == {"V 2": "w"}


def test_decode_matching_unknown_id():
    g1, g2 = g_pair()
    with pytest.raises(UnknownIdError):
        decode_matching(answer([Fact("h", ("ghost", "w1"))]), g1, g2)
    with pytest.raises(UnknownIdError):
        decode_matching(answer([Fact("h", ("v1", "ghost"))]), g1, g2)


# -- decoding edit scripts ----------------------------------------------------------------


def test_decode_edit_script_identical_graphs():
    g1 = PropertyGraph({"v1": "a"})
    g2 = PropertyGraph({"w1": "a"})
    ans = answer([Fact("h", ("v1", "w1"))], costs=(0,), optimal=True, status=SolverStatus.OPTIMUM)
    script, cost = decode_edit_script(ans, g1, g2)
    assert script == [] and cost == 0


def test_decode_edit_script_delete_insert():
    g1 = PropertyGraph({"v1": "a"})
    g2 = PropertyGraph({"w1": "b"})
    ans = answer(
        [Fact("delete_node", ("v1",)), Fact("insert_node", ("w1", "b"))],
        costs=(2,),
        optimal=True,
        status=SolverStatus.OPTIMUM,
    )
    script, cost = decode_edit_script(ans, g1, g2)
    assert [op.kind for op in script] == ["delV", "insV"]
    assert cost == 2


def test_decode_edit_script_detects_missing_insert_atom():
    g1 = PropertyGraph({"v1": "a"})
    g2 = PropertyGraph({"w1": "b"})
    # insert_node(w1,b) is required for the unmatched target node
    ans = answer(
        [Fact("delete_node", ("v1",))], costs=(2,), optimal=True, status=SolverStatus.OPTIMUM
    )
    with pytest.raises(DecodeMismatchError):
        decode_edit_script(ans, g1, g2)


def test_decode_edit_script_detects_cost_mismatch():
    g1 = PropertyGraph({"v1": "a"})
    g2 = PropertyGraph({"w1": "b"})
    ans = answer(
        [Fact("delete_node", ("v1",)), Fact("insert_node", ("w1", "b"))],
        costs=(7,),
        optimal=True,
        status=SolverStatus.OPTIMUM,
    )
    with pytest.raises(DecodeMismatchError, match="cost"):
        decode_edit_script(ans, g1, g2)


def test_decode_edit_script_relabel_mode():
    g1 = PropertyGraph({"v1": "a"})
    g2 = PropertyGraph({"w1": "b"})
    ans = answer(
        [Fact("h", ("v1", "w1")), Fact("relabel_node", ("v1", "b"))],
        costs=(2,),
        optimal=True,
        status=SolverStatus.OPTIMUM,
    )
    script, cost = decode_edit_script(ans, g1, g2, mode="relabel", cm=CostModel.gedc())
    assert [op.kind for op in script] == ["relV"]
    assert cost == 2


def test_decode_edit_script_weighted_without_script_atoms():
    # the weighted-constants program only emits cost atoms; the script is
    # rebuilt from the matching alone
    g1 = PropertyGraph({"v1": "a", "v2": "b"})
    g2 = PropertyGraph({"w1": "a"})
    ans = answer(
        [Fact("h", ("v1", "w1")), Fact("node_cost", ("v2", "4"))],
        costs=(4,),
        optimal=True,
        status=SolverStatus.OPTIMUM,
    )
    script, cost = decode_edit_script(ans, g1, g2, mode="relabel", cm=CostModel.gedc())
    assert [op.kind for op in script] == ["delV"]
    assert cost == 4


def test_decode_edit_script_remaps_inserted_edge_endpoints():
    # the model's insert_edge atom names g2 endpoints; the decoded operation
    # must reference the surviving (matched) g1 node instead
    g1 = PropertyGraph({"v1": "a"})
    g2 = PropertyGraph({"w1": "a", "w2": "b"}, {"f1": ("w2", "w1", "x")})
    ans = answer(
        [
            Fact("h", ("v1", "w1")),
            Fact("insert_node", ("w2", "b")),
            Fact("insert_edge", ("f1", "w2", "w1", "x")),
        ],
        costs=(2,),
        optimal=True,
        status=SolverStatus.OPTIMUM,
    )
    script, cost = decode_edit_script(ans, g1, g2)
    assert cost == 2
    ins_edge = [op for op in script if op.kind == "insE"][0]
    assert (ins_edge.src, ins_edge.tgt) == ("w2", "v1")


def test_decode_edit_script_needs_a_model():
    g1, g2 = g_pair()
    ans = AnswerSet((), None, False, SolverStatus.UNSAT)
    with pytest.raises(DecodeMismatchError):
        decode_edit_script(ans, g1, g2)
