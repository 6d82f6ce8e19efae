"""Drive an external answer-set grounder/solver as a subprocess and decode
its models into matchings, edit scripts and costs.

The bridge writes one program to the solver's stdin, enforces a wall-clock
budget by terminating the process, and parses the line-oriented witness
format (``Answer: N`` followed by one line of atoms, ``Optimization: c``,
then a status line). The solver executable defaults to the ``PGMATCH_SOLVER``
environment variable.
"""

from __future__ import annotations

import enum
import os
import re
import subprocess
from dataclasses import dataclass

from .editing import (
    MODE_LABEL_HARD,
    CostModel,
    DeleteEdge,
    DeleteNode,
    DeleteProp,
    InsertEdge,
    InsertNode,
    InsertProp,
    RelabelEdge,
    RelabelNode,
    UpdateProp,
    apply_script,
    op_sort_key,
    script_from_matching,
)
from .encode import Fact, parse_atom
from .graphs import Matching, PropertyGraph, UnknownIdError, rename_graph

SOLVER_ENV_VAR = "PGMATCH_SOLVER"


class ProcessFailure(Exception):
    """The solver process failed in a way that left no usable output."""


class ParseFailure(Exception):
    """The solver produced output this bridge does not recognize."""


class DecodeMismatchError(ValueError):
    """The answer set is inconsistent with the graphs it claims to relate."""


class SolverStatus(enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    OPTIMUM = "OPTIMUM"
    TIMEOUT = "TIMEOUT"
    ERROR = "ERROR"


EXIT_CODES = {
    SolverStatus.SAT: 0,
    SolverStatus.OPTIMUM: 0,
    SolverStatus.UNSAT: 1,
    SolverStatus.TIMEOUT: 2,
    SolverStatus.ERROR: 3,
}


@dataclass(frozen=True)
class SolverConfig:
    """How to invoke the external solver.

    ``budget`` is wall-clock seconds enforced by this process. ``models``
    maps to the solver's model-count option when set; by default the solver's
    own behaviour is kept (stop at the first model, or prove optimality when
    the program minimizes).
    """

    executable: str
    args: tuple[str, ...] = ()
    budget: float = 30.0
    models: int | None = None

    def __post_init__(self) -> None:
        if self.budget <= 0:
            raise ValueError("budget must be positive")


def default_solver(budget: float = 30.0) -> SolverConfig | None:
    """Configuration from the environment, or None when unset."""
    path = os.environ.get(SOLVER_ENV_VAR)
    return SolverConfig(path, budget=budget) if path else None


@dataclass(frozen=True)
class AnswerSet:
    """The best model reported by one solver run.

    ``costs`` is present only when the program carried a minimize directive;
    ``optimal`` is True only when the solver proved optimality.
    """

    atoms: tuple[Fact, ...]
    costs: tuple[int, ...] | None
    optimal: bool
    status: SolverStatus

    def atoms_named(self, pred: str) -> list[Fact]:
        return [a for a in self.atoms if a.pred == pred]


_ATOM_LINE = re.compile(r"[a-z_][A-Za-z0-9_]*(\(|$| )")
_BANNER_WORDS = (
    "clingo",
    "clasp",
    "reading",
    "solving",
    "models",
    "calls",
    "time",
    "cpu",
    "threads",
    "optimization",
    "optimum",
    "answer",
    "bound",
)


def split_atoms(line: str) -> list[str]:
    """Split one model line into atom strings; spaces inside quoted constants
    and parentheses do not separate atoms."""
    atoms: list[str] = []
    current: list[str] = []
    depth = 0
    in_quotes = False
    i = 0
    while i < len(line):
        c = line[i]
        if in_quotes:
            current.append(c)
            if c == "\\" and i + 1 < len(line):
                current.append(line[i + 1])
                i += 1
            elif c == '"':
                in_quotes = False
        elif c == '"':
            current.append(c)
            in_quotes = True
        elif c == "(":
            depth += 1
            current.append(c)
        elif c == ")":
            depth -= 1
            current.append(c)
        elif c.isspace() and depth == 0:
            if current:
                atoms.append("".join(current))
                current = []
        else:
            current.append(c)
        i += 1
    if current:
        atoms.append("".join(current))
    return atoms


def parse_solver_output(text: str) -> tuple[list[list[Fact]], list[int] | None, str | None]:
    """Extract the models, the last optimization vector, and the final status
    word from solver stdout.

    Strict pass: ``Answer: N`` markers announce the next line as a model.
    Permissive fallback (no markers found): any line that looks like a run of
    atoms is taken as a model.
    """
    models: list[list[Fact]] = []
    costs: list[int] | None = None
    status: str | None = None
    lines = text.splitlines()
    expect_model = False
    saw_marker = False
    for line in lines:
        stripped = line.strip()
        if not stripped:
            continue
        if expect_model:
            models.append([parse_atom(a) for a in split_atoms(stripped)])
            expect_model = False
            continue
        if stripped.startswith("Answer:"):
            saw_marker = True
            expect_model = True
            continue
        if stripped.startswith("Optimization:"):
            costs = [int(tok) for tok in stripped.split(":", 1)[1].split()]
            continue
        upper = stripped.upper()
        if upper in ("SATISFIABLE", "UNSATISFIABLE", "UNKNOWN") or upper == "OPTIMUM FOUND":
            status = upper
            continue
    if not saw_marker and not models:
        for line in lines:
            stripped = line.strip()
            if not stripped or any(stripped.lower().startswith(w) for w in _BANNER_WORDS):
                continue
            if not _ATOM_LINE.match(stripped):
                continue
            try:
                models.append([parse_atom(a) for a in split_atoms(stripped)])
            except ValueError:
                continue
    return models, costs, status


def run_solver(program: str, cfg: SolverConfig) -> AnswerSet:
    """Run one solver job and return its final (best) model.

    On budget expiry the process is killed and whatever model it printed so
    far is returned with status TIMEOUT. Unexpected process failures raise
    ``ProcessFailure``; unrecognizable output raises ``ParseFailure``.
    """
    cmd = [cfg.executable, *cfg.args]
    if cfg.models is not None:
        cmd.append(f"--models={cfg.models}")
    cmd.append("-")
    timed_out = False
    try:
        proc = subprocess.Popen(
            cmd,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
            text=True,
        )
    except OSError as exc:
        raise ProcessFailure(f"cannot start solver {cfg.executable!r}: {exc}") from exc
    try:
        out, err = proc.communicate(program, timeout=cfg.budget)
    except subprocess.TimeoutExpired:
        proc.kill()
        out, err = proc.communicate()
        timed_out = True

    models, costs, status_word = parse_solver_output(out or "")
    atoms = tuple(models[-1]) if models else ()
    cost_vec = tuple(costs) if costs is not None else None
    if timed_out:
        return AnswerSet(atoms, cost_vec, optimal=False, status=SolverStatus.TIMEOUT)
    if status_word == "OPTIMUM FOUND":
        return AnswerSet(atoms, cost_vec, optimal=True, status=SolverStatus.OPTIMUM)
    if status_word == "SATISFIABLE":
        return AnswerSet(atoms, cost_vec, optimal=False, status=SolverStatus.SAT)
    if status_word == "UNSATISFIABLE":
        return AnswerSet((), None, optimal=False, status=SolverStatus.UNSAT)
    if status_word == "UNKNOWN":
        return AnswerSet(atoms, cost_vec, optimal=False, status=SolverStatus.ERROR)
    if models:
        return AnswerSet(atoms, cost_vec, optimal=False, status=SolverStatus.SAT)
    if proc.returncode not in (0, 10, 20, 30):
        raise ProcessFailure(
            f"solver exited with {proc.returncode}: {(err or out or '').strip()[:200]}"
        )
    raise ParseFailure(f"no model or status found in solver output: {out[:200]!r}")


def decode_matching(ans: AnswerSet, g1: PropertyGraph, g2: PropertyGraph) -> Matching:
    """Turn the ``h/2`` atoms of a model into a matching, classifying each
    pair as node or edge by where its first id lives."""
    node_map: dict[str, str] = {}
    edge_map: dict[str, str] = {}
    for fact in ans.atoms_named("h"):
        if len(fact.args) != 2:
            raise DecodeMismatchError(f"unexpected pairing atom {fact.render()}")
        x, y = fact.args
        if x in g1.nodes:
            if y not in g2.nodes:
                raise UnknownIdError(f"pairing atom maps node {x!r} to unknown {y!r}")
            node_map[x] = y
        elif x in g1.edges:
            if y not in g2.edges:
                raise UnknownIdError(f"pairing atom maps edge {x!r} to unknown {y!r}")
            edge_map[x] = y
        else:
            raise UnknownIdError(f"pairing atom mentions unknown id {x!r}")
    return Matching(node_map, edge_map)


_SCRIPT_PREDS = {
    "delete_node": (DeleteNode, 1),
    "delete_edge": (DeleteEdge, 1),
    "delete_prop": (DeleteProp, 2),
    "insert_node": (InsertNode, 2),
    "insert_edge": (InsertEdge, 4),
    "insert_prop": (InsertProp, 3),
    "update_prop": (UpdateProp, 4),
    "relabel_node": (RelabelNode, 2),
    "relabel_edge": (RelabelEdge, 2),
}


def decode_edit_script(
    ans: AnswerSet,
    g1: PropertyGraph,
    g2: PropertyGraph,
    mode: str = MODE_LABEL_HARD,
    cm: CostModel | None = None,
) -> tuple[list, int]:
    """Rebuild the canonical edit script from an edit-distance model.

    The script determined by the model's matching must agree with the
    model's own edit atoms (when the program emits them) and with the
    reported cost; applying it to ``g1`` must give ``g2`` up to renaming
    matched ids. Any disagreement raises ``DecodeMismatchError``.
    """
    if ans.status not in (SolverStatus.SAT, SolverStatus.OPTIMUM, SolverStatus.TIMEOUT):
        raise DecodeMismatchError(f"no model to decode (status {ans.status.value})")
    cm = cm or CostModel.unit()
    h = decode_matching(ans, g1, g2)
    script, cost = script_from_matching(h, g1, g2, mode, cm)

    atom_ops = []
    saw_script_atoms = False
    matched_from = {y: x for x, y in h.id_map().items()}
    for fact in ans.atoms:
        spec = _SCRIPT_PREDS.get(fact.pred)
        if spec is None:
            continue
        saw_script_atoms = True
        cls, _ = spec
        args = fact.args
        if fact.pred == "insert_edge":
            e, s, t, lab = args
            atom_ops.append(InsertEdge(e, matched_from.get(s, s), matched_from.get(t, t), lab))
        elif fact.pred == "insert_prop":
            y, k, d = args
            atom_ops.append(InsertProp(matched_from.get(y, y), k, d))
        elif fact.pred == "update_prop":
            x, k, _v1, v2 = args
            atom_ops.append(UpdateProp(x, k, v2))
        else:
            atom_ops.append(cls(*args))
    if saw_script_atoms:
        atom_ops.sort(key=op_sort_key)
        if atom_ops != script:
            raise DecodeMismatchError(
                "model edit atoms disagree with the script its matching determines"
            )
    if ans.costs is not None and sum(ans.costs) != cost:
        raise DecodeMismatchError(
            f"solver cost {sum(ans.costs)} differs from script cost {cost}"
        )
    edited = apply_script(g1, script)
    if rename_graph(edited, h.id_map()) != g2:
        raise DecodeMismatchError("applying the decoded script does not produce the target")
    return script, cost
