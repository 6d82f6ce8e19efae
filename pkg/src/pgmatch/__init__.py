"""Property-graph matching and edit distance.

The package decides homomorphism, isomorphism and subgraph embedding between
property graphs, computes exact (weighted) edit distances with the edit
scripts that realize them, and renders the same problems as answer-set
programs for an external solver.
"""

from .bridge import (
    AnswerSet,
    DecodeMismatchError,
    ParseFailure,
    ProcessFailure,
    SolverConfig,
    SolverStatus,
    decode_edit_script,
    decode_matching,
    run_solver,
)
from .editing import (
    MODE_LABEL_HARD,
    MODE_RELABEL,
    CostModel,
    DeleteEdge,
    DeleteNode,
    DeleteProp,
    InsertEdge,
    InsertNode,
    InsertProp,
    InvalidMatchingError,
    PreconditionViolated,
    RelabelEdge,
    RelabelNode,
    UpdateProp,
    apply_op,
    apply_script,
    canonicalize,
    format_script,
    is_canonical,
    parse_script,
    script_cost,
    script_from_matching,
)
from .encode import (
    AspProgram,
    Fact,
    ProblemKind,
    decode_graph_facts,
    encode_graph_facts,
    encode_problem,
    render_job,
)
from .generators import gen_chain, gen_cycle, gen_random
from .graphs import (
    GraphFormatError,
    Matching,
    PropertyGraph,
    UnknownIdError,
    check_homomorphism,
    check_isomorphism,
    check_subgraph_embedding,
    format_graph,
    load_graph,
    parse_graph,
    rename_graph,
    validate,
)
from .search import (
    GedResult,
    SearchOptions,
    SearchTimeout,
    SizeGuardError,
    min_edit_matching,
    oracle_ged,
    search_hom,
    search_iso,
    search_sub,
)

__version__ = "0.1.0"

__all__ = [
    "AnswerSet",
    "AspProgram",
    "CostModel",
    "DecodeMismatchError",
    "DeleteEdge",
    "DeleteNode",
    "DeleteProp",
    "Fact",
    "GedResult",
    "GraphFormatError",
    "InsertEdge",
    "InsertNode",
    "InsertProp",
    "InvalidMatchingError",
    "MODE_LABEL_HARD",
    "MODE_RELABEL",
    "Matching",
    "ParseFailure",
    "PreconditionViolated",
    "ProblemKind",
    "ProcessFailure",
    "PropertyGraph",
    "RelabelEdge",
    "RelabelNode",
    "SearchOptions",
    "SearchTimeout",
    "SizeGuardError",
    "SolverConfig",
    "SolverStatus",
    "UnknownIdError",
    "UpdateProp",
    "apply_op",
    "apply_script",
    "canonicalize",
    "check_homomorphism",
    "check_isomorphism",
    "check_subgraph_embedding",
    "decode_edit_script",
    "decode_graph_facts",
    "decode_matching",
    "encode_graph_facts",
    "encode_problem",
    "format_graph",
    "format_script",
    "gen_chain",
    "gen_cycle",
    "gen_random",
    "is_canonical",
    "load_graph",
    "min_edit_matching",
    "oracle_ged",
    "parse_graph",
    "parse_script",
    "rename_graph",
    "run_solver",
    "script_cost",
    "script_from_matching",
    "search_hom",
    "search_iso",
    "search_sub",
    "validate",
]
