"""Dynamic belief update: epistemic models, event models, product update,
a decision procedure for belief queries after a sequence of actions, and a
QBF-based cross-validation harness."""

from .engine import (
    DbuInstance,
    NotApplicableError,
    ParameterVector,
    SizeBoundReport,
    ValidationError,
    apply_sequence,
    extract_parameters,
    product_update,
    size_bound_check,
    solve_dbu,
    update_trace,
    validate_instance,
    world_count_bound,
)
from .events import (
    Action,
    EventModel,
    Postcondition,
    identity_action,
    is_applicable,
    is_applicable_sequence,
    validate_action,
)
from .formula import (
    And,
    Believes,
    Formula,
    FormulaSyntaxError,
    Not,
    Prop,
    UnknownAgentError,
    UnknownPropositionError,
    diamond,
    formula_size,
    implies,
    modal_depth,
    or_,
    parse_formula,
    print_formula,
    top,
    validate_formula,
)
from .jsonio import (
    SchemaError,
    instance_from_json,
    instance_to_json,
    load_instance,
    save_instance,
)
from .kripke import (
    EpistemicModel,
    EpistemicState,
    FrameReport,
    evaluate,
    evaluate_pointed,
    frame_report,
    satisfying_worlds,
    validate_state,
)
from .reductions import (
    Qbf,
    Quantifier,
    equivalence_closure,
    equivalence_harness,
    exhaustive_qbf_suite,
    format_qbf,
    parse_qbf,
    qbf_brute_force,
    random_qbf_suite,
    reduce_tqbf_to_dbu,
    translate_query,
)

__all__ = [
    "Action",
    "And",
    "Believes",
    "DbuInstance",
    "EpistemicModel",
    "EpistemicState",
    "EventModel",
    "Formula",
    "FormulaSyntaxError",
    "FrameReport",
    "Not",
    "NotApplicableError",
    "ParameterVector",
    "Postcondition",
    "Prop",
    "Qbf",
    "Quantifier",
    "SchemaError",
    "SizeBoundReport",
    "UnknownAgentError",
    "UnknownPropositionError",
    "ValidationError",
    "apply_sequence",
    "diamond",
    "equivalence_closure",
    "equivalence_harness",
    "evaluate",
    "evaluate_pointed",
    "exhaustive_qbf_suite",
    "extract_parameters",
    "format_qbf",
    "formula_size",
    "frame_report",
    "identity_action",
    "implies",
    "instance_from_json",
    "instance_to_json",
    "is_applicable",
    "is_applicable_sequence",
    "load_instance",
    "modal_depth",
    "or_",
    "parse_formula",
    "parse_qbf",
    "print_formula",
    "product_update",
    "qbf_brute_force",
    "random_qbf_suite",
    "reduce_tqbf_to_dbu",
    "satisfying_worlds",
    "save_instance",
    "size_bound_check",
    "solve_dbu",
    "top",
    "translate_query",
    "update_trace",
    "validate_action",
    "validate_formula",
    "validate_instance",
    "validate_state",
    "world_count_bound",
]
