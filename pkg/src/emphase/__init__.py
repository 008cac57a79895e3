"""Semantic-emphasis rule engine and toy German sentence generator.

From a declarative lexical-field definition the engine derives the
maximum case frame, enumerates emphasis distributions and blocking
sets, assigns grammatical cases, selects an upper-model process type,
emits sentence-plan terms, and realizes small German sentences through
a fixed verb-second template.  All rule content lives in data files;
the shipped bundle covers the change-of-possession field.
"""

from .discourse import (
    DiscourseState,
    EmphasisQ,
    TextualStatus,
    decide_emphasis_q,
    status_of,
    update_discourse,
)
from .emphasis import (
    BLOCKED,
    Blocked,
    BlockingSet,
    Case,
    CasePriority,
    DirectCase,
    EmphasisAssignment,
    Oblique,
    ObliqueTable,
    Realization,
    SemanticForm,
    assign_cases,
    check_blocking,
    check_emphasis,
    emphatic_variables,
    enumerate_emphasis,
    enumerate_semantic_forms,
)
from .errors import EmphaseError, InputError, RuleGapError
from .lexicon import (
    ProcessSelection,
    UpperModel,
    VerbEntry,
    match_verbs,
    select_process_type,
)
from .pipeline import Bundle, Config, GenerationResult, generate, load_bundle
from .realize import MorphTable, NPSpec, inflect_np, realize
from .roles import CaseFrame, Role, RoleRuleTable, apply_rule, derive_case_frame
from .scheme import (
    Binding,
    FieldDefinition,
    Proposition,
    Referent,
    Scheme,
    Variable,
    parse_binding,
    parse_field,
    print_field,
    validate_binding,
)
from .spl import SplTerm, build_spl, parse_spl, serialize_spl

__version__ = "0.1.0"

__all__ = [
    "BLOCKED",
    "Binding",
    "Blocked",
    "BlockingSet",
    "Bundle",
    "Case",
    "CaseFrame",
    "CasePriority",
    "Config",
    "DirectCase",
    "DiscourseState",
    "EmphaseError",
    "EmphasisAssignment",
    "EmphasisQ",
    "FieldDefinition",
    "GenerationResult",
    "InputError",
    "MorphTable",
    "NPSpec",
    "Oblique",
    "ObliqueTable",
    "ProcessSelection",
    "Proposition",
    "Realization",
    "Referent",
    "Role",
    "RoleRuleTable",
    "RuleGapError",
    "Scheme",
    "SemanticForm",
    "SplTerm",
    "TextualStatus",
    "UpperModel",
    "Variable",
    "VerbEntry",
    "apply_rule",
    "assign_cases",
    "build_spl",
    "check_blocking",
    "check_emphasis",
    "decide_emphasis_q",
    "derive_case_frame",
    "emphatic_variables",
    "enumerate_emphasis",
    "enumerate_semantic_forms",
    "generate",
    "inflect_np",
    "load_bundle",
    "match_verbs",
    "parse_binding",
    "parse_field",
    "parse_spl",
    "print_field",
    "realize",
    "select_process_type",
    "serialize_spl",
    "status_of",
    "update_discourse",
    "validate_binding",
]
