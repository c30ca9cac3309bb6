"""Propositional knowledge representation: classical logic, circumscription,
GCWA, default logic, stable models and revision, plus the reductions between
them and brute-force oracles that check those reductions."""

from .circuit import BooleanCircuit, eval_circuit, identity
from .circumscription import (
    CircKB, GcwaKB, circ_entails, circ_model_check, circ_models, circ_preferred, gcwa_entails,
    gcwa_free_atoms, gcwa_models, gcwa_rewrite,
)
from .default_logic import (
    DefaultRule, DefaultTheory, Extension, credulous_entails, extensions, model_of_some_extension,
    reiter_check, skeptical_entails,
)
from .errors import CapacityError, CircuitError, EvaluationError, ParseError, PkrError, PreconditionError
from .oracles import DirectedGraph, QbfEA, has_kernel, qbf_valid
from .preservation import (
    PreservationReport, Semantics, SemanticsTag, check_model_preservation, check_theorem_preservation,
)
from .prop import all_models, conjunction_of_literals, entails, evaluate, is_consistent, minimal_models
from .reductions import (
    ReductionOutput, circ_to_default, clause_universe, etherington, gcwa_to_pl, kernel_program,
    kernel_query, pad, qbf_to_credulous_inf, qbf_to_skeptical_mc, reduction_size_report, widtio_to_pl,
)
from .revision import (
    RevisionInstance, sbr_entails, sbr_model_check, widtio_base, widtio_entails, widtio_model_check, wka,
)
from .stable import LogicProgram, ProgramRule, is_stable, least_model, reduct, sm_entails, stable_models
from .syntax import Clause, Formula, KnowledgeBase, Var, parse_formula, size, to_text

__version__ = "0.1.0"

__all__ = [
    "BooleanCircuit", "eval_circuit", "identity", "CircKB", "GcwaKB", "circ_entails", "circ_model_check",
    "circ_models", "circ_preferred", "gcwa_entails", "gcwa_free_atoms", "gcwa_models", "gcwa_rewrite",
    "DefaultRule", "DefaultTheory", "Extension", "credulous_entails", "extensions", "model_of_some_extension",
    "reiter_check", "skeptical_entails", "CapacityError", "CircuitError", "EvaluationError", "ParseError",
    "PkrError", "PreconditionError", "DirectedGraph", "QbfEA", "has_kernel", "qbf_valid",
    "PreservationReport", "Semantics", "SemanticsTag", "check_model_preservation",
    "check_theorem_preservation", "all_models", "conjunction_of_literals", "entails", "evaluate",
    "is_consistent", "minimal_models", "ReductionOutput", "circ_to_default", "clause_universe", "etherington",
    "gcwa_to_pl", "kernel_program", "kernel_query", "pad", "qbf_to_credulous_inf", "qbf_to_skeptical_mc",
    "reduction_size_report", "widtio_to_pl", "RevisionInstance", "sbr_entails", "sbr_model_check",
    "widtio_base", "widtio_entails", "widtio_model_check", "wka", "LogicProgram", "ProgramRule", "is_stable",
    "least_model", "reduct", "sm_entails", "stable_models", "Clause", "Formula", "KnowledgeBase", "Var",
    "parse_formula", "size", "to_text",
]
