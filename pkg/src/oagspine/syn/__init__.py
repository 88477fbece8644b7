"""Quantifier-free formulas: AST, parser/printer, predicates and evaluation."""
from .ast import (
    And,
    Cong,
    Discr,
    Dpred,
    Eq,
    Keq,
    Lt,
    ModEq,
    Not,
    Or,
    SpCmp,
    Sp,
    Term,
    Tp,
    Tplus,
    Zero,
    formula_variables,
    spine_subterms,
)
from .evaluate import eval_formula, eval_spine_term, eval_term, spine_audit
from .parser import (
    FormulaError,
    FormulaSyntaxError,
    ParameterNormalizedWarning,
    ParameterRangeError,
    UnknownVariableError,
    parse_formula,
    print_formula,
    print_term,
)
from .predicates import modeq_via_primepowers, pred_dpred, pred_keq, pred_modeq

__all__ = [
    "And", "Cong", "Discr", "Dpred", "Eq", "Keq", "Lt", "ModEq", "Not", "Or", "SpCmp", "Sp",
    "Term", "Tp", "Tplus", "Zero", "formula_variables", "spine_subterms",
    "eval_formula", "eval_spine_term", "eval_term", "spine_audit",
    "FormulaError", "FormulaSyntaxError", "ParameterNormalizedWarning", "ParameterRangeError",
    "UnknownVariableError", "parse_formula", "print_formula", "print_term",
    "modeq_via_primepowers", "pred_dpred", "pred_keq", "pred_modeq",
]
