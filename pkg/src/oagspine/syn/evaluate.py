from __future__ import annotations

from typing import List, Mapping, Optional, Tuple

from ..errors import DomainError
from ..lexgroup import Cut, Element, GroupSchema, coset_member, quotient_discrete, zero_cut
from ..spine import s_val, t_plus, t_val
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
    spine_subterms,
)
from .parser import print_spine_term
from .predicates import pred_dpred, pred_keq, pred_modeq


def _schema_of(env: Mapping[str, Element], schema: Optional[GroupSchema]) -> GroupSchema:
    if schema is not None:
        return schema
    for e in env.values():
        return e.schema
    raise DomainError("no elements bound and no schema given")


def eval_term(t: Term, env: Mapping[str, Element], schema: Optional[GroupSchema] = None) -> Element:
    schema = _schema_of(env, schema)
    total = Element.zero(schema)
    for v, c in t.coeffs:
        if v not in env:
            raise DomainError(f"unbound variable {v!r}")
        total = total + env[v].scale(c)
    return total


def eval_spine_term(s, env, schema=None):
    a = eval_term(s.term, env, schema)
    if isinstance(s, Sp):
        return s_val(s.p ** s.r, a)
    if isinstance(s, Tp):
        return t_val(s.p, a)
    if isinstance(s, Tplus):
        return t_plus(s.p, a)
    raise TypeError(f"not a spine term: {s!r}")


_CMP = {
    "<": lambda x, y: x < y,
    "<=": lambda x, y: x <= y,
    "=": lambda x, y: x == y,
    ">=": lambda x, y: x >= y,
    ">": lambda x, y: x > y,
}


def eval_formula(f, env: Mapping[str, Element], schema: Optional[GroupSchema] = None) -> bool:
    """Truth value of a quantifier-free formula with its variables bound in env."""
    schema = _schema_of(env, schema)

    def ev(node) -> bool:
        if isinstance(node, And):
            return ev(node.left) and ev(node.right)
        if isinstance(node, Or):
            return ev(node.left) or ev(node.right)
        if isinstance(node, Not):
            return not ev(node.arg)
        if isinstance(node, Lt):
            return eval_term(node.left, env, schema) < eval_term(node.right, env, schema)
        if isinstance(node, Eq):
            return eval_term(node.left - node.right, env, schema).is_zero()
        if isinstance(node, Cong):
            diff = eval_term(node.left - node.right, env, schema)
            return coset_member(diff, zero_cut(schema), node.m)
        if isinstance(node, Keq):
            return pred_keq(node.k, eval_term(node.term, env, schema))
        if isinstance(node, ModEq):
            return pred_modeq(node.m, node.k, eval_term(node.term, env, schema))
        if isinstance(node, Dpred):
            return pred_dpred(node.p, node.r, node.s, eval_term(node.term, env, schema))
        if isinstance(node, SpCmp):
            return _CMP[node.op](eval_spine_term(node.left, env, schema), eval_spine_term(node.right, env, schema))
        if isinstance(node, Discr):
            H = eval_spine_term(node.arg, env, schema)
            return isinstance(H, Cut) and quotient_discrete(schema, H)
        if isinstance(node, Zero):
            return eval_spine_term(node.arg, env, schema) == zero_cut(schema)
        raise TypeError(f"not a formula node: {node!r}")

    return ev(f)


def spine_audit(f, env: Mapping[str, Element], schema: Optional[GroupSchema] = None) -> List[Tuple[str, str]]:
    """(printed spine subterm, value) for every spine subterm of f."""
    schema = _schema_of(env, schema)
    return [(print_spine_term(s), str(eval_spine_term(s, env, schema))) for s in spine_subterms(f)]
