"""Witness-based evaluation of the unary predicates keq, modeq and D.

Each predicate asks for a convex subgroup H with some property.  Such an H is
unique when it exists and is determined by the argument: t_2(a) for keq,
s_m(a) for modeq and s_{p^r}(a) for D.  The functions below test only that
candidate.
"""
from __future__ import annotations

from ..errors import DomainError
from ..exactnum import is_prime, prime_power_parts
from ..lexgroup import Element, EmptySpine, coset_member, cut_member, min_positive_lift, quotient_discrete
from ..spine import in_sqbracket_plus, s_val, t_val


def pred_keq(k: int, a: Element) -> bool:
    """a/H == k * (least positive element of G/H) for some H with G/H discrete."""
    if k == 0:
        raise DomainError("keq: k must be nonzero")
    H = t_val(2, a)
    if isinstance(H, EmptySpine) or not quotient_discrete(a.schema, H):
        return False
    return cut_member(a - min_positive_lift(a.schema, H).scale(k), H)


def _check_modeq(m: int, k: int) -> None:
    if m < 2:
        raise DomainError(f"modeq: modulus must be >= 2, got {m}")
    if not 1 <= k < m:
        raise DomainError(f"modeq: k must satisfy 1 <= k < {m}, got {k}")


def pred_modeq(m: int, k: int, a: Element) -> bool:
    """a/H == k * (least positive element of G/H) modulo m(G/H), for some discrete G/H."""
    _check_modeq(m, k)
    H = s_val(m, a)
    if isinstance(H, EmptySpine) or not quotient_discrete(a.schema, H):
        return False
    return coset_member(a - min_positive_lift(a.schema, H).scale(k), H, m)


def _check_dpred(p: int, r: int, s: int) -> None:
    if not is_prime(p):
        raise DomainError(f"D: {p} is not prime")
    if not 1 <= r <= s:
        raise DomainError(f"D: need s >= r >= 1, got r={r}, s={s}")


def pred_dpred(p: int, r: int, s: int, a: Element) -> bool:
    """a in H^[p^s] + p^r G but not in H + p^r G, for some convex H."""
    _check_dpred(p, r, s)
    H = s_val(p ** r, a)
    if isinstance(H, EmptySpine):
        return False
    return in_sqbracket_plus(a, H, p ** s, p ** r)


def modeq_via_primepowers(m: int, k: int, a: Element) -> bool:
    """modeq(m, k) rewritten through prime-power moduli.

    Primes p | m split into those with v_p(m) > v_p(k) and the rest.  The
    predicate holds iff modeq holds at every p^v_p(m) of the first kind, the
    s-values at those moduli agree, and they exceed the s-values at the
    moduli of the second kind.
    """
    _check_modeq(m, k)
    nondiv, div = [], []
    for p, v in prime_power_parts(m).items():
        q = p ** v
        (nondiv if k % q else div).append(q)
    if not all(pred_modeq(q, k % q, a) for q in nondiv):
        return False
    vals = [s_val(q, a) for q in nondiv]
    if any(v != vals[0] for v in vals):
        return False
    return all(vals[0] > s_val(q, a) for q in div)
