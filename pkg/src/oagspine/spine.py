"""Spine valuations s_n, t_p, t_p^+, ribs and the H^[m] subgroups.

On a lex sum of archimedean blocks every quantity here is read off the
schema and the finite support of the argument:

* ``s_val(n, a)`` is ``Cut(i0)`` where ``i0`` is the greatest support position
  whose entry is not n-divisible, or ``EMPTY`` when ``a`` lies in ``nG``;
* the spine ``S_p`` consists of ``EMPTY`` and ``Cut(q)`` for every position
  ``q`` whose block has a nontrivial p-quotient;
* the rib at ``Cut(q)`` is ``B_q / nB_q``.

Composite moduli are reduced to prime powers (``s_n`` is the maximum of
``s_{p^v_p(n)}`` over primes dividing n).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from .blocks import Block
from .errors import DomainError
from .exactnum import INF, is_prime, prime_power_parts, size_str
from .lexgroup import (
    EMPTY,
    FULL,
    GROWING,
    Cut,
    Element,
    EmptySpine,
    GroupSchema,
    Position,
    Segment,
    coset_member,
)

SpineValue = Union[Cut, EmptySpine]


def _check_modulus(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise DomainError(f"modulus must be an integer >= 2, got {n!r}")


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise DomainError(f"{p!r} is not prime")


def visible(block: Block, n: int) -> bool:
    """Whether positions carrying ``block`` contribute spine cuts for modulus n."""
    return block.quotient_size(n) != 1


def segment_visible(seg: Segment, n: int) -> bool:
    return seg.kind == GROWING or visible(seg.block, n)


# ---------------------------------------------------------------- s_n


def s_val_direct(n: int, a: Element) -> SpineValue:
    """s_n(a) by a direct scan for n-divisibility, any n >= 2."""
    _check_modulus(n)
    schema = a.schema
    for p, x in reversed(a.entries):
        if not schema.block_at(p).divisible(n, x):
            return Cut(p)
    return EMPTY


def s_val(n: int, a: Element) -> SpineValue:
    """Largest convex subgroup H with a not in H + nG (EMPTY when a is in nG)."""
    _check_modulus(n)
    parts = prime_power_parts(n)
    if len(parts) == 1:
        return s_val_direct(n, a)
    return max(s_val_direct(p ** v, a) for p, v in parts.items())


# ---------------------------------------------------------------- t_p, t_p^+


def _greatest_spine_cut_upto(schema: GroupSchema, top: Position, p: int) -> SpineValue:
    """Union of the spine cuts Cut(q) with q <= top."""
    seg = schema.segments[top.seg]
    if segment_visible(seg, p):
        return Cut(top)
    for i in range(top.seg - 1, -1, -1):
        s = schema.segments[i]
        if not segment_visible(s, p):
            continue
        if s.is_omega:
            # union over a whole omega family is the cut at the next segment
            return schema.cut_before_segment(i + 1)
        return Cut(schema.position_at(i))
    return EMPTY


def _least_spine_cut_from(schema: GroupSchema, start: Optional[Position], p: int) -> Cut:
    """Least spine cut Cut(q) with q >= start, or FULL."""
    pos = start
    while pos is not None:
        if segment_visible(schema.segments[pos.seg], p):
            return Cut(pos)
        pos = schema.segment_start(pos.seg + 1)
    return FULL


def t_val(p: int, a: Element) -> SpineValue:
    """Union of the spine cuts in S_p that do not contain a."""
    _check_prime(p)
    if a.is_zero():
        return EMPTY
    return _greatest_spine_cut_upto(a.schema, a.top(), p)


def t_plus(p: int, a: Element) -> Cut:
    """Intersection of the spine cuts in S_p containing a (G if there are none)."""
    _check_prime(p)
    schema = a.schema
    start = schema.first_position() if a.is_zero() else schema.next_position(a.top())
    return _least_spine_cut_from(schema, start, p)


# ---------------------------------------------------------------- spine descriptors


@dataclass(frozen=True)
class SpineEntry:
    cut: Cut
    size: object  # int or INF

    def to_json(self) -> dict:
        return {"cut": str(self.cut), "size": size_str(self.size)}


@dataclass(frozen=True)
class SpineFamily:
    """Rib sizes along an omega segment: constant, or p**(i+1) at inner index i."""

    segment: str
    seg_index: int
    law: str  # "constant" | "growing"
    value: object  # the constant size, or the base p of the growing law

    def size_at(self, inner: int):
        if self.law == "constant":
            return self.value
        return self.value ** (inner + 1)

    def law_str(self) -> str:
        if self.law == "constant":
            return size_str(self.value)
        return f"{self.value}^(i+1)"

    @property
    def bounded(self) -> bool:
        return self.law == "constant" and self.value is not INF

    def to_json(self) -> dict:
        return {"segment": self.segment, "law": self.law_str()}


@dataclass(frozen=True)
class SpineDescriptor:
    modulus: int
    entries: Tuple[Union[SpineEntry, SpineFamily], ...]

    @property
    def finite(self) -> bool:
        return not any(isinstance(e, SpineFamily) for e in self.entries)

    def singles(self) -> List[SpineEntry]:
        return [e for e in self.entries if isinstance(e, SpineEntry)]

    def families(self) -> List[SpineFamily]:
        return [e for e in self.entries if isinstance(e, SpineFamily)]

    def order_type(self) -> str:
        parts = []
        for e in self.entries:
            if isinstance(e, SpineEntry):
                parts.append(f"({e.cut.position})")
            else:
                parts.append(f"omega[{e.segment}]")
        return " + ".join(["(-inf)"] + parts)

    def to_json(self) -> dict:
        return {
            "prime": self.modulus,
            "order_type": self.order_type(),
            "entries": [e.to_json() for e in self.entries],
        }


def spine_set(schema: GroupSchema, n: int) -> SpineDescriptor:
    """Finite description of S_n minus the bottom EMPTY, with rib sizes."""
    _check_modulus(n)
    entries: List[Union[SpineEntry, SpineFamily]] = []
    for i, seg in enumerate(schema.segments):
        if not segment_visible(seg, n):
            continue
        if seg.kind == GROWING:
            entries.append(SpineFamily(seg.id, i, "growing", n))
        elif seg.is_omega:
            entries.append(SpineFamily(seg.id, i, "constant", seg.block.quotient_size(n)))
        else:
            entries.append(SpineEntry(Cut(schema.position_at(i)), seg.block.quotient_size(n)))
    return SpineDescriptor(n, tuple(entries))


def is_spine_cut(schema: GroupSchema, n: int, H) -> bool:
    """Whether H is in S_n minus EMPTY."""
    if not isinstance(H, Cut) or H.position is None:
        return False
    return visible(schema.block_at(H.position), n)


# ---------------------------------------------------------------- ribs


@dataclass(frozen=True)
class RibDescriptor:
    modulus: int
    cut: Cut
    size: object
    block: Block

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "cut": str(self.cut), "size": size_str(self.size), "block": str(self.block)}


def rib_s(schema: GroupSchema, n: int, H) -> RibDescriptor:
    """The rib at H for s_n, realized as B_H / n B_H."""
    _check_modulus(n)
    if not is_spine_cut(schema, n, H):
        raise DomainError(f"{H} is not a spine cut for modulus {n}")
    block = schema.block_at(H.position)
    return RibDescriptor(n, H, block.quotient_size(n), block)


def _t_witness(schema: GroupSchema, p: int, H) -> Element:
    if not isinstance(H, Cut) or H.position is None:
        raise DomainError(f"{H} is not in T_{p}")
    a = Element(schema, {H.position: schema.block_at(H.position).generator()})
    if t_val(p, a) != H:
        raise DomainError(f"{H} is not in T_{p}")
    return a


def t_successor(schema: GroupSchema, p: int, H) -> Cut:
    """H^+ for H in T_p: t_p^+(a) for any a with t_p(a) = H."""
    return t_plus(p, _t_witness(schema, p, H))


def rib_t(schema: GroupSchema, p: int, H) -> GroupSchema:
    """Schema of the ordered quotient H^+ / H (positions in [H, H^+))."""
    _check_prime(p)
    upper = t_successor(schema, p, H)
    lo = H.position
    hi = upper.position
    segs: List[Segment] = []
    for i in range(lo.seg, len(schema.segments)):
        if hi is not None and i > hi.seg:
            break
        s = schema.segments[i]
        first = lo.inner if i == lo.seg else 0
        if not s.is_omega:
            if hi is None or Position(i, 0) < hi:
                segs.append(s)
            continue
        if hi is not None and i == hi.seg:
            segs.extend(
                Segment(f"{s.id}[{j}]", "single", s.block_at(j)) for j in range(first, hi.inner)
            )
        elif first == 0:
            segs.append(s)
        else:
            raise DomainError(f"quotient {upper}/{H} cuts an omega segment mid-way")
    return GroupSchema(f"{schema.name}/{H}", tuple(segs))


# ---------------------------------------------------------------- H^[m]


def _spine_cuts_above(schema: GroupSchema, H, a: Element, m: int) -> List[Cut]:
    """Spine cuts H' > H that might exclude a from H' + mG.

    Only cuts Cut(q) with q <= top(a) can fail, and coset membership is
    monotone in the cut, so the least spine cut above H plus the spine cuts at
    support positions cover every failing case.
    """
    if isinstance(H, EmptySpine):
        start = schema.first_position()
    elif H.position is None:
        return []
    else:
        start = schema.next_position(H.position)
    out = []
    least = _least_spine_cut_from(schema, start, m)
    if least.position is not None:
        out.append(least)
    for q in a.support():
        c = Cut(q)
        if c > H and c > least and visible(schema.block_at(q), m):
            out.append(c)
    return out


def in_sqbracket(a: Element, H, m: int) -> bool:
    """Whether a lies in H^[m], the intersection of H' + mG over spine cuts H' > H."""
    _check_modulus(m)
    if not isinstance(H, (Cut, EmptySpine)):
        raise DomainError(f"expected a cut or spine value, got {H!r}")
    return all(coset_member(a, c, m) for c in _spine_cuts_above(a.schema, H, a, m))


def in_sqbracket_plus(a: Element, H: Cut, M: int, N: int) -> bool:
    """Whether a lies in H^[M] + N G.

    Componentwise H^[M] leaves positions <= H free and demands M-divisibility
    above, so the sum demands gcd(M, N)-divisibility strictly above H.
    """
    _check_modulus(M)
    _check_modulus(N)
    if not isinstance(H, Cut):
        raise DomainError(f"expected a cut, got {H!r}")
    if H.position is None:
        return True
    g = math.gcd(M, N)
    if g == 1:
        return True
    schema = a.schema
    for p, x in reversed(a.entries):
        if p <= H.position:
            break
        if not schema.block_at(p).divisible(g, x):
            return False
    return True


# ---------------------------------------------------------------- quotient sizes


def quotient_size_mod(schema: GroupSchema, n: int):
    """|G/nG|: the product of rib sizes over S_n, or INF."""
    desc = spine_set(schema, n)
    if not desc.finite:
        return INF
    size = 1
    for e in desc.singles():
        size = e.size * size if e.size is INF else size * e.size
    return size


# ---------------------------------------------------------------- decomposition


def decompose_sp(p: int, r: int, a: Element) -> Element:
    """Constructive a' with s_p(a') = s_{p^r}(a).

    With H = s_{p^r}(a) and s the largest exponent below r such that
    a lies in H + p^s G, write a = b + p^s a' with b in H and return a'.
    """
    _check_prime(p)
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    H = s_val(p ** r, a)
    if isinstance(H, EmptySpine):
        raise DomainError(f"{a} lies in {p}^{r}G")
    s = max(t for t in range(r) if t == 0 or coset_member(a, H, p ** t))
    schema = a.schema
    upper = {q: x for q, x in a.entries if not q < H.position}
    return Element(schema, {q: schema.block_at(q).divide(p ** s, x) for q, x in upper.items()})


# ---------------------------------------------------------------- linear independence

MAX_COMBINATIONS = 3 ** 10


def combination(coeffs: Sequence[int], elems: Sequence[Element]) -> Element:
    total = Element.zero(elems[0].schema)
    for m, e in zip(coeffs, elems):
        if m:
            total = total + e.scale(m)
    return total


def independent_mod_rib(p: int, r: int, elems: Sequence[Element], H=None) -> bool:
    """Z/p^r-linear independence of the images of elems in the rib at H.

    Brute force over all coefficient tuples in [0, p^r) that are not all
    zero: each combination must have s_{p^r} equal to H.  H defaults to
    s_{p^r} of the first element.
    """
    _check_prime(p)
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    if not elems:
        raise DomainError("need at least one element")
    q = p ** r
    if q ** len(elems) > MAX_COMBINATIONS:
        raise DomainError(f"{q}^{len(elems)} combinations exceed the brute-force cap {MAX_COMBINATIONS}")
    if H is None:
        H = s_val(q, elems[0])
    if isinstance(H, EmptySpine):
        return False
    for coeffs in itertools.product(range(q), repeat=len(elems)):
        if any(coeffs) and s_val(q, combination(coeffs, elems)) != H:
            return False
    return True


# ---------------------------------------------------------------- dimensions


def _log_size(size, p: int):
    if size is INF:
        return INF
    d = 0
    while size > 1:
        size //= p
        d += 1
    return d


def dim_total(schema: GroupSchema, p: int, s: int, H):
    """dim over F_p of (H^[p^s] + pG) / (H + pG); equals dim of B_H / p B_H here."""
    _check_prime(p)
    if s < 1:
        raise DomainError(f"s must be >= 1, got {s}")
    if isinstance(H, EmptySpine):
        raise DomainError("dimension is undefined at the empty spine value")
    if not is_spine_cut(schema, p, H):
        raise DomainError(f"{H} is not a spine cut for p = {p}")
    return _log_size(schema.block_at(H.position).quotient_size(p), p)


def dim_step(schema: GroupSchema, p: int, s: int, H):
    """dim over F_p of (H^[p^s] + pG) / (H^[p^(s+1)] + pG).

    Both subgroups leave the entry at H free and demand p-divisibility above
    it, so they coincide on this class of groups.
    """
    dim_total(schema, p, s, H)
    return 0
