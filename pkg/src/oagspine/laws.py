"""Seeded, reproducible property harness for the valuation and spine lemmas.

Every law is a true statement about ordered abelian groups, so a failure is
always a defect in the implementation.  Sampled laws draw inputs from an rng
seeded by ``(seed, law, group)``; static laws check finitely many cases
derived from the schema.  Failing inputs are shrunk by halving coefficients
while the law still fails.
"""
from __future__ import annotations

import hashlib
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from importlib.resources import files
from typing import Callable, Dict, List, Optional, Sequence

from .blocks import Block, MULT_PRIMES, Q_KIND, Z_KIND
from .distal import acgz_check, verdict_at
from .errors import DomainError
from .exactnum import INF, factorize, first_primes, prime_power_parts, reconstruct, size_str
from .lexgroup import (
    EMPTY,
    FULL,
    Cut,
    Element,
    EmptySpine,
    GroupSchema,
    Position,
    coset_member,
    cut_member,
    min_positive_lift,
    quotient_discrete,
    zero_cut,
)
from .specfile import parse_spec
from .spine import (
    combination,
    decompose_sp,
    in_sqbracket,
    in_sqbracket_plus,
    independent_mod_rib,
    is_spine_cut,
    quotient_size_mod,
    rib_s,
    s_val,
    s_val_direct,
    spine_set,
    t_plus,
    t_successor,
    t_val,
)
from .syn.predicates import modeq_via_primepowers, pred_dpred, pred_keq, pred_modeq

PRIMES = (2, 3, 5)
EXPONENTS = (1, 2, 3)
DEFAULT_BOUND = 27
DEFAULT_SUPPORT = 4
DEFAULT_WINDOW = 8


@dataclass(frozen=True)
class RosterEntry:
    schema: GroupSchema
    bound: int = DEFAULT_BOUND
    support: int = DEFAULT_SUPPORT
    window: int = DEFAULT_WINDOW

    @property
    def name(self) -> str:
        return self.schema.name


def load_roster(text: Optional[str] = None, **bounds) -> List[RosterEntry]:
    if text is None:
        text = files("oagspine.data").joinpath("roster.oag").read_text(encoding="utf-8")
    return [RosterEntry(g, **bounds) for g in parse_spec(text).values()]


def default_roster() -> List[RosterEntry]:
    return load_roster()


# ---------------------------------------------------------------- sampling


def _sample_value(block: Block, rng: random.Random, bound: int):
    # half the draws are multiples, so divisibility branches get exercised
    if rng.random() < 0.5:
        return block.sample(rng, bound)
    d = rng.choice((2, 3, 4, 8, 9))
    return block.scale(d, block.sample(rng, max(1, bound // d)))


def _random_position(entry: RosterEntry, rng: random.Random, below: Optional[Position] = None) -> Optional[Position]:
    schema = entry.schema
    segs = range(len(schema.segments)) if below is None else range(below.seg + 1)
    if not segs:
        return None
    i = rng.choice(segs)
    if schema.segments[i].is_omega:
        hi = entry.window
        if below is not None and i == below.seg:
            if below.inner == 0:
                return None
            hi = below.inner - 1
        return schema.position_at(i, rng.randint(0, hi))
    if below is not None and i == below.seg:
        return None
    return schema.position_at(i)


def sample_element(entry: RosterEntry, rng: random.Random, below: Optional[Position] = None) -> Element:
    """Random element with at most ``entry.support`` entries, optionally supported below a position."""
    schema = entry.schema
    entries = {}
    for _ in range(rng.randint(0, entry.support)):
        pos = _random_position(entry, rng, below)
        if pos is not None:
            entries[pos] = _sample_value(schema.block_at(pos), rng, entry.bound)
    return Element(schema, entries)


def sample_nonzero(entry: RosterEntry, rng: random.Random) -> Element:
    for _ in range(20):
        a = sample_element(entry, rng)
        if not a.is_zero():
            return a
    pos = _random_position(entry, rng)
    return Element(entry.schema, {pos: entry.schema.block_at(pos).generator()})


def scan_cuts(entry: RosterEntry, *elems: Element) -> List[Cut]:
    """Every cut at or below one past the highest support position, plus G.

    Omega segments are listed up to one index past both the sampling window
    and every support index; cuts further out in a segment behave like the
    last listed one because no support lies between them.
    """
    schema = entry.schema
    tops = [e.top() for e in elems if not e.is_zero()]
    window = max([entry.window] + [p.inner for e in elems for p in e.support()]) + 1
    cuts: List[Cut] = []
    if tops:
        top = max(tops)
        cuts = [Cut(p) for p in schema.positions_upto(top, window)]
        nxt = schema.next_position(top)
        if nxt is not None:
            cuts.append(Cut(nxt))
    else:
        cuts = [Cut(schema.first_position())]
    cuts.append(FULL)
    return cuts


def random_cut(entry: RosterEntry, rng: random.Random) -> Cut:
    schema = entry.schema
    cuts = [Cut(p) for p in schema.positions_upto(None, entry.window)] + [FULL]
    return rng.choice(cuts)


def _coprime_pair(rng):
    while True:
        m, n = rng.randint(2, 12), rng.randint(2, 12)
        if math.gcd(m, n) == 1:
            return m, n


def _in_multiple(a: Element, k: int) -> bool:
    return coset_member(a, zero_cut(a.schema), k)


def _discrete_positions(entry: RosterEntry) -> List[Position]:
    schema = entry.schema
    return [p for p in schema.positions_upto(None, entry.window) if schema.block_at(p).is_discrete()]


# ---------------------------------------------------------------- oracles


def coset_oracle(a: Element, H: Cut, n: int) -> bool:
    """a in H + nG, by searching an n-th part of every entry at or above H.

    For Z entries x the search runs over integers in [-|x|, |x|]; for Q
    entries over num/(den*n); for multiplicative entries over exponent
    vectors bounded by the entry's exponents.
    """
    if H.position is None:
        return True
    schema = a.schema
    for q, x in a.entries:
        if q < H.position:
            continue
        block = schema.block_at(q)
        if block.kind == Z_KIND:
            found = any(n * y == x for y in range(-abs(x), abs(x) + 1))
        elif block.kind == Q_KIND:
            found = any(n * Fraction(j, x.denominator * n) == x for j in range(-abs(x.numerator), abs(x.numerator) + 1))
        else:
            exps = factorize(x)
            parts = {}
            for p, e in exps.items():
                roots = [y for y in range(-abs(e), abs(e) + 1) if n * y == e]
                if not roots:
                    break
                parts[p] = roots[0]
            found = len(parts) == len(exps) and block.scale(n, reconstruct(parts)) == x
        if not found:
            return False
    return True


def s_val_oracle(entry: RosterEntry, n: int, a: Element):
    """Largest scanned cut H with a not in H + nG, by the coset oracle."""
    best = EMPTY
    for H in scan_cuts(entry, a):
        if not coset_oracle(a, H, n):
            best = max(best, H)
    return best


def keq_scan(entry: RosterEntry, k: int, a: Element) -> bool:
    schema = entry.schema
    for H in scan_cuts(entry, a):
        if H.is_full or not quotient_discrete(schema, H):
            continue
        if cut_member(a - min_positive_lift(schema, H).scale(k), H):
            return True
    return False


def modeq_scan(entry: RosterEntry, m: int, k: int, a: Element) -> bool:
    schema = entry.schema
    for H in scan_cuts(entry, a):
        if H.is_full or not quotient_discrete(schema, H):
            continue
        if coset_member(a - min_positive_lift(schema, H).scale(k), H, m):
            return True
    return False


def dpred_scan(entry: RosterEntry, p: int, r: int, s: int, a: Element) -> bool:
    for H in scan_cuts(entry, a):
        if in_sqbracket_plus(a, H, p ** s, p ** r) and not coset_member(a, H, p ** r):
            return True
    return False


# ---------------------------------------------------------------- law table


@dataclass(frozen=True)
class Law:
    name: str
    statement: str
    gen: Optional[Callable] = None
    check: Optional[Callable] = None
    static: Optional[Callable] = None
    skip: Optional[Callable] = None


LAWS: Dict[str, Law] = {}


def law(name: str, statement: str, gen=None, skip=None):
    def deco(fn):
        if gen is None:
            LAWS[name] = Law(name, statement, static=fn, skip=skip)
        else:
            LAWS[name] = Law(name, statement, gen=gen, check=fn, skip=skip)
        return fn

    return deco


def _g_a(entry, rng):
    return {"a": sample_element(entry, rng)}


def _g_crt(entry, rng):
    m, n = _coprime_pair(rng)
    return {"m": m, "n": n, "a": sample_element(entry, rng).scale(rng.choice((1, m, n, m * n)))}


@law("crt1", "a in mG and a in nG iff a in mnG, for coprime m, n", _g_crt)
def _crt1(entry, m, n, a):
    return (_in_multiple(a, m) and _in_multiple(a, n)) == _in_multiple(a, m * n)


def _g_crt2(entry, rng):
    m, n = _coprime_pair(rng)
    return {"m": m, "n": n, "a": sample_element(entry, rng), "b": sample_element(entry, rng)}


@law("crt2", "x = t*n*a + s*m*b (sm + tn = 1) satisfies x = a mod mG and x = b mod nG", _g_crt2)
def _crt2(entry, m, n, a, b):
    s = pow(m, -1, n)
    t = (1 - s * m) // n
    x = a.scale(t * n) + b.scale(s * m)
    return _in_multiple(x - a, m) and _in_multiple(x - b, n)


def _g_crt3(entry, rng):
    m, n = _coprime_pair(rng)
    return {"m": m, "n": n, "a": sample_element(entry, rng).scale(rng.choice((1, n)))}


@law("crt3", "m*a in nG implies a in nG, for coprime m, n", _g_crt3)
def _crt3(entry, m, n, a):
    return not _in_multiple(a.scale(m), n) or _in_multiple(a, n)


def _g_pair(entry, rng):
    return {
        "n": rng.randint(2, 12),
        "p": rng.choice(PRIMES),
        "a": sample_element(entry, rng),
        "b": sample_element(entry, rng),
    }


@law("val_axioms", "s_n(-a) = s_n(a), s_n(a+b) <= max(s_n(a), s_n(b)); same for t_p", _g_pair)
def _val_axioms(entry, n, p, a, b):
    ok = s_val(n, -a) == s_val(n, a) and t_val(p, -a) == t_val(p, a)
    ok = ok and s_val(n, a + b) <= max(s_val(n, a), s_val(n, b))
    return ok and t_val(p, a + b) <= max(t_val(p, a), t_val(p, b))


def _g_triple(entry, rng):
    d = _g_pair(entry, rng)
    d["c"] = sample_element(entry, rng)
    return d


@law("isosceles", "the two largest of v(a-b), v(b-c), v(c-a) agree, for v = s_n and v = t_p", _g_triple)
def _isosceles(entry, n, p, a, b, c):
    for v in (lambda x: s_val(n, x), lambda x: t_val(p, x)):
        vals = sorted([v(a - b), v(b - c), v(c - a)])
        if vals[1] != vals[2]:
            return False
    return True


def _g_convexity(entry, rng):
    return {
        "k": rng.choice((1, 2, 3, 5)),
        "n": rng.randint(2, 12),
        "H": random_cut(entry, rng),
        "a": sample_element(entry, rng),
    }


@law("convexity", "k*a in H iff a in H; a in H + nG iff k*a in H + knG", _g_convexity)
def _convexity(entry, k, n, H, a):
    ka = a.scale(k)
    return cut_member(ka, H) == cut_member(a, H) and coset_member(a, H, n) == coset_member(ka, H, k * n)


def _g_easy(entry, rng):
    return {"m": rng.randint(2, 12), "n": rng.randint(2, 12), "a": sample_element(entry, rng)}


@law("easy1", "s_n(a) <= s_mn(a)", _g_easy)
def _easy1(entry, m, n, a):
    return s_val(n, a) <= s_val(m * n, a)


@law("easy2", "s_n(a) = s_mn(m*a)", _g_easy)
def _easy2(entry, m, n, a):
    return s_val(n, a) == s_val(m * n, a.scale(m))


def _g_easy3(entry, rng):
    m, n = _coprime_pair(rng)
    return {"m": m, "n": n, "a": sample_element(entry, rng)}


@law("easy3", "s_n(m*a) = s_n(a) for m coprime to n", _g_easy3)
def _easy3(entry, m, n, a):
    return s_val(n, a.scale(m)) == s_val(n, a)


def _g_easy4(entry, rng):
    return {"m": rng.choice([i for i in range(-12, 13) if i]), "p": rng.choice(PRIMES), "a": sample_element(entry, rng)}


@law("easy4", "t_p(m*a) = t_p(a) for m != 0", _g_easy4)
def _easy4(entry, m, p, a):
    return t_val(p, a.scale(m)) == t_val(p, a)


def _g_difficult1(entry, rng):
    p, r = rng.choice(PRIMES), rng.choice(EXPONENTS)
    a = sample_element(entry, rng)
    for _ in range(10):
        if not isinstance(s_val(p ** r, a), EmptySpine):
            break
        a = sample_element(entry, rng)
    return {"p": p, "r": r, "a": a}


@law("difficult1", "the constructed a' has s_p(a') = s_{p^r}(a) for a not in p^r G", _g_difficult1)
def _difficult1(entry, p, r, a):
    target = s_val(p ** r, a)
    if isinstance(target, EmptySpine):
        return True
    return s_val(p, decompose_sp(p, r, a)) == target


COMPOSITES = (6, 10, 12, 15, 18, 20, 24, 30, 36, 60)


def _g_difficult2(entry, rng):
    return {"n": rng.choice(COMPOSITES), "a": sample_element(entry, rng)}


@law("difficult2", "s_n(a) = max over primes p | n of s_{p^v_p(n)}(a)", _g_difficult2)
def _difficult2(entry, n, a):
    direct = s_val_direct(n, a)
    reduced = max(s_val_direct(p ** v, a) for p, v in prime_power_parts(n).items())
    return direct == reduced == s_val(n, a)


def _g_sq(entry, rng):
    return {"m": rng.randint(2, 12), "H": random_cut(entry, rng), "a": sample_element(entry, rng)}


@law("sqbracket_spine", "intersection of H' + mG over all convex H' > H equals that over spine cuts", _g_sq)
def _sqbracket_spine(entry, m, H, a):
    definitional = all(coset_member(a, c, m) for c in scan_cuts(entry, a) if c > H)
    return definitional == in_sqbracket(a, H, m)


def _g_cover(entry, rng):
    n = rng.randint(2, 12)
    a = sample_element(entry, rng)
    b = sample_nonzero(entry, rng)
    spine = [c for c in scan_cuts(entry, a, b) if is_spine_cut(entry.schema, n, c)]
    return {"n": n, "p": rng.choice(PRIMES), "H": rng.choice(spine) if spine else FULL, "a": a, "b": b}


@law(
    "cover_value",
    "s_n(a) <= H iff a in H^[n], s_n(a) < H iff a in H + nG; t_p(a) <= H iff a in H+, t_p(a) < H iff a in H",
    _g_cover,
)
def _cover_value(entry, n, p, H, a, b):
    if isinstance(H, Cut) and not H.is_full:
        v = s_val(n, a)
        if (v <= H) != in_sqbracket(a, H, n) or (v < H) != coset_member(a, H, n):
            return False
    Ht = t_val(p, b)
    if isinstance(Ht, EmptySpine):
        return True
    Hplus = t_successor(entry.schema, p, Ht)
    if Hplus != t_plus(p, b):
        return False
    v = t_val(p, a)
    return (v <= Ht) == cut_member(a, Hplus) and (v < Ht) == cut_member(a, Ht)


def _g_tiso(entry, rng):
    return {"p": rng.choice(PRIMES), "a": sample_element(entry, rng), "b": sample_element(entry, rng)}


def _cmp(x, y):
    return (x > y) - (x < y)


@law("t_iso", "t_p(a) vs t_p(b) compares like t_p+(a) vs t_p+(b)", _g_tiso)
def _t_iso(entry, p, a, b):
    return _cmp(t_val(p, a), t_val(p, b)) == _cmp(t_plus(p, a), t_plus(p, b))


def _g_udef(entry, rng):
    return {"n": rng.randint(2, 12), "a": sample_element(entry, rng), "b": sample_nonzero(entry, rng)}


@law("uniform_def", "b not in s_n(a) iff a in <b>conv + nG", _g_udef)
def _uniform_def(entry, n, a, b):
    v = s_val(n, a)
    outside = True if isinstance(v, EmptySpine) else not cut_member(b, v)
    nxt = entry.schema.next_position(b.top())
    hull = FULL if nxt is None else Cut(nxt)
    return outside == coset_member(a, hull, n)


def _constructed(entry, rng, k, m=None):
    """Element equal to k*(least positive) at a discrete position, plus lower noise
    (and an m-multiple above when m is given)."""
    spots = _discrete_positions(entry)
    if not spots:
        return sample_element(entry, rng)
    q = rng.choice(spots)
    schema = entry.schema
    a = min_positive_lift(schema, Cut(q)).scale(k) + sample_element(entry, rng, below=q)
    if m is not None:
        a = a + sample_element(entry, rng).scale(m)
    return a


def _g_witness(entry, rng):
    kind = rng.choice(("keq", "modeq", "D"))
    if kind == "keq":
        k = rng.choice([i for i in range(-6, 7) if i])
        a = _constructed(entry, rng, k) if rng.random() < 0.5 else sample_element(entry, rng)
        return {"pred": kind, "params": (k,), "a": a}
    if kind == "modeq":
        m = rng.randint(2, 12)
        k = rng.randint(1, m - 1)
        a = _constructed(entry, rng, k, m) if rng.random() < 0.5 else sample_element(entry, rng)
        return {"pred": kind, "params": (m, k), "a": a}
    p, r = rng.choice(PRIMES), rng.choice(EXPONENTS)
    s = r + rng.randint(0, 2)
    return {"pred": kind, "params": (p, r, s), "a": sample_element(entry, rng)}


def witness_case(entry, pred, params, a) -> bool:
    if pred == "keq":
        return pred_keq(*params, a) == keq_scan(entry, *params, a)
    if pred == "modeq":
        return pred_modeq(*params, a) == modeq_scan(entry, *params, a)
    return pred_dpred(*params, a) == dpred_scan(entry, *params, a)


@law("unique_witness", "witness-based keq/modeq/D agree with an existential scan over all cuts", _g_witness)
def _unique_witness(entry, pred, params, a):
    return witness_case(entry, pred, params, a)


def _g_pr(entry, rng):
    m = rng.choice((6, 12, 20))
    k = rng.randint(1, m - 1)
    a = _constructed(entry, rng, k, m) if rng.random() < 0.5 else sample_element(entry, rng)
    return {"m": m, "k": k, "a": a}


@law("pr_is_enough", "modeq(m, k) equals its prime-power rewriting", _g_pr)
def _pr_is_enough(entry, m, k, a):
    return pred_modeq(m, k, a) == modeq_via_primepowers(m, k, a)


def _g_addinf(entry, rng):
    p, r = rng.choice(PRIMES), rng.choice(EXPONENTS)
    q = p ** r
    k = rng.randint(1, q - 1)
    a = _constructed(entry, rng, k, q) if rng.random() < 0.5 else sample_nonzero(entry, rng)
    top = a.top()
    b = sample_element(entry, rng, below=top) if top is not None and rng.random() < 0.7 else sample_element(entry, rng)
    return {"p": p, "r": r, "s": r + rng.randint(0, 2), "k": k, "kk": rng.choice((-3, -1, 1, 2, 4)), "a": a, "b": b}


@law("add_inf", "v(a) > v(b) implies v(a+b) = v(a) and the predicates transfer", _g_addinf)
def _add_inf(entry, p, r, s, k, kk, a, b):
    q = p ** r
    if s_val(q, a) > s_val(q, b):
        if s_val(q, a + b) != s_val(q, a):
            return False
        if pred_modeq(q, k, a + b) != pred_modeq(q, k, a):
            return False
        if pred_dpred(p, r, s, a + b) != pred_dpred(p, r, s, a):
            return False
    if t_val(p, a) > t_val(p, b) and t_val(p, a + b) != t_val(p, a):
        return False
    if t_val(2, a) > t_val(2, b):
        if t_val(2, a + b) != t_val(2, a) or pred_keq(kk, a + b) != pred_keq(kk, a):
            return False
    return True


def _g_linindep(entry, rng):
    p, r = rng.choice(((2, 1), (3, 1), (2, 2)))
    q = p ** r
    schema = entry.schema
    first = sample_nonzero(entry, rng)
    for _ in range(10):
        if not isinstance(s_val(q, first), EmptySpine):
            break
        first = sample_nonzero(entry, rng)
    H = s_val(q, first)
    elems = [first]
    if isinstance(H, Cut):
        nxt = schema.next_position(H.position)
        for _ in range(rng.randint(0, 2)):
            if rng.random() < 0.3:
                coeffs = [rng.randint(0, q - 1) for _ in elems]
                e = combination(coeffs, elems) if any(coeffs) else first
            else:
                low = sample_element(entry, rng)
                e = Element(schema, {p_: x for p_, x in low.entries if not p_ > H.position})
                if e.is_zero():
                    e = Element(schema, {H.position: schema.block_at(H.position).generator()})
            if nxt is not None:
                high = sample_element(entry, rng)
                e = e + Element(schema, {p_: x for p_, x in high.entries if not p_ < nxt}).scale(q)
            elems.append(e)
    return {"p": p, "r": r, "H": H, "elems": elems}


@law("lin_indep", "F_p-independence mod H + pG iff every nonzero combination mod p^r has s_{p^r} = H", _g_linindep)
def _lin_indep(entry, p, r, H, elems):
    if isinstance(H, EmptySpine):
        return True
    fp = all(
        not coset_member(combination(c, elems), H, p)
        for c in itertools.product(range(p), repeat=len(elems))
        if any(c)
    )
    return fp == independent_mod_rib(p, r, elems, H)


def _g_oracle_sval(entry, rng):
    return {"n": rng.randint(2, 12), "a": sample_element(entry, rng)}


@law("oracle_sval", "s_n(a) equals the largest cut H with a not in H + nG (definitional scan)", _g_oracle_sval)
def _oracle_sval(entry, n, a):
    return s_val(n, a) == s_val_oracle(entry, n, a)


def _g_oracle_coset(entry, rng):
    return {"n": rng.randint(2, 12), "H": random_cut(entry, rng), "a": sample_element(entry, rng)}


@law("oracle_coset", "coset membership agrees with a search for n-th parts", _g_oracle_coset)
def _oracle_coset(entry, n, H, a):
    return coset_member(a, H, n) == coset_oracle(a, H, n)


# ---------------------------------------------------------------- static laws


def _box_values(block: Block, n: int, primes: Optional[int] = None):
    """Representatives to search for rib classes: coordinates in [0, 2n)."""
    if block.kind == Z_KIND:
        return list(range(2 * n))
    if block.kind == Q_KIND:
        return [Fraction(0), Fraction(1)]
    k = block.k if block.kind == MULT_PRIMES else primes
    ps = first_primes(k)
    return [reconstruct(dict(zip(ps, exps))) for exps in itertools.product(range(2 * n), repeat=k)]


def _count_classes(elems: Sequence[Element], same: Callable[[Element, Element], bool]) -> int:
    reps: List[Element] = []
    for x in elems:
        if not any(same(x, r) for r in reps):
            reps.append(x)
    return len(reps)


RIB_MODULI = (2, 3, 4)


@law("rib_size", "rib size at H equals the number of classes of G<=H modulo G<H")
def _rib_size(entry):
    """Count rib classes among single-position elements at H, with x ~ y iff s_n(x - y) < H."""
    schema = entry.schema
    detail = {}
    for n in RIB_MODULI:
        cuts = [Cut(p) for p in schema.positions_upto(None, 2) if is_spine_cut(schema, n, Cut(p))]
        for H in cuts:
            block = schema.block_at(H.position)
            size = rib_s(schema, n, H).size
            same = lambda x, y: s_val(n, x - y) < H  # noqa: E731
            if size is INF:
                counts = []
                for j in (1, 2):
                    box = [Element(schema, {H.position: v}) for v in _box_values(block, n, j)]
                    counts.append(_count_classes(box, same))
                ok = counts == [n, n ** 2]
                found = f"grows {counts}"
            else:
                box = [Element(schema, {H.position: v}) for v in _box_values(block, n)]
                count = _count_classes(box, same)
                ok = count == size
                found = count
            detail[f"n={n},{H}"] = {"rib": size_str(size), "brute_force": str(found)}
            if not ok:
                return False, detail, {"n": n, "H": str(H)}
    return True, detail, None


def _finite_spine_skip(entry):
    for p in PRIMES:
        if not spine_set(entry.schema, p).finite:
            return f"S_{p} is infinite (omega segment); the product formula needs finite spines"
    return None


def _brute_quotient(schema: GroupSchema, p: int, limit: int = 4096):
    """|G/pG| by counting classes of a coordinate box under x - y = p*g, g searched in a pool."""
    coords = []
    for i, seg in enumerate(schema.segments):
        if seg.is_omega or seg.block.kind not in (Z_KIND, Q_KIND, MULT_PRIMES):
            return None
        coords.append(schema.position_at(i))
    values = [_box_values(schema.block_at(c), p) for c in coords]
    if math.prod(len(v) for v in values) > limit:
        return None
    pools = []
    for c in coords:
        b = schema.block_at(c)
        if b.kind == Z_KIND:
            pools.append(list(range(-2, 3)))
        elif b.kind == Q_KIND:
            pools.append([Fraction(j, p) for j in range(-2, 3)])
        else:
            ps = first_primes(b.k)
            pools.append([reconstruct(dict(zip(ps, e))) for e in itertools.product(range(-2, 3), repeat=b.k)])
    multiples = set()
    for gs in itertools.product(*pools):
        multiples.add(Element(schema, dict(zip(coords, gs))).scale(p))
    box = [Element(schema, dict(zip(coords, vs))) for vs in itertools.product(*values)]
    return _count_classes(box, lambda x, y: (x - y) in multiples)


@law("product_formula", "|G/pG| equals the product of rib sizes over S_p", skip=_finite_spine_skip)
def _product_formula(entry):
    schema = entry.schema
    detail = {}
    for p in PRIMES:
        desc = spine_set(schema, p)
        sizes = [e.size for e in desc.singles()]
        product = 1
        for s in sizes:
            product = s * product if s is INF else product * s
        q = quotient_size_mod(schema, p)
        brute = _brute_quotient(schema, p) if p in (2, 3) else None
        rec = {"quotient": size_str(q), "rib_product": "*".join(size_str(s) for s in sizes) or "1"}
        if brute is not None:
            rec["brute_force"] = str(brute)
        detail[f"p={p}"] = rec
        if q != product or (brute is not None and brute != q):
            return False, detail, {"p": p}
    return True, detail, None


@law("distal_theorem", "verdict from rib sizes is prime-independent and matches G/pG finiteness on finite spines")
def _distal_theorem(entry):
    schema = entry.schema
    verdicts = {p: verdict_at(schema, p).distal for p in (2, 3, 5, 7)}
    acgz = acgz_check(schema)
    detail = {"distal": verdicts[2], "acgz": "consistent" if acgz.consistent else ("n/a" if not acgz.applicable else "inconsistent")}
    ok = len(set(verdicts.values())) == 1 and acgz.consistent is not False
    return ok, detail, None if ok else {"verdicts": verdicts}


# ---------------------------------------------------------------- running


@dataclass
class LawReport:
    law: str
    group: str
    seed: int
    iters: int
    status: str  # "pass" | "fail" | "skip"
    counterexample: Optional[dict] = None
    reason: str = ""
    detail: Optional[dict] = None

    def to_json(self) -> dict:
        out = {"law": self.law, "group": self.group, "seed": self.seed, "iters": self.iters, "status": self.status}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.reason:
            out["reason"] = self.reason
        if self.detail is not None:
            out["detail"] = self.detail
        return out


def derive_seed(seed: int, law_name: str, group: str) -> int:
    digest = hashlib.sha256(f"{seed}:{law_name}:{group}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _fmt(v):
    if isinstance(v, (list, tuple)):
        return [_fmt(x) for x in v]
    if isinstance(v, (int, str)):
        return v
    return str(v)


def _halve_value(block: Block, x):
    if block.multiplicative:
        return reconstruct({p: int(e / 2) for p, e in factorize(x).items()})
    if block.kind == Z_KIND:
        return int(x / 2)
    return Fraction(int(x.numerator / 2), x.denominator)


def _halve(e: Element) -> Element:
    return Element(e.schema, {p: _halve_value(e.schema.block_at(p), x) for p, x in e.entries})


def _fails(law_obj: Law, entry, inputs) -> bool:
    try:
        return not law_obj.check(entry, **inputs)
    except DomainError:
        return True


def shrink(law_obj: Law, entry: RosterEntry, inputs: dict, max_steps: int = 64) -> dict:
    """Halve element coefficients one input at a time while the law keeps failing."""
    cur = dict(inputs)
    for _ in range(max_steps):
        progressed = False
        for key, val in cur.items():
            if isinstance(val, Element) and not val.is_zero():
                cand = dict(cur)
                cand[key] = _halve(val)
                if cand[key] != val and _fails(law_obj, entry, cand):
                    cur, progressed = cand, True
                    break
        if not progressed:
            break
    return cur


def run_law(name: str, entry: RosterEntry, seed: int, iters: int) -> LawReport:
    if name not in LAWS:
        raise KeyError(f"unknown law {name!r}")
    law_obj = LAWS[name]
    if law_obj.skip is not None:
        reason = law_obj.skip(entry)
        if reason:
            return LawReport(name, entry.name, seed, 0, "skip", reason=reason)
    if law_obj.static is not None:
        ok, detail, cex = law_obj.static(entry)
        return LawReport(name, entry.name, seed, 1, "pass" if ok else "fail", cex, detail=detail)
    rng = random.Random(derive_seed(seed, name, entry.name))
    for i in range(iters):
        inputs = law_obj.gen(entry, rng)
        try:
            failed = not law_obj.check(entry, **inputs)
            error = ""
        except DomainError as exc:
            failed, error = True, str(exc)
        if failed:
            small = shrink(law_obj, entry, inputs)
            cex = {k: _fmt(v) for k, v in small.items()}
            return LawReport(name, entry.name, seed, i + 1, "fail", cex, reason=error)
    return LawReport(name, entry.name, seed, iters, "pass")


def _run_one(args):
    name, entry, seed, iters = args
    return run_law(name, entry, seed, iters)


def run_suite(
    roster: Sequence[RosterEntry],
    seed: int,
    iters: int = 500,
    laws: Optional[Sequence[str]] = None,
    jobs: int = 1,
) -> List[LawReport]:
    """Run every (law, group) pair; reports come back in (group, law) order."""
    names = list(LAWS) if laws is None else list(laws)
    for n in names:
        if n not in LAWS:
            raise KeyError(f"unknown law {n!r}")
    tasks = [(n, e, seed, iters) for e in roster for n in names]
    if jobs > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_one, tasks))
    return [_run_one(t) for t in tasks]
