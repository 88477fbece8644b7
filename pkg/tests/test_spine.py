import itertools
import random

import pytest

from oagspine.errors import DomainError
from oagspine.exactnum import INF
from oagspine.laws import sample_element
from oagspine.lexgroup import EMPTY, FULL, Cut, Element, coset_member, zero_cut
from oagspine.specfile import parse_element
from oagspine.spine import (
    decompose_sp,
    dim_step,
    dim_total,
    in_sqbracket,
    in_sqbracket_plus,
    independent_mod_rib,
    quotient_size_mod,
    rib_s,
    rib_t,
    s_val,
    s_val_direct,
    spine_set,
    t_plus,
    t_successor,
    t_val,
)


def el(g, text):
    return parse_element(g, text)


@pytest.mark.parametrize("n, sizes", [(2, [2, 4, INF]), (3, [3, 9, INF])])
def test_xi_spine(groups, n, sizes):
    desc = spine_set(groups["xi"], n)
    assert [e.size for e in desc.entries] == sizes
    assert desc.order_type() == "(-inf) + (a) + (b) + (c)"


def test_trivial_and_family_spines(groups):
    assert spine_set(groups["Q"], 2).entries == ()
    fam = spine_set(groups["omega_growing"], 2).families()[0]
    assert fam.law_str() == "2^(i+1)" and fam.size_at(0) == 2 and fam.size_at(3) == 16
    const = spine_set(groups["omega_const"], 3).families()[0]
    assert const.law_str() == "3" and const.bounded


def test_s_val_by_hand(groups):
    zz = groups["ZZ"]
    a_cut, b_cut = Cut(zz.position("a")), Cut(zz.position("b"))
    assert s_val(2, el(zz, "{a=3, b=4}")) == a_cut
    assert s_val(2, el(zz, "{a=3, b=5}")) == b_cut
    assert s_val(2, el(zz, "{a=4, b=6}")) is EMPTY
    assert s_val(6, el(zz, "{a=3, b=4}")) == b_cut  # 4 is not a multiple of 3
    assert s_val(2, Element.zero(zz)) is EMPTY
    qz = groups["QZ"]
    assert s_val(2, el(qz, "{a=1/3}")) is EMPTY


def test_s_val_composite_reduction(roster):
    rng = random.Random(11)
    for entry in roster.values():
        for _ in range(40):
            a = sample_element(entry, rng)
            for n in (6, 12, 18, 30):
                assert s_val(n, a) == s_val_direct(n, a)


def test_t_values_omega(groups):
    oc = groups["omega_const"]
    a = el(oc, "{tail[3]=2, head=1}")
    assert t_val(2, a) == Cut(oc.position("tail", 3))
    assert t_plus(2, a) == Cut(oc.position("tail", 4))
    h = el(oc, "{head=5}")
    assert t_val(2, h) == zero_cut(oc)
    assert t_plus(2, h) == Cut(oc.position("tail", 0))
    assert t_successor(oc, 2, t_val(2, a)) == t_plus(2, a)


def test_t_values_skip_invisible_blocks(groups):
    qz = groups["QZ"]
    # S_2 = {EMPTY, below(b)}; below(b) contains every a-entry, so no spine cut excludes it
    assert t_val(2, el(qz, "{a=1}")) is EMPTY
    assert t_plus(2, el(qz, "{a=1}")) == Cut(qz.position("b"))
    assert t_plus(2, el(qz, "{b=1}")) == FULL


def test_sqbracket_by_hand(groups):
    zz = groups["ZZ"]
    H = zero_cut(zz)
    # H^[2] for H = 0 is {b even}
    assert in_sqbracket(el(zz, "{a=1, b=2}"), H, 2)
    assert not in_sqbracket(el(zz, "{a=1, b=1}"), H, 2)
    assert in_sqbracket(el(zz, "{a=1, b=1}"), Cut(zz.position("b")), 2)
    assert in_sqbracket_plus(el(zz, "{a=1, b=2}"), H, 4, 2)
    assert not in_sqbracket_plus(el(zz, "{a=1, b=3}"), H, 4, 2)


def test_quotient_sizes(groups):
    assert quotient_size_mod(groups["ZZ"], 2) == 4
    assert quotient_size_mod(groups["Q"], 5) == 1
    assert quotient_size_mod(groups["xi"], 2) is INF
    assert quotient_size_mod(groups["omega_const"], 2) is INF


def test_rib_descriptors(groups):
    xi = groups["xi"]
    r = rib_s(xi, 3, Cut(xi.position("b")))
    assert r.size == 9
    with pytest.raises(DomainError, match="not a spine cut"):
        rib_s(groups["QZ"], 2, zero_cut(groups["QZ"]))
    oc = groups["omega_const"]
    sub = rib_t(oc, 2, Cut(oc.position("tail", 2)))
    assert [s.id for s in sub.segments] == ["tail[2]"]


def test_decompose(roster):
    rng = random.Random(5)
    for entry in roster.values():
        for _ in range(40):
            a = sample_element(entry, rng)
            for p, r in ((2, 2), (3, 2), (2, 3)):
                if s_val(p ** r, a) is EMPTY:
                    with pytest.raises(DomainError):
                        decompose_sp(p, r, a)
                else:
                    assert s_val(p, decompose_sp(p, r, a)) == s_val(p ** r, a)


def test_independence_by_hand(groups):
    z = groups["Z"]
    one, three = el(z, "{a=1}"), el(z, "{a=3}")
    assert independent_mod_rib(2, 1, [one])
    assert not independent_mod_rib(2, 1, [one, three])
    xi = groups["xi"]
    two, three_b = el(xi, "{b=2}"), el(xi, "{b=3}")
    assert independent_mod_rib(2, 1, [two, three_b])
    assert not independent_mod_rib(2, 1, [two, three_b, el(xi, "{b=6}")])
    with pytest.raises(DomainError):
        independent_mod_rib(5, 2, [one] * 4)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_multrationals_rib_has_n_independent_primes(groups, n):
    g = groups["multrat"]
    H = zero_cut(g)
    primes = [2, 3, 5, 7, 11][:n]
    elems = [el(g, f"{{a={q}}}") for q in primes]
    assert independent_mod_rib(3, 1, elems, H)
    # adding the product of the first two breaks independence
    if n >= 2:
        assert not independent_mod_rib(3, 1, elems[:2] + [el(g, "{a=6}")], H)
    assert dim_total(g, 3, 2, H) is INF


def test_dim_total_z():
    from oagspine.specfile import parse_spec

    z = parse_spec("group Z { segment a : Z; }")["Z"]
    assert dim_total(z, 2, 1, zero_cut(z)) == 1


def _dim_by_counting(schema, p, H, exps):
    """log_p of the number of classes of single-position elements at H modulo H + pG."""
    from oagspine.exactnum import first_primes, reconstruct

    block = schema.block_at(H.position)
    if block.kind == "Z":
        vals = list(range(2 * p))
    else:
        vals = [reconstruct(dict(zip(first_primes(exps), e))) for e in itertools.product(range(2 * p), repeat=exps)]
    reps = []
    for v in vals:
        x = Element(schema, {H.position: v})
        if not any(coset_member(x - r, H, p) for r in reps):
            reps.append(x)
    d, n = 0, len(reps)
    while n > 1:
        n //= p
        d += 1
    return d


@pytest.mark.parametrize("s", [1, 2, 3])
def test_dim_total_by_counting(groups, s):
    xi = groups["xi"]
    for pos, k in (("a", 1), ("b", 2)):
        H = Cut(xi.position(pos))
        for p in (2, 3):
            assert dim_total(xi, p, s, H) == _dim_by_counting(xi, p, H, k)
            assert dim_step(xi, p, s, H) == 0
    assert dim_total(xi, 2, s, Cut(xi.position("c"))) is INF
