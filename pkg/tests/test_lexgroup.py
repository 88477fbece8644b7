import random
from fractions import Fraction

import pytest

from oagspine.errors import DomainError, SpecSyntaxError
from oagspine.laws import sample_element
from oagspine.lexgroup import EMPTY, FULL, Cut, Element, coset_member, cut_member, min_positive_lift, quotient_discrete, zero_cut
from oagspine.specfile import parse_element, parse_spec


def el(g, text):
    return parse_element(g, text)


def test_reverse_lex_order(groups):
    zz = groups["ZZ"]
    assert el(zz, "{a=100}") < el(zz, "{b=1}")
    assert el(zz, "{a=5, b=-1}") < Element.zero(zz)
    assert el(zz, "{a=-7, b=1}") > el(zz, "{a=7}")
    oc = groups["omega_const"]
    assert el(oc, "{tail[2]=1}") > el(oc, "{tail[1]=50, head=3}")


def test_group_axioms_sampled(roster):
    rng = random.Random(3)
    for entry in roster.values():
        for _ in range(50):
            a, b, c = (sample_element(entry, rng) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert a + b == b + a
            assert (a - a).is_zero()
            # translation invariance of the order
            assert (a < b) == (a + c < b + c)
            assert a.scale(3) == a + a + a


def test_multiplicative_entries(groups):
    xi = groups["xi"]
    a = el(xi, "{a=2, b=9/4}")
    assert (a + a).get(xi.position("b")) == Fraction(81, 16)
    assert el(xi, "{c=1/2}") < Element.zero(xi)


def test_cuts(groups):
    zz = groups["ZZ"]
    below_b = Cut(zz.position("b"))
    assert cut_member(el(zz, "{a=99}"), below_b)
    assert not cut_member(el(zz, "{b=1}"), below_b)
    assert cut_member(el(zz, "{b=1}"), FULL)
    assert zero_cut(zz) == Cut(zz.position("a"))
    assert EMPTY < zero_cut(zz) < below_b < FULL
    with pytest.raises(DomainError):
        cut_member(el(zz, "{a=1}"), EMPTY)


def test_coset_member(groups):
    zz = groups["ZZ"]
    below_b = Cut(zz.position("b"))
    assert coset_member(el(zz, "{a=3, b=4}"), below_b, 2)
    assert not coset_member(el(zz, "{a=3, b=5}"), below_b, 2)
    assert not coset_member(el(zz, "{a=3, b=4}"), zero_cut(zz), 2)
    assert coset_member(el(zz, "{a=3, b=5}"), FULL, 2)


def test_discrete_quotients(groups):
    qz, xi = groups["QZ"], groups["xi"]
    assert quotient_discrete(qz, Cut(qz.position("b")))
    assert not quotient_discrete(qz, zero_cut(qz))
    assert quotient_discrete(xi, zero_cut(xi))
    assert not quotient_discrete(xi, Cut(xi.position("b")))
    assert min_positive_lift(qz, Cut(qz.position("b"))) == el(qz, "{b=1}")


def test_spec_errors():
    with pytest.raises(SpecSyntaxError, match="k must be >= 1"):
        parse_spec("group g { segment a : MultPrimes(0); }")
    with pytest.raises(SpecSyntaxError, match="duplicate"):
        parse_spec("group g { segment a : Z; segment a : Q; }")
    with pytest.raises(SpecSyntaxError, match="duplicate"):
        parse_spec("group g { segment a : Z; }\ngroup g { segment b : Z; }")
    with pytest.raises(SpecSyntaxError) as info:
        parse_spec("group g {\n  segment a : Zed;\n}")
    assert info.value.line == 2


def test_element_literal_errors(groups):
    zz, oc = groups["ZZ"], groups["omega_const"]
    for bad in ["{c=1}", "{a=1/2}", "{a=1, a=2}", "{a=1", "{tail=1}"]:
        with pytest.raises(SpecSyntaxError):
            parse_element(zz if "tail" not in bad else oc, bad)
    assert str(el(oc, "{ tail[3] = 2 , head=1 }")) == "{head=1, tail[3]=2}"
