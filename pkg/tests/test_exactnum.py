from fractions import Fraction

import pytest

from oagspine.errors import DomainError
from oagspine.exactnum import (
    INF,
    LITERAL_LIMIT,
    factorize,
    is_prime,
    nth_prime,
    parse_rational,
    prime_power_parts,
    reconstruct,
    size_str,
    v_p,
)


def naive_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def naive_factor(n):
    out, d = {}, 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def test_is_prime_matches_trial_division():
    assert [n for n in range(3000) if is_prime(n)] == [n for n in range(3000) if naive_prime(n)]


@pytest.mark.parametrize("n", [561, 41041, 825265, 3215031751])  # Carmichael / strong pseudoprimes
def test_pseudoprimes_rejected(n):
    assert not is_prime(n)


def test_large_primes():
    assert is_prime(2 ** 61 - 1) and is_prime(2 ** 89 - 1)
    assert not is_prime((2 ** 31 - 1) * (2 ** 61 - 1))


def test_factorize_small_against_naive():
    for n in range(1, 2000):
        assert factorize(n) == naive_factor(n)


def test_factorize_semiprime_and_rational():
    assert factorize((2 ** 31 - 1) * (2 ** 61 - 1)) == {2 ** 31 - 1: 1, 2 ** 61 - 1: 1}
    assert factorize(Fraction(12, 35)) == {2: 2, 3: 1, 5: -1, 7: -1}
    q = Fraction(2 ** 5 * 11, 3 ** 4 * 13 ** 2)
    assert reconstruct(factorize(q)) == q


@pytest.mark.parametrize("bad", [0, -3, Fraction(-1, 2)])
def test_factorize_domain(bad):
    with pytest.raises(DomainError):
        factorize(bad)


def test_v_p():
    assert v_p(2, 48) == 4
    assert v_p(3, Fraction(5, 27)) == -3
    assert v_p(5, 7) == 0


def test_nth_prime():
    assert [nth_prime(i) for i in range(1, 8)] == [2, 3, 5, 7, 11, 13, 17]
    assert nth_prime(100) == 541
    with pytest.raises(DomainError):
        nth_prime(0)


def test_prime_power_parts():
    assert prime_power_parts(360) == {2: 3, 3: 2, 5: 1}
    with pytest.raises(DomainError):
        prime_power_parts(1)


def test_parse_rational():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-4") == -4
    assert parse_rational(str(LITERAL_LIMIT - 1)) == LITERAL_LIMIT - 1
    for bad in ["1/0", str(LITERAL_LIMIT), "1.5", "", "x"]:
        with pytest.raises(DomainError):
            parse_rational(bad)


def test_infinity():
    assert INF > 10 ** 100 and not INF < 3
    assert size_str(INF) == "inf" and size_str(8) == "8"
