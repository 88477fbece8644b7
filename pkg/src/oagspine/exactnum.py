"""Exact integer and rational arithmetic helpers.

Integers are Python ints and rationals are :class:`fractions.Fraction`; both
are exact and immutable.  This module adds the number theory the rest of the
package needs: a growable prime sieve, primality, factorization of positive
rationals and the p-adic valuation.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Union

from .errors import DomainError

RationalLike = Union[int, Fraction]

#: literals accepted from user input must have |numerator|, denominator below this
LITERAL_LIMIT = 2 ** 64

_primes: List[int] = [2, 3, 5, 7, 11, 13]
_sieved_upto = 13


def _extend_sieve(limit: int) -> None:
    global _sieved_upto
    if limit <= _sieved_upto:
        return
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    _primes[:] = [i for i in range(limit + 1) if sieve[i]]
    _sieved_upto = limit


def primes_upto(n: int) -> List[int]:
    """All primes <= n, in increasing order."""
    _extend_sieve(n)
    return [p for p in _primes if p <= n]


def nth_prime(i: int) -> int:
    """The i-th prime, 1-based: nth_prime(1) == 2."""
    if not isinstance(i, int) or i < 1:
        raise DomainError(f"prime index must be a positive integer, got {i!r}")
    while len(_primes) < i:
        _extend_sieve(max(2 * _sieved_upto, 64))
    return _primes[i - 1]


def first_primes(k: int) -> List[int]:
    if k <= 0:
        return []
    nth_prime(k)
    return _primes[:k]


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    # Miller-Rabin with the first 12 prime bases is deterministic below 3.3e24
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


_TRIAL_LIMIT = 1000


@lru_cache(maxsize=65536)
def _factor_int(n: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    _extend_sieve(_TRIAL_LIMIT)
    for p in _primes:
        if p > _TRIAL_LIMIT or p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
        else:
            d = _pollard_brent(m)
            stack.extend((d, m // d))
    return out


def as_rational(q: RationalLike) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, int):
        return Fraction(q)
    raise DomainError(f"expected an integer or rational, got {q!r}")


def factorize(q: RationalLike) -> Dict[int, int]:
    """Prime factorization of a positive rational as {prime: nonzero exponent}.

    >>> factorize(Fraction(9, 8))
    {2: -3, 3: 2}
    """
    q = as_rational(q)
    if q <= 0:
        raise DomainError(f"factorize needs a positive rational, got {q}")
    exps = dict(_factor_int(q.numerator))
    for p, e in _factor_int(q.denominator).items():
        exps[p] = -e
    return {p: exps[p] for p in sorted(exps)}


def reconstruct(factors: Dict[int, int]) -> Fraction:
    num = den = 1
    for p, e in factors.items():
        if e > 0:
            num *= p ** e
        elif e < 0:
            den *= p ** (-e)
    return Fraction(num, den)


def v_p(p: int, q: RationalLike) -> int:
    """Exponent of the prime p in the nonzero rational q."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    q = as_rational(q)
    if q == 0:
        raise DomainError("v_p(0) is undefined")
    r = 0
    num, den = abs(q.numerator), q.denominator
    while num % p == 0:
        num //= p
        r += 1
    while den % p == 0:
        den //= p
        r -= 1
    return r


def prime_power_parts(n: int) -> Dict[int, int]:
    """{p: v_p(n)} for an integer n >= 2."""
    if n < 2:
        raise DomainError(f"modulus must be >= 2, got {n}")
    return dict(_factor_int(n))


def as_prime_power(n: int):
    """(p, r) with n == p**r, or None when n is not a prime power."""
    parts = prime_power_parts(n)
    if len(parts) != 1:
        return None
    ((p, r),) = parts.items()
    return p, r


def parse_rational(text: str) -> Fraction:
    """Parse an integer literal or an ``a/b`` literal, rejecting huge inputs."""
    s = text.strip()
    try:
        if "/" in s:
            num_s, den_s = s.split("/", 1)
            num, den = int(num_s), int(den_s)
        else:
            num, den = int(s), 1
    except ValueError:
        raise DomainError(f"not a rational literal: {text!r}") from None
    if den == 0:
        raise DomainError(f"zero denominator in {text!r}")
    if abs(num) >= LITERAL_LIMIT or abs(den) >= LITERAL_LIMIT:
        raise DomainError(f"literal {text!r} exceeds 2^64")
    return Fraction(num, den)


class _Infinity:
    """Size of an infinite group; larger than every natural number."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("oagspine.INF")

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True

    def __mul__(self, other):
        if other == 0:
            raise DomainError("0 * inf is undefined")
        return self

    __rmul__ = __mul__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def size_str(size) -> str:
    return "inf" if size is INF else str(size)
