"""Archimedean building blocks.

Four kinds of block are supported:

* ``Z`` -- the integers under addition;
* ``Q`` -- the rationals under addition;
* ``MultPrimes(k)`` -- the multiplicative group generated by the first ``k``
  primes, with ``|B/nB| = n**k``;
* ``MultRationals`` -- the multiplicative group of positive rationals, with
  ``|B/nB|`` infinite.

Elements of the multiplicative blocks are stored as positive
:class:`~fractions.Fraction` values.  The group law is multiplication, the
identity is 1 and the order is the numeric order, so comparing with the
identity is a plain rational comparison.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import DomainError
from .exactnum import INF, factorize, first_primes, reconstruct

BlockElement = Union[int, Fraction]

Z_KIND = "Z"
Q_KIND = "Q"
MULT_PRIMES = "MultPrimes"
MULT_RATIONALS = "MultRationals"

#: MultRationals samples are supported on this many leading primes
MULT_RATIONALS_SAMPLE_PRIMES = 4


@dataclass(frozen=True)
class Block:
    kind: str
    k: Optional[int] = None

    def __post_init__(self):
        if self.kind == MULT_PRIMES:
            if not isinstance(self.k, int) or self.k < 1:
                raise DomainError(f"MultPrimes: k must be >= 1, got {self.k!r}")
        elif self.kind in (Z_KIND, Q_KIND, MULT_RATIONALS):
            if self.k is not None:
                raise DomainError(f"{self.kind} takes no parameter")
        else:
            raise DomainError(f"unknown block kind {self.kind!r}")

    def __str__(self) -> str:
        return f"MultPrimes({self.k})" if self.kind == MULT_PRIMES else self.kind

    @property
    def multiplicative(self) -> bool:
        return self.kind in (MULT_PRIMES, MULT_RATIONALS)

    @property
    def identity(self) -> BlockElement:
        return Fraction(1) if self.multiplicative else (0 if self.kind == Z_KIND else Fraction(0))

    def is_identity(self, x: BlockElement) -> bool:
        return x == self.identity

    def validate(self, x) -> BlockElement:
        """Return x in canonical form for this block, or raise DomainError."""
        if self.kind == Z_KIND:
            if isinstance(x, Fraction) and x.denominator == 1:
                x = x.numerator
            if isinstance(x, bool) or not isinstance(x, int):
                raise DomainError(f"Z element must be an integer, got {x!r}")
            return x
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise DomainError(f"{self} element must be rational, got {x!r}")
        x = Fraction(x)
        if self.kind == Q_KIND:
            return x
        if x <= 0:
            raise DomainError(f"{self} element must be a positive rational, got {x}")
        if self.kind == MULT_PRIMES:
            allowed = set(first_primes(self.k))
            bad = [p for p in factorize(x) if p not in allowed]
            if bad:
                raise DomainError(
                    f"{x} is not in {self}: prime support must lie in the first {self.k} primes"
                )
        return x

    # group law

    def add(self, x: BlockElement, y: BlockElement) -> BlockElement:
        return x * y if self.multiplicative else x + y

    def neg(self, x: BlockElement) -> BlockElement:
        return 1 / x if self.multiplicative else -x

    def scale(self, m: int, x: BlockElement) -> BlockElement:
        """m-fold sum of x (a power for multiplicative blocks)."""
        return x ** m if self.multiplicative else m * x

    def sign(self, x: BlockElement) -> int:
        ref = 1 if self.multiplicative else 0
        return (x > ref) - (x < ref)

    # divisibility and quotients

    def exponents(self, x: BlockElement):
        return factorize(x)

    def divisible(self, n: int, x: BlockElement) -> bool:
        """Whether x lies in nB."""
        _check_modulus(n)
        if self.kind == Z_KIND:
            return x % n == 0
        if self.kind == Q_KIND:
            return True
        return all(e % n == 0 for e in factorize(x).values())

    def divide(self, n: int, x: BlockElement) -> BlockElement:
        """The unique y with n*y == x; DomainError if x is not in nB."""
        if n == 1:
            return x
        if not self.divisible(n, x):
            raise DomainError(f"{x} is not {n}-divisible in {self}")
        if self.kind == Z_KIND:
            return x // n
        if self.kind == Q_KIND:
            return x / n
        return reconstruct({p: e // n for p, e in factorize(x).items()})

    def quotient_size(self, n: int):
        """|B/nB| as an int, or INF."""
        _check_modulus(n)
        if self.kind == Z_KIND:
            return n
        if self.kind == Q_KIND:
            return 1
        if self.kind == MULT_PRIMES:
            return n ** self.k
        return INF

    def is_discrete(self) -> bool:
        return self.kind == Z_KIND or (self.kind == MULT_PRIMES and self.k == 1)

    def min_positive(self) -> BlockElement:
        if self.kind == Z_KIND:
            return 1
        if self.kind == MULT_PRIMES and self.k == 1:
            return Fraction(2)
        raise DomainError(f"{self} is dense: no smallest positive element")

    def generator(self) -> BlockElement:
        """A fixed positive non-identity element, not n-divisible for any n >= 2."""
        if self.kind == Z_KIND:
            return 1
        if self.kind == Q_KIND:
            return Fraction(1)
        return Fraction(2)

    def sample(self, rng: random.Random, bound: int) -> BlockElement:
        """Deterministic draw given the rng state; values/exponents in [-bound, bound]."""
        if bound < 1:
            raise DomainError("sample bound must be >= 1")
        if self.kind == Z_KIND:
            return rng.randint(-bound, bound)
        if self.kind == Q_KIND:
            return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        k = self.k if self.kind == MULT_PRIMES else MULT_RATIONALS_SAMPLE_PRIMES
        return reconstruct({p: rng.randint(-bound, bound) for p in first_primes(k)})


def _check_modulus(n: int) -> None:
    if n < 2:
        raise DomainError(f"modulus must be >= 2, got {n}")


Z = Block(Z_KIND)
Q = Block(Q_KIND)
MultRationals = Block(MULT_RATIONALS)


def MultPrimes(k: int) -> Block:
    return Block(MULT_PRIMES, k)
