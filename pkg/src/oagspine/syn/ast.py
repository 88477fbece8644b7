"""Immutable AST for quantifier-free formulas over group elements."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Mapping, Tuple, Union


@dataclass(frozen=True)
class Term:
    """Integer-linear combination of variables, canonical: sorted, no zero coefficients."""

    coeffs: Tuple[Tuple[str, int], ...] = ()

    @classmethod
    def of(cls, coeffs: Mapping[str, int]) -> "Term":
        return cls(tuple(sorted((v, c) for v, c in coeffs.items() if c != 0)))

    @classmethod
    def var(cls, name: str, coeff: int = 1) -> "Term":
        return cls.of({name: coeff})

    def as_dict(self) -> Dict[str, int]:
        return dict(self.coeffs)

    def __add__(self, other: "Term") -> "Term":
        acc = self.as_dict()
        for v, c in other.coeffs:
            acc[v] = acc.get(v, 0) + c
        return Term.of(acc)

    def __neg__(self) -> "Term":
        return Term(tuple((v, -c) for v, c in self.coeffs))

    def __sub__(self, other: "Term") -> "Term":
        return self + (-other)

    def variables(self):
        return [v for v, _ in self.coeffs]


# spine-valued terms


@dataclass(frozen=True)
class Sp:
    p: int
    r: int
    term: Term


@dataclass(frozen=True)
class Tp:
    p: int
    term: Term


@dataclass(frozen=True)
class Tplus:
    p: int
    term: Term


SpineTerm = Union[Sp, Tp, Tplus]

# atoms


@dataclass(frozen=True)
class Lt:
    left: Term
    right: Term


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Cong:
    m: int
    left: Term
    right: Term


@dataclass(frozen=True)
class Keq:
    k: int
    term: Term


@dataclass(frozen=True)
class ModEq:
    m: int
    k: int
    term: Term


@dataclass(frozen=True)
class Dpred:
    p: int
    r: int
    s: int
    term: Term


SPINE_OPS = ("<", "<=", "=", ">=", ">")


@dataclass(frozen=True)
class SpCmp:
    op: str
    left: SpineTerm
    right: SpineTerm


@dataclass(frozen=True)
class Discr:
    arg: SpineTerm


@dataclass(frozen=True)
class Zero:
    arg: SpineTerm


Atom = Union[Lt, Eq, Cong, Keq, ModEq, Dpred, SpCmp, Discr, Zero]

# connectives


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Not, And, Or]


def spine_subterms(f) -> list:
    """Spine-valued subterms of f in left-to-right order, without duplicates."""
    out: list = []

    def walk(node):
        if isinstance(node, (Sp, Tp, Tplus)):
            if node not in out:
                out.append(node)
        elif isinstance(node, SpCmp):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, (Discr, Zero, Not)):
            walk(node.arg)
        elif isinstance(node, (And, Or)):
            walk(node.left)
            walk(node.right)

    walk(f)
    return out


def formula_variables(f) -> set:
    out: set = set()

    def walk(node):
        if isinstance(node, Term):
            out.update(node.variables())
            return
        for name in getattr(node, "__dataclass_fields__", {}):
            child = getattr(node, name)
            if not isinstance(child, (int, str)):
                walk(child)

    walk(f)
    return out
