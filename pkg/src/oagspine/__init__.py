"""Exact computations on ordered abelian groups built as lex sums of archimedean blocks."""
from .blocks import Block, MultPrimes, MultRationals, Q, Z
from .distal import acgz_check, distal_verdict, rib_profile
from .errors import DomainError, SpecSyntaxError
from .exactnum import INF, factorize, nth_prime, v_p
from .lexgroup import (
    EMPTY,
    FULL,
    Cut,
    Element,
    GroupSchema,
    Position,
    Segment,
    coset_member,
    cut_member,
    min_positive_lift,
    quotient_discrete,
    zero_cut,
)
from .specfile import parse_element, parse_spec
from .spine import (
    decompose_sp,
    dim_step,
    dim_total,
    in_sqbracket,
    independent_mod_rib,
    quotient_size_mod,
    rib_s,
    rib_t,
    s_val,
    spine_set,
    t_plus,
    t_val,
)

__version__ = "0.1.0"

__all__ = [
    "Block",
    "Cut",
    "DomainError",
    "EMPTY",
    "Element",
    "FULL",
    "GroupSchema",
    "INF",
    "MultPrimes",
    "MultRationals",
    "Position",
    "Q",
    "Segment",
    "SpecSyntaxError",
    "Z",
    "acgz_check",
    "coset_member",
    "cut_member",
    "decompose_sp",
    "dim_step",
    "dim_total",
    "distal_verdict",
    "factorize",
    "in_sqbracket",
    "independent_mod_rib",
    "min_positive_lift",
    "nth_prime",
    "parse_element",
    "parse_spec",
    "quotient_discrete",
    "quotient_size_mod",
    "rib_profile",
    "rib_s",
    "rib_t",
    "s_val",
    "spine_set",
    "t_plus",
    "t_val",
    "v_p",
    "zero_cut",
]
