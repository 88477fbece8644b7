"""Distality decision procedure for lex sums of archimedean blocks.

A group is distal exactly when, for every prime p, the rib sizes along the
spine S_p are uniformly bounded.  Every block here has ``|B/pB| = p**k`` with
``k`` fixed per position (``k = inf`` for MultRationals), so boundedness at
one prime is boundedness at all primes; the verdict is computed at p = 2 and
the roster tests guard the shortcut at p in {3, 5, 7}.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .exactnum import INF
from .lexgroup import GroupSchema
from .spine import SpineDescriptor, SpineEntry, quotient_size_mod, spine_set

VERDICT_PRIME = 2
ACGZ_PRIMES = (2, 3, 5, 7)

RibProfile = SpineDescriptor


def rib_profile(schema: GroupSchema, p: int) -> RibProfile:
    """Rib sizes over S_p minus EMPTY, with omega families kept symbolic."""
    return spine_set(schema, p)


@dataclass(frozen=True)
class Witness:
    kind: str  # "InfiniteRib" | "UnboundedFamily"
    prime: int
    at: str

    def to_json(self) -> dict:
        return {"kind": self.kind, "prime": self.prime, "at": self.at}


@dataclass(frozen=True)
class DistalVerdict:
    distal: bool
    witness: Optional[Witness] = None
    bound: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "distal": self.distal,
            "witness": self.witness.to_json() if self.witness else None,
        }


def verdict_at(schema: GroupSchema, p: int) -> DistalVerdict:
    """Boundedness of the rib sizes for the single prime p."""
    bound = 1
    for e in rib_profile(schema, p).entries:
        if isinstance(e, SpineEntry):
            if e.size is INF:
                return DistalVerdict(False, Witness("InfiniteRib", p, str(e.cut)))
            bound = max(bound, e.size)
        elif e.law == "growing":
            return DistalVerdict(False, Witness("UnboundedFamily", p, e.segment))
        elif e.value is INF:
            return DistalVerdict(False, Witness("InfiniteRib", p, f"{e.segment}[0]"))
        else:
            bound = max(bound, e.value)
    return DistalVerdict(True, None, bound + 1)


def distal_verdict(schema: GroupSchema) -> DistalVerdict:
    return verdict_at(schema, VERDICT_PRIME)


@dataclass(frozen=True)
class AcgzReport:
    applicable: bool
    consistent: Optional[bool]
    distal: Optional[bool]
    quotient_sizes: dict
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "applicable": self.applicable,
            "consistent": self.consistent,
            "distal": self.distal,
            "quotient_sizes": {str(p): str(s) for p, s in self.quotient_sizes.items()},
            "reason": self.reason,
        }


def acgz_check(schema: GroupSchema) -> AcgzReport:
    """Compare the verdict with the finite-spines criterion (G/pG finite for all p)."""
    for p in ACGZ_PRIMES:
        if not spine_set(schema, p).finite:
            return AcgzReport(False, None, None, {}, f"S_{p} is infinite")
    sizes = {p: quotient_size_mod(schema, p) for p in ACGZ_PRIMES}
    distal = distal_verdict(schema).distal
    finite = all(s is not INF for s in sizes.values())
    return AcgzReport(True, distal == finite, distal, sizes)
