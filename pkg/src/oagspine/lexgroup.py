"""Finite-support direct sums of blocks with the reverse-lexicographic order.

A :class:`GroupSchema` is an ordered list of segments.  A segment is a single
position carrying one block, or an omega-indexed family of positions carrying
either a constant block or ``MultPrimes(i+1)`` at inner index ``i`` (the
"growing" family).  The sign of an element is the sign of its entry at the
greatest position of its support.

Convex subgroups are encoded by :class:`Cut`: ``Cut(p)`` is the subgroup of
elements supported strictly below position ``p`` and ``FULL`` is the whole
group.  ``EMPTY`` is the bottom marker used as the value of ``s_n`` on ``nG``;
it sorts below every cut but is not itself a subgroup.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from .blocks import Block, BlockElement, MultPrimes
from .errors import DomainError

SINGLE = "single"
OMEGA = "omega"
GROWING = "growing"


@dataclass(frozen=True)
class Segment:
    id: str
    kind: str
    block: Optional[Block] = None

    def __post_init__(self):
        if self.kind not in (SINGLE, OMEGA, GROWING):
            raise DomainError(f"unknown segment kind {self.kind!r}")
        if (self.kind == GROWING) != (self.block is None):
            raise DomainError("growing segments carry no block; other kinds need one")

    @property
    def is_omega(self) -> bool:
        return self.kind != SINGLE

    def block_at(self, inner: int) -> Block:
        if self.kind == GROWING:
            return MultPrimes(inner + 1)
        return self.block

    def spec(self) -> str:
        if self.kind == SINGLE:
            return str(self.block)
        if self.kind == OMEGA:
            return f"omega {self.block}"
        return "omega growing"


@dataclass(frozen=True, order=True)
class Position:
    seg: int
    inner: int = 0
    name: str = field(default="", compare=False)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class GroupSchema:
    name: str
    segments: Tuple[Segment, ...]

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        if not self.segments:
            raise DomainError(f"group {self.name!r} has no segments")
        ids = [s.id for s in self.segments]
        if len(set(ids)) != len(ids):
            raise DomainError(f"duplicate segment ids in group {self.name!r}")

    def __str__(self) -> str:
        body = "; ".join(f"segment {s.id} : {s.spec()}" for s in self.segments)
        return f"group {self.name} {{ {body}; }}"

    @property
    def has_omega(self) -> bool:
        return any(s.is_omega for s in self.segments)

    def segment_index(self, sid: str) -> int:
        for i, s in enumerate(self.segments):
            if s.id == sid:
                return i
        raise DomainError(f"group {self.name!r} has no segment {sid!r}")

    def position(self, sid: str, inner: Optional[int] = None) -> Position:
        i = self.segment_index(sid)
        return self.position_at(i, inner)

    def position_at(self, seg: int, inner: Optional[int] = None) -> Position:
        s = self.segments[seg]
        if s.is_omega:
            if inner is None or inner < 0:
                raise DomainError(f"segment {s.id!r} is omega-indexed: write {s.id}[i] with i >= 0")
            return Position(seg, inner, f"{s.id}[{inner}]")
        if inner is not None:
            raise DomainError(f"segment {s.id!r} is a single position: no index allowed")
        return Position(seg, 0, s.id)

    def block_at(self, pos: Position) -> Block:
        return self.segments[pos.seg].block_at(pos.inner)

    def segment_start(self, seg: int) -> Optional[Position]:
        if seg >= len(self.segments):
            return None
        return self.position_at(seg, 0 if self.segments[seg].is_omega else None)

    def first_position(self) -> Position:
        return self.segment_start(0)

    def next_position(self, pos: Position) -> Optional[Position]:
        if self.segments[pos.seg].is_omega:
            return self.position_at(pos.seg, pos.inner + 1)
        return self.segment_start(pos.seg + 1)

    def cut_before_segment(self, seg: int) -> "Cut":
        start = self.segment_start(seg)
        return FULL if start is None else Cut(start)

    def positions_upto(self, top: Optional[Position], window: int) -> List[Position]:
        """Positions <= top; omega segments listed up to inner index ``window``."""
        out: List[Position] = []
        for i, s in enumerate(self.segments):
            if top is not None and i > top.seg:
                break
            if s.is_omega:
                last = window
                if top is not None and i == top.seg:
                    last = top.inner
                out.extend(self.position_at(i, j) for j in range(last + 1))
            else:
                out.append(self.position_at(i))
        return out


# ---------------------------------------------------------------- cuts


@total_ordering
class _Level:
    __slots__ = ()

    def _key(self) -> tuple:
        raise NotImplementedError

    def __lt__(self, other):
        if not isinstance(other, _Level):
            return NotImplemented
        return self._key() < other._key()

    def __eq__(self, other):
        if not isinstance(other, _Level):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


class EmptySpine(_Level):
    """The value of s_n on nG; below every convex subgroup."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def _key(self):
        return (0,)

    def __repr__(self):
        return "EMPTY"

    def __str__(self):
        return "empty"

    def __reduce__(self):
        return (EmptySpine, ())


class Cut(_Level):
    """Convex subgroup of elements supported below ``position``; ``Cut(None)`` is G."""

    __slots__ = ("position",)

    def __init__(self, position: Optional[Position]):
        object.__setattr__(self, "position", position)

    def __setattr__(self, key, value):
        raise AttributeError("Cut is immutable")

    def _key(self):
        if self.position is None:
            return (2,)
        return (1, self.position.seg, self.position.inner)

    @property
    def is_full(self) -> bool:
        return self.position is None

    def __repr__(self):
        return "FULL" if self.position is None else f"Cut({self.position})"

    def __str__(self):
        return "G" if self.position is None else f"below({self.position})"

    def __reduce__(self):
        return (Cut, (self.position,))


EMPTY = EmptySpine()
FULL = Cut(None)


def zero_cut(schema: GroupSchema) -> Cut:
    """The trivial subgroup {0}."""
    return Cut(schema.first_position())


# ---------------------------------------------------------------- elements


class Element:
    """Finitely supported element of a lex-sum group.  Immutable."""

    __slots__ = ("schema", "entries", "_hash")

    def __init__(self, schema: GroupSchema, entries: Mapping[Position, BlockElement] = (), *, _trusted=False):
        if _trusted:
            items = entries
        else:
            items = []
            for pos, x in dict(entries).items():
                if not isinstance(pos, Position):
                    raise DomainError(f"bad position {pos!r}")
                if pos.seg >= len(schema.segments):
                    raise DomainError(f"position {pos} is outside group {schema.name!r}")
                block = schema.block_at(pos)
                x = block.validate(x)
                if not block.is_identity(x):
                    items.append((pos, x))
            items = tuple(sorted(items))
        object.__setattr__(self, "schema", schema)
        object.__setattr__(self, "entries", items)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):
        raise AttributeError("Element is immutable")

    @classmethod
    def zero(cls, schema: GroupSchema) -> "Element":
        return cls(schema, (), _trusted=True)

    @classmethod
    def single(cls, schema: GroupSchema, pos: Position, x: BlockElement) -> "Element":
        return cls(schema, {pos: x})

    def as_dict(self) -> Dict[Position, BlockElement]:
        return dict(self.entries)

    def get(self, pos: Position) -> BlockElement:
        for q, x in self.entries:
            if q == pos:
                return x
        return self.schema.block_at(pos).identity

    def support(self) -> List[Position]:
        return [p for p, _ in self.entries]

    def __iter__(self) -> Iterator[Tuple[Position, BlockElement]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def top(self) -> Optional[Position]:
        return self.entries[-1][0] if self.entries else None

    def sign(self) -> int:
        if not self.entries:
            return 0
        pos, x = self.entries[-1]
        return self.schema.block_at(pos).sign(x)

    def _check(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise DomainError(f"expected an Element, got {other!r}")
        if other.schema is not self.schema and other.schema != self.schema:
            raise DomainError(f"schema mismatch: {self.schema.name!r} vs {other.schema.name!r}")

    def _combine(self, pairs: Iterable[Tuple[Position, BlockElement]]) -> "Element":
        schema = self.schema
        return Element(
            schema,
            tuple(sorted((p, x) for p, x in pairs if not schema.block_at(p).is_identity(x))),
            _trusted=True,
        )

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        acc = dict(self.entries)
        for p, y in other.entries:
            acc[p] = self.schema.block_at(p).add(acc[p], y) if p in acc else y
        return self._combine(acc.items())

    def __neg__(self) -> "Element":
        return self._combine((p, self.schema.block_at(p).neg(x)) for p, x in self.entries)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, m: int) -> "Element":
        if isinstance(m, bool) or not isinstance(m, int):
            raise DomainError(f"scalar must be an integer, got {m!r}")
        if m == 0:
            return Element.zero(self.schema)
        return self._combine((p, self.schema.block_at(p).scale(m, x)) for p, x in self.entries)

    def __mul__(self, m: int) -> "Element":
        if not isinstance(m, int):
            return NotImplemented
        return self.scale(m)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.entries == other.entries and (self.schema is other.schema or self.schema == other.schema)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.schema.name, self.entries))
            object.__setattr__(self, "_hash", h)
        return h

    def __lt__(self, other: "Element") -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: "Element") -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: "Element") -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: "Element") -> bool:
        return (self - other).sign() >= 0

    def __str__(self) -> str:
        return "{" + ", ".join(f"{p}={x}" for p, x in self.entries) + "}"

    def __repr__(self) -> str:
        return f"Element({self.schema.name}, {self})"

    def __reduce__(self):
        return (Element, (self.schema, dict(self.entries)))


def elt_sign(a: Element) -> int:
    return a.sign()


def elt_top(a: Element) -> Optional[Position]:
    return a.top()


# ---------------------------------------------------------------- subgroups


def _require_cut(c) -> Cut:
    if isinstance(c, EmptySpine):
        raise DomainError("the empty spine value is not a subgroup")
    if not isinstance(c, Cut):
        raise DomainError(f"expected a Cut, got {c!r}")
    return c


def cut_member(a: Element, c: Cut) -> bool:
    """Whether a lies in the convex subgroup c."""
    c = _require_cut(c)
    if c.position is None or a.is_zero():
        return True
    return a.top() < c.position


def cut_cmp(c1, c2) -> int:
    """-1, 0 or 1 comparing two cuts (or spine values) by inclusion."""
    return (c1 > c2) - (c1 < c2)


def coset_member(a: Element, c: Cut, n: int) -> bool:
    """Whether a lies in c + nG: every entry at a position >= c is n-divisible."""
    if n < 2:
        raise DomainError(f"modulus must be >= 2, got {n}")
    c = _require_cut(c)
    if c.position is None:
        return True
    schema = a.schema
    for p, x in reversed(a.entries):
        if p < c.position:
            break
        if not schema.block_at(p).divisible(n, x):
            return False
    return True


def _quotient_block(schema: GroupSchema, c: Cut) -> Block:
    c = _require_cut(c)
    if c.position is None:
        raise DomainError("G/G is the trivial group")
    return schema.block_at(c.position)


def quotient_discrete(schema: GroupSchema, c: Cut) -> bool:
    """Whether G/c has a smallest positive element."""
    c = _require_cut(c)
    if c.position is None:
        return False
    return _quotient_block(schema, c).is_discrete()


def min_positive_lift(schema: GroupSchema, c: Cut) -> Element:
    """An element whose image in G/c is the smallest positive element."""
    block = _quotient_block(schema, c)
    if not block.is_discrete():
        raise DomainError(f"G/{c} is dense: no smallest positive element")
    return Element(schema, {c.position: block.min_positive()})
