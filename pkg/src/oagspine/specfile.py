"""Parsers for group-spec files and element literals.

Spec files hold one or more group blocks::

    # comments run to end of line
    group xi {
        segment a : MultPrimes(1);
        segment b : MultPrimes(2);
        segment c : MultRationals;
    }

A block spec is ``Z``, ``Q``, ``MultPrimes(k)``, ``MultRationals``,
``omega <blockspec>`` or ``omega growing``.  Element literals look like
``{a=1, tail[7]=3/2}``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional

from .blocks import MULT_PRIMES, MULT_RATIONALS, Block, MultPrimes, Q, Z
from .errors import DomainError, SpecSyntaxError
from .exactnum import parse_rational
from .lexgroup import GROWING, OMEGA, SINGLE, Element, GroupSchema, Segment

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<num>-?\d+(?:/-?\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[{}()\[\];:,=])"
)


@dataclass
class _Tok:
    kind: str
    value: str
    line: int
    col: int


def _tokenize(text: str) -> List[_Tok]:
    toks: List[_Tok] = []
    line, line_start, i = 1, 0, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            raise SpecSyntaxError(f"unexpected character {text[i]!r}", line, i - line_start + 1, text)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, i - line_start + 1))
        i = m.end()
    toks.append(_Tok("eof", "", line, i - line_start + 1))
    return toks


class _Stream:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str, tok: Optional[_Tok] = None) -> SpecSyntaxError:
        tok = tok or self.tok
        return SpecSyntaxError(message, tok.line, tok.col, self.text)

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def accept(self, value: str) -> bool:
        if self.tok.value == value and self.tok.kind in ("op", "name"):
            self.i += 1
            return True
        return False

    def expect(self, value: str) -> _Tok:
        if self.tok.value != value:
            found = self.tok.value or "end of input"
            raise self.error(f"expected {value!r}, found {found!r}")
        return self.next()

    def expect_kind(self, kind: str, what: str) -> _Tok:
        if self.tok.kind != kind:
            found = self.tok.value or "end of input"
            raise self.error(f"expected {what}, found {found!r}")
        return self.next()


def _block(st: _Stream) -> Block:
    t = st.expect_kind("name", "a block (Z, Q, MultPrimes(k), MultRationals)")
    if t.value == "Z":
        return Z
    if t.value == "Q":
        return Q
    if t.value == MULT_RATIONALS:
        return Block(MULT_RATIONALS)
    if t.value == MULT_PRIMES:
        st.expect("(")
        kt = st.expect_kind("num", "an integer k")
        st.expect(")")
        try:
            k = int(kt.value)
        except ValueError:
            raise st.error("k must be an integer", kt) from None
        if k < 1:
            raise st.error("MultPrimes: k must be >= 1", kt)
        return MultPrimes(k)
    raise st.error(f"unknown block {t.value!r}", t)


def _segment(st: _Stream) -> Segment:
    st.expect("segment")
    sid = st.expect_kind("name", "a segment id").value
    st.expect(":")
    if st.accept("omega"):
        if st.accept("growing"):
            return Segment(sid, GROWING)
        return Segment(sid, OMEGA, _block(st))
    return Segment(sid, SINGLE, _block(st))


def _group(st: _Stream) -> GroupSchema:
    st.expect("group")
    name_tok = st.expect_kind("name", "a group name")
    st.expect("{")
    segs: List[Segment] = []
    seen = set()
    while not st.accept("}"):
        t = st.tok
        seg = _segment(st)
        if seg.id in seen:
            raise st.error(f"duplicate segment id {seg.id!r}", t)
        seen.add(seg.id)
        segs.append(seg)
        if not st.accept(";") and st.tok.value != "}":
            raise st.error(f"expected ';' or '}}', found {st.tok.value or 'end of input'!r}")
    if not segs:
        raise st.error(f"group {name_tok.value!r} has no segments", name_tok)
    return GroupSchema(name_tok.value, tuple(segs))


def parse_spec(text: str) -> Dict[str, GroupSchema]:
    """Parse a spec file into {group name: schema}, keeping file order."""
    st = _Stream(text)
    groups: Dict[str, GroupSchema] = {}
    while st.tok.kind != "eof":
        t = st.tok
        g = _group(st)
        if g.name in groups:
            raise st.error(f"duplicate group name {g.name!r}", t)
        groups[g.name] = g
    return groups


def parse_element(schema: GroupSchema, text: str) -> Element:
    """Parse ``{pos=lit, ...}`` against ``schema``."""
    st = _Stream(text)
    st.expect("{")
    entries = {}
    while not st.accept("}"):
        pt = st.expect_kind("name", "a position")
        inner = None
        if st.accept("["):
            it = st.expect_kind("num", "an index")
            if not it.value.isdigit():
                raise st.error("index must be a natural number", it)
            inner = int(it.value)
            st.expect("]")
        st.expect("=")
        lt = st.expect_kind("num", "an integer or a/b literal")
        try:
            pos = schema.position(pt.value, inner)
            if pos in entries:
                raise DomainError(f"position {pos} given twice")
            block = schema.block_at(pos)
            value = parse_rational(lt.value)
            entries[pos] = block.validate(value)
        except DomainError as exc:
            raise st.error(str(exc), pt) from None
        if not st.accept(",") and st.tok.value != "}":
            raise st.error(f"expected ',' or '}}', found {st.tok.value or 'end of input'!r}")
    if st.tok.kind != "eof":
        raise st.error(f"unexpected {st.tok.value!r} after element literal")
    return Element(schema, entries)
