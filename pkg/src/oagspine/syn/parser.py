"""Parser and printer for quantifier-free formulas.

Grammar::

    term      := ['-'] item (('+' | '-') item)*
    item      := int '*' var | var | '0'
    spineterm := 'sp(' prime '^' nat ',' term ')' | 'tp(' prime ',' term ')'
               | 'tplus(' prime ',' term ')'
    atom      := term ('<' | '=' | '>') term
               | 'cong(' nat ';' term ',' term ')' | 'keq(' int ';' term ')'
               | 'modeq(' nat ',' nat ';' term ')' | 'D(' prime ',' nat ',' nat ';' term ')'
               | spineterm ('<' | '<=' | '=' | '>=' | '>') spineterm
               | 'discr(' spineterm ')' | 'zero(' spineterm ')'
    formula   := formula 'or' formula | formula 'and' formula | 'not' formula
               | '(' formula ')' | atom

``not`` binds tighter than ``and``, which binds tighter than ``or``; both
binary connectives associate to the left.
"""
from __future__ import annotations

import re
import warnings
from typing import Iterable, List, Optional

from ..errors import SpecSyntaxError
from ..exactnum import is_prime
from .ast import (
    And,
    Cong,
    Discr,
    Dpred,
    Eq,
    Keq,
    Lt,
    ModEq,
    Not,
    Or,
    SpCmp,
    Sp,
    SPINE_OPS,
    Term,
    Tp,
    Tplus,
    Zero,
)


class FormulaError(SpecSyntaxError):
    pass


class FormulaSyntaxError(FormulaError):
    pass


class UnknownVariableError(FormulaError):
    pass


class ParameterRangeError(FormulaError):
    pass


class ParameterNormalizedWarning(UserWarning):
    pass


KEYWORDS = {"and", "or", "not", "sp", "tp", "tplus", "cong", "keq", "modeq", "D", "discr", "zero"}

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op><=|>=|[<>=+\-*^(),;])"
)


class _Tok:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind, self.value, self.line, self.col = kind, value, line, col


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    line, line_start, i = 1, 0, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[i]!r}", line, i - line_start + 1, text)
        if m.lastgroup == "ws":
            nl = m.group().count("\n")
            if nl:
                line += nl
                line_start = i + m.group().rfind("\n") + 1
        else:
            toks.append(_Tok(m.lastgroup, m.group(), line, i - line_start + 1))
        i = m.end()
    toks.append(_Tok("eof", "", line, i - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str, variables: Optional[set]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.variables = variables

    # -- token helpers

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def _err(self, cls, msg, tok=None):
        tok = tok or self.tok
        return cls(msg, tok.line, tok.col, self.text)

    def syntax(self, msg, tok=None):
        return self._err(FormulaSyntaxError, msg, tok)

    def at(self, value: str) -> bool:
        return self.tok.value == value and self.tok.kind != "eof"

    def accept(self, value: str) -> bool:
        if self.at(value):
            self.i += 1
            return True
        return False

    def expect(self, value: str) -> _Tok:
        if not self.at(value):
            found = self.tok.value or "end of input"
            raise self.syntax(f"expected {value!r}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    def nat(self, what: str) -> int:
        if self.tok.kind != "int":
            found = self.tok.value or "end of input"
            raise self.syntax(f"expected {what}, found {found!r}")
        t = self.tok
        self.i += 1
        return int(t.value)

    def signed_int(self, what: str) -> int:
        neg = self.accept("-")
        n = self.nat(what)
        return -n if neg else n

    def range_error(self, msg, tok):
        return self._err(ParameterRangeError, msg, tok)

    def prime(self) -> int:
        t = self.tok
        p = self.nat("a prime")
        if not is_prime(p):
            raise self.range_error(f"{p} is not prime", t)
        return p

    # -- grammar

    def formula(self):
        node = self.conj()
        while self.accept("or"):
            node = Or(node, self.conj())
        return node

    def conj(self):
        node = self.neg()
        while self.accept("and"):
            node = And(node, self.neg())
        return node

    def neg(self):
        if self.accept("not"):
            return Not(self.neg())
        if self.accept("("):
            node = self.formula()
            self.expect(")")
            return node
        return self.atom()

    def item(self, sign: int) -> Term:
        t = self.tok
        if t.kind == "int":
            self.i += 1
            if self.accept("*"):
                return Term.var(self.var(), sign * int(t.value))
            if int(t.value) != 0:
                raise self.syntax("integer constants other than 0 need a variable: write k*x", t)
            return Term()
        return Term.var(self.var(), sign)

    def var(self) -> str:
        t = self.tok
        if t.kind != "name" or t.value in KEYWORDS:
            found = t.value or "end of input"
            raise self.syntax(f"expected a variable, found {found!r}", t)
        if self.variables is not None and t.value not in self.variables:
            raise self._err(UnknownVariableError, f"unknown variable {t.value!r}", t)
        self.i += 1
        return t.value

    def term(self) -> Term:
        sign = -1 if self.accept("-") else 1
        total = self.item(sign)
        while self.at("+") or self.at("-"):
            sign = 1 if self.tok.value == "+" else -1
            self.i += 1
            total = total + self.item(sign)
        return total

    def spine_term(self):
        t = self.tok
        if self.accept("sp"):
            self.expect("(")
            p = self.prime()
            self.expect("^")
            rt = self.tok
            r = self.nat("an exponent r")
            if r < 1:
                raise self.range_error("exponent r must be >= 1", rt)
            self.expect(",")
            term = self.term()
            self.expect(")")
            return Sp(p, r, term)
        if self.accept("tp") or self.accept("tplus"):
            cls = Tp if t.value == "tp" else Tplus
            self.expect("(")
            p = self.prime()
            self.expect(",")
            term = self.term()
            self.expect(")")
            return cls(p, term)
        found = t.value or "end of input"
        raise self.syntax(f"expected sp(...), tp(...) or tplus(...), found {found!r}", t)

    def atom(self):
        t = self.tok
        if t.kind == "name" and self.peek().value == "(":
            if t.value in ("sp", "tp", "tplus"):
                left = self.spine_term()
                op_tok = self.tok
                if op_tok.value not in SPINE_OPS:
                    raise self.syntax(f"expected a comparison, found {op_tok.value or 'end of input'!r}")
                self.i += 1
                return SpCmp(op_tok.value, left, self.spine_term())
            if t.value in ("discr", "zero"):
                self.i += 2
                arg = self.spine_term()
                self.expect(")")
                return Discr(arg) if t.value == "discr" else Zero(arg)
            if t.value == "cong":
                self.i += 2
                mt = self.tok
                m = self.nat("a modulus")
                if m < 2:
                    raise self.range_error("modulus must be >= 2", mt)
                self.expect(";")
                left = self.term()
                self.expect(",")
                right = self.term()
                self.expect(")")
                return Cong(m, left, right)
            if t.value == "keq":
                self.i += 2
                kt = self.tok
                k = self.signed_int("an integer k")
                if k == 0:
                    raise self.range_error("keq: k must be nonzero", kt)
                self.expect(";")
                term = self.term()
                self.expect(")")
                return Keq(k, term)
            if t.value == "modeq":
                self.i += 2
                mt = self.tok
                m = self.nat("a modulus")
                if m < 2:
                    raise self.range_error("modulus must be >= 2", mt)
                self.expect(",")
                kt = self.tok
                k = self.signed_int("an integer k")
                if not 1 <= k < m:
                    if k % m == 0:
                        raise self.range_error(f"modeq: k must satisfy 1 <= k < {m}", kt)
                    warnings.warn(
                        f"modeq: k = {k} normalized to {k % m} (mod {m})", ParameterNormalizedWarning, stacklevel=2
                    )
                    k %= m
                self.expect(";")
                term = self.term()
                self.expect(")")
                return ModEq(m, k, term)
            if t.value == "D":
                self.i += 2
                p = self.prime()
                self.expect(",")
                rt = self.tok
                r = self.nat("r")
                self.expect(",")
                st = self.tok
                s = self.nat("s")
                if r < 1:
                    raise self.range_error("D: r must be >= 1", rt)
                if s < r:
                    raise self.range_error("D: s must be >= r", st)
                self.expect(";")
                term = self.term()
                self.expect(")")
                return Dpred(p, r, s, term)
        left = self.term()
        op_tok = self.tok
        if op_tok.value == "<":
            self.i += 1
            return Lt(left, self.term())
        if op_tok.value == ">":
            self.i += 1
            return Lt(self.term(), left)
        if op_tok.value == "=":
            self.i += 1
            return Eq(left, self.term())
        found = op_tok.value or "end of input"
        raise self.syntax(f"expected '<', '=' or '>', found {found!r}", op_tok)


def parse_formula(text: str, variables: Optional[Iterable[str]] = None):
    """Parse text into a formula AST.

    When ``variables`` is given, any other variable name is rejected with
    :class:`UnknownVariableError`.
    """
    p = _Parser(text, set(variables) if variables is not None else None)
    node = p.formula()
    if p.tok.kind != "eof":
        raise p.syntax(f"unexpected {p.tok.value!r}")
    return node


# ---------------------------------------------------------------- printing


def print_term(t: Term) -> str:
    if not t.coeffs:
        return "0"
    parts = []
    for i, (v, c) in enumerate(t.coeffs):
        mag = v if abs(c) == 1 else f"{abs(c)}*{v}"
        if i == 0:
            parts.append(mag if c > 0 else f"-{mag}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {mag}")
    return " ".join(parts)


def print_spine_term(s) -> str:
    if isinstance(s, Sp):
        return f"sp({s.p}^{s.r}, {print_term(s.term)})"
    name = "tp" if isinstance(s, Tp) else "tplus"
    return f"{name}({s.p}, {print_term(s.term)})"


def _prec(f) -> int:
    if isinstance(f, Or):
        return 1
    if isinstance(f, And):
        return 2
    if isinstance(f, Not):
        return 3
    return 4


def _print(f, min_prec: int) -> str:
    s = _print_node(f)
    return f"({s})" if _prec(f) < min_prec else s


def _print_node(f) -> str:
    if isinstance(f, Or):
        return f"{_print(f.left, 1)} or {_print(f.right, 2)}"
    if isinstance(f, And):
        return f"{_print(f.left, 2)} and {_print(f.right, 3)}"
    if isinstance(f, Not):
        return f"not {_print(f.arg, 3)}"
    if isinstance(f, Lt):
        return f"{print_term(f.left)} < {print_term(f.right)}"
    if isinstance(f, Eq):
        return f"{print_term(f.left)} = {print_term(f.right)}"
    if isinstance(f, Cong):
        return f"cong({f.m}; {print_term(f.left)}, {print_term(f.right)})"
    if isinstance(f, Keq):
        return f"keq({f.k}; {print_term(f.term)})"
    if isinstance(f, ModEq):
        return f"modeq({f.m}, {f.k}; {print_term(f.term)})"
    if isinstance(f, Dpred):
        return f"D({f.p}, {f.r}, {f.s}; {print_term(f.term)})"
    if isinstance(f, SpCmp):
        return f"{print_spine_term(f.left)} {f.op} {print_spine_term(f.right)}"
    if isinstance(f, Discr):
        return f"discr({print_spine_term(f.arg)})"
    if isinstance(f, Zero):
        return f"zero({print_spine_term(f.arg)})"
    raise TypeError(f"not a formula node: {f!r}")


def print_formula(f) -> str:
    return _print(f, 0)
