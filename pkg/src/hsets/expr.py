"""Set-expression calculator: tokenizer, recursive-descent parser, evaluator.

Grammar::

    expr    := opexpr [REL opexpr] | member "in" opexpr
    opexpr  := term (OP term)*            left associative, one precedence level
    OP      := "&" | "|" | "+" | "-" | "^"   optionally followed by "~" (value semantics)
    REL     := "<=" | "<" | "==" | "=<=" | "=<" | "in"
    term    := literal | "(" expr ")"
    literal := "{" [item ("," item)*] "}"
    item    := number ["[" number "]"] | literal ["[" number "]"]
    member  := number | literal

A literal with any ``[m]`` item is a multiset.  Nested literals are elements
and must be plain sets.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .codec import Element
from .core import HSet
from .operations import Semantic, difference, intersection, setsum, symmdiff, union
from .relations import equal, included, inclusion_member

__all__ = [
    "BinOp",
    "ExprSyntaxError",
    "In",
    "Literal",
    "Rel",
    "eval_text",
    "evaluate",
    "parse",
    "render_result",
]


class ExprSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int, text: str):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.pos = pos


@dataclass(frozen=True)
class Literal:
    items: tuple  # (element, multiplicity or None)
    generalized: bool


@dataclass(frozen=True)
class BinOp:
    op: str
    lhs: "Expr"
    rhs: "Expr"
    semantic: Semantic = Semantic.REFER


@dataclass(frozen=True)
class Rel:
    rel: str
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class In:
    member: Element
    rhs: "Expr"


Expr = Union[Literal, BinOp, Rel, In]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
    |(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)
    |(?P<rel>=<=|=<|==|<=|<)
    |(?P<in>in\b)
    |(?P<op>[&|+\-^]~?)
    |(?P<punct>[{}\[\](),])
    """,
    re.VERBOSE,
)

_OPS = {
    "&": intersection,
    "|": union,
    "+": setsum,
    "-": difference,
    "^": symmdiff,
}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def fail(self, msg: str, pos: int | None = None):
        raise ExprSyntaxError(msg, self.tok[2] if pos is None else pos, self.text)

    def accept(self, value: str) -> bool:
        if self.tok[1] == value and self.tok[0] != "num":
            self.i += 1
            return True
        return False

    def expect(self, value: str):
        if not self.accept(value):
            found = self.tok[1] or "end of input"
            self.fail(f"expected {value!r}, found {found!r}")

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok[0] != "end":
            self.fail(f"unexpected {self.tok[1]!r}")
        return e

    def expr(self) -> Expr:
        if self._starts_member():
            member = self.member()
            if self.tok[0] != "in":
                self.fail("expected 'in' after a bare number")
            self.i += 1
            return In(member, self.opexpr())
        lhs = self.opexpr()
        kind, value, _ = self.tok
        if kind == "in":
            if not (isinstance(lhs, Literal) and not lhs.generalized):
                self.fail("left side of 'in' must be a number or a plain set literal")
            self.i += 1
            return In(frozenset(e for e, _ in lhs.items), self.opexpr())
        if kind == "rel":
            self.i += 1
            return Rel(value, lhs, self.opexpr())
        return lhs

    def _starts_member(self) -> bool:
        kind, value, _ = self.tok
        if kind == "num":
            return True
        return kind == "op" and value == "-" and self.tokens[self.i + 1][0] == "num"

    def member(self) -> Element:
        return self.number()

    def opexpr(self) -> Expr:
        lhs = self.term()
        while self.tok[0] == "op":
            value = self.tok[1]
            self.i += 1
            semantic = Semantic.VALUE if value.endswith("~") else Semantic.REFER
            lhs = BinOp(value.rstrip("~"), lhs, self.term(), semantic)
        return lhs

    def term(self) -> Expr:
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        if self.tok[1] == "{":
            return self.literal(nested=False)
        found = self.tok[1] or "end of input"
        self.fail(f"expected a set literal or '(', found {found!r}")

    def number(self):
        negative = False
        if self.tok[0] == "op" and self.tok[1] == "-":
            negative = True
            self.i += 1
        kind, value, _ = self.tok
        if kind != "num":
            self.fail("expected a number")
        self.i += 1
        x = float(value) if any(c in value for c in ".eE") else int(value)
        return -x if negative else x

    def multiplicity(self):
        pos = self.tok[2]
        m = self.number()
        if m <= 0:
            self.fail(f"multiplicity must be positive, got {m}", pos)
        self.expect("]")
        return m

    def literal(self, nested: bool) -> Literal:
        self.expect("{")
        items = []
        generalized = False
        if not self.accept("}"):
            while True:
                if self.tok[1] == "{":
                    inner = self.literal(nested=True)
                    element = frozenset(e for e, _ in inner.items)
                else:
                    element = self.number()
                m = None
                bracket = self.tok[2]
                if self.accept("["):
                    if nested:
                        self.fail("multisets cannot be elements", bracket)
                    m = self.multiplicity()
                    generalized = True
                items.append((element, m))
                if self.accept("}"):
                    break
                self.expect(",")
        return Literal(tuple(items), generalized)


def parse(text: str) -> Expr:
    """Parse one expression; raises :class:`ExprSyntaxError` with a position."""
    return _Parser(text).parse()


def _build(lit: Literal) -> HSet:
    elements = [e for e, _ in lit.items]
    if not lit.generalized:
        return HSet(elements)
    return HSet(elements, [1 if m is None else m for _, m in lit.items])


def evaluate(e: Expr) -> HSet | bool:
    if isinstance(e, Literal):
        return _build(e)
    if isinstance(e, BinOp):
        lhs, rhs = _as_hset(evaluate(e.lhs)), _as_hset(evaluate(e.rhs))
        return _OPS[e.op](lhs, rhs, semantic=e.semantic)
    if isinstance(e, In):
        return inclusion_member(e.member, _as_hset(evaluate(e.rhs)))
    lhs, rhs = _as_hset(evaluate(e.lhs)), _as_hset(evaluate(e.rhs))
    if e.rel == "<=":
        return included(lhs, rhs)
    if e.rel == "<":
        return included(lhs, rhs, strictly=True)
    if e.rel == "=<=":
        return included(lhs, rhs, exactly=True)
    if e.rel == "=<":
        return included(lhs, rhs, strictly=True, exactly=True)
    return equal(lhs, rhs)


def _as_hset(value) -> HSet:
    if isinstance(value, bool):
        raise TypeError("a relation result cannot be used as a set operand")
    return value


def render_result(value: HSet | bool) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return value.render()


def eval_text(text: str) -> str:
    """Parse, evaluate and render one expression."""
    return render_result(evaluate(parse(text)))
