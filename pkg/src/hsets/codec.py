"""Element domain and the canonical key encoding.

An element is either a finite number or a finite set of elements.  In Python
numbers are ``int``/``float`` values and sets are ``frozenset`` instances, so
element equality is ordinary ``==`` (``1 == 1.0`` and ``frozenset`` compares
as a set).  Every element has a unique string key; keys are what the hash
tables store.

Key grammar::

    number := canonical decimal (shortest round-trip; integers without '.')
    set    := "{" [key ("," key)*] "}"   keys strictly ascending bytewise
"""

from __future__ import annotations

import math
import numbers
from typing import Union

import numpy as np

Element = Union[int, float, frozenset]

__all__ = [
    "Element",
    "InvalidMemberError",
    "MalformedKeyError",
    "decode",
    "encode",
    "format_number",
    "is_empty_member",
    "validate_member",
]


class InvalidMemberError(ValueError):
    """Raised when a host value cannot be an element."""


class MalformedKeyError(ValueError):
    """Raised when a string is not a canonical key."""


_NUMBER_CHARS = frozenset("-+.0123456789e")


def format_number(x) -> str:
    """Canonical rendering of a finite real number."""
    if isinstance(x, int):
        return str(x)
    if x.is_integer():
        return str(int(x))
    return repr(float(x))


def _as_number(raw):
    # bool is an Integral subclass but is not a number here
    if isinstance(raw, (bool, np.bool_)):
        raise InvalidMemberError(f"booleans are not valid elements: {raw!r}")
    if isinstance(raw, numbers.Integral):
        return int(raw)
    if isinstance(raw, numbers.Real):
        x = float(raw)
        if not math.isfinite(x):
            raise InvalidMemberError(f"non-finite number: {raw!r}")
        return int(x) if x.is_integer() else x
    return None


class _Empty:
    __slots__ = ()

    def __repr__(self):
        return "EMPTY"


EMPTY = _Empty()


def _validate(raw, nested: bool):
    if raw is None:
        return frozenset() if nested else EMPTY
    num = _as_number(raw)
    if num is not None:
        return num
    if isinstance(raw, np.ndarray):
        # numpy vectors follow the scalar-vs-vector convention of numeric vectors
        if raw.size == 0:
            return frozenset() if nested else EMPTY
        if raw.size == 1:
            return _validate(raw.reshape(()).item(), nested)
        return frozenset(_validate(x, True) for x in raw.ravel().tolist())
    if isinstance(raw, (str, bytes)):
        raise InvalidMemberError(f"non-numeric element: {raw!r}")
    if isinstance(raw, (list, tuple, set, frozenset, range)):
        if len(raw) == 0:
            return frozenset() if nested else EMPTY
        return frozenset(_validate(x, True) for x in raw)
    raise InvalidMemberError(f"unsupported element type: {type(raw).__name__}")


def validate_member(raw) -> Element | None:
    """Convert a host value into an element.

    Numbers become themselves (integer-valued floats are unified with ints);
    lists, tuples, sets and numpy vectors of two or more values become
    frozensets, recursively.  Empty containers and ``None`` at top level stand
    for the empty set and are returned as ``None`` so callers can skip them;
    nested inside a set they are the element ``frozenset()``.

    Raises :class:`InvalidMemberError` for NaN, infinities, booleans, strings
    and other non-numeric leaves.
    """
    value = _validate(raw, False)
    return None if value is EMPTY else value


def is_empty_member(raw) -> bool:
    """True when ``raw`` is an empty-set stand-in that is never inserted."""
    try:
        return _validate(raw, False) is EMPTY
    except InvalidMemberError:
        return False


def encode(e: Element) -> str:
    """Return the canonical key of a valid element."""
    if isinstance(e, frozenset):
        return "{" + ",".join(sorted({encode(x) for x in e})) + "}"
    return format_number(e)


def _key_of(raw) -> str | None:
    """Key of a host value; ``None`` for empty stand-ins.  Hot path."""
    t = type(raw)
    if t is int:
        return str(raw)
    if t is float:
        if raw.is_integer():
            return str(int(raw))
        if math.isfinite(raw):
            return repr(raw)
        raise InvalidMemberError(f"non-finite number: {raw!r}")
    value = validate_member(raw)
    return None if value is None else encode(value)


class _KeyParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, msg: str):
        raise MalformedKeyError(f"{msg} at position {self.pos} in {self.text!r}")

    def parse(self) -> Element:
        value = self.element()
        if self.pos != len(self.text):
            self.fail("trailing characters")
        return value

    def element(self) -> Element:
        if self.pos >= len(self.text):
            self.fail("unexpected end of key")
        if self.text[self.pos] == "{":
            return self.set_()
        return self.number()

    def set_(self) -> frozenset:
        self.pos += 1
        items = []
        if self.pos < len(self.text) and self.text[self.pos] == "}":
            self.pos += 1
            return frozenset()
        while True:
            start = self.pos
            item = self.element()
            items.append((self.text[start:self.pos], item))
            if self.pos >= len(self.text):
                self.fail("unterminated set")
            c = self.text[self.pos]
            self.pos += 1
            if c == "}":
                break
            if c != ",":
                self.fail(f"unexpected {c!r}")
        subkeys = [k for k, _ in items]
        if any(a >= b for a, b in zip(subkeys, subkeys[1:])):
            self.fail("set members not strictly ascending")
        return frozenset(v for _, v in items)

    def number(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in _NUMBER_CHARS:
            self.pos += 1
        token = self.text[start:self.pos]
        if not token:
            self.fail("expected a number")
        try:
            value = int(token) if token.lstrip("-").isdigit() else float(token)
        except ValueError:
            self.fail(f"bad number {token!r}")
        if isinstance(value, float) and not math.isfinite(value):
            self.fail(f"non-finite number {token!r}")
        if format_number(value) != token:
            self.fail(f"non-canonical number {token!r}")
        return value


def decode(key: str) -> Element:
    """Inverse of :func:`encode`; rejects anything outside the canonical grammar."""
    if not isinstance(key, str):
        raise MalformedKeyError(f"key must be a string, got {type(key).__name__}")
    return _KeyParser(key).parse()
