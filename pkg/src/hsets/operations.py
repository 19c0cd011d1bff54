"""N-ary operations on HSets under reference or value semantics.

Every operation is an elementwise combinator over multiplicities.  With only
sets involved the combinator works on booleans (presence); as soon as one
operand is a multiset, sets are read as 0/1 multiplicities and the result is a
multiset.

Under ``Semantic.REFER`` the first operand's store receives the result and the
returned handle aliases it.  Under ``Semantic.VALUE`` a clone of the first
operand receives the result.  Operands after the first are never modified.

When the identity of an operation is the empty set (everything but
intersection) only the keys of the later operands are visited, so with
reference semantics the cost does not depend on the size of the first operand.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .core import PRESENT, HSet

__all__ = [
    "DIFFERENCE",
    "INTERSECTION",
    "OpRule",
    "SETSUM",
    "SYMMDIFF",
    "Semantic",
    "UNION",
    "difference",
    "hset_operation",
    "intersection",
    "nimp",
    "niff",
    "pdif",
    "sdif",
    "setsum",
    "symmdiff",
    "union",
]


class Semantic(str, enum.Enum):
    REFER = "refer"
    VALUE = "value"


# Combinators.  Each takes the multiplicities (or presences) of one key across
# all operands, first operand first.  Single operand -> identity.

def nimp(values: Sequence[bool]) -> bool:
    """Left fold of "not implies": v0 and not v1 and not v2 ..."""
    return values[0] and not any(values[1:])


def niff(values: Sequence[bool]) -> bool:
    """Left fold of exclusive or."""
    out = False
    for v in values:
        out = out != v
    return out


def pdif(values: Sequence) -> int | float:
    """Positive difference, max(v0 - v1 - ..., 0)."""
    out = values[0]
    for v in values[1:]:
        out -= v
    return out if out > 0 else 0


def sdif(values: Sequence) -> int | float:
    """Left fold of |a - b|."""
    out = values[0]
    for v in values[1:]:
        out = abs(out - v)
    return out


@dataclass(frozen=True)
class OpRule:
    name: str
    logical: Callable[[Sequence[bool]], bool]
    numeric: Callable[[Sequence], int | float]
    identity_is_universe: bool = False


INTERSECTION = OpRule("intersection", all, min, identity_is_universe=True)
UNION = OpRule("union", any, max)
SETSUM = OpRule("sum", any, sum)
DIFFERENCE = OpRule("difference", nimp, pdif)
SYMMDIFF = OpRule("symmdiff", niff, sdif)


def _keys_to_visit(target_table: dict, rest_tables: list, universe: bool):
    if not universe and len(rest_tables) == 1:
        return list(rest_tables[0])
    keys: dict = {}
    if universe:
        keys.update(dict.fromkeys(target_table))
    for t in rest_tables:
        keys.update(dict.fromkeys(t))
    return list(keys)


def hset_operation(
    h1: HSet,
    rest: Sequence[HSet] = (),
    rule: OpRule = UNION,
    semantic: Semantic | str = Semantic.REFER,
) -> HSet:
    """Combine ``h1`` with ``rest`` elementwise according to ``rule``."""
    semantic = Semantic(semantic)
    rest = list(rest)
    numeric = h1.is_generalized or any(h.is_generalized for h in rest)

    # an operand sharing h1's store must be read before the store changes
    rest_stores = []
    for h in rest:
        s = h._store
        if semantic is Semantic.REFER and s is h1._store:
            s = h.clone()._store
        rest_stores.append(s)

    if semantic is Semantic.REFER:
        target = h1.refer(True) if numeric else h1.refer()
    else:
        target = h1.clone(True) if numeric else h1.clone()

    table = target._store.table
    rest_tables = [s.table for s in rest_stores]
    keys = _keys_to_visit(table, rest_tables, rule.identity_is_universe)

    if numeric:
        combine = rule.numeric
        # rest operands that are sets read as multiplicity 1
        readers = [(s.table, s.generalized) for s in rest_stores]
        for key in keys:
            values = [table.get(key, 0)]
            for t, g in readers:
                v = t.get(key)
                values.append(0 if v is None else (v if g else 1))
            v = combine(values)
            if v == 0:
                table.pop(key, None)
            elif v > 0 and math.isfinite(v):
                table[key] = v
            else:
                raise ArithmeticError(
                    f"{rule.name} produced invalid multiplicity {v!r} for {key}"
                )
    else:
        combine = rule.logical
        for key in keys:
            values = [key in table]
            values.extend(key in t for t in rest_tables)
            if combine(values):
                table[key] = PRESENT
            else:
                table.pop(key, None)
    return target


def intersection(h1: HSet, *rest: HSet, semantic=Semantic.REFER) -> HSet:
    return hset_operation(h1, rest, INTERSECTION, semantic)


def union(h1: HSet, *rest: HSet, semantic=Semantic.REFER) -> HSet:
    return hset_operation(h1, rest, UNION, semantic)


def setsum(h1: HSet, *rest: HSet, semantic=Semantic.REFER) -> HSet:
    """Multiplicities add; for two sets this is the union."""
    return hset_operation(h1, rest, SETSUM, semantic)


def difference(h1: HSet, *rest: HSet, semantic=Semantic.REFER) -> HSet:
    """h1 minus every later operand, left to right, clamped at zero."""
    return hset_operation(h1, rest, DIFFERENCE, semantic)


def symmdiff(h1: HSet, *rest: HSet, semantic=Semantic.REFER) -> HSet:
    """Left fold of |a - b|; not associative for multisets."""
    return hset_operation(h1, rest, SYMMDIFF, semantic)
