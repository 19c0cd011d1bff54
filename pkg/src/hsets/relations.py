"""Membership, inclusion and equality between HSets.

All relations read sets as multisets with multiplicity 1 and never touch the
operands' stores.  Subset relations scan only the left operand; the right
operand is consulted by key lookup and by its support size.
"""

from __future__ import annotations

import enum
import math
import numbers
from typing import Iterable

from .codec import InvalidMemberError, _key_of
from .core import PRESENT, HSet

__all__ = ["RelationKind", "equal", "included", "inclusion_batch", "inclusion_member"]


class RelationKind(str, enum.Enum):
    """How a requested multiplicity ``m`` compares with the stored one ``n``."""

    LE = "<="  # n >= m
    LT = "<"  # n > m
    EQ = "="  # n == m


def inclusion_member(member, h: HSet, multiplicity=1, kind=RelationKind.LE) -> bool:
    """Is ``member`` in ``h`` with at least / more than / exactly ``multiplicity``?

    For a set, ``multiplicity`` and ``kind`` are ignored and plain membership
    is returned.  Invalid members (NaN, strings, ...) are never included.
    """
    try:
        key = _key_of(member)
    except InvalidMemberError:
        return False
    if key is None:
        return False
    v = h._store.table.get(key)
    if v is None:
        return False
    if not h._store.generalized:
        return True
    if (
        isinstance(multiplicity, bool)
        or not isinstance(multiplicity, numbers.Real)
        or not math.isfinite(multiplicity)
        or multiplicity <= 0
    ):
        return False
    diff = multiplicity - v
    kind = RelationKind(kind)
    if kind is RelationKind.LE:
        return diff <= 0
    if kind is RelationKind.LT:
        return diff < 0
    return diff == 0


def inclusion_batch(members: Iterable, h: HSet) -> list[bool]:
    """Plain membership for each value in ``members``."""
    table = h._store.table
    out = []
    for raw in members:
        try:
            key = _key_of(raw)
        except InvalidMemberError:
            out.append(False)
            continue
        out.append(key is not None and key in table)
    return out


def included(h1: HSet, h2: HSet, strictly: bool = False, exactly: bool = False) -> bool:
    """Subset relations between sets/multisets.

    ============ ========= =====================================================
    strictly     exactly   relation
    ============ ========= =====================================================
    False        False     every multiplicity of h1 is <= the one in h2
    True         False     the above, and h2 is larger somewhere
    False        True      equal multiplicities on h1's support, size(h1) <= size(h2)
    True         True      equal multiplicities on h1's support, size(h1) < size(h2)
    ============ ========= =====================================================

    With two sets ``exactly`` makes no difference and is ignored.
    """
    s1, s2 = h1._store, h2._store
    g1, g2 = s1.generalized, s2.generalized
    t1, t2 = s1.table, s2.table
    if not g1 and not g2:
        exactly = False
    larger_somewhere = False
    for key, v1 in t1.items():
        if v1 is PRESENT:
            v1 = 1
        v2 = t2.get(key)
        if v2 is None:
            return False
        if v2 is PRESENT:
            v2 = 1
        diff = v2 - v1
        if diff < 0:
            return False
        if diff > 0:
            if exactly:
                return False
            larger_somewhere = True
    n1, n2 = len(t1), len(t2)
    if exactly:
        return n1 < n2 if strictly else n1 <= n2
    if strictly:
        return larger_somewhere or n1 < n2
    return True


def equal(h1: HSet, h2: HSet) -> bool:
    """Same multiplicity for every element; a set equals its all-ones multiset."""
    if h1.size_support() != h2.size_support():
        return False
    for key in h1.keys():
        if h1._get(key) != h2._get(key):
            return False
    return True
