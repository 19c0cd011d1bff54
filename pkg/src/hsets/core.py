"""The HSet container: a handle onto a shared hash table.

Several :class:`HSet` handles may point at one store.  ``refer`` makes another
handle on the same store (mutations are visible through both), ``clone`` makes
an independent copy.  A store holds ``key -> multiplicity`` for multisets and
``key -> PRESENT`` for sets; an absent key means multiplicity zero.
"""

from __future__ import annotations

import math
import numbers
from typing import Iterable, Iterator

from .codec import Element, InvalidMemberError, _key_of, decode, format_number

__all__ = [
    "HSet",
    "PRESENT",
    "as_generalized",
    "as_not_generalized",
    "cardinality",
    "clone_of_hset",
    "is_generalized",
    "members",
    "multiplicities",
    "multiplicity_of",
    "new_hset",
    "refer_to_hset",
    "size_support",
]


class _Presence:
    __slots__ = ()

    def __repr__(self):
        return "PRESENT"


#: value stored for every member of a set
PRESENT = _Presence()


class _Store:
    """Shared state behind one or more handles."""

    __slots__ = ("table", "generalized")

    def __init__(self, table: dict, generalized: bool):
        self.table = table
        self.generalized = generalized


def _check_multiplicity(m) -> int | float:
    if isinstance(m, bool) or not isinstance(m, numbers.Real):
        raise ValueError(f"multiplicity must be a real number, got {m!r}")
    if isinstance(m, numbers.Integral):
        m = int(m)
    else:
        m = float(m)
        if not math.isfinite(m):
            raise ValueError(f"multiplicity must be finite, got {m!r}")
    if m <= 0:
        raise ValueError(f"multiplicity must be positive, got {m!r}")
    return m


class HSet:
    """A set or multiset of numbers and nested sets of numbers.

    ``HSet([1, 2, 2])`` is the set {1,2}; ``HSet([5, 7], [2.5, 1])`` is the
    multiset {5[2.5],7[1]}.  Passing multiplicities forces ``generalized``;
    duplicate members are collapsed in sets and summed in multisets.  Top-level
    empty members (``[]``, ``None``) stand for the empty set and are skipped.

    Binary operators (``& | + - ^``) use value semantics and leave both
    operands alone; the augmented forms (``&= |= += -= ^=``) use reference
    semantics and update the left operand's store in place.
    """

    __slots__ = ("_store",)

    def __init__(
        self,
        members: Iterable = (),
        multiplicities: Iterable | None = None,
        generalized: bool = False,
    ):
        members = [] if members is None else list(members)
        table: dict = {}
        if multiplicities is not None:
            mults = list(multiplicities)
            if mults:
                generalized = True
            if len(mults) != len(members):
                raise ValueError(
                    f"{len(members)} members but {len(mults)} multiplicities"
                )
        else:
            mults = None
        for idx, raw in enumerate(members):
            key = _key_of(raw)
            m = 1 if mults is None else _check_multiplicity(mults[idx])
            if key is None:
                continue
            if generalized:
                table[key] = table.get(key, 0) + m
            else:
                table[key] = PRESENT
        self._store = _Store(table, bool(generalized))

    @classmethod
    def _from_store(cls, store: _Store) -> "HSet":
        h = cls.__new__(cls)
        h._store = store
        return h

    # ---- accessors -------------------------------------------------------

    @property
    def is_generalized(self) -> bool:
        return self._store.generalized

    def size_support(self) -> int:
        return len(self._store.table)

    def cardinality(self) -> int | float:
        if not self._store.generalized:
            return len(self._store.table)
        return sum(self._store.table.values())

    def members(self) -> list[str]:
        """Keys of the elements, ascending bytewise."""
        return sorted(self._store.table)

    def multiplicities(self) -> list:
        """Multiplicities aligned with :meth:`members`; all 1 for a set."""
        table = self._store.table
        if not self._store.generalized:
            return [1] * len(table)
        return [table[k] for k in sorted(table)]

    def elements(self) -> list[Element]:
        return [decode(k) for k in self.members()]

    def multiplicity_of(self, member) -> int | float:
        try:
            key = _key_of(member)
        except InvalidMemberError:
            return 0
        return self._get(key)

    def _get(self, key) -> int | float:
        v = self._store.table.get(key)
        if v is None:
            return 0
        return 1 if v is PRESENT else v

    def keys(self) -> Iterator[str]:
        """Keys in store order (unsorted)."""
        return iter(self._store.table)

    def shares_store(self, other: "HSet") -> bool:
        return self._store is other._store

    # ---- copies and conversions -----------------------------------------

    def refer(self, generalized: bool | None = None) -> "HSet":
        """New handle on the same store, optionally converting it in place."""
        h = HSet._from_store(self._store)
        if generalized is not None and generalized != self._store.generalized:
            h.as_generalized() if generalized else h.as_not_generalized()
        return h

    def clone(self, generalized: bool | None = None) -> "HSet":
        """Independent copy; the conversion, if any, applies to the copy only."""
        store = self._store
        if generalized is None or generalized == store.generalized:
            return HSet._from_store(_Store(store.table.copy(), store.generalized))
        if generalized:
            table = dict.fromkeys(store.table, 1)
        else:
            table = dict.fromkeys(store.table, PRESENT)
        return HSet._from_store(_Store(table, generalized))

    def as_generalized(self) -> "HSet":
        store = self._store
        if not store.generalized:
            table = store.table
            for k in table:
                table[k] = 1
            store.generalized = True
        return self

    def as_not_generalized(self) -> "HSet":
        store = self._store
        if store.generalized:
            table = store.table
            for k in table:
                table[k] = PRESENT
            store.generalized = False
        return self

    # ---- mutation ---------------------------------------------------------

    def add(self, member, multiplicity=1) -> "HSet":
        """Insert ``member``; in a multiset its multiplicity grows by ``multiplicity``."""
        key = _key_of(member)
        m = _check_multiplicity(multiplicity)
        if key is not None:
            table = self._store.table
            if self._store.generalized:
                table[key] = table.get(key, 0) + m
            else:
                table[key] = PRESENT
        return self

    def discard(self, member, multiplicity=None) -> "HSet":
        """Remove ``member``, or lower its multiplicity by ``multiplicity``."""
        try:
            key = _key_of(member)
        except InvalidMemberError:
            return self
        table = self._store.table
        if key not in table:
            return self
        if multiplicity is None or not self._store.generalized:
            del table[key]
            return self
        left = table[key] - _check_multiplicity(multiplicity)
        if left > 0:
            table[key] = left
        else:
            del table[key]
        return self

    def clear(self) -> "HSet":
        self._store.table.clear()
        return self

    # ---- rendering --------------------------------------------------------

    def render(self) -> str:
        """``{1,2}`` for a set, ``{1[2],2[0.5]}`` for a multiset."""
        table = self._store.table
        keys = sorted(table)
        if not self._store.generalized:
            return "{" + ",".join(keys) + "}"
        return "{" + ",".join(f"{k}[{format_number(table[k])}]" for k in keys) + "}"

    def __str__(self):
        return self.render()

    def __repr__(self):
        kind = "multiset" if self._store.generalized else "set"
        return f"HSet<{kind}>({self.render()})"

    # ---- Python protocols ---------------------------------------------------

    def __len__(self):
        return len(self._store.table)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements())

    def __bool__(self):
        return bool(self._store.table)

    def __contains__(self, member):
        from .relations import inclusion_member

        return inclusion_member(member, self)

    __hash__ = None

    def __eq__(self, other):
        if not isinstance(other, HSet):
            return NotImplemented
        from .relations import equal

        return equal(self, other)

    def __le__(self, other):
        if not isinstance(other, HSet):
            return NotImplemented
        from .relations import included

        return included(self, other)

    def __lt__(self, other):
        if not isinstance(other, HSet):
            return NotImplemented
        from .relations import included

        return included(self, other, strictly=True)

    def __ge__(self, other):
        if not isinstance(other, HSet):
            return NotImplemented
        return other.__le__(self)

    def __gt__(self, other):
        if not isinstance(other, HSet):
            return NotImplemented
        return other.__lt__(self)

    def _binop(self, other, name, semantic):
        if not isinstance(other, HSet):
            return NotImplemented
        from . import operations

        return getattr(operations, name)(self, other, semantic=semantic)

    def __and__(self, other):
        return self._binop(other, "intersection", "value")

    def __or__(self, other):
        return self._binop(other, "union", "value")

    def __add__(self, other):
        return self._binop(other, "setsum", "value")

    def __sub__(self, other):
        return self._binop(other, "difference", "value")

    def __xor__(self, other):
        return self._binop(other, "symmdiff", "value")

    def __iand__(self, other):
        return self._binop(other, "intersection", "refer")

    def __ior__(self, other):
        return self._binop(other, "union", "refer")

    def __iadd__(self, other):
        return self._binop(other, "setsum", "refer")

    def __isub__(self, other):
        return self._binop(other, "difference", "refer")

    def __ixor__(self, other):
        return self._binop(other, "symmdiff", "refer")


# Functional spellings of the container API.

def new_hset(members=(), multiplicities=None, generalized: bool = False) -> HSet:
    return HSet(members, multiplicities, generalized)


def size_support(h: HSet) -> int:
    return h.size_support()


def cardinality(h: HSet):
    return h.cardinality()


def members(h: HSet) -> list[str]:
    return h.members()


def multiplicities(h: HSet) -> list:
    return h.multiplicities()


def multiplicity_of(h: HSet, member):
    return h.multiplicity_of(member)


def refer_to_hset(h: HSet, generalized: bool | None = None) -> HSet:
    return h.refer(generalized)


def clone_of_hset(h: HSet, generalized: bool | None = None) -> HSet:
    return h.clone(generalized)


def as_generalized(h: HSet) -> HSet:
    return h.as_generalized()


def as_not_generalized(h: HSet) -> HSet:
    return h.as_not_generalized()


def is_generalized(h: HSet) -> bool:
    return h.is_generalized
