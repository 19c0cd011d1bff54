"""Hash-table backed sets and multisets of numbers with reference and value semantics."""

from .codec import (
    Element,
    InvalidMemberError,
    MalformedKeyError,
    decode,
    encode,
    validate_member,
)
from .core import (
    PRESENT,
    HSet,
    as_generalized,
    as_not_generalized,
    cardinality,
    clone_of_hset,
    is_generalized,
    members,
    multiplicities,
    multiplicity_of,
    new_hset,
    refer_to_hset,
    size_support,
)
from .operations import (
    OpRule,
    Semantic,
    difference,
    hset_operation,
    intersection,
    setsum,
    symmdiff,
    union,
)
from .relations import RelationKind, equal, included, inclusion_batch, inclusion_member

__version__ = "0.1.0"

__all__ = [
    "Element",
    "HSet",
    "InvalidMemberError",
    "MalformedKeyError",
    "OpRule",
    "PRESENT",
    "RelationKind",
    "Semantic",
    "as_generalized",
    "as_not_generalized",
    "cardinality",
    "clone_of_hset",
    "decode",
    "difference",
    "encode",
    "equal",
    "hset_operation",
    "included",
    "inclusion_batch",
    "inclusion_member",
    "intersection",
    "is_generalized",
    "members",
    "multiplicities",
    "multiplicity_of",
    "new_hset",
    "refer_to_hset",
    "setsum",
    "size_support",
    "symmdiff",
    "union",
    "validate_member",
]
