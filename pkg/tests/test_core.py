import pytest
from hypothesis import given, strategies as st

from hsets import (
    HSet,
    InvalidMemberError,
    as_generalized,
    as_not_generalized,
    cardinality,
    clone_of_hset,
    decode,
    is_generalized,
    members,
    multiplicities,
    multiplicity_of,
    new_hset,
    refer_to_hset,
    size_support,
)
from hsets.core import PRESENT


def test_empty_set():
    h = new_hset()
    assert size_support(h) == 0
    assert cardinality(h) == 0
    assert members(h) == [] and multiplicities(h) == []
    assert not is_generalized(h)


def test_numeric_unification_in_constructor():
    h = HSet([1, 1.0, 2])
    assert size_support(h) == 2
    assert members(h) == ["1", "2"]


def test_duplicate_multiplicities_sum():
    h = HSet([5, 5], [2, 3], generalized=True)
    assert h.render() == "{5[5]}"
    assert multiplicity_of(h, 5) == 5


def test_multiplicities_force_generalized():
    h = HSet([1], [1])
    assert is_generalized(h)


def test_generalized_without_multiplicities_counts_duplicates():
    assert HSet([3, 3, 4], generalized=True).render() == "{3[2],4[1]}"


def test_empty_members_skipped():
    h = HSet([None, [], 1], [4, 5, 6])
    assert h.render() == "{1[6]}"


@pytest.mark.parametrize(
    "mults", [[0], [-1], [float("nan")], [float("inf")], [True], ["2"]]
)
def test_bad_multiplicities(mults):
    with pytest.raises(ValueError):
        HSet([1], mults)


def test_length_mismatch():
    with pytest.raises(ValueError, match="multiplicities"):
        HSet([1, 2], [1])


def test_invalid_member():
    with pytest.raises(InvalidMemberError):
        HSet([float("nan")])


def test_size_and_cardinality():
    y = HSet([5, 7], [2.5, 1])
    assert size_support(y) == 2
    assert cardinality(y) == 3.5
    x = HSet([1, 2, 3])
    assert size_support(x) == cardinality(x) == 3


def test_members_and_multiplicities_are_aligned_and_sorted():
    y = HSet([2, 1], [3, 1])
    assert members(y) == ["1", "2"]
    assert multiplicities(y) == [1, 3]
    assert multiplicities(HSet([4])) == [1]
    assert members(HSet([10, 9, [1]])) == ["10", "9", "{1}"]


def test_multiplicity_of():
    y = HSet([7], [2])
    assert multiplicity_of(y, 7) == 2
    assert multiplicity_of(y, 8) == 0
    assert multiplicity_of(HSet([7]), 7) == 1
    assert multiplicity_of(y, float("nan")) == 0


def test_refer_aliases():
    # a hash table with k1 -> 2; incrementing through b shows up in a
    a = HSet([1], [2])
    b = refer_to_hset(a)
    b.add(1)
    assert multiplicity_of(a, 1) == 3
    a.add(9)
    assert multiplicity_of(b, 9) == 1
    assert a.shares_store(b)


def test_clone_isolates():
    a = HSet([1], [2])
    b = clone_of_hset(a)
    b.add(1)
    assert multiplicity_of(a, 1) == 2
    assert multiplicity_of(b, 1) == 3
    assert not a.shares_store(b)


def test_refer_with_conversion_changes_original():
    y = HSet([1, 2], [3, 4])
    x = refer_to_hset(y, False)
    assert not is_generalized(y)
    assert y.render() == "{1,2}"
    assert x.shares_store(y)
    # the multiplicities are gone for good
    as_generalized(y)
    assert y.render() == "{1[1],2[1]}"


def test_clone_with_conversion_leaves_original():
    x = HSet([1, 2])
    y = clone_of_hset(x, True)
    assert y.render() == "{1[1],2[1]}"
    assert not is_generalized(x)
    z = clone_of_hset(HSet([1], [5]), False)
    assert z.render() == "{1}"


def test_refer_and_clone_of_empty():
    e = HSet()
    r, c = refer_to_hset(e), clone_of_hset(e)
    r.add(1)
    assert size_support(e) == 1
    c.add(2)
    assert multiplicity_of(e, 2) == 0


def test_as_generalized_conversions():
    x = HSet([1, 2])
    assert as_generalized(x) is x
    assert x.render() == "{1[1],2[1]}"
    assert as_generalized(x).render() == "{1[1],2[1]}"  # identity on multisets
    assert as_not_generalized(HSet([1], [7])).render() == "{1}"


def test_round_trip_conversions():
    x = HSet([1, 2, 3])
    assert as_not_generalized(as_generalized(x.clone())) == x
    y = HSet([1, 2], [3, 1])
    converted = as_generalized(as_not_generalized(y.clone()))
    assert converted.render() == "{1[1],2[1]}"
    assert converted != y


def test_set_store_holds_presence_marker():
    x = HSet([1, 2])
    assert set(x._store.table.values()) == {PRESENT}


def test_add_and_discard():
    y = HSet([1], [2])
    y.add(1, 0.5).add(3)
    assert y.render() == "{1[2.5],3[1]}"
    y.discard(1, 1)
    assert multiplicity_of(y, 1) == 1.5
    y.discard(1, 5)
    assert multiplicity_of(y, 1) == 0
    y.discard(42).discard(float("nan"))
    x = HSet([1, 2]).discard(1)
    assert x.render() == "{2}"
    assert HSet([1]).clear().size_support() == 0


def test_render_and_repr():
    assert str(HSet([[1, 2], 3])) == "{3,{1,2}}"
    assert repr(HSet([1], [2])) == "HSet<multiset>({1[2]})"


def test_iteration_and_len():
    h = HSet([3, [1]])
    assert list(h) == [3, frozenset({1})]
    assert len(h) == 2
    assert bool(h) and not bool(HSet())


def test_unhashable():
    with pytest.raises(TypeError):
        hash(HSet())


multisets = st.dictionaries(st.integers(-5, 5), st.integers(1, 4), max_size=6)


@given(multisets, st.booleans())
def test_cardinality_bounds_size(d, generalized):
    h = HSet(list(d), list(d.values())) if generalized else HSet(list(d))
    assert cardinality(h) >= size_support(h)
    all_ones = all(m == 1 for m in multiplicities(h))
    assert (cardinality(h) == size_support(h)) == all_ones


@given(multisets)
def test_member_multiplicity_alignment(d):
    h = HSet(list(d), list(d.values()))
    for key, m in zip(members(h), multiplicities(h)):
        assert multiplicity_of(h, decode(key)) == m


@given(multisets, st.integers(-5, 5))
def test_aliasing_law(d, extra):
    a = HSet(list(d), list(d.values()))
    b = refer_to_hset(a)
    c = clone_of_hset(a)
    b.add(extra)
    assert a.render() == b.render()
    assert multiplicity_of(a, extra) == d.get(extra, 0) + 1
    snapshot = a.render()
    c.add(extra, 2)
    c.discard(next(iter(d), extra))
    assert a.render() == snapshot
