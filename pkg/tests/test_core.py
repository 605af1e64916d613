import math
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from crossfam.core import (
    MAX_GROUND,
    Family,
    GroundParams,
    SubsetWord,
    binomial,
    common_intersection,
    elements_of,
    enumerate_ksets,
    format_family,
    kset_masks,
    lex_family,
    lex_key,
    lex_precedes,
    mask_of,
    parse_family,
)

masks = st.integers(min_value=0, max_value=(1 << 12) - 1)


@given(st.integers(1, 40), st.integers(1, 40))
def test_pascal_identity(m, r):
    assert binomial(m, r) == binomial(m - 1, r) + binomial(m - 1, r - 1)


@pytest.mark.parametrize("m,r", [(5, -1), (5, 6), (-1, 0), (-3, 2)])
def test_binomial_out_of_range_is_zero(m, r):
    assert binomial(m, r) == 0


def _lex_oracle(a, b):
    # smallest element of the symmetric difference belongs to a
    diff = set(elements_of(a)) ^ set(elements_of(b))
    return bool(diff) and min(diff) in elements_of(a)


@given(masks, masks)
def test_lex_key_realises_symmetric_difference_rule(a, b):
    assert lex_precedes(a, b) == _lex_oracle(a, b)
    if a != b:
        assert (lex_key(a) < lex_key(b)) == _lex_oracle(a, b)


@pytest.mark.parametrize("n,k", [(5, 2), (6, 3), (7, 4), (4, 0), (4, 4)])
def test_ksets_in_tuple_order(n, k):
    assert [elements_of(m) for m in kset_masks(n, k)] == list(combinations(range(1, n + 1), k))


def test_ksets_out_of_range_empty():
    assert kset_masks(3, 5) == ()
    with pytest.raises(ValueError):
        list(enumerate_ksets(3, 5))


def test_top_bit_sorts_last():
    top = 1 << (MAX_GROUND - 1)
    assert lex_key(top) > lex_key(1)
    assert lex_key(0) > lex_key(top)  # empty set follows every non-empty set


@given(st.lists(st.integers(1, 20), max_size=8))
def test_mask_roundtrip(xs):
    assert elements_of(mask_of(xs)) == tuple(sorted(set(xs)))


def test_mask_rejects_out_of_range():
    with pytest.raises(ValueError):
        mask_of([0])
    with pytest.raises(ValueError):
        mask_of([MAX_GROUND + 1])


def test_subset_word():
    w = SubsetWord.of([1, 3, 5])
    assert w.card == 3 and len(w) == 3 and 3 in w and 2 not in w
    assert str(w) == "{1,3,5}"
    assert (w & SubsetWord.of([3, 4])).elements == (3,)
    assert (w - SubsetWord.of([1])).elements == (3, 5)
    assert SubsetWord.of([1, 2]) < SubsetWord.of([1, 3])
    assert SubsetWord.of([1, 3]).issubset(w)
    with pytest.raises(ValueError):
        SubsetWord(0b11, card=3)
    with pytest.raises(ValueError):
        SubsetWord(-1)


@pytest.mark.parametrize("n,k,t", [(3, 3, 1), (5, 2, 2), (5, 3, 0), (65, 3, 1)])
def test_ground_params_rejects(n, k, t):
    with pytest.raises(ValueError):
        GroundParams(n, k, t)


def test_family_canonical():
    F = Family.of(5, [(2, 3), (1, 5), (1, 2), (2, 3)])
    assert F.sets() == [(1, 2), (1, 5), (2, 3)]
    assert F.k == 2 and len(F) == 3
    assert (1, 5) in F and SubsetWord.of([2, 3]) in F and (4, 5) not in F
    assert F == Family.of(5, [(1, 2), (2, 3), (1, 5)])
    assert F.layer(2) == F


def test_family_mixed_and_declared():
    M = Family.of(5, [(1, 2), (1, 2, 3)])
    assert M.k is None and M.sizes() == {2: 1, 3: 1}
    with pytest.raises(ValueError):
        Family.of(5, [(1, 2), (1, 2, 3)], k=2)
    with pytest.raises(ValueError):
        Family.of(5, [(1, 2)], k=3)
    assert Family(5, [], k=3).k == 3


def test_family_rejects_outside_ground():
    with pytest.raises(ValueError):
        Family.of(4, [(1, 5)])
    with pytest.raises(ValueError):
        Family(MAX_GROUND + 1)


@pytest.mark.parametrize("n,b", [(6, 2), (7, 3)])
def test_lex_family_prefix(n, b):
    allsets = list(combinations(range(1, n + 1), b))
    for m in range(len(allsets) + 1):
        assert lex_family(n, b, m).sets() == allsets[:m]
    with pytest.raises(ValueError):
        lex_family(n, b, len(allsets) + 1)


def test_common_intersection():
    assert common_intersection(Family.of(6, [(1, 2, 3), (1, 2, 4), (1, 2, 5)])).elements == (1, 2)
    with pytest.raises(ValueError):
        common_intersection(Family(6))


families = st.builds(
    lambda n, sets: Family(n, (s & ((1 << n) - 1) for s in sets)),
    st.integers(1, 12),
    st.lists(st.integers(0, (1 << 12) - 1), max_size=10),
)


@given(families)
def test_text_roundtrip(F):
    assert parse_family(format_family(F)) == F


def test_text_format_details():
    text = "# comment\nn=5 k=2\n1 2\n\n# another\n3 4\n"
    assert parse_family(text).sets() == [(1, 2), (3, 4)]
    assert format_family(Family(3, [0])) == "n=3 k=0\n-\n"
    with pytest.raises(ValueError):
        parse_family("1 2\n")  # header must come first and be well formed
    with pytest.raises(ValueError):
        parse_family("")
    with pytest.raises(ValueError):
        parse_family("n=4 k=2\n1 2 3\n")


def test_sort_key_total_across_sizes():
    sets = [mask_of(c) for r in range(4) for c in combinations(range(1, 5), r)]
    ordered = sorted(sets, key=lex_key)
    for a, b in zip(ordered, ordered[1:]):
        assert _lex_oracle(a, b)
    assert math.comb(4, 2) == len([m for m in ordered if m.bit_count() == 2])
