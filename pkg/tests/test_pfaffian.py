"""Pfaffian evaluation and the bordered-minor identities."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lsopkit.errors import DimensionError, ExpansionLimitError, IncompleteTableError
from lsopkit.numerics import dense_det
from lsopkit.pfaffian import (SkewArray, check_identity_even, check_identity_odd,
                              pf_eliminate, pf_expand, pf_indices)


def rational_skew(rng, size):
    return SkewArray.from_entry_fn(size, lambda i, j: Fraction(rng.randint(-9, 9), rng.randint(1, 9)))


def test_empty_array_is_one():
    s = SkewArray(0, {})
    assert pf_expand(s) == 1
    assert pf_eliminate(s) == 1


def test_size_two_is_the_single_entry():
    s = SkewArray(2, {(0, 1): Fraction(7, 3)})
    assert pf_expand(s) == Fraction(7, 3)
    assert pf_eliminate(s) == Fraction(7, 3)


def test_size_four_worked_value():
    # entries 01:1 02:2 03:3 12:4 13:5 23:6 -> 1*6 - 2*5 + 3*4 = 8
    s = SkewArray(4, {(0, 1): 1, (0, 2): 2, (0, 3): 3, (1, 2): 4, (1, 3): 5, (2, 3): 6})
    assert pf_expand(s) == 8
    assert pf_eliminate(s) == pytest.approx(8)


def test_odd_size_rejected():
    s = SkewArray(3, {(0, 1): 1, (0, 2): 1, (1, 2): 1})
    with pytest.raises(DimensionError):
        pf_expand(s)
    with pytest.raises(DimensionError):
        pf_eliminate(s)


def test_expansion_cap():
    rng = random.Random(0)
    s = rational_skew(rng, 12)
    with pytest.raises(ExpansionLimitError):
        pf_expand(s)
    pf_eliminate(s)  # elimination has no cap


def test_missing_entry_detected():
    s = SkewArray(4, {(0, 1): 1, (0, 2): 2, (0, 3): 3, (1, 2): 4, (1, 3): 5})
    with pytest.raises(IncompleteTableError):
        pf_expand(s)


def test_entry_table_bounds_checked():
    with pytest.raises(IncompleteTableError):
        SkewArray(2, {(1, 0): 1})


def test_routes_agree_exactly_up_to_ten():
    rng = random.Random(42)
    for size in range(0, 11, 2):
        for _ in range(6):
            s = rational_skew(rng, size)
            assert pf_eliminate(s) == pf_expand(s)


def test_square_equals_determinant():
    rng = random.Random(7)
    for size in range(2, 9, 2):
        s = rational_skew(rng, size)
        assert pf_eliminate(s) ** 2 == dense_det(s.dense())


def test_structural_zero_on_zero_column():
    s = SkewArray(4, {(0, 1): 0, (0, 2): 0, (0, 3): 0, (1, 2): 0, (1, 3): 0, (2, 3): 0})
    v = pf_eliminate(s)
    assert v == 0 and not isinstance(v, float) or v == 0.0


def test_duplicated_index_gives_zero():
    rng = random.Random(3)
    s = rational_skew(rng, 8)
    assert pf_indices(s, [0, 1, 2, 1]) == 0


@given(st.permutations(list(range(6))))
@settings(max_examples=30, deadline=None)
def test_index_transposition_antisymmetry(perm):
    rng = random.Random(11)
    s = rational_skew(rng, 6)
    base = pf_indices(s, list(range(6)))
    sign = _perm_sign(perm)
    assert pf_indices(s, list(perm)) == sign * base


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def test_even_identity_empty_base():
    rng = random.Random(5)
    s = rational_skew(rng, 4)
    assert check_identity_even(s, [], 0, 1, 2, 3) == 0


def test_even_identity_exact_bases():
    rng = random.Random(6)
    for base_size in (2, 4):
        s = rational_skew(rng, base_size + 4)
        assert check_identity_even(s, list(range(base_size)),
                                   *range(base_size, base_size + 4)) == 0


def test_even_identity_double_scaled():
    rng = random.Random(8)
    s = SkewArray.from_entry_fn(8, lambda i, j: rng.uniform(-5, 5))
    resid = check_identity_even(s, [0, 1, 2, 3], 4, 5, 6, 7)
    scale = max(abs(pf_indices(s, [0, 1, 2, 3, a, b])) for a, b in ((4, 5), (4, 6), (4, 7)))
    assert resid <= 1e-10 * max(1.0, scale * scale)


def test_odd_identity_single_and_triple_base():
    rng = random.Random(9)
    for base_size in (1, 3):
        s = rational_skew(rng, base_size + 4)
        assert check_identity_odd(s, list(range(base_size)),
                                  *range(base_size, base_size + 4)) == 0


def test_odd_identity_duplicate_extras_both_sides_zero():
    rng = random.Random(10)
    s = rational_skew(rng, 7)
    # duplicated index among the extras: every Pfaffian in the identity vanishes
    base = [0]
    lhs = pf_indices(s, base + [1, 2, 1])  # contains a repeat
    assert lhs == 0
    assert check_identity_odd(s, base, 1, 2, 1, 3) == 0


def test_identity_base_parity_enforced():
    rng = random.Random(12)
    s = rational_skew(rng, 8)
    with pytest.raises(DimensionError):
        check_identity_even(s, [0], 1, 2, 3, 4)
    with pytest.raises(DimensionError):
        check_identity_odd(s, [0, 1], 2, 3, 4, 5)
