"""Unit tests for label enumeration and counting."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eddeg.errors import EnumerationOverflow
from eddeg.matcore.combinatorics import (
    BlockAssignment,
    SignVector,
    block_assignments,
    k_subsets,
    multinomial,
    sign_vectors,
    subset_str,
)


# =====================================================================
# Counting
# =====================================================================


@pytest.mark.unit
class TestMultinomial:
    def test_flag_example(self):
        assert multinomial((1, 1, 2)) == 12

    def test_two_blocks_is_binomial(self):
        assert multinomial((2, 3)) == 10

    def test_single_block(self):
        assert multinomial((5,)) == 1

    def test_negative_size_rejected(self):
        with pytest.raises(ValueError):
            multinomial((2, -1))

    @given(st.integers(0, 12), st.integers(0, 12))
    def test_matches_binomial(self, a, b):
        assert multinomial((a, b)) == math.comb(a + b, a)

    @given(st.lists(st.integers(0, 5), min_size=1, max_size=4))
    def test_order_independent(self, sizes):
        assert multinomial(sizes) == multinomial(sorted(sizes))


# =====================================================================
# Block assignments
# =====================================================================


@pytest.mark.unit
class TestBlockAssignments:
    def test_small_case_in_lexicographic_order(self):
        out = block_assignments((1, 2))
        assert [str(f) for f in out] == ["[1,2,2]", "[2,1,2]", "[2,2,1]"]

    def test_labels_strictly_increasing(self):
        out = [f.labels for f in block_assignments((2, 1, 2))]
        assert out == sorted(out)
        assert len(set(out)) == len(out)

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.integers(1, 3), min_size=1, max_size=3))
    def test_count_is_multinomial(self, sizes):
        assert len(block_assignments(sizes)) == multinomial(sizes)

    def test_cap_overflow(self):
        with pytest.raises(EnumerationOverflow) as exc:
            block_assignments((1, 1, 1), cap=5)
        assert exc.value.count == 6
        assert exc.value.cap == 5

    def test_no_cap(self):
        assert len(block_assignments((1, 1, 1), cap=None)) == 6

    def test_zero_block_rejected(self):
        with pytest.raises(ValueError):
            block_assignments((2, 0))

    def test_invalid_assignment_rejected(self):
        with pytest.raises(ValueError):
            BlockAssignment(labels=(1, 1, 2), block_sizes=(1, 2))


# =====================================================================
# Subsets and signs
# =====================================================================


@pytest.mark.unit
class TestSubsetsAndSigns:
    def test_subsets_lexicographic(self):
        out = k_subsets(4, 2)
        assert len(out) == 6
        assert out[0] == (1, 2)
        assert out[-1] == (3, 4)
        assert out == sorted(out)

    def test_empty_subset(self):
        assert k_subsets(3, 0) == [()]

    def test_full_subset(self):
        assert k_subsets(3, 3) == [(1, 2, 3)]

    def test_invalid_subset_size(self):
        with pytest.raises(ValueError):
            k_subsets(3, 4)

    def test_subset_cap(self):
        with pytest.raises(EnumerationOverflow):
            k_subsets(20, 10, cap=1000)

    def test_subset_str(self):
        assert subset_str((1, 3)) == "{1,3}"
        assert subset_str(()) == "{}"

    def test_sign_vectors_order(self):
        assert [str(s) for s in sign_vectors(2)] == ["(+,+)", "(+,-)", "(-,+)", "(-,-)"]

    def test_sign_vectors_are_tuples(self):
        s = sign_vectors(3)[5]
        assert isinstance(s, SignVector)
        assert tuple(s) == (-1, 1, -1)

    def test_sign_vectors_need_positive_length(self):
        with pytest.raises(ValueError):
            sign_vectors(0)

    @given(st.integers(1, 8))
    def test_sign_count(self, k):
        assert len(sign_vectors(k)) == 2**k
