import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from biamalg.core.bitset import BitSet

codes = st.sets(st.integers(min_value=0, max_value=200))


@given(codes, codes)
def test_set_algebra_matches_python_sets(left, right):
    a, b = BitSet.from_codes(left), BitSet.from_codes(right)
    assert set(a | b) == left | right
    assert set(a & b) == left & right
    assert set(a - b) == left - right
    assert (a <= b) == (left <= right)
    assert (a < b) == (left < right)
    assert len(a) == len(left)
    assert bool(a) == bool(left)


@given(codes)
def test_bool_mask_round_trip(members):
    bits = BitSet.from_codes(members)
    mask = bits.to_bool(201)
    assert np.flatnonzero(mask).tolist() == sorted(members)
    assert BitSet.from_bool(mask) == bits
    assert bits.to_array().tolist() == sorted(members)


def test_membership_and_min():
    bits = BitSet.from_codes([7, 3, 12])
    assert 3 in bits and 4 not in bits
    assert bits.min() == 3
    assert bits.add(1).min() == 1
    assert repr(bits) == "BitSet({3, 7, 12})"
    assert hash(bits) == hash(BitSet.from_codes([12, 7, 3]))
    with pytest.raises(ValueError):
        BitSet().min()
