import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biamalg.core.ideal import (
    Ideal,
    annihilator,
    ideal_arith,
    ideal_colon,
    ideal_intersect,
    ideal_lattice,
    ideal_power,
    ideal_predicates,
    ideal_product,
    ideal_span,
    ideal_sum,
    is_maximal_ideal,
    is_prime_ideal,
    minimal_generators,
    radical,
    unit_ideal,
    zero_ideal,
)
from biamalg.core.ring import zmod
from biamalg.errors import BiamalgError, RingMismatchError


def test_span_and_labels(z12):
    eight = ideal_span(z12, [8])
    assert eight == ideal_span(z12, [4])
    assert len(eight) == 3
    assert eight.codes.tolist() == [0, 4, 8]
    assert eight.label() == "(8)"
    assert minimal_generators(eight) == (4,)
    assert Ideal.from_mask(z12, eight.mask).label() == "(4)"
    assert zero_ideal(z12).label() == "(0)"
    assert zero_ideal(z12).is_zero
    assert unit_ideal(z12).is_unit


def test_span_rejects_foreign_codes(z12):
    with pytest.raises(BiamalgError):
        ideal_span(z12, [12])


def test_arithmetic_in_z12(z12):
    two, three = ideal_span(z12, [2]), ideal_span(z12, [3])
    assert ideal_sum(two, three).is_unit
    assert ideal_product(two, three) == ideal_span(z12, [6])
    assert ideal_intersect(two, three) == ideal_span(z12, [6])
    assert ideal_colon(ideal_span(z12, [6]), two) == three
    assert annihilator(ideal_span(z12, [4])) == three
    assert ideal_power(two, 2) == ideal_span(z12, [4])
    assert ideal_power(two, 0).is_unit
    assert radical(ideal_span(z12, [4])) == two


def test_ideal_arith_dispatch(z12):
    two, three = ideal_span(z12, [2]), ideal_span(z12, [3])
    assert ideal_arith("sum", two, three) == ideal_sum(two, three)
    assert ideal_arith("power", two, k=3) == ideal_span(z12, [8])
    assert ideal_arith("annihilator", two) == ideal_span(z12, [6])
    with pytest.raises(BiamalgError):
        ideal_arith("product", two)
    with pytest.raises(BiamalgError):
        ideal_arith("quotient", two, three)
    with pytest.raises(BiamalgError):
        ideal_power(two, -1)


def test_mixed_rings_are_rejected(z12, z8):
    with pytest.raises(RingMismatchError):
        ideal_sum(ideal_span(z12, [2]), ideal_span(z8, [2]))


def test_primes_of_z12(z12):
    assert is_prime_ideal(ideal_span(z12, [2]))
    assert is_prime_ideal(ideal_span(z12, [3]))
    assert not is_prime_ideal(ideal_span(z12, [4]))
    assert not is_prime_ideal(ideal_span(z12, [6]))
    assert not is_prime_ideal(unit_ideal(z12))
    assert is_maximal_ideal(ideal_span(z12, [3]))


def test_predicates(z12):
    preds = ideal_predicates(ideal_span(z12, [2]))
    assert preds.is_proper and preds.is_prime and preds.is_maximal
    assert not preds.is_regular
    assert preds.radical == ideal_span(z12, [2])
    assert "unit ideal" in preds.note
    assert ideal_predicates(ideal_span(z12, [5])).is_regular


def test_lattice_of_cyclic_rings():
    assert len(ideal_lattice(zmod(12))) == 6
    assert len(ideal_lattice(zmod(16))) == 5
    assert max(ideal_lattice(zmod(12)).rank) == 1


def test_lattice_of_two_variable_quotient(f2_xy):
    lattice = ideal_lattice(f2_xy)
    maximal = ideal_span(f2_xy, [2, 4])
    assert maximal in lattice.ideals
    assert lattice.rank[lattice.index_of(maximal)] == 2
    assert max(lattice.rank) == 2
    assert lattice.principal[1] == lattice.index_of(unit_ideal(f2_xy))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_span_is_an_ideal(data):
    n = data.draw(st.integers(min_value=2, max_value=30))
    ring = zmod(n)
    gens = data.draw(st.lists(st.integers(min_value=0, max_value=n - 1), max_size=3))
    ideal = ideal_span(ring, gens)
    members = ideal.codes.tolist()
    for g in gens:
        assert g in ideal
    for x in members:
        for y in members:
            assert ring.add(x, y) in ideal
        for r in range(n):
            assert ring.mul(r, x) in ideal


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_sum_and_intersection_bound_their_operands(data):
    n = data.draw(st.integers(min_value=2, max_value=30))
    ring = zmod(n)
    left = ideal_span(ring, [data.draw(st.integers(min_value=0, max_value=n - 1))])
    right = ideal_span(ring, [data.draw(st.integers(min_value=0, max_value=n - 1))])
    total, meet = ideal_sum(left, right), ideal_intersect(left, right)
    assert left <= total and right <= total
    assert meet <= left and meet <= right
    assert ideal_product(left, right) <= meet
