import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biamalg.config import configure
from biamalg.core.ring import (
    GaloisField,
    PairSubring,
    PolyQuot,
    ZMod,
    classify_element,
    construct_ring,
    describe,
    elem_arith,
    format_poly,
    galois_field,
    irreducible_polynomial,
    poly_quot,
    prime_power,
    product,
    product_code,
    verify_axioms,
    zmod,
)
from biamalg.errors import BiamalgError, OrderCapExceeded, RingConstructionError, RingMismatchError

from .conftest import F2_X2, F2_XY


def test_zmod_arithmetic():
    ring = zmod(6)
    assert ring.order == 6
    assert ring.characteristic == 6
    assert ring.add(4, 5) == 3
    assert ring.mul(4, 5) == 2
    assert ring.neg(1) == 5
    assert ring.generators == ()
    assert describe(ring.descriptor) == "Z/6"


def test_rings_are_cached_and_compare_by_descriptor():
    assert zmod(9) is zmod(9)
    assert zmod(9) == construct_ring(ZMod(9))
    assert zmod(9) != zmod(3)


def test_galois_field_is_a_field():
    field = galois_field(4)
    assert field.order == 4
    assert field.characteristic == 2
    assert field.unit_flags()[1:].all()
    assert describe(field.descriptor) == "GF(4)"
    assert galois_field(9).unit_flags()[1:].all()


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    with pytest.raises(RingConstructionError):
        prime_power(6)
    with pytest.raises(RingConstructionError):
        galois_field(12)


def test_irreducible_polynomials():
    assert irreducible_polynomial(2, 2) == (1, 1, 1)
    assert irreducible_polynomial(2, 3) == (1, 1, 0, 1)
    assert irreducible_polynomial(3, 2) == (1, 0, 1)


def test_dual_numbers(dual_numbers):
    assert dual_numbers.order == 4
    assert dual_numbers.mul(2, 2) == 0
    assert dual_numbers.mul(3, 3) == 1
    assert dual_numbers.labels() == ["0", "1", "x", "x+1"]
    assert dual_numbers.generators == (2,)


def test_two_variable_quotient_encoding(f2_xy):
    x, y, xy = 2, 4, 8
    assert f2_xy.order == 16
    assert f2_xy.mul(x, y) == xy
    assert f2_xy.mul(x, x) == 0
    assert f2_xy.mul(y, y) == 0
    assert f2_xy.mul(xy, xy) == 0
    assert f2_xy.label(xy) == "x*y"
    assert f2_xy.label(12) == "(x+1)*y"


def test_product_codes():
    ring = product(zmod(2), zmod(3))
    assert ring.order == 6
    assert ring.one == product_code(ring, 1, 1) == 4
    assert product_code(ring, 1, 2) == 5
    assert ring.label(5) == "(1,2)"
    assert describe(ring.descriptor) == "(Z/2 * Z/3)"


def test_format_poly():
    assert format_poly([1, 1, 1], "x") == "x^2+x+1"
    assert format_poly([0, 0, 3], "x") == "3*x^2"
    assert format_poly([0, 0], "x") == "0"


@pytest.mark.parametrize("descriptor", [
    ZMod(1), ZMod(12), GaloisField(2, 3), F2_X2, F2_XY,
    PolyQuot(ZMod(4), (1, 1, 1), "x"),
])
def test_axioms_hold(descriptor):
    assert verify_axioms(construct_ring(descriptor)) is None


@pytest.mark.parametrize("ring", [zmod(3), product(zmod(2), zmod(3))], ids=["Z/3", "Z/2*Z/3"])
def test_axioms_agree_with_a_triple_loop(ring):
    codes = range(ring.order)
    for x in codes:
        for y in codes:
            for z in codes:
                assert ring.mul(x, ring.add(y, z)) == ring.add(ring.mul(x, y), ring.mul(x, z))
                assert ring.mul(ring.mul(x, y), z) == ring.mul(x, ring.mul(y, z))
    assert verify_axioms(ring) is None


def test_elements_reject_foreign_operands():
    x = zmod(4).element(1)
    with pytest.raises(TypeError):
        x + 1
    with pytest.raises(TypeError):
        x * "a"
    with pytest.raises(RingMismatchError):
        x + zmod(2).element(1)


def test_malformed_descriptors():
    with pytest.raises(RingConstructionError):
        zmod(0)
    with pytest.raises(RingConstructionError):
        poly_quot(zmod(4), [0, 0, 2], "x")
    with pytest.raises(RingConstructionError):
        poly_quot(zmod(4), [1], "x")
    with pytest.raises(RingConstructionError):
        construct_ring(GaloisField(4, 2))


def test_pair_subring_must_contain_one():
    diagonal = construct_ring(PairSubring(ZMod(2), ZMod(2), ((0, 0), (1, 1))))
    assert diagonal.order == 2
    with pytest.raises(RingConstructionError):
        construct_ring(PairSubring(ZMod(2), ZMod(2), ((0, 0), (1, 0))))


def test_order_cap():
    configure(max_order=16)
    with pytest.raises(OrderCapExceeded) as info:
        zmod(17)
    assert info.value.order == 17
    assert info.value.cap == 16
    assert zmod(16).order == 16


def test_elements():
    ring = zmod(5)
    two, three = ring.element(2), ring.element(3)
    assert (two * three).code == 1
    assert (two + three).code == 0
    assert (two - three).code == 4
    assert (two ** 4).code == 1
    assert elem_arith("neg", two).code == 3
    assert elem_arith("pow", two, 3).code == 3
    with pytest.raises(RingMismatchError):
        two + zmod(7).element(2)
    with pytest.raises(BiamalgError):
        ring.element(5)
    with pytest.raises(BiamalgError):
        elem_arith("div", two, three)


def test_classify_element(z8):
    nilpotent = classify_element(z8.element(2))
    assert nilpotent.nilpotent and nilpotent.zero_divisor and not nilpotent.unit
    unit = classify_element(z8.element(3))
    assert unit.unit and unit.regular and not unit.nilpotent


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_zmod_laws(data):
    n = data.draw(st.integers(min_value=1, max_value=40))
    ring = zmod(n)
    x, y, z = (data.draw(st.integers(min_value=0, max_value=n - 1)) for _ in range(3))
    assert ring.mul(x, ring.add(y, z)) == ring.add(ring.mul(x, y), ring.mul(x, z))
    assert ring.mul(ring.mul(x, y), z) == ring.mul(x, ring.mul(y, z))
    assert ring.add(x, ring.neg(x)) == ring.zero


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=15), st.integers(min_value=0, max_value=15))
def test_two_variable_quotient_is_commutative(x, y):
    ring = construct_ring(F2_XY)
    assert ring.mul(x, y) == ring.mul(y, x)
    assert ring.mul_table[x, y] == ring.mul(x, y)


def test_unit_and_idempotent_scans():
    ring = product(zmod(2), zmod(3))
    assert np.flatnonzero(ring.unit_flags()).tolist() == [4, 5]
    assert np.flatnonzero(ring.idempotent_flags()).tolist() == [0, 1, 3, 4]
