import pytest

from biamalg.core.hom import (
    MultiplicativeSet,
    RingHom,
    contract,
    enumerate_homs,
    extend,
    factor_through_localization,
    hom_build,
    hom_kernel_image,
    identity_hom,
    ideal_transfer,
    localize_at_prime,
    localize_finite,
    quotient_by,
)
from biamalg.core.ideal import ideal_span, unit_ideal
from biamalg.core.ring import galois_field, zmod
from biamalg.errors import BiamalgError, HomomorphismError, InvalidPrimeError, RingMismatchError


def test_canonical_projection(z12):
    z4 = zmod(4)
    f = hom_build(z12, z4, "canonical", name="f")
    assert f.table.tolist() == [x % 4 for x in range(12)]
    assert f.kernel == ideal_span(z12, [4])
    assert f.is_surjective and not f.is_injective
    assert f(7) == 3
    assert repr(f) == "RingHom(f: Z/12 -> Z/4)"


def test_canonical_map_must_exist():
    with pytest.raises(HomomorphismError):
        hom_build(zmod(4), zmod(6), "canonical")


def test_image_table_is_verified():
    with pytest.raises(HomomorphismError) as info:
        hom_build(zmod(4), zmod(4), "image-table", [0, 2, 0, 2])
    assert info.value.law == "unity"
    with pytest.raises(HomomorphismError) as info:
        hom_build(zmod(4), zmod(4), "image-table", [0, 1, 2])
    assert info.value.law == "total"


def test_identity_needs_one_ring(z12):
    assert hom_build(z12, z12, "identity") == identity_hom(z12)
    with pytest.raises(HomomorphismError):
        hom_build(z12, zmod(4), "identity")
    with pytest.raises(BiamalgError):
        hom_build(z12, z12, "frobenius")


def test_generator_images():
    field = galois_field(4)
    frobenius = hom_build(field, field, "generator-images", [3])
    assert frobenius.is_isomorphism
    assert frobenius.compose(frobenius) == identity_hom(field)
    with pytest.raises(HomomorphismError):
        hom_build(field, field, "generator-images", [1])


def test_enumerate_homs():
    assert len(enumerate_homs(zmod(6), zmod(6))) == 1
    assert len(enumerate_homs(galois_field(4), galois_field(4))) == 2
    assert enumerate_homs(zmod(4), zmod(6)) == []


def test_composition(z12):
    to6 = hom_build(z12, zmod(6), "canonical")
    to3 = hom_build(zmod(6), zmod(3), "canonical")
    assert to3.compose(to6) == hom_build(z12, zmod(3), "canonical")
    with pytest.raises(RingMismatchError):
        to6.compose(to3)


def test_kernel_image(z12):
    f = hom_build(z12, zmod(4), "canonical")
    data = hom_kernel_image(f)
    assert data.kernel == f.kernel
    assert len(data.image) == 4


def test_contract_and_extend(z12):
    f = hom_build(z12, zmod(4), "canonical")
    assert contract(f, ideal_span(zmod(4), [2])) == ideal_span(z12, [2])
    assert extend(f, ideal_span(z12, [3])).is_unit
    assert ideal_transfer("extend", f, ideal_span(z12, [2])) == ideal_span(zmod(4), [2])
    with pytest.raises(RingMismatchError):
        contract(f, ideal_span(z12, [2]))
    with pytest.raises(BiamalgError):
        ideal_transfer("push", f, ideal_span(z12, [2]))


def test_quotient_by(z12):
    quotient, projection = quotient_by(ideal_span(z12, [4]))
    assert quotient.order == 4
    assert projection.is_surjective
    assert projection.kernel == ideal_span(z12, [4])


def test_multiplicative_closure(z12):
    mset = MultiplicativeSet(z12, [5])
    assert mset.closed is False
    assert 1 in mset and 5 in mset
    assert len(mset) == 2
    assert MultiplicativeSet.complement_of(ideal_span(z12, [2])).closed


def test_localization_at_primes(z12):
    at_two = localize_at_prime(z12, ideal_span(z12, [2]))
    assert at_two.ring.order == 4
    assert at_two.kernel == ideal_span(z12, [4])
    assert localize_at_prime(z12, ideal_span(z12, [3])).ring.order == 3
    with pytest.raises(InvalidPrimeError):
        localize_at_prime(z12, ideal_span(z12, [4]))


def test_localizing_at_units_changes_nothing(z8):
    loc = localize_finite(z8, MultiplicativeSet(z8, [3, 5]))
    assert loc.ring == z8
    assert loc.kernel.is_zero


def test_factoring_through_the_localization(z12):
    loc = localize_at_prime(z12, ideal_span(z12, [2]))
    f = hom_build(z12, zmod(4), "canonical")
    report = factor_through_localization(loc, f)
    assert report.applicable and report.holds
    assert report.factored.is_isomorphism
    to3 = hom_build(z12, zmod(3), "canonical")
    assert not factor_through_localization(loc, to3).applicable


def test_hom_rejects_wrong_tables():
    with pytest.raises(HomomorphismError) as info:
        RingHom(zmod(4), zmod(2), [0, 1, 1, 1])
    assert info.value.law in ("additivity", "multiplicativity")
    assert unit_ideal(zmod(2)).is_unit
