import pytest

from biamalg.core.ideal import ideal_span
from biamalg.core.invariants import enumerate_spec, ring_invariants, spec_by_ideal_scan, vanishing_set
from biamalg.core.ring import galois_field, product, zmod
from biamalg.core.spectra import spec_labels


def test_z12_invariants(z12):
    inv = ring_invariants(z12)
    assert sorted(inv.units) == [1, 5, 7, 11]
    assert inv.regular == inv.units
    assert inv.nilradical == ideal_span(z12, [6])
    assert inv.jacobson == ideal_span(z12, [6])
    assert sorted(inv.idempotents) == [0, 1, 4, 9]
    assert not inv.is_local
    assert inv.maximal_ideal is None


def test_local_rings(z8, f2_xy):
    inv = ring_invariants(z8)
    assert inv.is_local and not inv.is_field
    assert inv.maximal_ideal == ideal_span(z8, [2])
    assert ring_invariants(f2_xy).maximal_ideal == ideal_span(f2_xy, [2, 4])
    field = ring_invariants(galois_field(9))
    assert field.is_field and field.is_local


def test_spectrum_of_z12(z12):
    spectrum = enumerate_spec(z12)
    assert len(spectrum) == 2
    assert spec_labels(spectrum) == ["(2)", "(3)"]
    assert ideal_span(z12, [3]) in spectrum
    assert all(spectrum.maximal)
    assert spectrum.specializations == ()


def test_spectrum_of_a_product():
    ring = product(zmod(2), zmod(2))
    assert len(enumerate_spec(ring)) == 2


@pytest.mark.parametrize("n", [2, 6, 8, 12, 30])
def test_ideal_scan_agrees(n):
    ring = zmod(n)
    assert set(spec_by_ideal_scan(ring)) == set(enumerate_spec(ring))


def test_ideal_scan_agrees_on_two_variable_quotient(f2_xy):
    assert set(spec_by_ideal_scan(f2_xy)) == set(enumerate_spec(f2_xy))


def test_vanishing_sets(z12):
    assert len(vanishing_set(ideal_span(z12, [6]))) == 2
    assert vanishing_set(ideal_span(z12, [4])) == [ideal_span(z12, [2])]
    assert vanishing_set(ideal_span(z12, [1])) == []


def test_zero_ring_has_empty_spectrum():
    assert len(enumerate_spec(zmod(1))) == 0
