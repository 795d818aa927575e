import pytest

from biamalg.core.ideal import ideal_span
from biamalg.core.spectra import (
    BOWTIE,
    SHARP_B,
    SHARP_C,
    assemble_spec,
    bowtie_lattice_checks,
    local_criterion,
    verify_localization_iso,
    verify_spec_theorem,
)
from biamalg.errors import InvalidPrimeError


def test_duplication_z6_has_one_prime_of_each_kind(dup_z6):
    report = assemble_spec(dup_z6)
    assert report.ok
    assert len(report.entries) == len(report.direct) == 3
    for provenance in (BOWTIE, SHARP_B, SHARP_C):
        assert len(report.by_provenance(provenance)) == 1
    bowtie = report.by_provenance(BOWTIE)[0]
    assert bowtie.source == ideal_span(dup_z6.A, [2])
    assert bowtie.label() == "(2)><(b,c)"
    assert report.by_provenance(SHARP_B)[0].label() == "(3)^#B"


def test_gaussian_example_is_local(example_p2):
    report = assemble_spec(example_p2)
    assert report.ok
    assert [e.provenance for e in report.entries] == [BOWTIE]
    assert all(e.maximal for e in report.entries)


def test_projection_spectrum(projection):
    report = assemble_spec(projection)
    assert report.ok
    assert len(report.direct) == 1


def test_spec_theorem(example_p2, dup_z6, projection):
    for inst in (example_p2, dup_z6, projection):
        assert verify_spec_theorem(inst).ok


def test_bowtie_lattice(example_p2, dup_z6):
    for inst in (example_p2, dup_z6):
        report = bowtie_lattice_checks(inst)
        assert report.ok
        assert report.monotonicity_witness is None


def test_local_criterion(example_p2, dup_z6, dup_z16):
    local = local_criterion(example_p2)
    assert local.direct and local.criterion and local.agree
    not_local = local_criterion(dup_z6)
    assert not not_local.direct and not not_local.b_in_jacobson and not_local.agree
    assert local_criterion(dup_z16).agree


def test_localization_isomorphism(example_p2, dup_z6):
    report = verify_localization_iso(example_p2, ideal_span(example_p2.A, [2]))
    assert report.ok
    assert report.localized_order == example_p2.order
    assert verify_localization_iso(dup_z6, ideal_span(dup_z6.A, [2])).ok


def test_localization_needs_a_prime_over_i0(dup_z6):
    with pytest.raises(InvalidPrimeError):
        verify_localization_iso(dup_z6, ideal_span(dup_z6.A, [3]))
    with pytest.raises(InvalidPrimeError):
        verify_localization_iso(dup_z6, ideal_span(dup_z6.A, [0]))
