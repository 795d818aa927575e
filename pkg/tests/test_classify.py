import pytest

from biamalg.config import Settings, configure
from biamalg.core.classify import (
    Polynomial,
    classify_ring,
    content_ideal,
    content_oracle_degree,
    gauss_polynomial_oracle,
    gaussian_content_oracle,
    ht_pair_condition,
    is_gaussian,
    is_invertible,
    is_prufer,
    is_total_ring_of_fractions,
    lemma_idquad_check,
    regular_total_order,
)
from biamalg.core.ideal import ideal_span, unit_ideal
from biamalg.core.ring import product, zmod
from biamalg.errors import InvalidPrimeError, NotLocalError, PolynomialError, RingMismatchError


def test_polynomials(dual_numbers):
    p = Polynomial(dual_numbers, (2, 1, 0, 0))
    assert p.coeffs == (2, 1)
    assert p.degree == 1
    assert repr(p) == "T+x"
    assert (p * p).coeffs == (0, 0, 1)
    assert Polynomial(dual_numbers, ()).degree == -1
    with pytest.raises(PolynomialError):
        Polynomial(dual_numbers, (1, 1), degree_bound=0)
    with pytest.raises(PolynomialError):
        Polynomial(dual_numbers, (4,))
    with pytest.raises(RingMismatchError):
        p * Polynomial(zmod(4), (1,))


def test_content_ideal(f2_xy):
    assert content_ideal(Polynomial(f2_xy, (2, 4))) == ideal_span(f2_xy, [2, 4])


def test_gauss_polynomial_witness(f2_xy):
    verdict = gauss_polynomial_oracle(Polynomial(f2_xy, (2, 4), degree_bound=1))
    assert not verdict.holds
    assert verdict.witness.coeffs == (2, 4)


def test_units_are_gauss_polynomials(f2_xy):
    assert gauss_polynomial_oracle(Polynomial(f2_xy, (1,), degree_bound=1)).holds


def test_content_oracle_degree():
    settings = Settings(content_oracle_budget=2_000_000)
    assert content_oracle_degree(4, 3, settings) == 3
    assert content_oracle_degree(16, 3, settings) == 1
    assert content_oracle_degree(16, 1, settings) == 1


def test_content_oracle(dual_numbers):
    verdict = gaussian_content_oracle(dual_numbers, degree=2)
    assert verdict.holds
    assert verdict.note == "polynomials of degree <= 2"


def test_content_oracle_lowers_its_degree(f2_xy):
    configure(content_oracle_budget=100_000)
    verdict = gaussian_content_oracle(f2_xy, degree=2)
    assert not verdict.holds
    assert "lowered from 2" in verdict.note
    p, g = verdict.witness
    assert not gauss_polynomial_oracle(p, degree=1).holds


def test_ht_pair_condition(f2_xy, z8):
    assert not ht_pair_condition(f2_xy, 2, 4)
    assert ht_pair_condition(f2_xy, 2, 3)
    assert ht_pair_condition(z8, 2, 4)


@pytest.mark.parametrize("n", [2, 4, 8, 9, 12, 16])
def test_cyclic_rings_are_gaussian(n):
    assert is_gaussian(zmod(n)).holds


def test_two_variable_quotient_is_not_gaussian(f2_xy):
    verdict = is_gaussian(f2_xy)
    assert not verdict
    assert verdict.witness == (2, 4)
    assert verdict.note == "pair (x, y) fails the square test"


def test_gaussian_goes_through_localizations(f2_xy):
    verdict = is_gaussian(product(zmod(3), zmod(4)))
    assert verdict.holds
    assert "localization" in verdict.note
    failing = is_gaussian(product(zmod(2), f2_xy))
    assert not failing.holds


def test_bi_amalgamations(example_p2, dup_z16):
    assert is_gaussian(example_p2.ring).holds
    assert not is_gaussian(dup_z16.ring).holds


def test_invertible_ideals(z8):
    assert is_invertible(unit_ideal(z8)).holds
    assert not is_invertible(ideal_span(z8, [2])).holds


def test_finite_rings_are_prufer(z12, f2_xy):
    for ring in (z12, f2_xy):
        verdict = is_prufer(ring)
        assert verdict.holds
        assert "regular ideal is the unit ideal" in verdict.note


def test_regular_total_order(z8, z12):
    assert regular_total_order(z8, ideal_span(z8, [2])).holds
    assert regular_total_order(z12, ideal_span(z12, [3])).holds
    with pytest.raises(InvalidPrimeError):
        regular_total_order(z12, ideal_span(z12, [6]))


def test_square_zero_lemma(z8, f2_xy, z12):
    report = lemma_idquad_check(z8, ideal_span(z8, [4]))
    assert report.gaussian and report.elementwise_squares_zero and report.ideal_square_zero
    assert report.holds
    report = lemma_idquad_check(f2_xy, ideal_span(f2_xy, [2, 4]))
    assert report.elementwise_squares_zero and not report.ideal_square_zero
    assert report.holds
    with pytest.raises(NotLocalError):
        lemma_idquad_check(z12, ideal_span(z12, [6]))


def test_total_ring_of_fractions(z12):
    verdict = is_total_ring_of_fractions(z12)
    assert verdict.holds
    assert "ring itself" in verdict.note


def test_classify_ring(z8, f2_xy):
    summary = classify_ring(z8)
    assert summary.gaussian.holds and summary.prufer.holds and summary.local and not summary.field
    assert not classify_ring(f2_xy).gaussian.holds
