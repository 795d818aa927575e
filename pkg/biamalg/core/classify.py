"""
Exhaustive decision procedures: Gauss polynomials, Gaussian and Prüfer rings,
invertible ideals, the regular total order property, and the square-zero lemma.

Finite-ring degeneracies (regular means unit, the total ring of fractions is
the ring itself) are reported in verdict notes; the code paths still run the
literal definitions.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence, Tuple

import numpy as np

from ..config import Settings, get_settings
from ..errors import InvalidPrimeError, NotLocalError, PolynomialError, RingMismatchError
from .hom import extend, localize_at_prime
from .ideal import (
    REGULAR_IDEAL_NOTE,
    Ideal,
    ideal_lattice,
    ideal_product,
    ideal_span,
    is_maximal_ideal,
)
from .invariants import enumerate_spec, ring_invariants
from .ring import Ring, format_poly

logger = logging.getLogger(__name__)

FRACTIONS_NOTE = "the total ring of fractions of a finite ring is the ring itself"


@dataclass(frozen=True)
class Polynomial:
    ring: Ring
    coeffs: Tuple[int, ...]  # constant term first
    degree_bound: int = 3

    def __post_init__(self):
        coeffs = [int(c) for c in self.coeffs]
        for c in coeffs:
            if not 0 <= c < self.ring.order:
                raise PolynomialError(f"coefficient {c} is not an element of {self.ring!r}")
        while coeffs and coeffs[-1] == self.ring.zero:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))
        if len(coeffs) - 1 > self.degree_bound:
            raise PolynomialError(f"degree {len(coeffs) - 1} exceeds the bound {self.degree_bound}")

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial"""
        return len(self.coeffs) - 1

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if other.ring != self.ring:
            raise RingMismatchError("polynomials over different rings")
        if not self.coeffs or not other.coeffs:
            return Polynomial(self.ring, (), self.degree_bound + other.degree_bound)
        ring = self.ring
        out = [ring.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = ring.add(out[i + j], ring.mul(a, b))
        return Polynomial(ring, tuple(out), self.degree_bound + other.degree_bound)

    def __repr__(self) -> str:
        return format_poly(self.coeffs, "T", self.ring.label)


@dataclass(frozen=True)
class PropertyVerdict:
    name: str
    holds: bool
    witness: Any = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.holds


def content_ideal(poly: Polynomial) -> Ideal:
    return ideal_span(poly.ring, poly.coeffs)


# --- Gauss polynomials ---

def _all_polys(n: int, degree: int) -> np.ndarray:
    """Every coefficient vector of length degree+1, constant term varying fastest"""
    idx = np.arange(n ** (degree + 1), dtype=np.int64)
    return np.stack([(idx // n ** i) % n for i in range(degree + 1)], axis=1)


def _product_coeffs(ring: Ring, coeffs: Sequence[int], others: np.ndarray) -> np.ndarray:
    width = others.shape[1]
    out = np.full((others.shape[0], max(len(coeffs), 1) + width - 1), ring.zero, dtype=np.int64)
    for i, p in enumerate(coeffs):
        if p == ring.zero:
            continue
        out[:, i:i + width] = ring.add_codes(out[:, i:i + width], ring.mul_codes(int(p), others))
    return out


def _first_gauss_failure(ring: Ring, coeffs: Sequence[int], others: np.ndarray, other_content: np.ndarray,
                         chunk: int = 1 << 15) -> int:
    lattice = ideal_lattice(ring)
    own = lattice.content_index(np.asarray(list(coeffs) or [ring.zero], dtype=np.int64)[None, :])[0]
    for start in range(0, len(others), chunk):
        block = others[start:start + chunk]
        lhs = lattice.content_index(_product_coeffs(ring, coeffs, block))
        rhs = lattice.prod_indices(own, other_content[start:start + chunk])
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            return start + int(bad[0])
    return -1


def gauss_polynomial_oracle(poly: Polynomial, degree: Optional[int] = None) -> PropertyVerdict:
    """c(P g) = c(P) c(g) for every g of degree at most ``degree``"""
    ring = poly.ring
    degree = poly.degree_bound if degree is None else degree
    others = _all_polys(ring.order, degree)
    content = ideal_lattice(ring).content_index(others)
    bad = _first_gauss_failure(ring, poly.coeffs, others, content)
    if bad < 0:
        return PropertyVerdict("gauss-polynomial", True, note=f"checked against all g of degree <= {degree}")
    return PropertyVerdict("gauss-polynomial", False,
                           witness=Polynomial(ring, tuple(int(c) for c in others[bad]), degree))


def content_oracle_degree(order: int, requested: int, settings: Settings) -> int:
    """Largest degree <= requested whose unordered (P, g) scan fits the budget, never below 1"""
    degree = requested
    while degree > 1 and order ** (2 * (degree + 1)) // 2 > settings.content_oracle_budget:
        degree -= 1
    return degree


def gaussian_content_oracle(ring: Ring, degree: Optional[int] = None,
                            settings: Optional[Settings] = None) -> PropertyVerdict:
    """Every polynomial of bounded degree is a Gauss polynomial against every g of the same bound"""
    settings = settings or get_settings()
    requested = settings.poly_degree_bound if degree is None else degree
    degree = content_oracle_degree(ring.order, requested, settings)
    note = f"polynomials of degree <= {degree}"
    if degree < requested:
        note += f" (lowered from {requested} to fit the scan budget)"
    polys = _all_polys(ring.order, degree)
    content = ideal_lattice(ring).content_index(polys)
    for i in range(len(polys)):
        bad = _first_gauss_failure(ring, polys[i].tolist(), polys[i:], content[i:])
        if bad >= 0:
            witness = (Polynomial(ring, tuple(polys[i].tolist()), degree),
                       Polynomial(ring, tuple(polys[i + bad].tolist()), degree))
            return PropertyVerdict("gaussian-content-oracle", False, witness=witness, note=note)
    return PropertyVerdict("gaussian-content-oracle", True, note=note)


# --- Gaussian rings ---

def ht_pair_condition(ring: Ring, x: int, y: int) -> bool:
    """(x,y)^2 = (x^2) or (y^2); and (x,y)^2 = (x^2), xy = 0 force y^2 = 0 (and symmetrically)"""
    lattice = ideal_lattice(ring)
    p = lattice.principal
    s = lattice.sum_index(p[x], p[y])
    s2 = lattice.prod_index(s, s)
    x2, y2, xy = ring.mul(x, x), ring.mul(y, y), ring.mul(x, y)
    if s2 != p[x2] and s2 != p[y2]:
        return False
    if s2 == p[x2] and xy == ring.zero and y2 != ring.zero:
        return False
    if s2 == p[y2] and xy == ring.zero and x2 != ring.zero:
        return False
    return True


def _ht_scan(ring: Ring) -> Optional[Tuple[int, int]]:
    lattice = ideal_lattice(ring)
    p = lattice.principal
    codes = ring.codes()
    squares = ring.mul_codes(codes, codes)
    zero = ring.zero
    for x in range(ring.order - 1):
        ys = codes[x + 1:]
        s = lattice.sum_indices(p[x], p[ys])
        s2 = lattice.prod_indices(s, s)
        by_x, by_y = s2 == p[squares[x]], s2 == p[squares[ys]]
        xy_zero = ring.mul_codes(x, ys) == zero
        bad = ~(by_x | by_y)
        bad |= by_x & xy_zero & (squares[ys] != zero)
        bad |= by_y & xy_zero & (squares[x] != zero)
        if bad.any():
            return x, int(ys[np.argmax(bad)])
    return None


def is_gaussian(ring: Ring) -> PropertyVerdict:
    return ring.memo("gaussian", lambda: _is_gaussian(ring))


def _is_gaussian(ring: Ring) -> PropertyVerdict:
    if ring.is_zero_ring:
        return PropertyVerdict("gaussian", True, note="zero ring")
    if ring_invariants(ring).is_local:
        pair = _ht_scan(ring)
        if pair is None:
            return PropertyVerdict("gaussian", True)
        return PropertyVerdict("gaussian", False, witness=pair,
                               note=f"pair ({ring.label(pair[0])}, {ring.label(pair[1])}) fails the square test")
    for prime in enumerate_spec(ring):
        local = localize_at_prime(ring, prime)
        verdict = is_gaussian(local.ring)
        if not verdict:
            return PropertyVerdict("gaussian", False, witness=(prime.label(), verdict.witness),
                                   note=f"localization at {prime.label()}: {verdict.note}")
    return PropertyVerdict("gaussian", True, note="every localization at a maximal ideal is Gaussian")


# --- invertibility and Prüfer ---

def is_invertible(ideal: Ideal) -> PropertyVerdict:
    """Search the cyclic submodules F = R x of the total ring of fractions for I F = R"""
    ring = ideal.ring
    note = f"{FRACTIONS_NOTE}; invertible means unit ideal"
    for x in range(ring.order):
        if ideal_product(ideal, ideal_span(ring, [x])).is_unit:
            return PropertyVerdict("invertible", True, witness=ideal_span(ring, [x]), note=note)
    return PropertyVerdict("invertible", False, note=note)


def is_prufer(ring: Ring) -> PropertyVerdict:
    return ring.memo("prufer", lambda: _is_prufer(ring))


def _is_prufer(ring: Ring) -> PropertyVerdict:
    lattice = ideal_lattice(ring)
    units = ring.unit_flags()
    checked = 0
    for ideal in lattice.with_rank_at_most(3):
        if not (ideal.mask & units).any():
            continue
        checked += 1
        if not is_invertible(ideal):
            return PropertyVerdict("prufer", False, witness=ideal, note=REGULAR_IDEAL_NOTE)
    return PropertyVerdict("prufer", True, note=f"{REGULAR_IDEAL_NOTE}; {checked} regular ideals checked")


def regular_total_order(ring: Ring, maximal: Ideal) -> PropertyVerdict:
    """Extensions to R_m of any two ideals, one of them regular, are comparable"""
    if maximal.ring != ring or not is_maximal_ideal(maximal):
        raise InvalidPrimeError(f"{maximal.label()} is not a maximal ideal of {ring!r}")
    loc = localize_at_prime(ring, maximal)
    units = ring.unit_flags()
    ideals = ideal_lattice(ring).with_rank_at_most(2)
    extended = [extend(loc.hom, ideal) for ideal in ideals]
    regular = [bool((ideal.mask & units).any()) for ideal in ideals]
    for i, left in enumerate(extended):
        for j in range(i + 1, len(extended)):
            if not (regular[i] or regular[j]):
                continue
            right = extended[j]
            if not (left <= right or right <= left):
                return PropertyVerdict("regular-total-order", False, witness=(ideals[i], ideals[j]),
                                       note=REGULAR_IDEAL_NOTE)
    return PropertyVerdict("regular-total-order", True, note=REGULAR_IDEAL_NOTE)


# --- square-zero lemma ---

@dataclass(frozen=True)
class SquareZeroReport:
    gaussian: bool
    elementwise_squares_zero: bool  # a^2 = 0 for every a in I
    ideal_square_zero: bool  # I^2 = 0

    @property
    def equivalent(self) -> bool:
        return self.elementwise_squares_zero == self.ideal_square_zero

    @property
    def holds(self) -> bool:
        """The equivalence is only claimed for Gaussian local rings"""
        return self.equivalent or not self.gaussian


def lemma_idquad_check(ring: Ring, ideal: Ideal) -> SquareZeroReport:
    if not ring_invariants(ring).is_local:
        raise NotLocalError(f"{ring!r} is not local")
    if ideal.ring != ring:
        raise RingMismatchError(f"{ideal!r} is not an ideal of {ring!r}")
    codes = ideal.codes
    return SquareZeroReport(
        gaussian=bool(is_gaussian(ring)),
        elementwise_squares_zero=bool((ring.mul_codes(codes, codes) == ring.zero).all()),
        ideal_square_zero=ideal_product(ideal, ideal).is_zero,
    )


def is_total_ring_of_fractions(ring: Ring) -> PropertyVerdict:
    """Every non-unit is a zero-divisor"""
    non_units = ~ring.unit_flags()
    if ring.order > 1:
        stray = non_units & ~ring.zero_divisor_flags()
        if stray.any():
            return PropertyVerdict("total-ring-of-fractions", False, witness=int(np.argmax(stray)))
    return PropertyVerdict("total-ring-of-fractions", True, note=FRACTIONS_NOTE)


@dataclass(frozen=True)
class RingClassification:
    gaussian: PropertyVerdict
    prufer: PropertyVerdict
    local: bool
    field: bool
    notes: Tuple[str, ...] = field(default=())


def classify_ring(ring: Ring) -> RingClassification:
    inv = ring_invariants(ring)
    gaussian, prufer = is_gaussian(ring), is_prufer(ring)
    notes = tuple(n for n in (gaussian.note, prufer.note) if n)
    return RingClassification(gaussian, prufer, inv.is_local, inv.is_field, notes)
