"""
Ring-level invariants and the prime spectrum.
"""
import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

import numpy as np

from ..errors import InvariantViolation
from .bitset import BitSet
from .hom import contract, quotient_by
from .ideal import Ideal, ideal_lattice, is_prime_ideal
from .ring import Ring

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RingInvariants:
    units: BitSet
    regular: BitSet
    nilradical: Ideal
    jacobson: Ideal
    idempotents: BitSet
    is_local: bool
    is_field: bool
    maximal_ideal: Optional[Ideal]


def jacobson_mask(ring: Ring) -> np.ndarray:
    """{x : 1 + x r is a unit for every r}"""
    units = ring.unit_flags()
    shifted = ring.add_codes(ring.one, ring.mul_table)
    return units[shifted].all(axis=1)


def ring_invariants(ring: Ring) -> RingInvariants:
    return ring.memo("invariants", lambda: _ring_invariants(ring))


def _ring_invariants(ring: Ring) -> RingInvariants:
    units = ring.unit_flags()
    regular = ~ring.zero_divisor_flags()
    if not np.array_equal(units, regular):
        raise InvariantViolation(f"{ring!r}: regular elements differ from units")
    nilradical = Ideal.from_mask(ring, ring.nilpotent_flags())
    jacobson = Ideal.from_mask(ring, jacobson_mask(ring))
    if not nilradical <= jacobson:
        raise InvariantViolation(f"{ring!r}: nilradical is not inside the Jacobson radical")
    spectrum = enumerate_spec(ring)
    is_local = len(spectrum) == 1
    if is_local != (not ring.is_zero_ring and np.array_equal(~units, jacobson.mask)):
        raise InvariantViolation(f"{ring!r}: locality by spectrum and by non-units disagree")
    is_field = ring.order > 1 and bool(units[ring.codes() != ring.zero].all())
    return RingInvariants(
        units=BitSet.from_bool(units),
        regular=BitSet.from_bool(regular),
        nilradical=nilradical,
        jacobson=jacobson,
        idempotents=BitSet.from_bool(ring.idempotent_flags()),
        is_local=is_local,
        is_field=is_field,
        maximal_ideal=spectrum.primes[0] if is_local else None,
    )


def prime_sort_key(ideal: Ideal) -> Tuple:
    return (ideal.generators, ideal.elements.mask)


@dataclass(frozen=True)
class Spectrum:
    """Prime ideals of a finite ring; all are maximal and specialization is discrete"""
    ring: Ring
    primes: Tuple[Ideal, ...]
    maximal: Tuple[bool, ...]
    specializations: Tuple[Tuple[int, int], ...] = field(default=())

    def __iter__(self) -> Iterator[Ideal]:
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)

    def __contains__(self, ideal: Ideal) -> bool:
        return ideal in self.primes


def enumerate_spec(ring: Ring) -> Spectrum:
    """Primes as contractions of the field factors of R/Jac(R), found through primitive idempotents"""
    return ring.memo("spectrum", lambda: _enumerate_spec(ring))


def _enumerate_spec(ring: Ring) -> Spectrum:
    if ring.is_zero_ring:
        return Spectrum(ring, (), ())
    jacobson = Ideal.from_mask(ring, jacobson_mask(ring))
    reduced, projection = quotient_by(jacobson)
    idempotent = np.flatnonzero(reduced.idempotent_flags())
    idempotent = idempotent[idempotent != reduced.zero]
    # e is primitive when no other nonzero idempotent e' satisfies e e' = e'
    products = reduced.mul_codes(idempotent[:, None], idempotent[None, :])
    below = (products == idempotent[None, :]) & (idempotent[None, :] != idempotent[:, None])
    primitive = idempotent[~below.any(axis=1)]
    primes = []
    for e in primitive:
        field_kernel = Ideal.from_mask(reduced, reduced.mul_row(int(e)) == reduced.zero)
        primes.append(contract(projection, field_kernel))
    primes.sort(key=prime_sort_key)
    for prime in primes:
        if not is_prime_ideal(prime):
            raise InvariantViolation(f"{ring!r}: {prime.label()} from a primitive idempotent is not prime")
    specializations = tuple(
        (i, j) for i, p in enumerate(primes) for j, q in enumerate(primes) if i != j and p <= q
    )
    if specializations:
        raise InvariantViolation(f"{ring!r}: non-trivial specialization among primes of a finite ring")
    logger.debug(f"Spec of {ring!r}: {[p.label() for p in primes]}")
    return Spectrum(ring, tuple(primes), tuple(True for _ in primes), specializations)


def spec_by_ideal_scan(ring: Ring, max_generators: int = 2) -> List[Ideal]:
    """Primes among the ideals with at most ``max_generators`` generators"""
    lattice = ideal_lattice(ring)
    primes = [ideal for ideal in lattice.with_rank_at_most(max_generators) if is_prime_ideal(ideal)]
    return sorted(primes, key=prime_sort_key)


def vanishing_set(ideal: Ideal) -> List[Ideal]:
    """V(I): primes containing I, in spectrum order"""
    return [prime for prime in enumerate_spec(ideal.ring) if ideal <= prime]
