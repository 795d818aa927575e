"""
Spectrum of a bi-amalgamation assembled from V(i0), Spec(B) \\ V(b) and
Spec(C) \\ V(c), the local criterion, and the localization isomorphism.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..errors import CompatibilityError, InvalidPrimeError
from .bowtie import (
    BiAmalgInstance,
    LocalizedData,
    biamalg_new,
    ideal_bowtie,
    induced_localized_data,
    sharp_contractions,
)
from .hom import RingHom, factor_through_localization, localize_at_prime
from .ideal import Ideal, ideal_lattice, ideal_sum, is_maximal_ideal, is_prime_ideal
from .invariants import enumerate_spec, prime_sort_key, ring_invariants, vanishing_set

logger = logging.getLogger(__name__)

BOWTIE = "bowtie"
SHARP_B = "sharp-B"
SHARP_C = "sharp-C"


@dataclass(frozen=True)
class SpecEntry:
    ideal: Ideal
    provenance: str
    source: Ideal  # prime of A, B or C the entry comes from
    maximal: bool

    def label(self) -> str:
        if self.provenance == BOWTIE:
            return f"{self.source.label()}><(b,c)"
        return f"{self.source.label()}^#{self.provenance[-1]}"


@dataclass(frozen=True)
class SpecReport:
    entries: Tuple[SpecEntry, ...]
    direct: Tuple[Ideal, ...]
    matches: bool  # candidate list equals the enumerated spectrum as a set, without repeats
    bowtie_is_vanishing_set: bool  # bowtie-type primes are exactly V(b × c)
    count_identity: bool  # |Spec R| = |V(i0)| + |Spec B \ V(b)| + |Spec C \ V(c)|

    @property
    def ok(self) -> bool:
        return self.matches and self.bowtie_is_vanishing_set and self.count_identity

    def by_provenance(self, provenance: str) -> List[SpecEntry]:
        return [entry for entry in self.entries if entry.provenance == provenance]


def assemble_spec(inst: BiAmalgInstance) -> SpecReport:
    entries: List[SpecEntry] = []
    for prime in vanishing_set(inst.i0):
        ideal = ideal_bowtie(inst, prime)
        entries.append(SpecEntry(ideal, BOWTIE, prime, is_maximal_ideal(ideal)))
    for side, ring, ideal in (("B", inst.B, inst.b), ("C", inst.C, inst.c)):
        for prime in enumerate_spec(ring):
            if ideal <= prime:
                continue
            sharp = sharp_contractions(inst, prime, side)
            entries.append(SpecEntry(sharp, SHARP_B if side == "B" else SHARP_C, prime, is_maximal_ideal(sharp)))
    direct = tuple(enumerate_spec(inst.ring))
    candidates = [entry.ideal for entry in entries]
    matches = len(set(candidates)) == len(candidates) and set(candidates) == set(direct)
    bowtie = {entry.ideal for entry in entries if entry.provenance == BOWTIE}
    v_bc = set(vanishing_set(inst.b_times_c))
    count = len(direct) == (
        len(vanishing_set(inst.i0))
        + sum(1 for q in enumerate_spec(inst.B) if not inst.b <= q)
        + sum(1 for q in enumerate_spec(inst.C) if not inst.c <= q)
    )
    report = SpecReport(tuple(entries), direct, matches, bowtie == v_bc, count)
    if not report.ok:
        logger.error(f"{inst.name}: assembled spectrum disagrees with direct enumeration")
    return report


@dataclass(frozen=True)
class SpecTheoremReport:
    bowtie_bijective: bool  # V(i0) -> V(b × c)
    bowtie_order_preserving: bool  # p1 ⊆ p2 iff p1⋈ ⊆ p2⋈
    sharp_bijective: bool  # onto Spec(R) \ V(b × c)
    maximality_preserved: bool
    discrete: bool

    @property
    def ok(self) -> bool:
        return (self.bowtie_bijective and self.bowtie_order_preserving and self.sharp_bijective
                and self.maximality_preserved and self.discrete)


def verify_spec_theorem(inst: BiAmalgInstance) -> SpecTheoremReport:
    v_i0 = vanishing_set(inst.i0)
    images = [ideal_bowtie(inst, p) for p in v_i0]
    v_bc = vanishing_set(inst.b_times_c)
    bowtie_bijective = len(set(images)) == len(images) and set(images) == set(v_bc)
    order_ok = all(
        (p1 <= p2) == (q1 <= q2)
        for p1, q1 in zip(v_i0, images)
        for p2, q2 in zip(v_i0, images)
    )
    sharp_sources = []
    sharp_images = []
    for side, ring, ideal in (("B", inst.B, inst.b), ("C", inst.C, inst.c)):
        for prime in enumerate_spec(ring):
            if not ideal <= prime:
                sharp_sources.append(prime)
                sharp_images.append(sharp_contractions(inst, prime, side))
    off_vbc = set(enumerate_spec(inst.ring)) - set(v_bc)
    sharp_bijective = (
        len(set(sharp_images)) == len(sharp_images)
        and set(sharp_images) == off_vbc
        and all(is_prime_ideal(q) for q in sharp_images)
    )
    maximality = all(
        is_maximal_ideal(src) == is_maximal_ideal(img)
        for src, img in zip(list(v_i0) + sharp_sources, images + sharp_images)
    )
    spectrum = enumerate_spec(inst.ring)
    return SpecTheoremReport(
        bowtie_bijective=bowtie_bijective,
        bowtie_order_preserving=order_ok,
        sharp_bijective=sharp_bijective,
        maximality_preserved=maximality,
        discrete=not spectrum.specializations,
    )


@dataclass(frozen=True)
class BowtieLatticeReport:
    """Monotonicity of a ↦ a⋈(b, c) on ideals containing i0, and dependence on a + i0 only"""
    pairs_checked: int
    monotonicity_witness: Optional[Tuple[Ideal, Ideal]]
    sum_witness: Optional[Ideal]

    @property
    def ok(self) -> bool:
        return self.monotonicity_witness is None and self.sum_witness is None


def bowtie_lattice_checks(inst: BiAmalgInstance) -> BowtieLatticeReport:
    ideals = ideal_lattice(inst.A).ideals
    above = [a for a in ideals if inst.i0 <= a]
    bowties = {a: ideal_bowtie(inst, a) for a in above}
    checked, mono = 0, None
    for a1 in above:
        for a2 in above:
            checked += 1
            if bowties[a1] <= bowties[a2] and not a1 <= a2:
                mono = mono or (a1, a2)
    sum_witness = None
    for a in ideals:
        if ideal_bowtie(inst, a) != bowties[ideal_sum(a, inst.i0)]:
            sum_witness = a
            break
    return BowtieLatticeReport(checked, mono, sum_witness)


@dataclass(frozen=True)
class LocalCriterionReport:
    a_mod_i0_local: bool
    b_in_jacobson: bool
    c_in_jacobson: bool
    direct: bool

    @property
    def criterion(self) -> bool:
        return self.a_mod_i0_local and self.b_in_jacobson and self.c_in_jacobson

    @property
    def agree(self) -> bool:
        return self.criterion == self.direct


def local_criterion(inst: BiAmalgInstance) -> LocalCriterionReport:
    return LocalCriterionReport(
        a_mod_i0_local=ring_invariants(inst.A_mod_i0[0]).is_local,
        b_in_jacobson=inst.b <= ring_invariants(inst.B).jacobson,
        c_in_jacobson=inst.c <= ring_invariants(inst.C).jacobson,
        direct=ring_invariants(inst.ring).is_local,
    )


@dataclass(frozen=True)
class LocalizationIsoReport:
    prime: Ideal
    localized_order: int
    right_order: int
    identity_holds: bool  # f_p^-1(b B_S) = g_p^-1(c C_T) = i0 A_p
    lands_in_right: bool
    kernel_matches: bool  # kernel of R -> right side is the saturation kernel
    bijective: bool
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.identity_holds and self.lands_in_right and self.kernel_matches and self.bijective


def verify_localization_iso(inst: BiAmalgInstance, prime: Ideal) -> LocalizationIsoReport:
    """Compare R localized at p⋈(b, c) with A_p ⋈^{f_p,g_p}(b B_S, c C_T) through the canonical map"""
    if prime.ring != inst.A or not is_prime_ideal(prime) or not inst.i0 <= prime:
        raise InvalidPrimeError(f"{prime.label()} is not a prime of {inst.A!r} containing i0")
    data: LocalizedData = induced_localized_data(inst, prime)
    big_prime = ideal_bowtie(inst, prime)
    left = localize_at_prime(inst.ring, big_prime)
    try:
        right = biamalg_new(data.A_p.ring, data.B_S.ring, data.C_T.ring, data.f_p, data.g_p,
                            data.bB_S, data.cC_T, name=f"{inst.name} localized at {prime.label()}")
    except CompatibilityError as exc:
        logger.error(f"{inst.name} at {prime.label()}: localized data is incompatible: {exc}")
        return LocalizationIsoReport(prime, left.ring.order, 0, data.identity_holds, False, False, False,
                                     note=str(exc))
    xs = data.B_S.hom.table[inst.left_codes]
    ys = data.C_T.hom.table[inst.right_codes]
    table = right.index_of_pairs(xs, ys)
    lands = bool((table >= 0).all())
    if not lands:
        return LocalizationIsoReport(prime, left.ring.order, right.order, data.identity_holds, False, False, False)
    canonical = RingHom(inst.ring, right.ring, table, name="canonical")
    kernel_matches = canonical.kernel == left.kernel
    factor = factor_through_localization(left, canonical)
    bijective = bool(factor.applicable and factor.holds and factor.factored is not None
                     and factor.factored.is_isomorphism)
    return LocalizationIsoReport(
        prime=prime,
        localized_order=left.ring.order,
        right_order=right.order,
        identity_holds=data.identity_holds,
        lands_in_right=lands,
        kernel_matches=kernel_matches,
        bijective=bijective,
    )


def spec_labels(primes) -> List[str]:
    return [p.label() for p in sorted(primes, key=prime_sort_key)]
