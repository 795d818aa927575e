"""
Registered checks for single rings and for the structure results on
bi-amalgamations (size, fiber product, spectrum, local criterion,
localization, module generation, zero-divisors).

Importing this module fills the registry; it pulls in ``biamalg.core.theorems``
for the transfer theorems.
"""
import logging

import numpy as np

from ..core.bowtie import (
    BiAmalgInstance,
    canonical_maps,
    module_generators,
    noetherian_sanity,
    verify_fiber_product,
)
from ..core.classify import (
    FRACTIONS_NOTE,
    gaussian_content_oracle,
    is_gaussian,
    is_prufer,
    is_total_ring_of_fractions,
    lemma_idquad_check,
)
from ..core.hom import MultiplicativeSet, enumerate_homs, factor_through_localization, localize_finite, quotient_by
from ..core.ideal import (
    REGULAR_IDEAL_NOTE,
    annihilator,
    ideal_colon,
    ideal_lattice,
    radical,
    unit_ideal,
)
from ..core.invariants import enumerate_spec, jacobson_mask, ring_invariants, spec_by_ideal_scan, vanishing_set
from ..core.ring import Ring, verify_axioms
from ..core.spectra import (
    assemble_spec,
    bowtie_lattice_checks,
    local_criterion,
    verify_localization_iso,
    verify_spec_theorem,
)
from ..core.theorems import condition_checks, zero_divisor_dichotomy
from ..decorators.theorem_registry import INSTANCE_SCOPE, RING_SCOPE, Case, TheoremResult, registry
from .catalog import base_rings

logger = logging.getLogger(__name__)

AXIOM_CAP = 256
ORACLE_CAP = 64
LOCALIZATION_CAP = 64
LOCALIZATION_TARGET_ORDER = 8
HOM_ENUM_LIMIT = 4096
MONOTONE_CAP = 12
NOETHERIAN_NOTE = "every finite ring is Noetherian"


def _single(theorem: str, label: str, conclusions, hypotheses=None, witness=None, notes=()) -> TheoremResult:
    return TheoremResult(theorem, (Case(label, dict(hypotheses or {}), dict(conclusions), witness),), tuple(notes))


def _ring_label(ring: Ring) -> str:
    return repr(ring)


# --- ring scope ---

@registry.theorem("ring-axioms", scope=RING_SCOPE, conclusions=("axioms",))
def ring_axioms(ring: Ring) -> TheoremResult:
    """Commutative ring axioms, exhaustively for small rings"""
    if ring.order > AXIOM_CAP:
        return TheoremResult("ring-axioms", ())
    failure = verify_axioms(ring)
    return _single("ring-axioms", _ring_label(ring), {"axioms": failure is None}, witness=failure)


@registry.theorem("regular-units", scope=RING_SCOPE, conclusions=("reg-equals-units", "nil-in-jacobson"))
def regular_units(ring: Ring) -> TheoremResult:
    """Reg = units and nilradical ⊆ Jacobson, from independent scans"""
    units = ring.unit_flags()
    regular = ~ring.zero_divisor_flags()
    nil_in_jac = bool((~ring.nilpotent_flags() | jacobson_mask(ring)).all())
    return _single("regular-units", _ring_label(ring),
                   {"reg-equals-units": bool(np.array_equal(units, regular)), "nil-in-jacobson": nil_in_jac})


@registry.theorem("gaussian-prufer", scope=RING_SCOPE, hypotheses=("gaussian",), conclusions=("prufer",))
def gaussian_prufer(ring: Ring) -> TheoremResult:
    """Gaussian rings are Prüfer"""
    return _single("gaussian-prufer", _ring_label(ring), {"prufer": bool(is_prufer(ring))},
                   hypotheses={"gaussian": bool(is_gaussian(ring))}, notes=(REGULAR_IDEAL_NOTE,))


@registry.theorem("gaussian-quotients", scope=RING_SCOPE, hypotheses=("gaussian",),
                  conclusions=("quotient-gaussian",))
def gaussian_quotients(ring: Ring) -> TheoremResult:
    """Quotients of a Gaussian ring are Gaussian"""
    gaussian = bool(is_gaussian(ring))
    if not gaussian:
        return _single("gaussian-quotients", _ring_label(ring), {}, hypotheses={"gaussian": False})
    cases = tuple(
        Case(f"{_ring_label(ring)} / {ideal.label()}", {"gaussian": True},
             {"quotient-gaussian": bool(is_gaussian(quotient_by(ideal)[0]))})
        for ideal in ideal_lattice(ring).ideals
    )
    return TheoremResult("gaussian-quotients", cases)


@registry.theorem("gaussian-oracle", scope=RING_SCOPE, hypotheses=("local",), conclusions=("agree",))
def gaussian_oracle(ring: Ring) -> TheoremResult:
    """Pair-scan verdict agrees with the bounded-degree content oracle on small local rings"""
    if ring.order > ORACLE_CAP:
        return TheoremResult("gaussian-oracle", ())
    local = ring_invariants(ring).is_local
    if not local:
        return _single("gaussian-oracle", _ring_label(ring), {}, hypotheses={"local": False})
    scan, oracle = is_gaussian(ring), gaussian_content_oracle(ring)
    return _single("gaussian-oracle", _ring_label(ring), {"agree": bool(scan) == bool(oracle)},
                   hypotheses={"local": True}, witness=oracle.witness, notes=(oracle.note,))


@registry.theorem("square-lemma", scope=RING_SCOPE, hypotheses=("gaussian-local",), conclusions=("equivalence",))
def square_lemma(ring: Ring) -> TheoremResult:
    """In a Gaussian local ring I^2 = 0 iff a^2 = 0 for every a ∈ I"""
    if not ring_invariants(ring).is_local:
        return _single("square-lemma", _ring_label(ring), {}, hypotheses={"gaussian-local": False})
    cases = []
    for ideal in ideal_lattice(ring).ideals:
        report = lemma_idquad_check(ring, ideal)
        cases.append(Case(f"{_ring_label(ring)}: {ideal.label()}", {"gaussian-local": report.gaussian},
                          {"equivalence": report.equivalent}))
    return TheoremResult("square-lemma", tuple(cases))


@registry.theorem("spec-oracle", scope=RING_SCOPE, conclusions=("spec-matches",))
def spec_oracle(ring: Ring) -> TheoremResult:
    """Spectrum from primitive idempotents equals the brute-force prime scan"""
    if ring.order > ORACLE_CAP:
        return TheoremResult("spec-oracle", ())
    lattice = ideal_lattice(ring)
    scanned = spec_by_ideal_scan(ring, max_generators=max(2, int(lattice.rank.max())))
    return _single("spec-oracle", _ring_label(ring), {"spec-matches": list(enumerate_spec(ring)) == scanned})


@registry.theorem("ideal-sanity", scope=RING_SCOPE,
                  conclusions=("radical-is-intersection", "vanishing-monotone", "colon-by-unit", "annihilator-of-unit"))
def ideal_sanity(ring: Ring) -> TheoremResult:
    """radical(I) = ∩ V(I), V reverses inclusion, (I : R) = I and Ann(R) = 0"""
    if ring.order > ORACLE_CAP:
        return TheoremResult("ideal-sanity", ())
    ideals = ideal_lattice(ring).ideals
    whole = unit_ideal(ring)
    radical_ok, colon_ok = True, True
    for ideal in ideals:
        above = vanishing_set(ideal)
        meet = np.ones(ring.order, dtype=bool)
        for prime in above:
            meet &= prime.mask
        radical_ok &= bool(np.array_equal(radical(ideal).mask, meet))
        colon_ok &= ideal_colon(ideal, whole) == ideal
    spectra = {ideal: set(vanishing_set(ideal)) for ideal in ideals}
    monotone = all(spectra[j] <= spectra[i] for i in ideals for j in ideals if i <= j)
    return _single("ideal-sanity", _ring_label(ring), {
        "radical-is-intersection": radical_ok,
        "vanishing-monotone": monotone,
        "colon-by-unit": colon_ok,
        "annihilator-of-unit": annihilator(whole).is_zero,
    })


@registry.theorem("degeneracy", scope=RING_SCOPE, conclusions=("prufer", "total-fractions"))
def degeneracy(ring: Ring) -> TheoremResult:
    """Finite rings are Prüfer and their own total rings of fractions"""
    return _single("degeneracy", _ring_label(ring),
                   {"prufer": bool(is_prufer(ring)), "total-fractions": bool(is_total_ring_of_fractions(ring))},
                   notes=(REGULAR_IDEAL_NOTE, FRACTIONS_NOTE))


def _target_homs(ring: Ring, target: Ring):
    # enumerate_homs logs and gives up past its limit; skip those targets quietly
    if ring.characteristic % target.characteristic or target.order ** len(ring.generators) > HOM_ENUM_LIMIT:
        return []
    return enumerate_homs(ring, target, limit=HOM_ENUM_LIMIT)


@registry.theorem("localization-universal", scope=RING_SCOPE, hypotheses=("inverts",),
                  conclusions=("kills-kernel", "factors"))
def localization_universal(ring: Ring) -> TheoremResult:
    """Every hom R -> T inverting S kills K and factors uniquely through R -> S^-1 R"""
    if ring.order > LOCALIZATION_CAP:
        return TheoremResult("localization-universal", ())
    label = _ring_label(ring)
    msets = [("units", MultiplicativeSet(ring, np.flatnonzero(ring.unit_flags())))]
    msets += [(f"R \\ {prime.label()}", MultiplicativeSet.complement_of(prime)) for prime in enumerate_spec(ring)]
    targets = base_rings(LOCALIZATION_TARGET_ORDER)
    cases = []
    for name, mset in msets:
        loc = localize_finite(ring, mset)
        for target in targets + [loc.ring]:
            inverts, killed, factored, witness = False, True, True, None
            for hom in _target_homs(ring, target):
                report = factor_through_localization(loc, hom)
                if not report.applicable:
                    continue
                inverts = True
                hom_kills = bool((hom.table[loc.kernel.codes] == target.zero).all())
                killed &= hom_kills
                factored &= report.holds
                if witness is None and not (hom_kills and report.holds):
                    witness = repr(hom)
            cases.append(Case(f"{label}: {name} -> {target!r}", {"inverts": inverts},
                              {"kills-kernel": killed, "factors": factored}, witness=witness))
    return TheoremResult("localization-universal", tuple(cases))


# --- instance scope ---

@registry.theorem("size-identity", scope=INSTANCE_SCOPE, conclusions=("size",))
def size_identity(inst: BiAmalgInstance) -> TheoremResult:
    """|R| = |A/i0| |b| |c|"""
    return _single("size-identity", inst.name, {"size": inst.order == inst.predicted_order},
                   witness=(inst.order, inst.predicted_order))


@registry.theorem("fiber-product", scope=INSTANCE_SCOPE, conclusions=("set-equal", "diagram-commutes"))
def fiber_product(inst: BiAmalgInstance) -> TheoremResult:
    """R = π^-1(i_fg(A/i0)) and the pullback square commutes"""
    report = verify_fiber_product(inst)
    return _single("fiber-product", inst.name,
                   {"set-equal": report.set_equal, "diagram-commutes": report.diagram_commutes})


@registry.theorem("canonical-maps", scope=INSTANCE_SCOPE,
                  conclusions=("p-surjective", "p-kernel", "iota-injective", "i_fg-injective"))
def canonical_maps_check(inst: BiAmalgInstance) -> TheoremResult:
    report = canonical_maps(inst)
    return _single("canonical-maps", inst.name, {
        "p-surjective": report.p_surjective,
        "p-kernel": report.p_kernel_is_b_times_c,
        "iota-injective": report.iota_injective,
        "i_fg-injective": report.i_fg_injective,
    })


@registry.theorem("spec-assembly", scope=INSTANCE_SCOPE, conclusions=("matches", "bowtie-vanishing", "count"))
def spec_assembly(inst: BiAmalgInstance) -> TheoremResult:
    """Spec R = V(i0)⋈ ∪ (Spec B \\ V(b))^# ∪ (Spec C \\ V(c))^#"""
    report = assemble_spec(inst)
    return _single("spec-assembly", inst.name, {
        "matches": report.matches,
        "bowtie-vanishing": report.bowtie_is_vanishing_set,
        "count": report.count_identity,
    })


@registry.theorem("spec-theorem", scope=INSTANCE_SCOPE,
                  conclusions=("bowtie-bijective", "order-preserving", "sharp-bijective", "maximality", "discrete"))
def spec_theorem(inst: BiAmalgInstance) -> TheoremResult:
    report = verify_spec_theorem(inst)
    return _single("spec-theorem", inst.name, {
        "bowtie-bijective": report.bowtie_bijective,
        "order-preserving": report.bowtie_order_preserving,
        "sharp-bijective": report.sharp_bijective,
        "maximality": report.maximality_preserved,
        "discrete": report.discrete,
    })


@registry.theorem("local-criterion", scope=INSTANCE_SCOPE, conclusions=("agree",))
def local_criterion_check(inst: BiAmalgInstance) -> TheoremResult:
    """R local iff A/i0 local, b ⊆ Jac B and c ⊆ Jac C"""
    report = local_criterion(inst)
    return _single("local-criterion", inst.name, {"agree": report.agree},
                   witness=(report.criterion, report.direct))


@registry.theorem("bowtie-monotone", scope=INSTANCE_SCOPE, conclusions=("reflects-inclusion", "depends-on-sum"))
def bowtie_monotone(inst: BiAmalgInstance) -> TheoremResult:
    """a1⋈ ⊆ a2⋈ forces a1 ⊆ a2 above i0, and a⋈ only depends on a + i0"""
    if inst.A.order > MONOTONE_CAP:
        return TheoremResult("bowtie-monotone", ())
    report = bowtie_lattice_checks(inst)
    witness = report.monotonicity_witness or report.sum_witness
    return _single("bowtie-monotone", inst.name, {
        "reflects-inclusion": report.monotonicity_witness is None,
        "depends-on-sum": report.sum_witness is None,
    }, witness=witness)


@registry.theorem("module-generators", scope=INSTANCE_SCOPE, conclusions=("generates-ring", "generates-product"))
def module_generators_check(inst: BiAmalgInstance) -> TheoremResult:
    report = module_generators(inst)
    return _single("module-generators", inst.name, {
        "generates-ring": report.generates_ring,
        "generates-product": report.generates_product,
    })


@registry.theorem("noetherian", scope=INSTANCE_SCOPE, conclusions=("finitely-generated",))
def noetherian(inst: BiAmalgInstance) -> TheoremResult:
    """R, A/k, f(A)+b and g(A)+c have finitely generated ideals"""
    report = noetherian_sanity(inst)
    return _single("noetherian", inst.name, {"finitely-generated": report.holds}, notes=(NOETHERIAN_NOTE,))


@registry.theorem("localization-iso", scope=INSTANCE_SCOPE,
                  conclusions=("identity", "lands", "kernel", "bijective"))
def localization_iso(inst: BiAmalgInstance) -> TheoremResult:
    """R localized at p⋈ is A_p ⋈ (b B_S, c C_T) through the canonical map"""
    if inst.order > LOCALIZATION_CAP:
        return TheoremResult("localization-iso", ())
    cases = []
    for prime in vanishing_set(inst.i0):
        report = verify_localization_iso(inst, prime)
        cases.append(Case(f"p = {prime.label()}", {}, {
            "identity": report.identity_holds,
            "lands": report.lands_in_right,
            "kernel": report.kernel_matches,
            "bijective": report.bijective,
        }, witness=report.note or None))
    return TheoremResult("localization-iso", tuple(cases))


@registry.theorem("zero-divisor-dichotomy", scope=INSTANCE_SCOPE, hypotheses=("blackstar",),
                  conclusions=("certified", "case1-zero-divisor"))
def zero_divisor_check(inst: BiAmalgInstance) -> TheoremResult:
    """Zero-divisors of R fall in one of the two cases; under (★) case 1 alone suffices"""
    certified, case1_zd = True, True
    witness = None
    for r in range(inst.order):
        report = zero_divisor_dichotomy(inst, r)
        if not report.certified:
            certified = False
            if witness is None:
                witness = r
        if report.case1 and not report.is_zero_divisor:
            case1_zd = False
    blackstar = bool(condition_checks(inst).blackstar)
    return TheoremResult("zero-divisor-dichotomy", (
        Case(f"{inst.name}: dichotomy", {}, {"certified": certified}, witness=witness),
        Case(f"{inst.name}: (★)", {"blackstar": blackstar}, {"case1-zero-divisor": case1_zd}),
    ))
