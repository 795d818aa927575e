"""
Conditions (*), (**), (★) on a bi-amalgamation, the zero-divisor dichotomy,
the torsion data of the total-ring-of-fractions criterion, and the Prüfer and
Gaussian transfer theorems evaluated clause by clause.

Every theorem returns a ``TheoremResult`` whose cases carry the truth value of
each named hypothesis and conclusion; the harness ablates by clause name.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from ..decorators.theorem_registry import INSTANCE_SCOPE, Case, TheoremResult, registry
from ..errors import InvariantViolation, RingMismatchError
from .bowtie import BiAmalgInstance, induced_localized_data
from .classify import FRACTIONS_NOTE, PropertyVerdict, is_gaussian, is_prufer, is_total_ring_of_fractions
from .hom import RingHom, quotient_by
from .ideal import REGULAR_IDEAL_NOTE, Ideal, ideal_lattice, ideal_product
from .invariants import ring_invariants, vanishing_set
from .ring import Ring

logger = logging.getLogger(__name__)

PRUFER_NOTE = f"Prüfer conclusions cannot fail on finite rings: {REGULAR_IDEAL_NOTE}"


def regular_mask(ring: Ring) -> np.ndarray:
    return ~ring.zero_divisor_flags()


def regular_preimage(inst: BiAmalgInstance, ideal: Optional[Ideal] = None) -> np.ndarray:
    """Mask over A of π^-1(Reg(A/a)), with a = i0 by default"""
    quotient, projection = inst.A_mod_i0 if ideal is None else quotient_by(ideal)
    return regular_mask(quotient)[projection.table]


def _first_non_regular_image(hom: RingHom, mask: np.ndarray) -> Optional[int]:
    codes = np.flatnonzero(mask)
    bad = codes[~regular_mask(hom.codomain)[hom.table[codes]]]
    return int(bad[0]) if bad.size else None


def _regular_images(name: str, inst: BiAmalgInstance, mask: np.ndarray) -> PropertyVerdict:
    for side, hom in (("f", inst.f), ("g", inst.g)):
        a = _first_non_regular_image(hom, mask)
        if a is not None:
            return PropertyVerdict(name, False, witness=a,
                                   note=f"{side}({inst.A.label(a)}) = {hom.codomain.label(int(hom.table[a]))} "
                                        f"is a zero-divisor")
    return PropertyVerdict(name, True)


def _gaussian_local(ring: Ring) -> bool:
    return bool(is_gaussian(ring)) and ring_invariants(ring).is_local


def _scales(ring: Ring, x: int, ideal: Ideal) -> bool:
    """x I = I; x I is always an ideal inside I, so equal size suffices"""
    return len(np.unique(ring.mul_codes(int(x), ideal.codes))) == len(ideal)


def _is_unit_ideal(ideal: Ideal) -> bool:
    return ideal.is_unit


# --- conditions ---

@dataclass(frozen=True)
class ConditionReport:
    star: PropertyVerdict  # f(π^-1(Reg(A/i0))) ⊆ Reg(B), g likewise
    doublestar: PropertyVerdict  # f(Reg(A)) ⊆ Reg(B), g likewise
    blackstar: PropertyVerdict  # a + i0 a zero-divisor of A/i0 forces r a zero-divisor of R
    blackstar_fast_path: bool  # B, C local total quotient rings with maximal ideals b, c
    b_in_jacobson: bool
    c_in_jacobson: bool


def blackstar_fast_path(inst: BiAmalgInstance) -> bool:
    for ring, ideal in ((inst.B, inst.b), (inst.C, inst.c)):
        inv = ring_invariants(ring)
        if not (inv.is_local and is_total_ring_of_fractions(ring) and ideal == inv.maximal_ideal):
            return False
    return True


def _blackstar_scan(inst: BiAmalgInstance) -> PropertyVerdict:
    quotient, _ = inst.A_mod_i0
    case1 = quotient.zero_divisor_flags()[inst.p.table]
    bad = np.flatnonzero(case1 & ~inst.ring.zero_divisor_flags())
    if bad.size:
        r = int(bad[0])
        return PropertyVerdict("blackstar", False, witness=r,
                               note=f"{inst.label(r)} lies over a zero-divisor of A/i0 but is regular in R")
    return PropertyVerdict("blackstar", True)


def condition_checks(inst: BiAmalgInstance) -> ConditionReport:
    return inst.memo("conditions", lambda: _condition_checks(inst))


def _condition_checks(inst: BiAmalgInstance) -> ConditionReport:
    fast = blackstar_fast_path(inst)
    blackstar = _blackstar_scan(inst)
    if fast and not blackstar:
        raise InvariantViolation(f"{inst.name}: (★) fails although B and C are local with maximal ideals b, c")
    if fast:
        blackstar = PropertyVerdict("blackstar", True, note="B, C local total quotient rings with maximal b, c")
    return ConditionReport(
        star=_regular_images("star", inst, regular_preimage(inst)),
        doublestar=_regular_images("doublestar", inst, regular_mask(inst.A)),
        blackstar=blackstar,
        blackstar_fast_path=fast,
        b_in_jacobson=inst.b <= ring_invariants(inst.B).jacobson,
        c_in_jacobson=inst.c <= ring_invariants(inst.C).jacobson,
    )


# --- zero-divisors ---

@dataclass(frozen=True)
class DichotomyReport:
    element: int
    is_zero_divisor: bool
    case1: bool  # a + i0 is a zero-divisor of A/i0
    case2_witness: Optional[Tuple[int, int]]  # (b', c') ∈ b × c \ {0} with b'(f(a)+x) = 0, c'(g(a)+y) = 0

    @property
    def certified(self) -> bool:
        """A zero-divisor satisfies at least one case"""
        return not self.is_zero_divisor or self.case1 or self.case2_witness is not None


def _annihilator_pairs(inst: BiAmalgInstance) -> List[Tuple[int, int]]:
    """Nonzero (b', c') in search order: (b', 0) first, then (0, c'), then both nonzero"""
    bs = [int(x) for x in inst.b.codes if x != inst.B.zero]
    cs = [int(y) for y in inst.c.codes if y != inst.C.zero]
    pairs = [(x, inst.C.zero) for x in bs] + [(inst.B.zero, y) for y in cs]
    return pairs + [(x, y) for x in bs for y in cs]


def zero_divisor_dichotomy(inst: BiAmalgInstance, r: int) -> DichotomyReport:
    if not 0 <= r < inst.order:
        raise RingMismatchError(f"{r} is not an element code of {inst.name}")
    x, y = int(inst.left_codes[r]), int(inst.right_codes[r])
    quotient, _ = inst.A_mod_i0
    witness = None
    for bp, cp in _annihilator_pairs(inst):
        if inst.B.mul(bp, x) == inst.B.zero and inst.C.mul(cp, y) == inst.C.zero:
            witness = (bp, cp)
            break
    report = DichotomyReport(
        element=r,
        is_zero_divisor=bool(inst.ring.zero_divisor_flags()[r]),
        case1=bool(quotient.zero_divisor_flags()[inst.p.table[r]]),
        case2_witness=witness,
    )
    if witness is not None and not report.is_zero_divisor:
        raise InvariantViolation(f"{inst.name}: {inst.label(r)} is killed by ({witness[0]}, {witness[1]}) "
                                 f"but is not a zero-divisor")
    return report


@dataclass(frozen=True)
class TorsionReport:
    total_ring_of_fractions: PropertyVerdict  # R
    a_mod_k_total: PropertyVerdict  # A/k
    b_torsion: bool  # every x ∈ b has f(r) x = 0 for some r with r + k regular in A/k
    c_torsion: bool
    b_in_jacobson: bool
    c_in_jacobson: bool


def _torsion(hom: RingHom, ideal: Ideal, regular: np.ndarray) -> bool:
    scalars = hom.table[np.flatnonzero(regular)]
    ring = hom.codomain
    killed = ring.mul_codes(scalars[:, None], ideal.codes[None, :]) == ring.zero
    return bool(killed.any(axis=0).all())


def total_quotient_and_torsion(inst: BiAmalgInstance) -> TorsionReport:
    quotient, projection = inst.A_mod_k
    regular = regular_mask(quotient)[projection.table]
    return TorsionReport(
        total_ring_of_fractions=is_total_ring_of_fractions(inst.ring),
        a_mod_k_total=is_total_ring_of_fractions(quotient),
        b_torsion=_torsion(inst.f, inst.b, regular),
        c_torsion=_torsion(inst.g, inst.c, regular),
        b_in_jacobson=inst.b <= ring_invariants(inst.B).jacobson,
        c_in_jacobson=inst.c <= ring_invariants(inst.C).jacobson,
    )


# --- localized scaling ---

def localized_scaling(inst: BiAmalgInstance, regular: np.ndarray) -> List[Tuple[Ideal, bool, bool]]:
    """
    For each maximal m ⊇ i0: whether b B_S = f_m(r/1) b B_S and c C_T = g_m(r/1) c C_T
    for every r in ``regular``.
    """
    out = []
    rs = np.flatnonzero(regular)
    for prime in vanishing_set(inst.i0):
        data = induced_localized_data(inst, prime)
        fractions = data.A_p.hom.table[rs]
        b_ok = all(_scales(data.B_S.ring, x, data.bB_S) for x in np.unique(data.f_p.table[fractions]))
        c_ok = all(_scales(data.C_T.ring, y, data.cC_T) for y in np.unique(data.g_p.table[fractions]))
        out.append((prime, b_ok, c_ok))
    return out


def _scaling_cases(inst: BiAmalgInstance, hypotheses: Dict[str, bool], regular: np.ndarray) -> Tuple[Case, ...]:
    cases = tuple(
        Case(f"m = {prime.label()}", dict(hypotheses), {"b-scaling": b_ok, "c-scaling": c_ok})
        for prime, b_ok, c_ok in localized_scaling(inst, regular)
    )
    return cases or (Case("V(i0) empty", dict(hypotheses), {}),)


def direct_scaling(inst: BiAmalgInstance, mask: np.ndarray) -> bool:
    """b = f(r) b and c = g(r) c for every r in ``mask``"""
    rs = np.flatnonzero(mask)
    return (all(_scales(inst.B, x, inst.b) for x in np.unique(inst.f.table[rs]))
            and all(_scales(inst.C, y, inst.c) for y in np.unique(inst.g.table[rs])))


# --- Gaussian transfer ---

def _f_scaling_into_B(inst: BiAmalgInstance) -> bool:
    """f(a) b ⊆ f(a^2) B for every a ∈ A"""
    B = inst.B
    for a in inst.A.codes():
        fa, fa2 = int(inst.f.table[a]), int(inst.f.table[inst.A.mul(int(a), int(a))])
        target = np.zeros(B.order, dtype=bool)
        target[B.mul_row(fa2)] = True
        if not target[B.mul_codes(fa, inst.b.codes)].all():
            return False
    return True


def _square_scaling(inst: BiAmalgInstance) -> bool:
    """f(a) b = f(a^2) b and g(a) c = g(a^2) c for every a ∈ A"""
    for hom, ring, ideal in ((inst.f, inst.B, inst.b), (inst.g, inst.C, inst.c)):
        for a in inst.A.codes():
            fa, fa2 = int(hom.table[a]), int(hom.table[inst.A.mul(int(a), int(a))])
            if not np.array_equal(np.unique(ring.mul_codes(fa, ideal.codes)),
                                  np.unique(ring.mul_codes(fa2, ideal.codes))):
                return False
    return True


@registry.theorem("gauss-necessary", scope=INSTANCE_SCOPE, hypotheses=("gaussian-local",),
                  conclusions=("1", "2", "3"))
def gauss_necessary(inst: BiAmalgInstance) -> TheoremResult:
    """R Gaussian local forces A/i0, f(A)+b, g(A)+c Gaussian local, b^2 ≠ 0 ⇒ c^2 = 0, and f-scaling"""
    b_sq_zero = ideal_product(inst.b, inst.b).is_zero
    c_sq_zero = ideal_product(inst.c, inst.c).is_zero
    clause3 = not (b_sq_zero and inst.f.is_surjective) or _f_scaling_into_B(inst)
    case = Case(
        inst.name,
        {"gaussian-local": _gaussian_local(inst.ring)},
        {
            "1": all(_gaussian_local(ring) for ring in (inst.A_mod_i0[0], inst.f_image_plus_b,
                                                       inst.g_image_plus_c)),
            "2": b_sq_zero or c_sq_zero,
            "3": clause3,
        },
    )
    return TheoremResult("gauss-necessary", (case,))


@registry.theorem("gauss-sufficient", scope=INSTANCE_SCOPE, hypotheses=("surjective", "1", "2", "3"),
                  conclusions=("gaussian-local",))
def gauss_sufficient(inst: BiAmalgInstance) -> TheoremResult:
    """f, g onto, A Gaussian local, b^2 = c^2 = 0 and square scaling give R Gaussian local"""
    gaussian = is_gaussian(inst.ring)
    case = Case(
        inst.name,
        {
            "surjective": inst.f.is_surjective and inst.g.is_surjective,
            "1": _gaussian_local(inst.A),
            "2": ideal_product(inst.b, inst.b).is_zero and ideal_product(inst.c, inst.c).is_zero,
            "3": _square_scaling(inst),
        },
        {"gaussian-local": bool(gaussian) and ring_invariants(inst.ring).is_local},
        witness=gaussian.witness,
    )
    return TheoremResult("gauss-sufficient", (case,))


# --- Prüfer transfer ---

@registry.theorem("prufer-descent", scope=INSTANCE_SCOPE, hypotheses=("star", "R-prufer"),
                  conclusions=("A/i0-prufer",))
def prufer_descent(inst: BiAmalgInstance) -> TheoremResult:
    """(*) and R Prüfer give A/i0 Prüfer"""
    case = Case(
        inst.name,
        {"star": bool(condition_checks(inst).star), "R-prufer": bool(is_prufer(inst.ring))},
        {"A/i0-prufer": bool(is_prufer(inst.A_mod_i0[0]))},
    )
    return TheoremResult("prufer-descent", (case,), notes=(PRUFER_NOTE,))


@registry.theorem("prufer-quotient", scope=INSTANCE_SCOPE, hypotheses=("R-prufer", "regular-images", "case"),
                  conclusions=("A/a-prufer",))
def prufer_quotient(inst: BiAmalgInstance) -> TheoremResult:
    """A/a is Prüfer when regular elements mod a stay regular and a ⊇ i0, or a ⊇ Ker g with g onto or c ⊆ g(A)"""
    r_prufer = bool(is_prufer(inst.ring))
    kernel_g = inst.g.kernel
    c_in_image = bool((inst.c.mask <= inst.g.image_mask).all())
    cases = []
    for a in ideal_lattice(inst.A).ideals:
        mask = regular_preimage(inst, a)
        images = (_first_non_regular_image(inst.f, mask) is None
                  and _first_non_regular_image(inst.g, mask) is None)
        in_case = inst.i0 <= a or (kernel_g <= a and (inst.g.is_surjective or c_in_image))
        cases.append(Case(
            f"a = {a.label()}",
            {"R-prufer": r_prufer, "regular-images": images, "case": in_case},
            {"A/a-prufer": bool(is_prufer(quotient_by(a)[0]))},
        ))
    return TheoremResult("prufer-quotient", tuple(cases), notes=(PRUFER_NOTE,))


@registry.theorem("b-scaling", scope=INSTANCE_SCOPE, hypotheses=("doublestar", "R-prufer"),
                  conclusions=("b-scaling", "c-scaling"))
def b_scaling(inst: BiAmalgInstance) -> TheoremResult:
    """(**) and R Prüfer: b B_S and c C_T are fixed by every regular r of A, at every maximal m ⊇ i0"""
    hypotheses = {"doublestar": bool(condition_checks(inst).doublestar), "R-prufer": bool(is_prufer(inst.ring))}
    return TheoremResult("b-scaling", _scaling_cases(inst, hypotheses, regular_mask(inst.A)),
                         notes=(PRUFER_NOTE,))


@registry.theorem("b-scaling-star", scope=INSTANCE_SCOPE, hypotheses=("star", "R-prufer"),
                  conclusions=("b-scaling", "c-scaling"))
def b_scaling_star(inst: BiAmalgInstance) -> TheoremResult:
    """The same scaling under (*), for every r with r + i0 regular in A/i0"""
    hypotheses = {"star": bool(condition_checks(inst).star), "R-prufer": bool(is_prufer(inst.ring))}
    return TheoremResult("b-scaling-star", _scaling_cases(inst, hypotheses, regular_preimage(inst)),
                         notes=(PRUFER_NOTE,))


@registry.theorem("prufer-regular", scope=INSTANCE_SCOPE, hypotheses=("b-regular", "c-regular"),
                  conclusions=("equivalence", "b-unit-iff-c-unit"))
def prufer_regular(inst: BiAmalgInstance) -> TheoremResult:
    """With b, c regular: R Prüfer iff B, C Prüfer and b = B"""
    side = bool(is_prufer(inst.B)) and bool(is_prufer(inst.C)) and _is_unit_ideal(inst.b)
    case = Case(
        inst.name,
        {
            "b-regular": bool((inst.b.mask & regular_mask(inst.B)).any()),
            "c-regular": bool((inst.c.mask & regular_mask(inst.C)).any()),
        },
        {
            "equivalence": bool(is_prufer(inst.ring)) == side,
            "b-unit-iff-c-unit": _is_unit_ideal(inst.b) == _is_unit_ideal(inst.c),
        },
    )
    return TheoremResult("prufer-regular", (case,), notes=(REGULAR_IDEAL_NOTE,))


@registry.theorem("total-quotient", scope=INSTANCE_SCOPE,
                  hypotheses=("A/k-total", "b-in-jacobson", "c-in-jacobson", "b-torsion", "c-torsion"),
                  conclusions=("R-total",))
def total_quotient(inst: BiAmalgInstance) -> TheoremResult:
    """A/k a total ring of fractions, b, c in the Jacobson radicals and torsion: R is a total ring of fractions"""
    report = total_quotient_and_torsion(inst)
    case = Case(
        inst.name,
        {
            "A/k-total": bool(report.a_mod_k_total),
            "b-in-jacobson": report.b_in_jacobson,
            "c-in-jacobson": report.c_in_jacobson,
            "b-torsion": report.b_torsion,
            "c-torsion": report.c_torsion,
        },
        {"R-total": bool(report.total_ring_of_fractions)},
    )
    return TheoremResult("total-quotient", (case,), notes=(FRACTIONS_NOTE,))


@registry.theorem("prufer-final-1", scope=INSTANCE_SCOPE, hypotheses=("star", "R-prufer"),
                  conclusions=("A/i0-prufer", "b-scaling", "c-scaling"))
def prufer_final_necessary(inst: BiAmalgInstance) -> TheoremResult:
    """(*) and R Prüfer: A/i0 Prüfer and the localized scaling for r regular mod i0"""
    hypotheses = {"star": bool(condition_checks(inst).star), "R-prufer": bool(is_prufer(inst.ring))}
    quotient_prufer = bool(is_prufer(inst.A_mod_i0[0]))
    cases = tuple(
        Case(case.label, case.hypotheses, {"A/i0-prufer": quotient_prufer, **case.conclusions})
        for case in _scaling_cases(inst, hypotheses, regular_preimage(inst))
    )
    return TheoremResult("prufer-final-1", cases, notes=(PRUFER_NOTE,))


@registry.theorem("prufer-final-2", scope=INSTANCE_SCOPE,
                  hypotheses=("R-local", "blackstar", "A/i0-prufer", "scaling"), conclusions=("R-prufer",))
def prufer_final_sufficient(inst: BiAmalgInstance) -> TheoremResult:
    """R local with (★), A/i0 Prüfer and b = f(r) b, c = g(r) c for r regular mod i0: R Prüfer"""
    case = Case(
        inst.name,
        {
            "R-local": ring_invariants(inst.ring).is_local,
            "blackstar": bool(condition_checks(inst).blackstar),
            "A/i0-prufer": bool(is_prufer(inst.A_mod_i0[0])),
            "scaling": direct_scaling(inst, regular_preimage(inst)),
        },
        {"R-prufer": bool(is_prufer(inst.ring))},
    )
    return TheoremResult("prufer-final-2", (case,), notes=(PRUFER_NOTE,))


# --- amalgamation corollaries ---

def amalgamation_data(inst: BiAmalgInstance) -> Optional[Tuple[RingHom, Ideal]]:
    """(f, b) when the instance is A ⋈^f b in either coordinate convention"""
    A = inst.A
    if inst.C == A and np.array_equal(inst.g.table, A.codes()) and inst.c == inst.i0:
        return inst.f, inst.b
    if inst.B == A and np.array_equal(inst.f.table, A.codes()) and inst.b == inst.i0:
        return inst.g, inst.c
    return None


@registry.theorem("amalgamation-prufer-descent", scope=INSTANCE_SCOPE,
                  hypotheses=("amalgamation", "regular-images", "R-prufer"), conclusions=("A-prufer",))
def amalgamation_prufer_descent(inst: BiAmalgInstance) -> TheoremResult:
    """f(Reg A) ⊆ Reg B and A ⋈^f b Prüfer give A Prüfer"""
    data = amalgamation_data(inst)
    images = data is not None and _first_non_regular_image(data[0], regular_mask(inst.A)) is None
    case = Case(
        inst.name,
        {"amalgamation": data is not None, "regular-images": images, "R-prufer": bool(is_prufer(inst.ring))},
        {"A-prufer": bool(is_prufer(inst.A))},
    )
    return TheoremResult("amalgamation-prufer-descent", (case,), notes=(PRUFER_NOTE,))


@registry.theorem("amalgamation-prufer-regular", scope=INSTANCE_SCOPE,
                  hypotheses=("amalgamation", "b-regular", "i0-regular"), conclusions=("equivalence",))
def amalgamation_prufer_regular(inst: BiAmalgInstance) -> TheoremResult:
    """b and f^-1(b) regular: A ⋈^f b Prüfer iff A, B Prüfer and b = B"""
    data = amalgamation_data(inst)
    if data is None:
        case = Case(inst.name, {"amalgamation": False, "b-regular": False, "i0-regular": False}, {})
        return TheoremResult("amalgamation-prufer-regular", (case,))
    f, b = data
    B = f.codomain
    side = bool(is_prufer(inst.A)) and bool(is_prufer(B)) and b.is_unit
    case = Case(
        inst.name,
        {
            "amalgamation": True,
            "b-regular": bool((b.mask & regular_mask(B)).any()),
            "i0-regular": bool((inst.i0.mask & regular_mask(inst.A)).any()),
        },
        {"equivalence": bool(is_prufer(inst.ring)) == side},
    )
    return TheoremResult("amalgamation-prufer-regular", (case,), notes=(REGULAR_IDEAL_NOTE,))


THEOREM_IDS = (
    "gauss-necessary",
    "gauss-sufficient",
    "prufer-descent",
    "prufer-quotient",
    "b-scaling",
    "b-scaling-star",
    "prufer-regular",
    "total-quotient",
    "prufer-final-1",
    "prufer-final-2",
    "amalgamation-prufer-descent",
    "amalgamation-prufer-regular",
)


def theorem_checks(inst: BiAmalgInstance, ids: Optional[Iterable[str]] = None) -> Dict[str, TheoremResult]:
    """Evaluate the Prüfer and Gaussian transfer theorems on one instance"""
    results = {}
    for theorem_id in ids or THEOREM_IDS:
        result = registry.run(theorem_id, inst)
        if not result.holds:
            case = result.first_violation()
            logger.error(f"{inst.name}: {theorem_id} violated at {case.label}")
        results[theorem_id] = result
    return results
