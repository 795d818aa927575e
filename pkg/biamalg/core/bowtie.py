"""
The bi-amalgamation A ⋈^{f,g}(b, c) = {(f(a)+x, g(a)+y) : a ∈ A, x ∈ b, y ∈ c} ⊆ B × C,
its canonical ideals and maps, and the special cases (amalgamation, duplication).
"""
import logging
import threading
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np

from ..errors import (
    BiamalgError,
    CompatibilityError,
    InvalidPrimeError,
    InvariantViolation,
    OrderCapExceeded,
    RingMismatchError,
)
from .hom import (
    Localization,
    MultiplicativeSet,
    RingHom,
    contract,
    extend,
    identity_hom,
    localize_at_prime,
    localize_finite,
    quotient_by,
)
from .ideal import Ideal, ideal_intersect, ideal_lattice, ideal_sum, is_prime_ideal, sum_masks
from .ring import PairSubring, Ring, Subring, construct_ring, describe, product

logger = logging.getLogger(__name__)


def _coset_reps(ideal: Ideal) -> np.ndarray:
    ring = ideal.ring
    return np.unique(ring.add_codes(ring.codes()[:, None], ideal.codes[None, :]).min(axis=1))


def _checked_ideal(ring: Ring, mask: np.ndarray, what: str) -> Ideal:
    codes = np.flatnonzero(mask)
    if not mask[ring.zero] or not mask[ring.add_codes(codes[:, None], codes[None, :])].all() \
            or not mask[ring.mul_codes(ring.codes()[:, None], codes[None, :])].all():
        raise InvariantViolation(f"{what} is not an ideal of {ring!r}")
    return Ideal.from_mask(ring, mask)


class BiAmalgInstance:
    """
    Validated bi-amalgamation data together with the constructed ring.

    ``ring`` is a subring of B × C whose element codes index the sorted
    (B-code, C-code) pairs; the canonical maps are built on first access.
    """

    def __init__(self, A: Ring, B: Ring, C: Ring, f: RingHom, g: RingHom, b: Ideal, c: Ideal,
                 i0: Ideal, k: Ideal, ring: Ring, origin: np.ndarray, name: str):
        self.A, self.B, self.C = A, B, C
        self.f, self.g = f, g
        self.b, self.c = b, c
        self.i0 = i0
        self.k = k
        self.ring = ring
        self.origin = origin  # an a ∈ A with r = (f(a)+x, g(a)+y), per code r
        self.name = name
        self._memo: Dict[str, Any] = {}
        self._lock = threading.Lock()

    @property
    def left_codes(self) -> np.ndarray:
        return self.ring.structure["left_codes"]

    @property
    def right_codes(self) -> np.ndarray:
        return self.ring.structure["right_codes"]

    @property
    def order(self) -> int:
        return self.ring.order

    @property
    def predicted_order(self) -> int:
        return (self.A.order // len(self.i0)) * len(self.b) * len(self.c)

    def index_of_pairs(self, x, y) -> np.ndarray:
        """Codes in R of the pairs (x, y); -1 where the pair is not in R"""
        keys = self.ring.structure["keys"]
        wanted = np.asarray(x, dtype=np.int64) * self.C.order + np.asarray(y, dtype=np.int64)
        idx = np.minimum(np.searchsorted(keys, wanted), len(keys) - 1)
        return np.where(keys[idx] == wanted, idx, -1)

    def pair_code(self, x: int, y: int) -> int:
        code = int(self.index_of_pairs(x, y))
        if code < 0:
            raise RingMismatchError(f"({self.B.label(x)}, {self.C.label(y)}) is not an element of {self.name}")
        return code

    def label(self, code: int) -> str:
        return self.ring.label(code)

    def memo(self, key: str, factory: Callable[[], Any]) -> Any:
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        value = factory()
        with self._lock:
            return self._memo.setdefault(key, value)

    # --- canonical rings and maps ---

    @cached_property
    def product_ring(self) -> Ring:
        return product(self.B, self.C)

    @cached_property
    def inclusion(self) -> RingHom:
        return RingHom(self.ring, self.product_ring, self.left_codes * self.C.order + self.right_codes,
                       name="inclusion")

    @cached_property
    def proj_B(self) -> RingHom:
        return RingHom(self.ring, self.B, self.left_codes, name="pr_B")

    @cached_property
    def proj_C(self) -> RingHom:
        return RingHom(self.ring, self.C, self.right_codes, name="pr_C")

    @cached_property
    def A_mod_i0(self) -> Tuple[Ring, RingHom]:
        return quotient_by(self.i0)

    @cached_property
    def A_mod_k(self) -> Tuple[Ring, RingHom]:
        return quotient_by(self.k)

    @cached_property
    def B_mod_b(self) -> Tuple[Ring, RingHom]:
        return quotient_by(self.b)

    @cached_property
    def C_mod_c(self) -> Tuple[Ring, RingHom]:
        return quotient_by(self.c)

    @cached_property
    def target(self) -> Ring:
        """B/b × C/c"""
        return product(self.B_mod_b[0], self.C_mod_c[0])

    @cached_property
    def p(self) -> RingHom:
        """R -> A/i0, (f(a)+x, g(a)+y) ↦ a + i0"""
        quotient, projection = self.A_mod_i0
        return RingHom(self.ring, quotient, projection.table[self.origin], name="p")

    @cached_property
    def iota(self) -> RingHom:
        """A/k -> R, a + k ↦ (f(a), g(a))"""
        quotient, _ = self.A_mod_k
        reps = quotient.structure["reps"]
        table = self.index_of_pairs(self.f.table[reps], self.g.table[reps])
        return RingHom(quotient, self.ring, table, name="iota")

    @cached_property
    def i_fg(self) -> RingHom:
        """A/i0 -> B/b × C/c, a + i0 ↦ (f(a) + b, g(a) + c)"""
        quotient, _ = self.A_mod_i0
        reps = quotient.structure["reps"]
        qb, qc = self.B_mod_b[1], self.C_mod_c[1]
        cq = self.C_mod_c[0].order
        return RingHom(quotient, self.target, qb.table[self.f.table[reps]] * cq + qc.table[self.g.table[reps]],
                       name="i_fg")

    @cached_property
    def pi(self) -> RingHom:
        """B × C -> B/b × C/c"""
        qb, qc = self.B_mod_b[1], self.C_mod_c[1]
        codes = self.product_ring.codes()
        x, y = codes // self.C.order, codes % self.C.order
        return RingHom(self.product_ring, self.target, qb.table[x] * self.C_mod_c[0].order + qc.table[y], name="pi")

    @cached_property
    def b_times_c(self) -> Ideal:
        """b × c as an ideal of R"""
        return _checked_ideal(self.ring, self.b.mask[self.left_codes] & self.c.mask[self.right_codes], "b × c")

    @cached_property
    def f_image_plus_b(self) -> Ring:
        return image_plus_ideal(self.f, self.b)

    @cached_property
    def g_image_plus_c(self) -> Ring:
        return image_plus_ideal(self.g, self.c)

    def __repr__(self) -> str:
        return f"BiAmalgInstance({self.name}, order {self.order})"


def image_plus_ideal(hom: RingHom, ideal: Ideal) -> Ring:
    """The subring f(A) + b of the codomain"""
    cod = hom.codomain
    elements = np.unique(cod.add_codes(np.unique(hom.table)[:, None], ideal.codes[None, :]))
    return construct_ring(Subring(cod.descriptor, tuple(int(e) for e in elements),
                                  name=f"{describe(hom.domain.descriptor)}^ + {ideal.label()}"), cod.settings)


def _incompatibility_witness(A: Ring, fb: Ideal, gc: Ideal) -> int:
    return int(np.flatnonzero(fb.mask ^ gc.mask)[0])


def biamalg_new(A: Ring, B: Ring, C: Ring, f: RingHom, g: RingHom, b: Ideal, c: Ideal,
                name: Optional[str] = None) -> BiAmalgInstance:
    """Validate the data and enumerate A ⋈^{f,g}(b, c) inside B × C"""
    if f.domain != A or g.domain != A:
        raise RingMismatchError(f"f and g must start at {A!r}")
    if f.codomain != B or g.codomain != C:
        raise RingMismatchError(f"f must land in {B!r} and g in {C!r}")
    if b.ring != B or c.ring != C:
        raise RingMismatchError(f"b must be an ideal of {B!r} and c an ideal of {C!r}")
    fb, gc = contract(f, b), contract(g, c)
    if fb != gc:
        w = _incompatibility_witness(A, fb, gc)
        side = "f(a) ∈ b but g(a) ∉ c" if w in fb else "g(a) ∈ c but f(a) ∉ b"
        raise CompatibilityError(
            f"f^-1(b) = {fb.label()} differs from g^-1(c) = {gc.label()}: a = {A.label(w)} has {side}", witness=w
        )
    i0 = fb
    k = ideal_intersect(f.kernel, g.kernel)
    predicted = (A.order // len(i0)) * len(b) * len(c)
    if predicted > A.settings.max_order:
        raise OrderCapExceeded(predicted, A.settings.max_order, what="bi-amalgamation")

    reps = _coset_reps(i0)
    left = B.add_codes(f.table[reps][:, None], b.codes[None, :]).astype(np.int64)  # |A/i0| × |b|
    right = C.add_codes(g.table[reps][:, None], c.codes[None, :]).astype(np.int64)  # |A/i0| × |c|
    keys = left[:, :, None] * C.order + right[:, None, :]
    origin = np.broadcast_to(reps[:, None, None], keys.shape)
    keys, first = np.unique(keys.ravel(), return_index=True)
    if len(keys) != predicted:
        raise InvariantViolation(f"bi-amalgamation has {len(keys)} elements, expected {predicted}")
    pairs = tuple(zip((keys // C.order).tolist(), (keys % C.order).tolist()))
    if name is None:
        name = f"{describe(A.descriptor)} ><^(f,g) ({b.label()}, {c.label()})"
    ring = construct_ring(PairSubring(B.descriptor, C.descriptor, pairs, name=name), A.settings)
    logger.debug(f"Built {name} of order {ring.order}")
    return BiAmalgInstance(A, B, C, f, g, b, c, i0, k, ring, origin.ravel()[first], name)


# --- ideals of R ---

def ideal_bowtie(inst: BiAmalgInstance, a: Ideal) -> Ideal:
    """a ⋈(b, c) = {(f(p)+x, g(p)+y) : p ∈ a, x ∈ b, y ∈ c}"""
    if a.ring != inst.A:
        raise RingMismatchError(f"{a!r} is not an ideal of {inst.A!r}")
    B, C = inst.B, inst.C
    left = B.add_codes(inst.f.table[a.codes][:, None], inst.b.codes[None, :]).astype(np.int64)
    right = C.add_codes(inst.g.table[a.codes][:, None], inst.c.codes[None, :]).astype(np.int64)
    xs = np.broadcast_to(left[:, :, None], (len(a), len(inst.b), len(inst.c))).ravel()
    ys = np.broadcast_to(right[:, None, :], (len(a), len(inst.b), len(inst.c))).ravel()
    codes = inst.index_of_pairs(xs, ys)
    if (codes < 0).any():
        raise InvariantViolation(f"{a.label()} ⋈ (b, c) leaves R")
    mask = np.zeros(inst.order, dtype=bool)
    mask[codes] = True
    ideal = _checked_ideal(inst.ring, mask, f"{a.label()} ⋈ (b, c)")
    if not inst.b_times_c <= ideal:
        raise InvariantViolation(f"{a.label()} ⋈ (b, c) does not contain b × c")
    expected = len(ideal_sum(a, inst.i0)) // len(inst.i0) * len(inst.b) * len(inst.c)
    if len(ideal) != expected:
        raise InvariantViolation(f"{a.label()} ⋈ (b, c) has {len(ideal)} elements, expected {expected}")
    return ideal


def sharp_contractions(inst: BiAmalgInstance, j: Ideal, side: Optional[str] = None) -> Ideal:
    """
    j^♯ for an ideal j of B (side "B") or of C (side "C").

    Computed from the definition and as the contraction of j × C (resp. B × j)
    along R ⊆ B × C; the two must agree.
    """
    if side is None:
        side = "B" if j.ring == inst.B else "C"
    if side == "B":
        if j.ring != inst.B:
            raise RingMismatchError(f"{j!r} is not an ideal of B")
        direct = j.mask[inst.left_codes]
        extended = j.mask[inst.product_ring.codes() // inst.C.order]
    elif side == "C":
        if j.ring != inst.C:
            raise RingMismatchError(f"{j!r} is not an ideal of C")
        direct = j.mask[inst.right_codes]
        extended = j.mask[inst.product_ring.codes() % inst.C.order]
    else:
        raise RingMismatchError(f"side must be 'B' or 'C', got {side!r}")
    sharp = _checked_ideal(inst.ring, direct, f"{j.label()}^#{side}")
    via_contraction = contract(inst.inclusion, Ideal.from_mask(inst.product_ring, extended))
    if sharp != via_contraction:
        raise InvariantViolation(f"{j.label()}^#{side} differs from the contraction of the product ideal")
    return sharp


# --- reports ---

@dataclass(frozen=True)
class CanonicalMapsReport:
    p: RingHom
    iota: RingHom
    i_fg: RingHom
    pi: RingHom
    p_surjective: bool
    p_kernel_is_b_times_c: bool
    iota_injective: bool
    i_fg_injective: bool

    @property
    def ok(self) -> bool:
        return self.p_surjective and self.p_kernel_is_b_times_c and self.iota_injective and self.i_fg_injective


def canonical_maps(inst: BiAmalgInstance) -> CanonicalMapsReport:
    return CanonicalMapsReport(
        p=inst.p,
        iota=inst.iota,
        i_fg=inst.i_fg,
        pi=inst.pi,
        p_surjective=inst.p.is_surjective,
        p_kernel_is_b_times_c=inst.p.kernel == inst.b_times_c,
        iota_injective=inst.iota.is_injective,
        i_fg_injective=inst.i_fg.is_injective,
    )


@dataclass(frozen=True)
class FiberProductReport:
    set_equal: bool  # R = π^-1(i_fg(A/i0))
    diagram_commutes: bool  # π ∘ inclusion = i_fg ∘ p
    order: int
    predicted_order: int

    @property
    def size_identity(self) -> bool:
        return self.order == self.predicted_order

    @property
    def ok(self) -> bool:
        return self.set_equal and self.diagram_commutes and self.size_identity


def verify_fiber_product(inst: BiAmalgInstance) -> FiberProductReport:
    image = inst.i_fg.image_mask
    preimage = image[inst.pi.table]
    return FiberProductReport(
        set_equal=bool(np.array_equal(preimage, inst.inclusion.image_mask)),
        diagram_commutes=bool(np.array_equal(inst.pi.table[inst.inclusion.table], inst.i_fg.table[inst.p.table])),
        order=inst.order,
        predicted_order=inst.predicted_order,
    )


# --- special cases ---

@dataclass(frozen=True)
class Amalgamation:
    """A ⋈^f b in one coordinate convention, with an isomorphism onto {(a, f(a)+x)} ⊆ A × B"""
    instance: BiAmalgInstance
    classical: Ring
    isomorphism: RingHom
    convention: str


def amalgamation_special(A: Ring, f: RingHom, b: Ideal, convention: str = "f,id",
                         name: Optional[str] = None) -> Amalgamation:
    """
    Build A ⋈^f b as a bi-amalgamation.

    ``convention="f,id"`` gives A ⋈^{f,Id}(b, i0) with coordinates (f(a)+x, a+i);
    ``convention="id,f"`` gives A ⋈^{Id,f}(i0, b) with coordinates (a+i, f(a)+x).
    """
    B = f.codomain
    ident = identity_hom(A)
    i0 = contract(f, b)
    label = name or f"{describe(A.descriptor)} ><^f {b.label()}"
    if convention == "f,id":
        inst = biamalg_new(A, B, A, f, ident, b, i0, name=label)
    elif convention == "id,f":
        inst = biamalg_new(A, A, B, ident, f, i0, b, name=label)
    else:
        raise BiamalgError(f"unknown convention {convention!r}")

    lefts = np.broadcast_to(A.codes()[:, None], (A.order, len(b))).ravel()
    rights = B.add_codes(f.table[:, None], b.codes[None, :]).astype(np.int64).ravel()
    keys = np.unique(lefts * B.order + rights)
    pairs = tuple(zip((keys // B.order).tolist(), (keys % B.order).tolist()))
    classical = construct_ring(PairSubring(A.descriptor, B.descriptor, pairs, name=f"{label} (classical)"),
                               A.settings)
    if convention == "f,id":
        a_side, b_side = inst.right_codes, inst.left_codes
    else:
        a_side, b_side = inst.left_codes, inst.right_codes
    wanted = a_side * B.order + b_side
    table = np.searchsorted(keys, wanted)
    if not np.array_equal(keys[np.minimum(table, len(keys) - 1)], wanted):
        raise InvariantViolation(f"{label}: coordinate swap leaves the classical amalgamation")
    iso = RingHom(inst.ring, classical, table, name="swap" if convention == "f,id" else "id")
    if not iso.is_isomorphism:
        raise InvariantViolation(f"{label}: coordinate map is not an isomorphism")
    return Amalgamation(instance=inst, classical=classical, isomorphism=iso, convention=convention)


def duplication(A: Ring, a: Ideal) -> Amalgamation:
    """A ⋈ a, the amalgamation along the identity"""
    return amalgamation_special(A, identity_hom(A), a, name=f"{describe(A.descriptor)} >< {a.label()}")


# --- module generation ---

def module_span(ring: Ring, scalars: np.ndarray, gens) -> np.ndarray:
    """Submodule generated by ``gens`` over the additive subgroup-closed set of ``scalars``"""
    mask = np.zeros(ring.order, dtype=bool)
    mask[ring.zero] = True
    for gen in gens:
        orbit = np.zeros(ring.order, dtype=bool)
        orbit[ring.mul_codes(scalars, int(gen))] = True
        mask = sum_masks(ring, mask, orbit)
    return mask


def greedy_module_generators(ring: Ring, scalars: np.ndarray, target: np.ndarray) -> Tuple[int, ...]:
    gens = []
    current = module_span(ring, scalars, [])
    for code in np.flatnonzero(target):
        if current.all() or np.array_equal(current, target):
            break
        if not current[code]:
            gens.append(int(code))
            current = module_span(ring, scalars, gens)
    return tuple(gens)


@dataclass(frozen=True)
class ModuleGeneratorsReport:
    b_generators: Tuple[int, ...]  # of b as an A-module via f
    c_generators: Tuple[int, ...]
    ring_generators: Tuple[int, ...]  # {(1,1), (b_i,0), (0,c_j)} as codes of R
    generates_ring: bool
    B_generators: Tuple[int, ...]  # of B as an A-module via f
    C_generators: Tuple[int, ...]
    product_generators: Tuple[int, ...]  # {(x_i,0), (0,y_j)} as codes of B × C
    generates_product: bool


def module_generators(inst: BiAmalgInstance) -> ModuleGeneratorsReport:
    B, C = inst.B, inst.C
    f_scalars, g_scalars = np.unique(inst.f.table), np.unique(inst.g.table)
    b_gens = greedy_module_generators(B, f_scalars, inst.b.mask)
    c_gens = greedy_module_generators(C, g_scalars, inst.c.mask)
    ring_gens = [inst.pair_code(B.one, C.one)]
    ring_gens += [inst.pair_code(x, C.zero) for x in b_gens]
    ring_gens += [inst.pair_code(B.zero, y) for y in c_gens]
    diagonal = np.unique(inst.index_of_pairs(inst.f.table, inst.g.table))
    generates_ring = bool(module_span(inst.ring, diagonal, ring_gens).all())

    full_B, full_C = np.ones(B.order, dtype=bool), np.ones(C.order, dtype=bool)
    B_gens = greedy_module_generators(B, f_scalars, full_B)
    C_gens = greedy_module_generators(C, g_scalars, full_C)
    prod = inst.product_ring
    prod_gens = [x * C.order + C.zero for x in B_gens] + [B.zero * C.order + y for y in C_gens]
    generates_product = bool(module_span(prod, inst.inclusion.table, prod_gens).all())
    if not (generates_ring and generates_product):
        logger.error(f"{inst.name}: module generator sets do not generate "
                     f"(ring={generates_ring}, product={generates_product})")
    return ModuleGeneratorsReport(
        b_generators=b_gens,
        c_generators=c_gens,
        ring_generators=tuple(ring_gens),
        generates_ring=generates_ring,
        B_generators=B_gens,
        C_generators=C_gens,
        product_generators=tuple(prod_gens),
        generates_product=generates_product,
    )


@dataclass(frozen=True)
class NoetherianReport:
    holds: bool
    ideal_count: int
    max_generators: int
    note: str = "every finite ring is Noetherian; this pass cannot fail"


def noetherian_sanity(inst: BiAmalgInstance) -> NoetherianReport:
    """Every ideal of R, A/k, f(A)+b and g(A)+c is finitely generated"""
    counts, ranks = 0, 0
    for ring in (inst.ring, inst.A_mod_k[0], inst.f_image_plus_b, inst.g_image_plus_c):
        lattice = ideal_lattice(ring)
        counts += len(lattice)
        ranks = max(ranks, int(lattice.rank.max()))
    return NoetherianReport(holds=True, ideal_count=counts, max_generators=ranks)


# --- localization data ---

@dataclass(frozen=True)
class LocalizedData:
    prime: Ideal
    S: MultiplicativeSet
    T: MultiplicativeSet
    A_p: Localization
    B_S: Localization
    C_T: Localization
    f_p: RingHom
    g_p: RingHom
    bB_S: Ideal
    cC_T: Ideal
    i0A_p: Ideal

    @property
    def identity_holds(self) -> bool:
        """f_p^-1(b B_S) = g_p^-1(c C_T) = i0 A_p"""
        return contract(self.f_p, self.bB_S) == self.i0A_p == contract(self.g_p, self.cC_T)


def _induced_hom(source: Localization, target: Localization, hom: RingHom, name: str) -> RingHom:
    table = np.full(source.ring.order, -1, dtype=np.int64)
    values = target.hom.table[hom.table]
    table[source.hom.table] = values
    if not np.array_equal(table[source.hom.table], values):
        raise InvariantViolation(f"{name} is not well defined on the localization")
    return RingHom(source.ring, target.ring, table, name=name)


def induced_localized_data(inst: BiAmalgInstance, prime: Ideal) -> LocalizedData:
    A, B, C = inst.A, inst.B, inst.C
    if prime.ring != A or not is_prime_ideal(prime):
        raise InvalidPrimeError(f"{prime.label()} is not a prime ideal of {A!r}")
    if not inst.i0 <= prime:
        raise InvalidPrimeError(f"{prime.label()} does not contain i0 = {inst.i0.label()}")
    outside = np.flatnonzero(~prime.mask)
    S = MultiplicativeSet(B, np.unique(B.add_codes(inst.f.table[outside][:, None], inst.b.codes[None, :])))
    T = MultiplicativeSet(C, np.unique(C.add_codes(inst.g.table[outside][:, None], inst.c.codes[None, :])))
    A_p = localize_at_prime(A, prime)
    B_S = localize_finite(B, S)
    C_T = localize_finite(C, T)
    f_p = _induced_hom(A_p, B_S, inst.f, "f_p")
    g_p = _induced_hom(A_p, C_T, inst.g, "g_p")
    data = LocalizedData(
        prime=prime,
        S=S,
        T=T,
        A_p=A_p,
        B_S=B_S,
        C_T=C_T,
        f_p=f_p,
        g_p=g_p,
        bB_S=extend(B_S.hom, inst.b),
        cC_T=extend(C_T.hom, inst.c),
        i0A_p=extend(A_p.hom, inst.i0),
    )
    if not data.identity_holds:
        logger.error(f"{inst.name} at {prime.label()}: localized contractions disagree")
    return data
