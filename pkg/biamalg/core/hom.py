"""
Verified ring homomorphisms, ideal transfer, quotients and finite localization.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import BiamalgError, HomomorphismError, InvalidPrimeError, InvariantViolation, RingMismatchError
from .bitset import BitSet
from .ideal import Ideal, ideal_span, is_prime_ideal
from .ring import Quotient, Ring, construct_ring, describe

logger = logging.getLogger(__name__)


def _check_hom_table(domain: Ring, codomain: Ring, table: np.ndarray) -> None:
    if table.shape != (domain.order,):
        raise HomomorphismError(
            f"image table has {table.size} entries, {domain!r} has {domain.order} elements", law="total"
        )
    if table.size and (table.min() < 0 or table.max() >= codomain.order):
        raise HomomorphismError(f"image table leaves {codomain!r}", law="total")
    if table[domain.zero] != codomain.zero:
        raise HomomorphismError("zero is not mapped to zero", law="zero", witness=(domain.zero,))
    if table[domain.one] != codomain.one:
        raise HomomorphismError("one is not mapped to one", law="unity", witness=(domain.one,))
    xs, ys = np.indices((domain.order, domain.order))
    for law, dom_op, cod_op in (("additivity", domain.add_codes, codomain.add_codes),
                                ("multiplicativity", domain.mul_codes, codomain.mul_codes)):
        bad = table[dom_op(xs, ys)] != cod_op(table[xs], table[ys])
        if bad.any():
            x, y = (int(v) for v in np.argwhere(bad)[0])
            raise HomomorphismError(
                f"{law} fails at ({domain.label(x)}, {domain.label(y)}) for the map {describe(domain.descriptor)} "
                f"-> {describe(codomain.descriptor)}",
                law=law,
                witness=(x, y),
            )


class RingHom:
    """A unital ring homomorphism stored as an image table; verified on construction"""

    def __init__(self, domain: Ring, codomain: Ring, table: Sequence[int], name: str = ""):
        table = np.asarray(table, dtype=np.int64).copy()
        _check_hom_table(domain, codomain, table)
        table.setflags(write=False)
        self.domain = domain
        self.codomain = codomain
        self.table = table
        self.name = name
        self._kernel: Optional[Ideal] = None

    def __call__(self, x):
        if isinstance(x, np.ndarray):
            return self.table[x]
        return int(self.table[int(x)])

    def compose(self, inner: "RingHom") -> "RingHom":
        """self ∘ inner"""
        if inner.codomain != self.domain:
            raise RingMismatchError(f"cannot compose {self!r} after {inner!r}")
        return RingHom(inner.domain, self.codomain, self.table[inner.table])

    @property
    def image_mask(self) -> np.ndarray:
        mask = np.zeros(self.codomain.order, dtype=bool)
        mask[self.table] = True
        return mask

    @property
    def kernel(self) -> Ideal:
        if self._kernel is None:
            self._kernel = Ideal.from_mask(self.domain, self.table == self.codomain.zero)
        return self._kernel

    @property
    def is_injective(self) -> bool:
        return len(np.unique(self.table)) == self.domain.order

    @property
    def is_surjective(self) -> bool:
        return bool(self.image_mask.all())

    @property
    def is_isomorphism(self) -> bool:
        return self.is_injective and self.is_surjective

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, RingHom) and self.domain == other.domain
                and self.codomain == other.codomain and np.array_equal(self.table, other.table))

    def __hash__(self) -> int:
        return hash((self.domain, self.codomain, self.table.tobytes()))

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"RingHom({label}{describe(self.domain.descriptor)} -> {describe(self.codomain.descriptor)})"


# --- construction ---

def identity_hom(ring: Ring) -> RingHom:
    return RingHom(ring, ring, ring.codes(), name="id")


def extend_generator_images(domain: Ring, codomain: Ring, images: Mapping[int, int]) -> np.ndarray:
    """Extend generator images to a full table by closing under + and *; conflicts raise"""
    values = np.full(domain.order, -1, dtype=np.int64)
    values[domain.zero] = codomain.zero
    values[domain.one] = codomain.one
    for g, img in images.items():
        g, img = int(g), int(img)
        if not 0 <= img < codomain.order:
            raise HomomorphismError(f"image {img} is not an element of {codomain!r}", law="total")
        if values[g] >= 0 and values[g] != img:
            raise HomomorphismError(
                f"conflicting images for {domain.label(g)}", law="well-defined", witness=(g,)
            )
        values[g] = img
    while True:
        known = np.flatnonzero(values >= 0)
        kx, ky = known[:, None], known[None, :]
        grew = False
        for dom_op, cod_op, law in ((domain.add_codes, codomain.add_codes, "additivity"),
                                    (domain.mul_codes, codomain.mul_codes, "multiplicativity")):
            targets = np.asarray(dom_op(kx, ky)).ravel()
            imgs = np.asarray(cod_op(values[kx], values[ky])).ravel()
            assigned = values[targets] >= 0
            clash = assigned & (values[targets] != imgs)
            if clash.any():
                x = int(targets[np.argmax(clash)])
                raise HomomorphismError(
                    f"generator images are inconsistent at {domain.label(x)}", law=law, witness=(x,)
                )
            fresh = ~assigned
            if fresh.any():
                values[targets[fresh]] = imgs[fresh]
                grew = True
        if not grew:
            break
    if (values < 0).any():
        missing = int(np.argmax(values < 0))
        raise HomomorphismError(
            f"generator images do not determine the image of {domain.label(missing)}", law="total",
            witness=(missing,),
        )
    return values


def _canonical_table(domain: Ring, codomain: Ring) -> np.ndarray:
    if domain == codomain:
        return domain.codes()
    cod = codomain.descriptor
    if isinstance(cod, Quotient) and codomain.structure["parent"] == domain:
        return np.asarray(codomain.structure["index_of"])
    if "degree" in domain.structure and "degree" in codomain.structure \
            and domain.structure["degree"] == codomain.structure["degree"]:
        base_map = _canonical_table(domain.structure["base"], codomain.structure["base"])
        d = domain.structure["degree"]
        q, q2 = domain.structure["base"].order, codomain.structure["base"].order
        codes = domain.codes()
        table = np.zeros(domain.order, dtype=np.int64)
        for i in range(d):
            table += base_map[(codes // q ** i) % q] * q2 ** i
        return table
    if not domain.generators:
        # the prime subring: only 1 needs an image
        return extend_generator_images(domain, codomain, {})
    raise HomomorphismError(
        f"no canonical map {describe(domain.descriptor)} -> {describe(codomain.descriptor)}", law="canonical"
    )


def hom_build(domain: Ring, codomain: Ring, spec: str,
              data: Union[Sequence[int], Mapping[int, int], None] = None, name: str = "") -> RingHom:
    """
    Build a verified homomorphism.

    spec is one of ``canonical``, ``identity``, ``image-table`` (``data`` lists
    one image per domain code) or ``generator-images`` (``data`` maps
    generator codes to images, or lists images of ``domain.generators``).
    """
    if spec == "identity":
        if domain != codomain:
            raise HomomorphismError(f"identity needs equal rings, got {domain!r} and {codomain!r}", law="identity")
        table = domain.codes()
    elif spec == "canonical":
        table = _canonical_table(domain, codomain)
    elif spec == "image-table":
        if data is None:
            raise HomomorphismError("image-table needs an image list", law="total")
        table = np.asarray(list(data), dtype=np.int64)
    elif spec == "generator-images":
        if data is None:
            data = {}
        if not isinstance(data, Mapping):
            data = list(data)
            if len(data) != len(domain.generators):
                raise HomomorphismError(
                    f"{domain!r} has {len(domain.generators)} generators, got {len(data)} images", law="total"
                )
            data = dict(zip(domain.generators, data))
        table = extend_generator_images(domain, codomain, data)
    else:
        raise BiamalgError(f"unknown homomorphism spec {spec!r}")
    hom = RingHom(domain, codomain, table, name=name)
    logger.debug(f"Built {hom!r} ({spec})")
    return hom


def enumerate_homs(domain: Ring, codomain: Ring, limit: int = 4096) -> List[RingHom]:
    """All unital homomorphisms, found by trying every assignment of generator images"""
    gens = domain.generators
    combos = codomain.order ** len(gens)
    if combos > limit:
        logger.warning(f"Skipping hom enumeration {domain!r} -> {codomain!r}: {combos} candidate assignments")
        return []
    homs = []
    seen = set()
    for images in itertools.product(range(codomain.order), repeat=len(gens)):
        try:
            table = extend_generator_images(domain, codomain, dict(zip(gens, images)))
            hom = RingHom(domain, codomain, table)
        except HomomorphismError:
            continue
        key = hom.table.tobytes()
        if key not in seen:
            seen.add(key)
            homs.append(hom)
    homs.sort(key=lambda h: tuple(h.table))
    return homs


# --- kernels, images, ideal transfer ---

@dataclass(frozen=True)
class KernelImage:
    kernel: Ideal
    image: BitSet


def hom_kernel_image(hom: RingHom) -> KernelImage:
    image = hom.image_mask
    codes = np.flatnonzero(image)
    cod = hom.codomain
    closed = image[cod.add_codes(codes[:, None], codes[None, :])].all() and \
        image[cod.mul_codes(codes[:, None], codes[None, :])].all()
    if not closed:
        raise InvariantViolation(f"image of {hom!r} is not a subring")
    return KernelImage(kernel=hom.kernel, image=BitSet.from_bool(image))


def contract(hom: RingHom, ideal: Ideal) -> Ideal:
    if ideal.ring != hom.codomain:
        raise RingMismatchError(f"{ideal!r} is not an ideal of the codomain of {hom!r}")
    return Ideal.from_mask(hom.domain, ideal.mask[hom.table])


def extend(hom: RingHom, ideal: Ideal) -> Ideal:
    if ideal.ring != hom.domain:
        raise RingMismatchError(f"{ideal!r} is not an ideal of the domain of {hom!r}")
    return ideal_span(hom.codomain, np.unique(hom.table[ideal.codes]).tolist())


def ideal_transfer(kind: str, hom: RingHom, ideal: Ideal) -> Ideal:
    if kind == "contract":
        return contract(hom, ideal)
    if kind == "extend":
        return extend(hom, ideal)
    raise BiamalgError(f"unknown ideal transfer {kind!r}")


def quotient_by(ideal: Ideal) -> Tuple[Ring, RingHom]:
    """R/I with its verified projection"""
    ring = ideal.ring
    name = f"{describe(ring.descriptor)}/{ideal.label()}"
    quotient = construct_ring(Quotient(ring.descriptor, tuple(int(c) for c in ideal.codes), name=name), ring.settings)
    projection = RingHom(ring, quotient, quotient.structure["index_of"], name="projection")
    return quotient, projection


# --- multiplicative sets and localization ---

class MultiplicativeSet:
    """A raw element set together with its multiplicative closure (with 1)"""

    def __init__(self, ring: Ring, elements):
        self.ring = ring
        raw = np.zeros(ring.order, dtype=bool)
        raw[np.asarray(list(elements), dtype=np.int64)] = True
        self.elements = BitSet.from_bool(raw)
        closure = raw.copy()
        closure[ring.one] = True
        while True:
            codes = np.flatnonzero(closure)
            grown = closure.copy()
            grown[ring.mul_codes(codes[:, None], codes[None, :]).ravel()] = True
            if grown.sum() == closure.sum():
                break
            closure = grown
        self.closure = BitSet.from_bool(closure)
        self.closure_mask = closure
        self.closed = self.closure == self.elements

    @classmethod
    def complement_of(cls, ideal: Ideal) -> "MultiplicativeSet":
        return cls(ideal.ring, np.flatnonzero(~ideal.mask))

    def __contains__(self, x: int) -> bool:
        return x in self.closure

    def __len__(self) -> int:
        return len(self.closure)

    def __repr__(self) -> str:
        return f"MultiplicativeSet({len(self.elements)} elements, closed={self.closed})"


@dataclass(frozen=True)
class Localization:
    ring: Ring
    hom: RingHom
    kernel: Ideal
    multiplicative_set: MultiplicativeSet


def localize_finite(ring: Ring, mset: MultiplicativeSet) -> Localization:
    """S^-1 R computed as R/K with K = {x : s x = 0 for some s in S}"""
    if mset.ring != ring:
        raise RingMismatchError(f"{mset!r} does not live in {ring!r}")
    s_codes = np.flatnonzero(mset.closure_mask)
    killed = (ring.mul_codes(s_codes[:, None], ring.codes()[None, :]) == ring.zero).any(axis=0)
    kernel = Ideal.from_mask(ring, killed)
    if kernel.is_zero:
        hom = identity_hom(ring)
        local_ring = ring
    else:
        local_ring, hom = quotient_by(kernel)
    images = np.unique(hom.table[s_codes])
    if not local_ring.unit_flags()[images].all():
        raise InvariantViolation(f"localization of {ring!r} does not invert its multiplicative set")
    logger.debug(f"Localized {ring!r} at {mset!r}: kernel size {len(kernel)}, result order {local_ring.order}")
    return Localization(ring=local_ring, hom=hom, kernel=kernel, multiplicative_set=mset)


def localize_at_prime(ring: Ring, prime: Ideal) -> Localization:
    if prime.ring != ring:
        raise RingMismatchError(f"{prime!r} is not an ideal of {ring!r}")
    if not is_prime_ideal(prime):
        raise InvalidPrimeError(f"{prime.label()} is not a prime ideal of {ring!r}")
    return localize_finite(ring, MultiplicativeSet.complement_of(prime))


@dataclass(frozen=True)
class FactorReport:
    applicable: bool  # hom inverts S (hence kills K)
    factored: Optional[RingHom]
    holds: bool


def factor_through_localization(loc: Localization, hom: RingHom) -> FactorReport:
    """Check that a hom inverting S factors uniquely through the localization map"""
    if hom.domain != loc.hom.domain:
        raise RingMismatchError(f"{hom!r} does not start at the localized ring")
    s_codes = np.flatnonzero(loc.multiplicative_set.closure_mask)
    inverts = bool(hom.codomain.unit_flags()[hom.table[s_codes]].all())
    if not inverts:
        return FactorReport(applicable=False, factored=None, holds=True)
    if not (hom.table[loc.kernel.codes] == hom.codomain.zero).all():
        return FactorReport(applicable=True, factored=None, holds=False)
    table = np.full(loc.ring.order, -1, dtype=np.int64)
    table[loc.hom.table] = hom.table
    try:
        factored = RingHom(loc.ring, hom.codomain, table)
    except HomomorphismError:
        return FactorReport(applicable=True, factored=None, holds=False)
    holds = bool(np.array_equal(factored.table[loc.hom.table], hom.table))
    return FactorReport(applicable=True, factored=factored, holds=holds)
