"""
The instance catalog the harness sweeps.

A catalog is a deterministic function of ``(caps, seed)``: a fixed list of
small rings, every verified homomorphism between them, and every compatible
bi-amalgamation datum up to the instance cap. When the candidate list is
longer than ``caps.max_instances`` a seeded sample is kept. The named
instances (Gaussian examples, the converse failure, the projection and
the remark probe) are always present.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..core.bowtie import BiAmalgInstance, amalgamation_special, biamalg_new, duplication
from ..core.hom import RingHom, contract, enumerate_homs, hom_build
from ..core.ideal import Ideal, ideal_lattice, ideal_span, zero_ideal
from ..core.ring import (
    Descriptor,
    GaloisField,
    PolyQuot,
    Product,
    Quotient,
    Ring,
    ZMod,
    construct_ring,
    describe,
    prime_power,
)
from ..errors import BiamalgError, OrderCapExceeded

logger = logging.getLogger(__name__)

F2 = ZMod(2)
F2_X2 = PolyQuot(F2, (0, 0, 1), "x")
F2_XY = PolyQuot(F2_X2, (0, 0, 1), "y")

EXTRA_RINGS: Tuple[Descriptor, ...] = (
    F2_X2,
    PolyQuot(F2, (0, 0, 0, 1), "x"),
    PolyQuot(F2, (0, 0, 0, 0, 1), "x"),
    PolyQuot(ZMod(3), (0, 0, 1), "x"),
    PolyQuot(ZMod(4), (0, 0, 1), "x"),
    PolyQuot(ZMod(4), (1, 1, 1), "x"),
    F2_XY,
    Quotient(F2_XY, (0, 8), name="F2[x,y]/(x^2,xy,y^2)"),  # 8 = xy
    PolyQuot(GaloisField(2, 2), (0, 0, 1), "y"),
    Product(ZMod(2), ZMod(2)),
    Product(ZMod(2), ZMod(4)),
    Product(ZMod(3), ZMod(3)),
    Product(ZMod(2), F2_X2),
    Product(ZMod(4), ZMod(4)),
    Product(ZMod(2), ZMod(8)),
    Product(ZMod(2), GaloisField(2, 2)),
)


@dataclass(frozen=True)
class Caps:
    max_ring: int = 16  # order of A, B, C
    max_instance: int = 128  # order of R
    max_instances: int = 120  # sampled instances, named ones not counted

    def __post_init__(self):
        for name in ("max_ring", "max_instance", "max_instances"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise BiamalgError(f"cap {name} must be a positive integer, got {value!r}")

    def as_dict(self) -> Dict[str, int]:
        return {"max_ring": self.max_ring, "max_instance": self.max_instance, "max_instances": self.max_instances}


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    instance: BiAmalgInstance
    mandatory: bool = False

    @property
    def order(self) -> int:
        return self.instance.order


@dataclass(frozen=True)
class Catalog:
    caps: Caps
    seed: int
    rings: Tuple[Ring, ...]
    homs: Tuple[RingHom, ...]
    entries: Tuple[CatalogEntry, ...]
    candidates: int = 0  # compatible data found before sampling
    skipped: Tuple[str, ...] = field(default=())

    @property
    def instances(self) -> Tuple[BiAmalgInstance, ...]:
        return tuple(entry.instance for entry in self.entries)

    def entry(self, key: str) -> CatalogEntry:
        for entry in self.entries:
            if entry.key == key:
                return entry
        raise BiamalgError(f"no catalog instance {key!r}")

    def __len__(self) -> int:
        return len(self.entries)


# --- named instances ---

def gaussian_example(p: int) -> BiAmalgInstance:
    """Z/p^3 ⋈ (Z/p^2, Z/p^2) along (p), (p) with both maps canonical: a Gaussian local ring"""
    A, B = construct_ring(ZMod(p ** 3)), construct_ring(ZMod(p ** 2))
    f = hom_build(A, B, "canonical", name="f")
    b = ideal_span(B, [p])
    return biamalg_new(A, B, B, f, f, b, b, name=f"Z/{p ** 3} ><(Z/{p ** 2}, Z/{p ** 2}) (({p}), ({p}))")


def converse_duplication() -> BiAmalgInstance:
    """Z/16 ⋈ (4): meets the necessary Gaussian conditions without being Gaussian"""
    A = construct_ring(ZMod(16))
    return duplication(A, ideal_span(A, [4])).instance


def converse_amalgamation() -> BiAmalgInstance:
    A, B = construct_ring(ZMod(32)), construct_ring(ZMod(16))
    f = hom_build(A, B, "canonical", name="f")
    return amalgamation_special(A, f, ideal_span(B, [4])).instance


def projection_instance() -> BiAmalgInstance:
    """b = c = 0, so R is a copy of A/i0"""
    A, B = construct_ring(ZMod(12)), construct_ring(ZMod(4))
    f = hom_build(A, B, "canonical", name="f")
    zero = zero_ideal(B)
    return biamalg_new(A, B, B, f, f, zero, zero, name="Z/12 ><(Z/4, Z/4) (0, 0)")


def remark_instance() -> BiAmalgInstance:
    """Z/8 ⋈^f (2) for f: Z/8 -> Z/4, a probe for the sufficient Gaussian conditions"""
    A, B = construct_ring(ZMod(8)), construct_ring(ZMod(4))
    f = hom_build(A, B, "canonical", name="f")
    return amalgamation_special(A, f, ideal_span(B, [2])).instance


def duplication_z6() -> BiAmalgInstance:
    A = construct_ring(ZMod(6))
    return duplication(A, ideal_span(A, [2])).instance


MANDATORY: Tuple[Tuple[str, Callable[[], BiAmalgInstance]], ...] = (
    ("ex-gaussian-p2", lambda: gaussian_example(2)),
    ("ex-gaussian-p3", lambda: gaussian_example(3)),
    ("dup-z16-4", converse_duplication),
    ("amalg-z32-z16-4", converse_amalgamation),
    ("projection-z12-z4", projection_instance),
    ("remark-z8-z4", remark_instance),
    ("dup-z6-2", duplication_z6),
)


# --- generation ---

def base_rings(max_ring: int) -> List[Ring]:
    descriptors: List[Descriptor] = [ZMod(n) for n in range(2, max_ring + 1)]
    for q in range(4, max_ring + 1):
        try:
            p, k = prime_power(q)
        except BiamalgError:
            continue
        if k > 1:
            descriptors.append(GaloisField(p, k))
    descriptors.extend(EXTRA_RINGS)

    rings: List[Ring] = []
    seen = set()
    for descriptor in descriptors:
        if descriptor in seen:
            continue
        seen.add(descriptor)
        try:
            ring = construct_ring(descriptor)
        except OrderCapExceeded:
            continue
        if ring.order <= max_ring:
            rings.append(ring)
    return rings


def _homs_between(rings: List[Ring]) -> Dict[Ring, List[RingHom]]:
    homs: Dict[Ring, List[RingHom]] = {}
    for A in rings:
        out: List[RingHom] = []
        char_a = A.characteristic
        for B in rings:
            if char_a % B.characteristic:
                continue
            out.extend(enumerate_homs(A, B))
        homs[A] = out
    return homs


@dataclass(frozen=True)
class _Candidate:
    order: int
    A: Ring
    f: RingHom
    b: Ideal
    g: RingHom
    c: Ideal


def _candidates(A: Ring, homs: List[RingHom], cap: int) -> List[_Candidate]:
    """Every compatible (f, b, g, c) with |A/i0| |b| |c| ≤ cap, in a fixed order"""
    groups: Dict[bytes, List[Tuple[RingHom, Ideal]]] = defaultdict(list)
    for f in homs:
        for b in ideal_lattice(f.codomain).ideals:
            groups[contract(f, b).mask.tobytes()].append((f, b))
    out: List[_Candidate] = []
    for key in sorted(groups):
        i0_size = int(np.frombuffer(key, dtype=bool).sum())
        quotient = A.order // i0_size
        members = groups[key]
        for f, b in members:
            if quotient * len(b) > cap:
                continue
            for g, c in members:
                order = quotient * len(b) * len(c)
                if order <= cap:
                    out.append(_Candidate(order, A, f, b, g, c))
    return out


def generate_catalog(caps: Optional[Caps] = None, seed: int = 0, include_mandatory: bool = True) -> Catalog:
    """
    Build the catalog for ``caps`` and ``seed``.

    The named instances are built regardless of ``max_ring`` and are only
    bounded by ``max_instance``; pass ``include_mandatory=False`` for a
    catalog of sampled instances alone.
    """
    caps = caps or Caps()
    rings = base_rings(caps.max_ring)
    homs = _homs_between(rings)
    logger.info(f"Catalog: {len(rings)} rings, {sum(len(h) for h in homs.values())} homomorphisms")

    candidates: List[_Candidate] = []
    for A in rings:
        candidates.extend(_candidates(A, homs[A], caps.max_instance))
    total = len(candidates)
    if total > caps.max_instances:
        rng = np.random.default_rng(seed)
        chosen = np.sort(rng.choice(total, size=caps.max_instances, replace=False))
        candidates = [candidates[i] for i in chosen]
    logger.info(f"Catalog: {total} compatible data, keeping {len(candidates)}")

    entries: List[CatalogEntry] = []
    all_rings = list(rings)
    if include_mandatory:
        for key, build in MANDATORY:
            inst = build()
            if inst.order > caps.max_instance:
                raise BiamalgError(
                    f"max_instance={caps.max_instance} is too small for the named instance {key} of order {inst.order}"
                )
            entries.append(CatalogEntry(key, inst, mandatory=True))
            for ring in (inst.A, inst.B, inst.C):
                if ring not in all_rings:
                    all_rings.append(ring)

    skipped: List[str] = []
    for n, cand in enumerate(candidates):
        key = f"inst-{n:04d}"
        try:
            inst = biamalg_new(cand.A, cand.f.codomain, cand.g.codomain, cand.f, cand.g, cand.b, cand.c,
                               name=f"{key}: {describe(cand.A.descriptor)} ><({describe(cand.f.codomain.descriptor)}"
                                    f" {cand.b.label()}, {describe(cand.g.codomain.descriptor)} {cand.c.label()})")
        except OrderCapExceeded as exc:
            skipped.append(f"{key}: {exc}")
            continue
        entries.append(CatalogEntry(key, inst))

    all_homs = tuple(h for A in rings for h in homs[A])
    return Catalog(caps, seed, tuple(all_rings), all_homs, tuple(entries), total, tuple(skipped))
