"""
Ideals of a finite ring: span, arithmetic, predicates and the full ideal lattice.
"""
import logging
import threading
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import BiamalgError, InvariantViolation, RingMismatchError
from .bitset import BitSet
from .ring import Ring

logger = logging.getLogger(__name__)

REGULAR_IDEAL_NOTE = "in a finite ring regular elements are units, so a regular ideal is the unit ideal"


class Ideal:
    """An ideal given by generators together with its enumerated element set"""

    __slots__ = ("ring", "elements", "_generators", "_mask")

    def __init__(self, ring: Ring, elements: BitSet, generators: Optional[Sequence[int]] = None,
                 mask: Optional[np.ndarray] = None):
        self.ring = ring
        self.elements = elements
        self._generators = tuple(int(g) for g in generators) if generators is not None else None
        self._mask = mask

    @classmethod
    def from_mask(cls, ring: Ring, mask: np.ndarray, generators: Optional[Sequence[int]] = None) -> "Ideal":
        mask = np.asarray(mask, dtype=bool)
        mask.setflags(write=False)
        return cls(ring, BitSet.from_bool(mask), generators, mask)

    @property
    def mask(self) -> np.ndarray:
        """Boolean membership array indexed by element code"""
        if self._mask is None:
            mask = self.elements.to_bool(self.ring.order)
            mask.setflags(write=False)
            self._mask = mask
        return self._mask

    @property
    def codes(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    @property
    def generators(self) -> Tuple[int, ...]:
        if self._generators is None:
            self._generators = minimal_generators(self)
        return self._generators

    @property
    def is_zero(self) -> bool:
        return len(self.elements) == 1

    @property
    def is_unit(self) -> bool:
        return self.ring.one in self.elements

    @property
    def is_proper(self) -> bool:
        return not self.is_unit

    def contains(self, x: int) -> bool:
        return self.elements.contains(x)

    def __contains__(self, x: int) -> bool:
        return self.elements.contains(x)

    def __len__(self) -> int:
        return len(self.elements)

    def __le__(self, other: "Ideal") -> bool:
        _same_ring(self, other)
        return self.elements <= other.elements

    def __ge__(self, other: "Ideal") -> bool:
        _same_ring(self, other)
        return self.elements >= other.elements

    def __lt__(self, other: "Ideal") -> bool:
        _same_ring(self, other)
        return self.elements < other.elements

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ideal) and self.ring == other.ring and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.ring, self.elements))

    def label(self) -> str:
        gens = minimal_generators(self) if self._generators is None else self._generators
        gens = [g for g in gens if g != self.ring.zero]
        return "(" + ", ".join(self.ring.label(g) for g in gens) + ")" if gens else "(0)"

    def __repr__(self) -> str:
        return f"Ideal{self.label()} of {self.ring!r}"


def _same_ring(*ideals: Ideal) -> Ring:
    ring = ideals[0].ring
    for other in ideals[1:]:
        if other.ring != ring:
            raise RingMismatchError(f"ideals live in different rings: {ring!r} and {other.ring!r}")
    return ring


# --- mask level helpers, shared with the lattice ---

def principal_mask(ring: Ring, x: int) -> np.ndarray:
    mask = np.zeros(ring.order, dtype=bool)
    mask[ring.mul_row(x)] = True
    return mask


def sum_masks(ring: Ring, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    a, b = np.flatnonzero(left), np.flatnonzero(right)
    mask = np.zeros(ring.order, dtype=bool)
    mask[ring.add_codes(a[:, None], b[None, :]).ravel()] = True
    return mask


def span_mask(ring: Ring, gens: Iterable[int]) -> np.ndarray:
    mask = np.zeros(ring.order, dtype=bool)
    mask[ring.zero] = True
    for g in gens:
        g = int(g)
        if mask[g]:
            continue
        mask = sum_masks(ring, mask, principal_mask(ring, g))
    return mask


# --- operations ---

def ideal_span(ring: Ring, gens: Iterable[int]) -> Ideal:
    """Smallest ideal containing ``gens``"""
    gens = [int(g) for g in gens]
    for g in gens:
        if not 0 <= g < ring.order:
            raise BiamalgError(f"code {g} is not an element of {ring!r}")
    return Ideal.from_mask(ring, span_mask(ring, gens), gens)


def zero_ideal(ring: Ring) -> Ideal:
    return ideal_span(ring, [])


def unit_ideal(ring: Ring) -> Ideal:
    return ideal_span(ring, [ring.one])


def minimal_generators(ideal: Ideal) -> Tuple[int, ...]:
    """Greedy generating set: ascending codes, each one not already in the span of the previous ones"""
    ring = ideal.ring
    current = np.zeros(ring.order, dtype=bool)
    current[ring.zero] = True
    target = int(ideal.mask.sum())
    gens: List[int] = []
    for code in np.flatnonzero(ideal.mask):
        if current[code]:
            continue
        gens.append(int(code))
        current = sum_masks(ring, current, principal_mask(ring, int(code)))
        if current.sum() == target:
            break
    return tuple(gens)


def ideal_sum(left: Ideal, right: Ideal) -> Ideal:
    ring = _same_ring(left, right)
    return Ideal.from_mask(ring, sum_masks(ring, left.mask, right.mask), left.generators + right.generators)


def ideal_product(left: Ideal, right: Ideal) -> Ideal:
    ring = _same_ring(left, right)
    gl, gr = np.asarray(left.generators, dtype=np.int64), np.asarray(right.generators, dtype=np.int64)
    if gl.size == 0 or gr.size == 0:
        return zero_ideal(ring)
    products = np.unique(ring.mul_codes(gl[:, None], gr[None, :]))
    return ideal_span(ring, products.tolist())


def ideal_intersect(left: Ideal, right: Ideal) -> Ideal:
    ring = _same_ring(left, right)
    return Ideal.from_mask(ring, left.mask & right.mask)


def ideal_colon(left: Ideal, right: Ideal) -> Ideal:
    """(left : right) = {x : x * right ⊆ left}"""
    ring = _same_ring(left, right)
    gens = np.asarray(right.generators, dtype=np.int64)
    if gens.size == 0:
        return unit_ideal(ring)
    products = ring.mul_codes(ring.codes()[:, None], gens[None, :])
    return Ideal.from_mask(ring, left.mask[products].all(axis=1))


def annihilator(ideal: Ideal) -> Ideal:
    return ideal_colon(zero_ideal(ideal.ring), ideal)


def ideal_power(ideal: Ideal, k: int) -> Ideal:
    if k < 0:
        raise BiamalgError(f"negative ideal power {k}")
    result = unit_ideal(ideal.ring)
    for _ in range(k):
        result = ideal_product(result, ideal)
    return result


def ideal_arith(kind: str, left: Ideal, right: Optional[Ideal] = None, k: Optional[int] = None) -> Ideal:
    """Dispatch for kind in {sum, product, intersect, colon, annihilator, power}"""
    if kind == "annihilator":
        return annihilator(left)
    if kind == "power":
        if k is None:
            raise BiamalgError("power needs an exponent")
        return ideal_power(left, k)
    if right is None:
        raise BiamalgError(f"{kind} needs two ideals")
    if kind == "sum":
        return ideal_sum(left, right)
    if kind == "product":
        return ideal_product(left, right)
    if kind == "intersect":
        return ideal_intersect(left, right)
    if kind == "colon":
        return ideal_colon(left, right)
    raise BiamalgError(f"unknown ideal operation {kind!r}")


def radical(ideal: Ideal) -> Ideal:
    ring = ideal.ring
    cur = ring.codes()
    hit = ideal.mask[cur].copy()
    for _ in range(max(1, ring.order.bit_length())):
        cur = ring.mul_codes(cur, cur)
        hit |= ideal.mask[cur]
    return Ideal.from_mask(ring, hit)


def is_prime_ideal(ideal: Ideal) -> bool:
    if not ideal.is_proper:
        return False
    ring = ideal.ring
    outside = np.flatnonzero(~ideal.mask)
    return not ideal.mask[ring.mul_codes(outside[:, None], outside[None, :])].any()


def is_maximal_ideal(ideal: Ideal) -> bool:
    """R/I is a field: every x outside I has an inverse modulo I"""
    if not ideal.is_proper:
        return False
    ring = ideal.ring
    in_one_coset = ideal.mask[ring.sub_codes(ring.codes(), ring.one)]
    outside = np.flatnonzero(~ideal.mask)
    return bool(in_one_coset[ring.mul_codes(outside[:, None], ring.codes()[None, :])].any(axis=1).all())


@dataclass(frozen=True)
class IdealPredicates:
    is_proper: bool
    is_prime: bool
    is_maximal: bool
    is_regular: bool
    radical: Ideal
    note: str = REGULAR_IDEAL_NOTE


def ideal_predicates(ideal: Ideal) -> IdealPredicates:
    prime = is_prime_ideal(ideal)
    maximal = is_maximal_ideal(ideal)
    if prime != maximal:
        raise InvariantViolation(f"{ideal!r}: prime={prime} but maximal={maximal} in a finite ring")
    regular = bool((ideal.mask & ideal.ring.unit_flags()).any())
    return IdealPredicates(
        is_proper=ideal.is_proper,
        is_prime=prime,
        is_maximal=maximal,
        is_regular=regular,
        radical=radical(ideal),
    )


# --- lattice of all ideals ---

class IdealLattice:
    """
    Every ideal of a finite ring, obtained as sums of principal ideals.

    Ideals are indexed by position in ``ideals`` (sorted by size, then mask).
    ``principal`` maps an element code to the index of the ideal it generates
    and ``rank`` is the least number of generators of each ideal. Sums and
    products of indexed ideals are computed on demand and cached.
    """

    def __init__(self, ring: Ring):
        self.ring = ring
        n = ring.order
        principal_keys = np.empty(n, dtype=object)
        principal_masks: Dict[int, Tuple[np.ndarray, int]] = {}
        for x in range(n):
            mask = principal_mask(ring, x)
            key = BitSet.from_bool(mask).mask
            principal_keys[x] = key
            principal_masks.setdefault(key, (mask, x))

        zero = np.zeros(n, dtype=bool)
        zero[ring.zero] = True
        start = (zero, 0, ())
        found: Dict[int, Tuple[np.ndarray, int, Tuple[int, ...]]] = {BitSet.from_bool(zero).mask: start}
        frontier = [start]
        while frontier:
            next_frontier = []
            for mask, rank, gens in frontier:
                for pmask, x in principal_masks.values():
                    if not (pmask & ~mask).any():
                        continue
                    grown = sum_masks(ring, mask, pmask)
                    key = BitSet.from_bool(grown).mask
                    if key not in found:
                        entry = (grown, rank + 1, gens + (x,))
                        found[key] = entry
                        next_frontier.append(entry)
            frontier = next_frontier

        ordered = sorted(found.items(), key=lambda item: (int(item[1][0].sum()), item[0]))
        self.ideals: List[Ideal] = [Ideal.from_mask(ring, mask, gens) for _, (mask, _, gens) in ordered]
        self.rank = np.array([rank for _, (_, rank, _) in ordered], dtype=np.int64)
        self._index = {key: i for i, (key, _) in enumerate(ordered)}
        self.principal = np.array([self._index[key] for key in principal_keys], dtype=np.int64)
        self._lock = threading.Lock()
        self._sums: Dict[Tuple[int, int], int] = {}
        self._products: Dict[Tuple[int, int], int] = {}
        logger.debug(f"Ideal lattice of {ring!r}: {len(self.ideals)} ideals")

    def index_of(self, ideal: Ideal) -> int:
        if ideal.ring != self.ring:
            raise RingMismatchError(f"{ideal!r} is not an ideal of {self.ring!r}")
        return self._index[ideal.elements.mask]

    def _cached(self, cache: Dict[Tuple[int, int], int], i: int, j: int, compute) -> int:
        key = (i, j) if i <= j else (j, i)
        with self._lock:
            if key in cache:
                return cache[key]
        value = self._index[compute(self.ideals[key[0]], self.ideals[key[1]]).elements.mask]
        with self._lock:
            cache[key] = value
        return value

    def sum_index(self, i: int, j: int) -> int:
        return self._cached(self._sums, int(i), int(j), ideal_sum)

    def prod_index(self, i: int, j: int) -> int:
        return self._cached(self._products, int(i), int(j), ideal_product)

    def _vectorised(self, op, left, right) -> np.ndarray:
        left, right = np.broadcast_arrays(np.asarray(left, dtype=np.int64), np.asarray(right, dtype=np.int64))
        size = len(self.ideals)
        keys = left * size + right
        unique, inverse = np.unique(keys, return_inverse=True)
        values = np.array([op(k // size, k % size) for k in unique], dtype=np.int64)
        return values[inverse].reshape(left.shape)

    def sum_indices(self, left, right) -> np.ndarray:
        return self._vectorised(self.sum_index, left, right)

    def prod_indices(self, left, right) -> np.ndarray:
        return self._vectorised(self.prod_index, left, right)

    def content_index(self, coeffs: np.ndarray) -> np.ndarray:
        """Index of the ideal generated by each row of coefficient codes (last axis)"""
        coeffs = np.asarray(coeffs, dtype=np.int64)
        idx = self.principal[coeffs[..., 0]]
        for k in range(1, coeffs.shape[-1]):
            idx = self.sum_indices(idx, self.principal[coeffs[..., k]])
        return idx

    def __len__(self) -> int:
        return len(self.ideals)

    def __iter__(self):
        return iter(self.ideals)

    def with_rank_at_most(self, k: int) -> List[Ideal]:
        return [ideal for ideal, r in zip(self.ideals, self.rank) if r <= k]


def ideal_lattice(ring: Ring) -> IdealLattice:
    return ring.memo("ideal_lattice", lambda: IdealLattice(ring))
