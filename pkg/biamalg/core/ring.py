"""
Finite commutative rings with a uniform element encoding.

Every ring encodes its elements as integer codes ``0 .. order-1``. The
structural operations of each descriptor kind are written as numpy functions
that work on whole arrays of codes; rings whose order is at most
``Settings.table_cap`` evaluate them once into full addition and
multiplication tables before the ring object is handed out.
"""
import logging
import math
import threading
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..config import Settings, get_settings
from ..errors import (
    BiamalgError,
    InvariantViolation,
    OrderCapExceeded,
    RingConstructionError,
    RingMismatchError,
)

logger = logging.getLogger(__name__)

ArrayLike = Union[int, np.ndarray]


# --- Descriptors ---

@dataclass(frozen=True)
class ZMod:
    n: int


@dataclass(frozen=True)
class GaloisField:
    p: int
    k: int = 1


@dataclass(frozen=True)
class PolyQuot:
    """base[var]/(modulus); modulus lists base codes, constant term first, monic"""
    base: "Descriptor"
    modulus: Tuple[int, ...]
    var: str = field(default="t", compare=False)


@dataclass(frozen=True)
class Product:
    left: "Descriptor"
    right: "Descriptor"


@dataclass(frozen=True)
class Quotient:
    parent: "Descriptor"
    ideal: Tuple[int, ...]  # sorted element codes of the ideal
    name: str = field(default="", compare=False)


@dataclass(frozen=True)
class Subring:
    parent: "Descriptor"
    elements: Tuple[int, ...]  # sorted element codes
    name: str = field(default="", compare=False)


@dataclass(frozen=True)
class PairSubring:
    """A subring of left × right given by its (left code, right code) pairs"""
    left: "Descriptor"
    right: "Descriptor"
    pairs: Tuple[Tuple[int, int], ...]  # sorted
    name: str = field(default="", compare=False)


Descriptor = Union[ZMod, GaloisField, PolyQuot, Product, Quotient, Subring, PairSubring]


def describe(descriptor: Descriptor) -> str:
    """Short human-readable form of a descriptor"""
    if isinstance(descriptor, ZMod):
        return f"Z/{descriptor.n}"
    if isinstance(descriptor, GaloisField):
        return f"GF({descriptor.p ** descriptor.k})"
    if isinstance(descriptor, PolyQuot):
        base = describe(descriptor.base)
        return f"{base}[{descriptor.var}]/({format_poly(descriptor.modulus, descriptor.var)})"
    if isinstance(descriptor, Product):
        return f"({describe(descriptor.left)} * {describe(descriptor.right)})"
    if isinstance(descriptor, Quotient):
        return descriptor.name or f"{describe(descriptor.parent)}/<{len(descriptor.ideal)}>"
    if isinstance(descriptor, Subring):
        return descriptor.name or f"sub({describe(descriptor.parent)}; {len(descriptor.elements)})"
    if isinstance(descriptor, PairSubring):
        return descriptor.name or (
            f"pairs({describe(descriptor.left)}, {describe(descriptor.right)}; {len(descriptor.pairs)})"
        )
    raise RingConstructionError(f"Unknown ring descriptor {descriptor!r}")


def format_poly(coeffs: Sequence[int], var: str = "t", labels: Optional[Callable[[int], str]] = None) -> str:
    """Render constant-first coefficient codes as a polynomial in ``var``"""
    label = labels or str
    terms = []
    for degree in range(len(coeffs) - 1, -1, -1):
        c = int(coeffs[degree])
        if c == 0:
            continue
        text = label(c)
        if "+" in text or "-" in text[1:]:
            text = f"({text})"
        if degree == 0:
            terms.append(text)
            continue
        power = var if degree == 1 else f"{var}^{degree}"
        terms.append(power if c == 1 else f"{text}*{power}")
    return "+".join(terms) if terms else "0"


# --- small number theory helpers ---

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def prime_power(q: int) -> Tuple[int, int]:
    """Return (p, k) with q = p**k, or raise"""
    for p in range(2, q + 1):
        if q % p == 0:
            k, rest = 0, q
            while rest % p == 0:
                rest //= p
                k += 1
            if rest != 1 or not is_prime(p):
                break
            return p, k
    raise RingConstructionError(f"{q} is not a prime power; GF({q}) does not exist")


def _poly_rem(a: List[int], b: List[int], p: int) -> List[int]:
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        factor = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        for i, coeff in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * coeff) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _monic_polys(p: int, degree: int) -> Iterator[List[int]]:
    for index in range(p ** degree):
        coeffs = [(index // p ** i) % p for i in range(degree)]
        yield coeffs + [1]


def irreducible_polynomial(p: int, k: int) -> Tuple[int, ...]:
    """Smallest monic irreducible of degree k over F_p (lower coefficients read as a base-p number)"""
    for candidate in _monic_polys(p, k):
        reducible = False
        for degree in range(1, k // 2 + 1):
            for divisor in _monic_polys(p, degree):
                if not _poly_rem(candidate, divisor, p):
                    reducible = True
                    break
            if reducible:
                break
        if not reducible:
            return tuple(candidate)
    raise InvariantViolation(f"no irreducible polynomial of degree {k} over F_{p}")


# --- Structures: vectorised operations per descriptor kind ---

@dataclass
class _Structure:
    order: int
    add: Callable[[np.ndarray, np.ndarray], np.ndarray]
    mul: Callable[[np.ndarray, np.ndarray], np.ndarray]
    neg: Callable[[np.ndarray], np.ndarray]
    zero: int
    one: int
    label: Callable[[int], str]
    generators: Optional[Tuple[int, ...]] = None
    data: Dict[str, Any] = field(default_factory=dict)


def _zmod_structure(n: int) -> _Structure:
    if n < 1:
        raise RingConstructionError(f"Z/{n}: modulus must be positive")
    return _Structure(
        order=n,
        add=lambda x, y: (x + y) % n,
        mul=lambda x, y: (x * y) % n,
        neg=lambda x: (-x) % n,
        zero=0,
        one=1 % n,
        label=str,
        generators=(),
        data={"modulus": n},
    )


def _polyquot_structure(base: "Ring", modulus: Tuple[int, ...], var: str) -> _Structure:
    d = len(modulus) - 1
    if d < 1:
        raise RingConstructionError(f"modulus {modulus} must have degree at least 1")
    if any(not 0 <= c < base.order for c in modulus):
        raise RingConstructionError(f"modulus {modulus} has coefficients outside {base!r}")
    if modulus[-1] != base.one:
        raise RingConstructionError(
            f"modulus {format_poly(modulus, var, base.label)} over {base!r} is not monic"
        )
    q = base.order
    weights = [q ** i for i in range(d)]

    def digits(x):
        x = np.asarray(x, dtype=np.int64)
        return [(x // w) % q for w in weights]

    def compose(parts):
        total = np.zeros(np.broadcast(*parts).shape, dtype=np.int64)
        for w, part in zip(weights, parts):
            total = total + w * np.asarray(part, dtype=np.int64)
        return total

    reduction = [base.neg(c) for c in modulus[:-1]]  # var^d = sum reduction[j] var^j

    def add(x, y):
        return compose([base.add_codes(a, b) for a, b in zip(digits(x), digits(y))])

    def neg(x):
        return compose([base.neg_codes(a) for a in digits(x)])

    def mul(x, y):
        xs, ys = digits(x), digits(y)
        shape = np.broadcast(xs[0], ys[0]).shape
        conv = [np.full(shape, base.zero, dtype=np.int64) for _ in range(2 * d - 1)]
        for i, a in enumerate(xs):
            for j, b in enumerate(ys):
                conv[i + j] = base.add_codes(conv[i + j], base.mul_codes(a, b))
        for top in range(2 * d - 2, d - 1, -1):
            lead = conv[top]
            for j, r in enumerate(reduction):
                if r != base.zero:
                    conv[top - d + j] = base.add_codes(conv[top - d + j], base.mul_codes(lead, r))
        return compose(conv[:d])

    def label(code: int) -> str:
        return format_poly([int(c) for c in digits(code)], var, base.label)

    one = int(compose([np.int64(base.one)] + [np.int64(base.zero)] * (d - 1)))
    zero = int(compose([np.int64(base.zero)] * d))
    gens = [int(compose([np.int64(g)] + [np.int64(base.zero)] * (d - 1))) for g in base.generators]
    if d > 1:
        gens.append(int(compose([np.int64(base.zero), np.int64(base.one)] + [np.int64(base.zero)] * (d - 2))))
    return _Structure(
        order=q ** d,
        add=add,
        mul=mul,
        neg=neg,
        zero=zero,
        one=one,
        label=label,
        generators=tuple(gens),
        data={"base": base, "degree": d, "modulus": tuple(modulus), "var": var},
    )


def _product_structure(left: "Ring", right: "Ring") -> _Structure:
    n2 = right.order

    def split(x):
        x = np.asarray(x, dtype=np.int64)
        return x // n2, x % n2

    def lift(f_left, f_right):
        def op(x, y):
            (i1, j1), (i2, j2) = split(x), split(y)
            return f_left(i1, i2).astype(np.int64) * n2 + f_right(j1, j2)
        return op

    def neg(x):
        i, j = split(x)
        return left.neg_codes(i).astype(np.int64) * n2 + right.neg_codes(j)

    def label(code: int) -> str:
        return f"({left.label(code // n2)},{right.label(code % n2)})"

    gens = [left.one * n2 + right.zero]
    gens += [g * n2 + right.zero for g in left.generators]
    gens += [left.zero * n2 + h for h in right.generators]
    return _Structure(
        order=left.order * n2,
        add=lift(left.add_codes, right.add_codes),
        mul=lift(left.mul_codes, right.mul_codes),
        neg=neg,
        zero=left.zero * n2 + right.zero,
        one=left.one * n2 + right.one,
        label=label,
        generators=tuple(gens),
        data={"left": left, "right": right},
    )


def _check_closed(keys: np.ndarray, values: np.ndarray, what: str) -> np.ndarray:
    idx = np.searchsorted(keys, values)
    clipped = np.minimum(idx, len(keys) - 1)
    if not np.all(keys[clipped] == values):
        raise RingConstructionError(f"element set is not closed under {what}")
    return clipped


def _quotient_structure(parent: "Ring", ideal: Tuple[int, ...]) -> _Structure:
    members = np.asarray(ideal, dtype=np.int64)
    if members.size == 0 or parent.zero not in set(ideal):
        raise RingConstructionError("quotient ideal must contain zero")
    in_ideal = np.zeros(parent.order, dtype=bool)
    in_ideal[members] = True
    if not in_ideal[parent.add_codes(members[:, None], members[None, :])].all():
        raise RingConstructionError("quotient ideal is not closed under addition")
    if not in_ideal[parent.mul_codes(np.arange(parent.order)[:, None], members[None, :])].all():
        raise RingConstructionError("quotient ideal is not closed under multiplication by the ring")
    cosets = parent.add_codes(np.arange(parent.order)[:, None], members[None, :])
    coset_rep = cosets.min(axis=1)
    reps = np.unique(coset_rep)
    index_of = np.searchsorted(reps, coset_rep)

    def add(x, y):
        return index_of[parent.add_codes(reps[x], reps[y])]

    def mul(x, y):
        return index_of[parent.mul_codes(reps[x], reps[y])]

    def neg(x):
        return index_of[parent.neg_codes(reps[x])]

    return _Structure(
        order=len(reps),
        add=add,
        mul=mul,
        neg=neg,
        zero=int(index_of[parent.zero]),
        one=int(index_of[parent.one]),
        label=lambda code: f"[{parent.label(int(reps[code]))}]",
        generators=tuple(sorted({int(index_of[g]) for g in parent.generators})),
        data={"parent": parent, "reps": reps, "index_of": index_of},
    )


def _subring_structure(parent: "Ring", elements: Tuple[int, ...]) -> _Structure:
    emb = np.asarray(elements, dtype=np.int64)
    if emb.size == 0 or not np.all(np.diff(emb) > 0):
        raise RingConstructionError("subring elements must be a non-empty sorted set")
    members = set(elements)
    if parent.zero not in members or parent.one not in members:
        raise RingConstructionError("subring must contain zero and one")

    def add(x, y):
        return _check_closed(emb, parent.add_codes(emb[x], emb[y]), "addition")

    def mul(x, y):
        return _check_closed(emb, parent.mul_codes(emb[x], emb[y]), "multiplication")

    def neg(x):
        return _check_closed(emb, parent.neg_codes(emb[x]), "negation")

    return _Structure(
        order=len(emb),
        add=add,
        mul=mul,
        neg=neg,
        zero=int(np.searchsorted(emb, parent.zero)),
        one=int(np.searchsorted(emb, parent.one)),
        label=lambda code: parent.label(int(emb[code])),
        data={"parent": parent, "embedding": emb},
    )


def _pair_structure(left: "Ring", right: "Ring", pairs: Tuple[Tuple[int, int], ...]) -> _Structure:
    if not pairs:
        raise RingConstructionError("pair subring needs at least one pair")
    arr = np.asarray(pairs, dtype=np.int64)
    lc, rc = arr[:, 0], arr[:, 1]
    nr = right.order
    keys = lc * nr + rc
    if not np.all(np.diff(keys) > 0):
        raise RingConstructionError("pairs must be sorted and distinct")

    def lift(f_left, f_right, what):
        def op(x, y):
            k = f_left(lc[x], lc[y]).astype(np.int64) * nr + f_right(rc[x], rc[y])
            return _check_closed(keys, k, what)
        return op

    def neg(x):
        k = left.neg_codes(lc[x]).astype(np.int64) * nr + right.neg_codes(rc[x])
        return _check_closed(keys, k, "negation")

    def find(l_code, r_code):
        k = int(l_code) * nr + int(r_code)
        i = int(np.searchsorted(keys, k))
        if i >= len(keys) or keys[i] != k:
            raise RingConstructionError(f"pair ({l_code},{r_code}) is not in the subring")
        return i

    return _Structure(
        order=len(keys),
        add=lift(left.add_codes, right.add_codes, "addition"),
        mul=lift(left.mul_codes, right.mul_codes, "multiplication"),
        neg=neg,
        zero=find(left.zero, right.zero),
        one=find(left.one, right.one),
        label=lambda code: f"({left.label(int(lc[code]))},{right.label(int(rc[code]))})",
        data={"left": left, "right": right, "left_codes": lc, "right_codes": rc, "keys": keys},
    )


def _predicted_order(descriptor: Descriptor) -> Optional[int]:
    if isinstance(descriptor, ZMod):
        return descriptor.n
    if isinstance(descriptor, GaloisField):
        return descriptor.p ** descriptor.k
    if isinstance(descriptor, PolyQuot):
        base = _predicted_order(descriptor.base)
        return None if base is None else base ** (len(descriptor.modulus) - 1)
    if isinstance(descriptor, Product):
        a, b = _predicted_order(descriptor.left), _predicted_order(descriptor.right)
        return None if a is None or b is None else a * b
    if isinstance(descriptor, Subring):
        return len(descriptor.elements)
    if isinstance(descriptor, PairSubring):
        return len(descriptor.pairs)
    return None


# --- Ring ---

class Ring:
    """
    An immutable finite commutative ring.

    Do not instantiate directly; use ``construct_ring``.
    """

    def __init__(self, descriptor: Descriptor, structure: _Structure, settings: Settings):
        self.descriptor = descriptor
        self.order = structure.order
        self.zero = int(structure.zero)
        self.one = int(structure.one)
        self.settings = settings
        self._structure = structure
        self._lock = threading.Lock()
        self._memo: Dict[Any, Any] = {}
        self._hash = hash(descriptor)
        self._generators = structure.generators
        self._add_table: Optional[np.ndarray] = None
        self._mul_table: Optional[np.ndarray] = None
        self._neg_table: Optional[np.ndarray] = None
        if self.order <= settings.table_cap:
            self._build_tables()
        self._check_identities()

    def _build_tables(self) -> None:
        n = self.order
        dtype = np.int32 if n < 2 ** 31 else np.int64
        xs, ys = np.indices((n, n))
        self._add_table = np.asarray(self._structure.add(xs, ys), dtype=dtype)
        self._mul_table = np.asarray(self._structure.mul(xs, ys), dtype=dtype)
        self._neg_table = np.asarray(self._structure.neg(np.arange(n)), dtype=dtype)
        for table in (self._add_table, self._mul_table, self._neg_table):
            table.setflags(write=False)

    def _check_identities(self) -> None:
        codes = np.arange(self.order)
        if not np.all(self.add_codes(codes, self.zero) == codes):
            raise RingConstructionError(f"{self!r}: zero is not an additive identity")
        if not np.all(self.mul_codes(codes, self.one) == codes):
            raise RingConstructionError(f"{self!r}: one is not a multiplicative identity")
        if not np.all(self.add_codes(codes, self.neg_codes(codes)) == self.zero):
            raise RingConstructionError(f"{self!r}: negation is not an additive inverse")
        if self.order > 1 and self.zero == self.one:
            raise RingConstructionError(f"{self!r}: zero equals one in a nonzero ring")
        if self._add_table is not None:
            if not (np.array_equal(self._add_table, self._add_table.T)
                    and np.array_equal(self._mul_table, self._mul_table.T)):
                raise RingConstructionError(f"{self!r}: operations are not commutative")

    # vectorised operations on codes
    def add_codes(self, x: ArrayLike, y: ArrayLike) -> np.ndarray:
        if self._add_table is not None:
            return self._add_table[x, y]
        return self._structure.add(np.asarray(x), np.asarray(y))

    def mul_codes(self, x: ArrayLike, y: ArrayLike) -> np.ndarray:
        if self._mul_table is not None:
            return self._mul_table[x, y]
        return self._structure.mul(np.asarray(x), np.asarray(y))

    def neg_codes(self, x: ArrayLike) -> np.ndarray:
        if self._neg_table is not None:
            return self._neg_table[x]
        return self._structure.neg(np.asarray(x))

    def sub_codes(self, x: ArrayLike, y: ArrayLike) -> np.ndarray:
        return self.add_codes(x, self.neg_codes(y))

    # scalar conveniences
    def add(self, x: int, y: int) -> int:
        return int(self.add_codes(x, y))

    def mul(self, x: int, y: int) -> int:
        return int(self.mul_codes(x, y))

    def neg(self, x: int) -> int:
        return int(self.neg_codes(x))

    def sub(self, x: int, y: int) -> int:
        return int(self.sub_codes(x, y))

    def pow(self, x: int, k: int) -> int:
        if k < 0:
            raise BiamalgError(f"negative exponent {k}")
        result, base = self.one, int(x)
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    @property
    def add_table(self) -> np.ndarray:
        if self._add_table is not None:
            return self._add_table
        logger.warning(f"Materialising the addition table of {self!r} (order {self.order}) without caching")
        xs, ys = np.indices((self.order, self.order))
        return np.asarray(self._structure.add(xs, ys))

    @property
    def mul_table(self) -> np.ndarray:
        if self._mul_table is not None:
            return self._mul_table
        logger.warning(f"Materialising the multiplication table of {self!r} (order {self.order}) without caching")
        xs, ys = np.indices((self.order, self.order))
        return np.asarray(self._structure.mul(xs, ys))

    def codes(self) -> np.ndarray:
        return np.arange(self.order)

    def mul_row(self, x: int) -> np.ndarray:
        return self.mul_codes(int(x), self.codes())

    @property
    def structure(self) -> Dict[str, Any]:
        """Kind-specific construction data (parent ring, coset representatives, pair codes, ...)"""
        return self._structure.data

    @property
    def is_zero_ring(self) -> bool:
        return self.order == 1

    @property
    def characteristic(self) -> int:
        k, x = 1, self.one
        while x != self.zero:
            x = self.add(x, self.one)
            k += 1
        return k

    @property
    def generators(self) -> Tuple[int, ...]:
        """Codes that generate the ring together with one"""
        if self._generators is None:
            self._generators = self.memo("generators", lambda: greedy_generators(self))
        return self._generators

    def label(self, code: int) -> str:
        return self._structure.label(int(code))

    def labels(self) -> List[str]:
        return [self.label(c) for c in range(self.order)]

    def element(self, code: int) -> "Element":
        return Element(self, int(code))

    def elements(self) -> Iterator["Element"]:
        for code in range(self.order):
            yield Element(self, code)

    def memo(self, key: Any, factory: Callable[[], Any]) -> Any:
        """Thread-safe per-ring cache for derived data"""
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        value = factory()
        with self._lock:
            return self._memo.setdefault(key, value)

    # element classification scans, cached
    def unit_flags(self) -> np.ndarray:
        return self.memo("units", lambda: (self.mul_table == self.one).any(axis=1))

    def zero_divisor_flags(self) -> np.ndarray:
        def scan():
            nonzero = self.codes() != self.zero
            return ((self.mul_table == self.zero) & nonzero[None, :]).any(axis=1)
        return self.memo("zero_divisors", scan)

    def nilpotent_flags(self) -> np.ndarray:
        def scan():
            cur = self.codes()
            for _ in range(max(1, self.order.bit_length())):
                cur = self.mul_codes(cur, cur)
            return cur == self.zero
        return self.memo("nilpotents", scan)

    def idempotent_flags(self) -> np.ndarray:
        return self.memo("idempotents", lambda: self.mul_codes(self.codes(), self.codes()) == self.codes())

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return isinstance(other, Ring) and self._hash == other._hash and self.descriptor == other.descriptor

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Ring({describe(self.descriptor)})"


def greedy_generators(ring: Ring) -> Tuple[int, ...]:
    """Ascending greedy choice of codes whose generated subring is the whole ring"""
    current = subring_closure(ring, [ring.one])
    gens = []
    for code in range(ring.order):
        if current[code]:
            continue
        gens.append(code)
        current = subring_closure(ring, np.flatnonzero(current).tolist() + [code])
        if current.all():
            break
    return tuple(gens)


def subring_closure(ring: Ring, codes: Sequence[int]) -> np.ndarray:
    """Boolean mask of the subring generated by ``codes`` (and one)"""
    member = np.zeros(ring.order, dtype=bool)
    member[[ring.zero, ring.one]] = True
    member[list(codes)] = True
    while True:
        elems = np.flatnonzero(member)
        grown = member.copy()
        grown[ring.add_codes(elems[:, None], elems[None, :]).ravel()] = True
        grown[ring.mul_codes(elems[:, None], elems[None, :]).ravel()] = True
        grown[ring.neg_codes(elems)] = True
        if grown.sum() == member.sum():
            return member
        member = grown


# --- construction ---

_cache_lock = threading.Lock()
_ring_cache: Dict[Tuple[Descriptor, int, int], Ring] = {}


def construct_ring(descriptor: Descriptor, settings: Optional[Settings] = None) -> Ring:
    """Build (or fetch from cache) the ring described by ``descriptor``"""
    settings = settings or get_settings()
    key = (descriptor, settings.max_order, settings.table_cap)
    with _cache_lock:
        cached = _ring_cache.get(key)
    if cached is not None:
        return cached
    predicted = _predicted_order(descriptor)
    if predicted is not None and predicted > settings.max_order:
        raise OrderCapExceeded(predicted, settings.max_order)
    structure = _build_structure(descriptor, settings)
    if structure.order > settings.max_order:
        raise OrderCapExceeded(structure.order, settings.max_order)
    ring = Ring(descriptor, structure, settings)
    logger.debug(f"Constructed {ring!r} of order {ring.order}")
    with _cache_lock:
        return _ring_cache.setdefault(key, ring)


def _build_structure(descriptor: Descriptor, settings: Settings) -> _Structure:
    if isinstance(descriptor, ZMod):
        return _zmod_structure(int(descriptor.n))
    if isinstance(descriptor, GaloisField):
        p, k = int(descriptor.p), int(descriptor.k)
        if not is_prime(p) or k < 1:
            raise RingConstructionError(f"GF({p}^{k}) is not a valid finite field")
        if k == 1:
            return _zmod_structure(p)
        base = construct_ring(ZMod(p), settings)
        return _polyquot_structure(base, irreducible_polynomial(p, k), "t")
    if isinstance(descriptor, PolyQuot):
        base = construct_ring(descriptor.base, settings)
        return _polyquot_structure(base, tuple(int(c) for c in descriptor.modulus), descriptor.var)
    if isinstance(descriptor, Product):
        return _product_structure(construct_ring(descriptor.left, settings),
                                  construct_ring(descriptor.right, settings))
    if isinstance(descriptor, Quotient):
        return _quotient_structure(construct_ring(descriptor.parent, settings), descriptor.ideal)
    if isinstance(descriptor, Subring):
        return _subring_structure(construct_ring(descriptor.parent, settings), descriptor.elements)
    if isinstance(descriptor, PairSubring):
        return _pair_structure(construct_ring(descriptor.left, settings),
                               construct_ring(descriptor.right, settings), descriptor.pairs)
    raise RingConstructionError(f"Malformed ring descriptor {descriptor!r}")


def zmod(n: int) -> Ring:
    return construct_ring(ZMod(n))


def galois_field(q: int) -> Ring:
    p, k = prime_power(q)
    return construct_ring(GaloisField(p, k))


def poly_quot(base: Ring, modulus: Sequence[int], var: str = "t") -> Ring:
    return construct_ring(PolyQuot(base.descriptor, tuple(int(c) for c in modulus), var), base.settings)


def product(left: Ring, right: Ring) -> Ring:
    return construct_ring(Product(left.descriptor, right.descriptor), left.settings)


def product_code(ring: Ring, left_code: int, right_code: int) -> int:
    """Code of (left_code, right_code) in a product ring"""
    return int(left_code) * ring.structure["right"].order + int(right_code)


def verify_axioms(ring: Ring) -> Optional[str]:
    """
    Exhaustively check the commutative ring axioms.

    Returns None when they hold, otherwise a description of the first failing law.
    """
    n = ring.order
    add, mul = ring.add_table, ring.mul_table
    if not np.array_equal(add, add.T):
        return "addition is not commutative"
    if not np.array_equal(mul, mul.T):
        return "multiplication is not commutative"
    codes = np.arange(n)
    for z in codes:
        # (x + y) + z == x + (y + z), (x y) z == x (y z), x (y + z) == x y + x z
        if not np.array_equal(add[add, z], add[codes[:, None], add[codes, z][None, :]]):
            return f"addition is not associative (third operand {ring.label(z)})"
        if not np.array_equal(mul[mul, z], mul[codes[:, None], mul[codes, z][None, :]]):
            return f"multiplication is not associative (third operand {ring.label(z)})"
        if not np.array_equal(mul[codes[:, None], add[codes, z][None, :]], add[mul, mul[codes, z][:, None]]):
            return f"distributivity fails (third operand {ring.label(z)})"
    if not np.all(add[codes, ring.zero] == codes):
        return "zero is not an additive identity"
    if not np.all(mul[codes, ring.one] == codes):
        return "one is not a multiplicative identity"
    if n > 1 and ring.zero == ring.one:
        return "zero equals one in a nonzero ring"
    return None


# --- Elements ---

@dataclass(frozen=True)
class Element:
    ring: Ring
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.ring.order:
            raise BiamalgError(f"code {self.code} is not an element of {self.ring!r}")

    def _other(self, other: "Element") -> int:
        if not isinstance(other, Element):
            raise TypeError(f"cannot combine an element of {self.ring!r} with {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatchError(f"cannot combine elements of {self.ring!r} and {other.ring!r}")
        return other.code

    def __add__(self, other: "Element") -> "Element":
        return Element(self.ring, self.ring.add(self.code, self._other(other)))

    def __mul__(self, other: "Element") -> "Element":
        return Element(self.ring, self.ring.mul(self.code, self._other(other)))

    def __sub__(self, other: "Element") -> "Element":
        return Element(self.ring, self.ring.sub(self.code, self._other(other)))

    def __neg__(self) -> "Element":
        return Element(self.ring, self.ring.neg(self.code))

    def __pow__(self, k: int) -> "Element":
        return Element(self.ring, self.ring.pow(self.code, int(k)))

    def __repr__(self) -> str:
        return self.ring.label(self.code)


def elem_arith(op: str, x: Element, y: Union[Element, int, None] = None) -> Element:
    """Apply ``op`` in {add, mul, neg, sub, pow}; pow takes an integer exponent"""
    if op == "neg":
        return -x
    if op == "pow":
        if y is None:
            raise BiamalgError("pow needs an exponent")
        return x ** (y.code if isinstance(y, Element) else int(y))
    if not isinstance(y, Element):
        raise BiamalgError(f"{op} needs a second element")
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "sub":
        return x - y
    raise BiamalgError(f"unknown operation {op!r}")


@dataclass(frozen=True)
class ElementClass:
    unit: bool
    zero_divisor: bool
    nilpotent: bool
    regular: bool


def classify_element(x: Element) -> ElementClass:
    ring, code = x.ring, x.code
    zero_divisor = bool(ring.zero_divisor_flags()[code])
    return ElementClass(
        unit=bool(ring.unit_flags()[code]),
        zero_divisor=zero_divisor,
        nilpotent=bool(ring.nilpotent_flags()[code]),
        regular=not zero_divisor,
    )
