"""
Immutable bit-sets over element codes.

Ideal element sets, multiplicative sets and unit/regular sets are stored as
Python ints; numpy boolean masks are used for the vectorised scans.
"""
from typing import Iterable, Iterator

import numpy as np


class BitSet:
    __slots__ = ("_mask",)

    def __init__(self, mask: int = 0):
        self._mask = int(mask)

    @classmethod
    def from_codes(cls, codes: Iterable[int]) -> "BitSet":
        mask = 0
        for code in codes:
            mask |= 1 << int(code)
        return cls(mask)

    @classmethod
    def from_bool(cls, flags: np.ndarray) -> "BitSet":
        packed = np.packbits(np.asarray(flags, dtype=bool), bitorder="little")
        return cls(int.from_bytes(packed.tobytes(), "little"))

    @property
    def mask(self) -> int:
        return self._mask

    def to_bool(self, size: int) -> np.ndarray:
        nbytes = (size + 7) // 8
        raw = np.frombuffer(self._mask.to_bytes(nbytes, "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[:size].astype(bool)

    def to_array(self) -> np.ndarray:
        return np.fromiter(iter(self), dtype=np.int64)

    def contains(self, x: int) -> bool:
        return bool((self._mask >> int(x)) & 1)

    def __contains__(self, x: int) -> bool:
        return self.contains(x)

    def add(self, x: int) -> "BitSet":
        return BitSet(self._mask | (1 << int(x)))

    def union(self, other: "BitSet") -> "BitSet":
        return BitSet(self._mask | other._mask)

    def intersection(self, other: "BitSet") -> "BitSet":
        return BitSet(self._mask & other._mask)

    def difference(self, other: "BitSet") -> "BitSet":
        return BitSet(self._mask & ~other._mask)

    def issubset(self, other: "BitSet") -> bool:
        return (self._mask & ~other._mask) == 0

    def issuperset(self, other: "BitSet") -> bool:
        return (other._mask & ~self._mask) == 0

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __le__ = issubset
    __ge__ = issuperset

    def __lt__(self, other: "BitSet") -> bool:
        return self.issubset(other) and self._mask != other._mask

    def __len__(self) -> int:
        return bin(self._mask).count("1")

    def __bool__(self) -> bool:
        return self._mask != 0

    def __iter__(self) -> Iterator[int]:
        m = self._mask
        while m:
            lsb = m & -m
            yield lsb.bit_length() - 1
            m ^= lsb

    def min(self) -> int:
        if not self._mask:
            raise ValueError("min() of an empty BitSet")
        return (self._mask & -self._mask).bit_length() - 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BitSet) and self._mask == other._mask

    def __hash__(self) -> int:
        return hash(self._mask)

    def __repr__(self) -> str:
        return f"BitSet({{{', '.join(str(x) for x in self)}}})"
