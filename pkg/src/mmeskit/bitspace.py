"""Bit-level foundation for n-qubit basis indexing and exact combinatorics.

Features:
- basis labels k in X^n = {0,1}^n encoded as n-bit integers, with qubit i
  (1-based, i in {1..n}) occupying bit position n - i, so the binary string
  k_1 k_2 ... k_n reads literally as the numeral of the integer
- subsystem masks (QubitMask) with canonicalizing bipartition constructor
- enumeration of balanced bipartitions in deterministic ascending order
- extraction / embedding of sub-indices between X^A and X^n
- exact binomial / multinomial coefficients with the zero-stipulation
  convention for out-of-range arguments

All values are plain Python integers (arbitrary precision); exact rational
weights built on top of them live in `fractions.Fraction`.  Floating point
enters only at the numerical evaluation boundary of the higher modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from fractions import Fraction
from typing import Iterator, Sequence, Union

import numpy as np

__all__ = [
    "MAX_QUBITS",
    "MAX_COUNT_QUBITS",
    "BasisIndex",
    "Rational",
    "QubitMask",
    "weight",
    "xor",
    "and_",
    "or_",
    "complement",
    "balanced_bipartitions",
    "extract",
    "embed",
    "embed_table",
    "submasks",
    "masks_of_weight",
    "binomial",
    "multinomial",
    "as_mask",
]

# State vectors are capped at 2^24 complex amplitudes; pure counting
# operations accept up to 64 qubits via big integers.
MAX_QUBITS = 24
MAX_COUNT_QUBITS = 64

# An n-bit basis label; the qubit count n travels alongside (in a QubitMask,
# a state, or an explicit argument), not inside the integer.
BasisIndex = int

# Exact rational values: reduced Fractions, or plain ints where integral.
Rational = Union[int, Fraction]


def _check_n(n: int, limit: int = MAX_COUNT_QUBITS) -> None:
    if not 1 <= n <= limit:
        raise ValueError(f"qubit count must be in [1, {limit}], got {n}")


def weight(k: BasisIndex) -> int:
    """Hamming weight |k|, the number of 1 bits of the basis label."""
    if k < 0:
        raise ValueError("basis index must be nonnegative")
    return k.bit_count()


def xor(a: BasisIndex, b: BasisIndex) -> BasisIndex:
    """Componentwise sum mod 2 (XOR) of two basis labels."""
    return a ^ b


def and_(a: BasisIndex, b: BasisIndex) -> BasisIndex:
    """Componentwise product (AND) of two basis labels."""
    return a & b


def or_(a: BasisIndex, b: BasisIndex) -> BasisIndex:
    """Componentwise a + b + a*b mod 2 (OR) of two basis labels."""
    return a | b


def complement(mask: int, n: int) -> int:
    """All-qubits mask with the bits of `mask` cleared."""
    _check_n(n)
    return ((1 << n) - 1) ^ mask


@dataclass(frozen=True)
class QubitMask:
    """Subset A of the qubit set S = {1..n}, stored as an n-bit mask.

    Qubit i corresponds to bit n - i, matching the BasisIndex convention,
    so extract/embed preserve the left-to-right order of the paper-style
    binary strings.
    """

    mask: int
    n: int

    def __post_init__(self) -> None:
        _check_n(self.n)
        if not 0 <= self.mask < (1 << self.n):
            raise ValueError(f"mask {self.mask:#b} out of range for n={self.n}")

    @classmethod
    def from_qubits(cls, qubits: Sequence[int], n: int) -> "QubitMask":
        """Mask of the given 1-based qubit labels."""
        _check_n(n)
        mask = 0
        for i in qubits:
            if not 1 <= i <= n:
                raise ValueError(f"qubit label {i} out of range for n={n}")
            bit = 1 << (n - i)
            if mask & bit:
                raise ValueError(f"duplicate qubit label {i}")
            mask |= bit
        return cls(mask, n)

    @classmethod
    def bipartition(cls, mask_or_qubits: Union[int, Sequence[int]], n: int) -> "QubitMask":
        """Canonical bipartition mask: the smaller party of (A, complement).

        If the given subset has more than n/2 qubits it is replaced by its
        complement, preserving the convention n_A <= n - n_A.  The result is
        a valid nonempty proper subset.
        """
        if isinstance(mask_or_qubits, int):
            out = cls(mask_or_qubits, n)
        else:
            out = cls.from_qubits(mask_or_qubits, n)
        if out.size > n - out.size:
            out = out.complement()
        if out.size == 0 or out.size == n:
            raise ValueError("bipartition requires a nonempty proper subset")
        return out

    @property
    def size(self) -> int:
        """Number of qubits n_A in the subset."""
        return self.mask.bit_count()

    def qubits(self) -> tuple[int, ...]:
        """1-based qubit labels in ascending order."""
        return tuple(i for i in range(1, self.n + 1) if self.mask >> (self.n - i) & 1)

    def complement(self) -> "QubitMask":
        return QubitMask(complement(self.mask, self.n), self.n)

    def __repr__(self) -> str:
        return f"QubitMask(qubits={self.qubits()}, n={self.n})"


def as_mask(A: Union[QubitMask, int], n: int) -> int:
    """Normalize a QubitMask or raw integer mask to a validated integer."""
    if isinstance(A, QubitMask):
        if A.n != n:
            raise ValueError(f"mask is for n={A.n}, expected n={n}")
        return A.mask
    if not 0 <= A < (1 << n):
        raise ValueError(f"mask {A:#b} out of range for n={n}")
    return A


def balanced_bipartitions(n: int) -> list[QubitMask]:
    """All subsets with floor(n/2) qubits, ascending by qubit-label tuple.

    The list has C(n, floor(n/2)) entries; for n=2 it is [{1}, {2}].
    Ascending label order ({1,2} before {1,3} before {2,3}) is the
    deterministic enumeration order used by every averaging loop.
    """
    if n < 2:
        raise ValueError(f"balanced bipartitions require n >= 2, got {n}")
    _check_n(n)
    half = n // 2
    return [QubitMask.from_qubits(c, n) for c in combinations(range(1, n + 1), half)]


def extract(k: BasisIndex, A: Union[QubitMask, int], n: int | None = None) -> BasisIndex:
    """Sub-index k_A: the bits of k at the positions of A, order preserved.

    The lowest set bit of the mask maps to bit 0 of the result, so the
    qubit order of the binary string is preserved (qubit labels ascending
    left to right).  Inverse of `embed` on its image.  When n is given the
    mask and k are checked against the n-bit range.
    """
    mask = as_mask(A, n) if n is not None else (A.mask if isinstance(A, QubitMask) else A)
    if n is not None and not 0 <= k < (1 << n):
        raise ValueError(f"basis index {k} out of range for n={n}")
    out = 0
    out_bit = 0
    while mask:
        low = mask & -mask
        if k & low:
            out |= 1 << out_bit
        out_bit += 1
        mask &= mask - 1
    return out


def embed(l: BasisIndex, A: Union[QubitMask, int], n: int | None = None) -> BasisIndex:
    """Inject l in X^A into X^n: bits of l placed at the positions of A.

    Bit 0 of l lands on the lowest set bit of the mask; all other bits of
    the result are zero.  Satisfies extract(embed(l, A), A) == l.  When n
    is given the mask is checked against the n-bit range.
    """
    mask = as_mask(A, n) if n is not None else (A.mask if isinstance(A, QubitMask) else A)
    if l < 0 or l >= (1 << mask.bit_count()):
        raise ValueError(f"sub-index {l} out of range for a {mask.bit_count()}-qubit subset")
    out = 0
    while l:
        low = mask & -mask
        if l & 1:
            out |= low
        l >>= 1
        mask &= mask - 1
    return out


def embed_table(A: Union[QubitMask, int]) -> np.ndarray:
    """Vector of embed(l, A) for all l in X^A, as an index array."""
    mask = A.mask if isinstance(A, QubitMask) else A
    bits = []
    m = mask
    while m:
        bits.append(m & -m)
        m &= m - 1
    size = 1 << len(bits)
    idx = np.arange(size, dtype=np.intp)
    out = np.zeros(size, dtype=np.intp)
    for j, low in enumerate(bits):
        out += ((idx >> j) & 1) * low
    return out


def submasks(mask: int) -> Iterator[int]:
    """All submasks of `mask`, including 0 and `mask` itself, descending."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def masks_of_weight(w: int, n: int) -> Iterator[int]:
    """All n-bit masks of Hamming weight w, ascending as integers."""
    _check_n(n)
    if w < 0 or w > n:
        return
    if w == 0:
        yield 0
        return
    v = (1 << w) - 1
    limit = 1 << n
    while v < limit:
        yield v
        c = v & -v
        r = v + c
        v = r | (((v ^ r) >> 2) // c)


def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k) with the zero-stipulation convention.

    Returns 0 whenever the arguments fall outside 0 <= k <= n (including
    negative n or k), instead of raising.
    """
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(n: int, parts: Sequence[int]) -> int:
    """Multinomial coefficient n! / (p_1! ... p_r! (n - sum p)!).

    Returns 0 when any part is negative or the parts exceed n.
    """
    if n < 0:
        return 0
    rest = n
    out = 1
    for p in parts:
        if p < 0 or p > rest:
            return 0
        out *= math.comb(rest, p)
        rest -= p
    return out
