"""Finite index sets, the weight function and its series.

An index set is a finite subset of {0, 1, ..., 63} stored as a 64-bit mask:
bit ``k`` is set exactly when ``k`` belongs to the set.  The weight of a set
is the product of ``k + 1`` over its elements (1 for the empty set), which
generates the scale of weighted norms used everywhere else in the package.

Series over all subsets of {0, ..., n-1} are truncations of sums over every
finite subset of the naturals; each one here reports its truncation level and,
where it matters, a rigorous interval for the infinite sum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np
from scipy.special import zeta

MAX_INDEX = 63
MAX_LEVEL = 64
# Exact-integer weights up to this cardinality; floats beyond.
EXACT_CARD = 15
MAX_DENSE_LEVEL = 30

# Block width for series sums enumerated block by block.
_BLOCK_BITS = 16


class IndexSet(int):
    """A finite subset of {0, ..., 63}, encoded as its bitmask.

    Behaves as a plain ``int`` (hashable, usable as an array index) but adds
    set semantics::

        >>> s = IndexSet.of(1, 2)
        >>> int(s), len(s), sorted(s)
        (6, 2, [1, 2])
    """

    __slots__ = ()

    def __new__(cls, bits: int = 0) -> "IndexSet":
        bits = int(bits)
        if bits < 0 or bits >> MAX_LEVEL:
            raise ValueError(f"index set mask must fit in 64 bits, got {bits:#x}")
        return super().__new__(cls, bits)

    @classmethod
    def of(cls, *elements: int) -> "IndexSet":
        return cls.from_elements(elements)

    @classmethod
    def from_elements(cls, elements: Iterable[int]) -> "IndexSet":
        bits = 0
        for k in elements:
            k = int(k)
            if not 0 <= k <= MAX_INDEX:
                raise ValueError(f"index {k} outside 0..{MAX_INDEX}")
            bits |= 1 << k
        return cls(bits)

    @classmethod
    def coerce(cls, value) -> "IndexSet":
        """Accept an ``IndexSet``, a mask ``int`` or an iterable of elements."""
        if isinstance(value, IndexSet):
            return value
        if isinstance(value, (int, np.integer)):
            return cls(int(value))
        return cls.from_elements(value)

    @property
    def bits(self) -> int:
        return int(self)

    def __len__(self) -> int:
        return bin(self).count("1")

    def __iter__(self) -> Iterator[int]:
        bits, k = int(self), 0
        while bits:
            if bits & 1:
                yield k
            bits >>= 1
            k += 1

    def __contains__(self, k: object) -> bool:
        return isinstance(k, (int, np.integer)) and 0 <= k <= MAX_INDEX and bool(self >> int(k) & 1)

    def __or__(self, other: int) -> "IndexSet":
        return IndexSet(int(self) | int(other))

    def __and__(self, other: int) -> "IndexSet":
        return IndexSet(int(self) & int(other))

    def __sub__(self, other: int) -> "IndexSet":
        return IndexSet(int(self) & ~int(other))

    def __xor__(self, other: int) -> "IndexSet":
        return IndexSet(int(self) ^ int(other))

    __ror__ = __or__
    __rand__ = __and__

    def issubset(self, other: int) -> bool:
        return int(self) & ~int(other) == 0

    def isdisjoint(self, other: int) -> bool:
        return int(self) & int(other) == 0

    def max_level(self) -> int:
        """Smallest ``n`` with this set inside {0, ..., n-1}."""
        return int(self).bit_length()

    def to_list(self) -> list[int]:
        return list(self)

    def to_hex(self) -> str:
        return f"{int(self):#x}"

    @classmethod
    def from_hex(cls, text: str) -> "IndexSet":
        return cls(int(text, 16))

    def __repr__(self) -> str:
        return f"IndexSet({{{', '.join(map(str, self))}}})"

    __str__ = __repr__


def cardinality(sigma) -> int:
    return len(IndexSet.coerce(sigma))


def weight(sigma) -> int | float:
    """Weight of ``sigma``: the product of ``k + 1`` over its elements.

    Exact ``int`` for sets of at most 15 elements, ``float`` otherwise.
    """
    sigma = IndexSet.coerce(sigma)
    if len(sigma) <= EXACT_CARD:
        return math.prod(k + 1 for k in sigma)
    return math.prod(float(k + 1) for k in sigma)


def enumerate_sets(n: int, max_card: int | None = None) -> Iterator[IndexSet]:
    """Yield every subset of {0, ..., n-1} in ascending mask order.

    With ``max_card`` only subsets of at most that many elements are produced.
    """
    _check_level(n)
    if max_card is None:
        for bits in range(1 << n):
            yield IndexSet(bits)
        return
    for bits in range(1 << n):
        if bin(bits).count("1") <= max_card:
            yield IndexSet(bits)


def popcounts(n: int) -> np.ndarray:
    """Cardinalities of all 2^n subsets, indexed by mask."""
    _check_level(n, MAX_DENSE_LEVEL)
    card = np.zeros(1 << n, dtype=np.int64)
    for k in range(n):
        card[1 << k : 1 << (k + 1)] = card[: 1 << k] + 1
    return card


def dense_weights(n: int, offset: int = 0) -> np.ndarray:
    """Weights of all 2^n subsets as float64, indexed by mask.

    ``offset`` shifts the ground set to {offset, ..., offset + n - 1} while
    keeping mask indexing local to the block.
    """
    _check_level(n, MAX_DENSE_LEVEL)
    w = np.ones(1 << n, dtype=np.float64)
    for k in range(n):
        w[1 << k : 1 << (k + 1)] = w[: 1 << k] * (offset + k + 1)
    return w


def mask_weights(masks: np.ndarray) -> np.ndarray:
    """Float weights for an array of arbitrary 64-bit masks."""
    masks = np.asarray(masks, dtype=np.uint64)
    w = np.ones(masks.shape, dtype=np.float64)
    remaining = masks.copy()
    k = 0
    while remaining.any():
        hit = (remaining & np.uint64(1)).astype(bool)
        w[hit] *= k + 1
        remaining >>= np.uint64(1)
        k += 1
    return w


def mask_popcounts(masks: np.ndarray) -> np.ndarray:
    masks = np.asarray(masks, dtype=np.uint64)
    card = np.zeros(masks.shape, dtype=np.int64)
    remaining = masks.copy()
    while remaining.any():
        card += (remaining & np.uint64(1)).astype(np.int64)
        remaining >>= np.uint64(1)
    return card


@dataclass(frozen=True)
class SeriesSum:
    """A truncated positive series with an enclosure of its infinite sum.

    ``partial`` is the sum over subsets of {0, ..., n-1}; the full series lies
    in ``[partial, upper]``.  ``bound`` is the classical closed-form majorant
    ``exp(zeta(exponent))``.
    """

    exponent: float
    n: int
    partial: float
    upper: float
    bound: float

    @property
    def interval(self) -> tuple[float, float]:
        return (self.partial, self.upper)

    @property
    def tail(self) -> float:
        return self.upper - self.partial

    def contains(self, value: float, rtol: float = 1e-12) -> bool:
        return self.partial * (1 - rtol) <= value <= self.upper * (1 + rtol)


def _blocked_inverse_power_sum(p: float, n: int) -> float:
    # sum over subsets of {0..n-1} of weight**-p, enumerated block by block:
    # a subset splits uniquely into pieces from disjoint blocks and the weight
    # is multiplicative over that split, so the block sums multiply.
    total = 1.0
    start = 0
    while start < n:
        width = min(_BLOCK_BITS, n - start)
        block = dense_weights(width, offset=start) ** (-p)
        total *= math.fsum(block)
        start += width
    return total


def zeta_tail_bound(p: float, n: int) -> float:
    """Upper bound for sum_{m > n} m**-p, p > 1.

    For n >= 1 uses convexity of x**-p (each term is at most its integral over
    [m - 1/2, m + 1/2]); for n = 0 adds the first term explicitly.
    """
    if n <= 0:
        return 1.0 + 1.5 ** (1 - p) / (p - 1)
    return (n + 0.5) ** (1 - p) / (p - 1)


def weight_series(p: float, n: int) -> SeriesSum:
    """Truncated ``sum(weight(s)**-p)`` over subsets of {0..n-1}, with tail interval."""
    if not p > 1:
        raise ValueError(f"series of weight**-p needs p > 1, got p={p}")
    _check_level(n)
    partial = _blocked_inverse_power_sum(p, n)
    # remaining factor prod_{m>n}(1 + m**-p) <= exp(sum_{m>n} m**-p)
    upper = partial * math.exp(zeta_tail_bound(p, n))
    bound = math.exp(float(zeta(p, 1)))
    return SeriesSum(exponent=p, n=n, partial=partial, upper=upper, bound=bound)


def weight_series_sum(p: float, n: int) -> float:
    return weight_series(p, n).partial


def hs_series(p: float, q: float, n: int) -> SeriesSum:
    """Squared Hilbert-Schmidt norm of the inclusion of the q-space into the p-space."""
    if not 2 * (q - p) > 1:
        raise ValueError(f"Hilbert-Schmidt sum needs 2(q - p) > 1, got p={p}, q={q}")
    return weight_series(2 * (q - p), n)


def hs_sum(p: float, q: float, n: int) -> float:
    return hs_series(p, q, n).partial


def _check_level(n: int, limit: int = MAX_INDEX) -> None:
    if not 0 <= n <= limit:
        raise ValueError(f"truncation level must be in 0..{limit}, got {n}")
