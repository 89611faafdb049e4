"""Fock-transform representation of testing and generalized functionals.

A functional is stored by its Fock transform: a sparse map from index sets to
complex numbers (:class:`CoefficientMap`).  For a square-integrable or testing
functional the same map holds its chaos coefficients ``<Z_sigma, xi>``.  The
weighted norms, the canonical pairing and the growth/decay classifiers all act
on these maps.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping

import numpy as np

from .indexset import MAX_LEVEL, IndexSet, enumerate_sets, mask_weights

GENERALIZED = "generalized"
TESTING = "testing"


class CoefficientMap:
    """Immutable sparse map ``IndexSet -> complex``.

    Entries are kept sorted by mask with exact zeros dropped, so two maps
    compare equal exactly when they hold the same nonzero entries.  ``n`` is
    the truncation level: every key lies inside {0, ..., n-1}.  It defaults to
    the smallest level containing all keys and does not take part in equality.
    """

    __slots__ = ("_masks", "_values", "_n")

    def __init__(self, entries: Mapping | None = None, n: int | None = None):
        entries = entries or {}
        masks = np.fromiter((IndexSet.coerce(k) for k in entries), dtype=np.uint64, count=len(entries))
        values = np.fromiter((complex(v) for v in entries.values()), dtype=np.complex128, count=len(entries))
        self._init(masks, values, n)

    def _init(self, masks: np.ndarray, values: np.ndarray, n: int | None) -> None:
        order = np.argsort(masks, kind="stable")
        masks, values = masks[order], values[order]
        if masks.size > 1 and np.any(masks[1:] == masks[:-1]):
            raise ValueError("duplicate index sets in coefficient map")
        keep = values != 0
        masks, values = masks[keep], values[keep]
        level = int(masks[-1]).bit_length() if masks.size else 0
        if n is None:
            n = level
        elif not 0 <= n <= MAX_LEVEL:
            raise ValueError(f"truncation level must be in 0..{MAX_LEVEL}, got {n}")
        elif level > n:
            raise ValueError(f"entry {IndexSet(int(masks[-1]))} lies outside truncation level {n}")
        masks.flags.writeable = False
        values.flags.writeable = False
        self._masks, self._values, self._n = masks, values, int(n)

    @classmethod
    def from_arrays(cls, masks, values, n: int | None = None) -> "CoefficientMap":
        masks = np.array(masks, dtype=np.uint64).ravel()
        values = np.array(values, dtype=np.complex128).ravel()
        if masks.shape != values.shape:
            raise ValueError("masks and values must have the same length")
        obj = cls.__new__(cls)
        obj._init(masks, values, n)
        return obj

    @classmethod
    def from_dense(cls, vector, n: int | None = None) -> "CoefficientMap":
        """Map from a length-2^n vector indexed by mask."""
        vector = np.asarray(vector, dtype=np.complex128).ravel()
        size = vector.size
        if size == 0 or size & (size - 1):
            raise ValueError(f"dense vector length must be a power of two, got {size}")
        level = size.bit_length() - 1
        if n is not None and n != level:
            raise ValueError(f"dense vector of length {size} does not match truncation level {n}")
        nz = np.flatnonzero(vector)
        return cls.from_arrays(nz.astype(np.uint64), vector[nz], level)

    @classmethod
    def from_function(cls, func: Callable[[IndexSet], complex], n: int, max_card: int | None = None) -> "CoefficientMap":
        """Tabulate ``func`` over every subset of {0, ..., n-1}."""
        sets = list(enumerate_sets(n, max_card))
        return cls.from_arrays(sets, [func(s) for s in sets], n)

    @classmethod
    def delta(cls, sigma, n: int | None = None) -> "CoefficientMap":
        """Unit coefficient at ``sigma``: the basis functional ``Z_sigma``."""
        return cls({IndexSet.coerce(sigma): 1.0}, n)

    @classmethod
    def ones(cls, n: int) -> "CoefficientMap":
        return cls.from_dense(np.ones(1 << n), n)

    @classmethod
    def zero(cls, n: int = 0) -> "CoefficientMap":
        return cls({}, n)

    @property
    def n(self) -> int:
        return self._n

    @property
    def masks(self) -> np.ndarray:
        return self._masks

    @property
    def values(self) -> np.ndarray:
        return self._values

    def __len__(self) -> int:
        return self._masks.size

    def __iter__(self) -> Iterator[IndexSet]:
        return (IndexSet(int(m)) for m in self._masks)

    def items(self) -> Iterator[tuple[IndexSet, complex]]:
        return ((IndexSet(int(m)), complex(v)) for m, v in zip(self._masks, self._values))

    def __getitem__(self, sigma) -> complex:
        key = np.uint64(IndexSet.coerce(sigma))
        i = np.searchsorted(self._masks, key)
        if i < self._masks.size and self._masks[i] == key:
            return complex(self._values[i])
        return 0j

    def __contains__(self, sigma) -> bool:
        return self[sigma] != 0

    def support(self) -> frozenset[IndexSet]:
        return frozenset(self)

    def weights(self) -> np.ndarray:
        return mask_weights(self._masks)

    def with_level(self, n: int) -> "CoefficientMap":
        return CoefficientMap.from_arrays(self._masks, self._values, n)

    def to_dense(self, n: int | None = None) -> np.ndarray:
        n = self._n if n is None else n
        if n < self._n and self._masks.size and int(self._masks[-1]).bit_length() > n:
            raise ValueError(f"entries do not fit in truncation level {n}")
        out = np.zeros(1 << n, dtype=np.complex128)
        out[self._masks.astype(np.int64)] = self._values
        return out

    def to_dict(self) -> dict[IndexSet, complex]:
        return dict(self.items())

    def conj(self) -> "CoefficientMap":
        return CoefficientMap.from_arrays(self._masks, self._values.conj(), self._n)

    def is_real(self) -> bool:
        return not np.any(self._values.imag)

    def _combine(self, other: "CoefficientMap", sign: float) -> "CoefficientMap":
        masks = np.union1d(self._masks, other._masks)
        values = np.zeros(masks.size, dtype=np.complex128)
        values[np.searchsorted(masks, self._masks)] += self._values
        values[np.searchsorted(masks, other._masks)] += sign * other._values
        return CoefficientMap.from_arrays(masks, values, max(self._n, other._n))

    def __add__(self, other: "CoefficientMap") -> "CoefficientMap":
        if not isinstance(other, CoefficientMap):
            return NotImplemented
        return self._combine(other, 1.0)

    def __sub__(self, other: "CoefficientMap") -> "CoefficientMap":
        if not isinstance(other, CoefficientMap):
            return NotImplemented
        return self._combine(other, -1.0)

    def __neg__(self) -> "CoefficientMap":
        return CoefficientMap.from_arrays(self._masks, -self._values, self._n)

    def __mul__(self, scalar) -> "CoefficientMap":
        if isinstance(scalar, CoefficientMap) or not np.isscalar(scalar):
            return NotImplemented
        return CoefficientMap.from_arrays(self._masks, self._values * complex(scalar), self._n)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoefficientMap):
            return NotImplemented
        return np.array_equal(self._masks, other._masks) and np.array_equal(self._values, other._values)

    __hash__ = None

    def max_abs_diff(self, other: "CoefficientMap") -> float:
        diff = self - other
        return float(np.abs(diff.values).max()) if len(diff) else 0.0

    def allclose(self, other: "CoefficientMap", atol: float = 1e-12) -> bool:
        return self.max_abs_diff(other) <= atol

    def __repr__(self) -> str:
        shown = ", ".join(f"{s.to_list()}: {v:.6g}" for s, v in list(self.items())[:6])
        more = ", ..." if len(self) > 6 else ""
        return f"CoefficientMap({{{shown}{more}}}, n={self._n})"


def random_coefficients(n: int, rng: np.random.Generator, density: float = 1.0,
                        complex_values: bool = True, scale: float = 1.0) -> CoefficientMap:
    """Random map on {0..n-1}; each set is kept with probability ``density``.

    Real and imaginary parts are uniform on [-scale, scale].
    """
    size = 1 << n
    values = rng.uniform(-scale, scale, size)
    if complex_values:
        values = values + 1j * rng.uniform(-scale, scale, size)
    values = values * (rng.random(size) < density)
    return CoefficientMap.from_dense(values, n)


@dataclass(frozen=True)
class GrowthCertificate:
    """Constants ``(C, p)`` witnessing a growth or decay bound on a truncation.

    ``kind == "generalized"``: ``|F(s)| <= C * weight(s)**p``.
    ``kind == "testing"``:     ``|F(s)| <= C * weight(s)**-p``.
    """

    C: float
    p: float
    truncation_level: int
    kind: str = GENERALIZED

    def holds(self, F: CoefficientMap, rtol: float = 1e-12) -> bool:
        sign = 1.0 if self.kind == GENERALIZED else -1.0
        limit = self.C * F.weights() ** (sign * self.p)
        return bool(np.all(np.abs(F.values) <= limit * (1 + rtol)))


def p_norm(f: CoefficientMap, p: float) -> float:
    """Weighted norm ``sqrt(sum weight(s)**(2p) |f(s)|**2)``.

    Negative ``p`` gives the dual norm of a generalized functional.
    """
    if not len(f):
        return 0.0
    w = f.weights()
    a = np.abs(f.values)
    with np.errstate(over="ignore"):
        scaled = w ** p * a
    if np.all(np.isfinite(scaled)) and scaled.max() < 1e150:
        return float(np.sqrt(np.sum(scaled ** 2)))
    return _log_norm(w, a, p)


def _log_norm(w: np.ndarray, a: np.ndarray, p: float) -> float:
    logs = p * np.log(w) + np.log(a)
    top = logs.max()
    return float(np.exp(top) * np.sqrt(np.sum(np.exp(2 * (logs - top)))))


def dual_norm(F: CoefficientMap, p: float) -> float:
    """Norm of a generalized functional in the dual of the p-space."""
    if p < 0:
        raise ValueError(f"dual norm index must be >= 0, got {p}")
    return p_norm(F, -p)


def inner_product_p(f: CoefficientMap, g: CoefficientMap, p: float) -> complex:
    """``sum weight(s)**(2p) * conj(f(s)) * g(s)``; conjugate-linear in ``f``."""
    common, i, j = np.intersect1d(f.masks, g.masks, assume_unique=True, return_indices=True)
    if not common.size:
        return 0j
    w = mask_weights(common)
    return complex(np.sum(w ** (2 * p) * f.values[i].conj() * g.values[j]))


def pairing(F: CoefficientMap, xi: CoefficientMap) -> complex:
    """Canonical bilinear pairing ``<<Phi, xi>> = sum xi(s) F(s)``.

    ``F`` is the Fock transform of the generalized functional and ``xi`` the
    chaos coefficients of the testing functional.  No conjugation.
    """
    common, i, j = np.intersect1d(F.masks, xi.masks, assume_unique=True, return_indices=True)
    if not common.size:
        return 0j
    return complex(np.sum(F.values[i] * xi.values[j]))


def induced_functional(F: CoefficientMap) -> Callable[[CoefficientMap], complex]:
    """The generalized functional whose Fock transform is ``F``, as a callable."""
    return lambda xi: pairing(F, xi)


def fock_transform(functional: Callable[[CoefficientMap], complex], n: int) -> CoefficientMap:
    """Fock transform of a linear functional by evaluation on each basis vector.

    ``functional`` is applied to ``delta(s)`` for every subset ``s`` of
    {0, ..., n-1}; cost is 2^n calls.
    """
    sets = list(enumerate_sets(n))
    return CoefficientMap.from_arrays(sets, [functional(CoefficientMap.delta(s, n)) for s in sets], n)


def norming_element(F: CoefficientMap, p: float) -> CoefficientMap:
    """Unit vector of the p-space on which ``F`` attains its dual norm.

    Coefficients are ``weight**(-2p) * conj(F)``, rescaled to unit p-norm.
    """
    if not len(F):
        raise ValueError("the zero functional has no norming element")
    xi = CoefficientMap.from_arrays(F.masks, F.weights() ** (-2 * p) * F.values.conj(), F.n)
    return xi * (1.0 / p_norm(xi, p))


def _check_grid(F: CoefficientMap, p_grid: Iterable[float]) -> list[float]:
    grid = sorted(float(p) for p in p_grid)
    if not grid:
        raise ValueError("p_grid must be nonempty")
    if grid[0] < 0:
        raise ValueError(f"growth exponents must be >= 0, got {grid[0]}")
    if not len(F):
        raise ValueError("cannot classify the zero map")
    return grid


def classify_growth(F: CoefficientMap, p_grid: Iterable[float]) -> list[GrowthCertificate]:
    """Tightest ``C`` with ``|F(s)| <= C weight(s)**p`` on ``F``'s truncation, per ``p``.

    Certificates come back sorted by ``p``; their constants are nonincreasing.
    The constants are exhaustive maxima over the truncation and say nothing
    about subsets beyond it.
    """
    grid = _check_grid(F, p_grid)
    w = F.weights()
    a = np.abs(F.values)
    return [GrowthCertificate(float(np.max(a * w ** -p)), p, F.n, GENERALIZED) for p in grid]


def classify_decay(F: CoefficientMap, p_grid: Iterable[float]) -> list[GrowthCertificate]:
    """Tightest ``C`` with ``|F(s)| <= C weight(s)**-p`` on ``F``'s truncation, per ``p``."""
    grid = _check_grid(F, p_grid)
    w = F.weights()
    a = np.abs(F.values)
    return [GrowthCertificate(float(np.max(a * w ** p)), p, F.n, TESTING) for p in grid]


def construct_testing(F: CoefficientMap) -> CoefficientMap:
    """Chaos coefficients of the testing functional ``eta`` with Fock transform ``F``.

    ``eta`` acts through the L2 inner product, ``xi -> <eta, xi>``, so its
    coefficients are the complex conjugates of ``F``.
    """
    return F.conj()


def testing_transform(eta: CoefficientMap) -> CoefficientMap:
    """Fock transform ``s -> <eta, Z_s>`` of the functional ``xi -> <eta, xi>``."""
    return eta.conj()


def partial_sums(f: CoefficientMap) -> Iterator[CoefficientMap]:
    """Partial sums of the chaos expansion, adding terms by increasing weight.

    Ties are broken by mask; the last partial sum equals ``f``.
    """
    w = f.weights()
    order = np.lexsort((f.masks, w))
    for k in range(len(f) + 1):
        idx = order[:k]
        yield CoefficientMap.from_arrays(f.masks[idx], f.values[idx], f.n)


@dataclass(frozen=True)
class ProductFunctional:
    """Fock transform of product form ``F(s) = scale * prod_{k in s} factors[k]``.

    Exponential-type functionals such as ``sqrt(weight)`` have this shape.
    Their weighted norms and growth constants factor over coordinates, so
    they are available in closed form at truncation levels far beyond what
    a materialized :class:`CoefficientMap` allows.
    """

    factors: tuple[complex, ...]
    scale: complex = 1.0

    @classmethod
    def sqrt_weight(cls, n: int) -> "ProductFunctional":
        return cls(tuple(np.sqrt(np.arange(1, n + 1, dtype=float))))

    @classmethod
    def weight_power(cls, n: int, s: float) -> "ProductFunctional":
        return cls(tuple(np.arange(1, n + 1, dtype=float) ** s))

    @property
    def n(self) -> int:
        return len(self.factors)

    def __call__(self, sigma) -> complex:
        sigma = IndexSet.coerce(sigma)
        if sigma.max_level() > self.n:
            return 0j
        return complex(self.scale * np.prod([self.factors[k] for k in sigma]))

    def to_map(self) -> CoefficientMap:
        if self.n > 24:
            raise ValueError(f"refusing to materialize 2^{self.n} coefficients")
        dense = np.full(1 << self.n, complex(self.scale))
        for k, f in enumerate(self.factors):
            dense[1 << k : 1 << (k + 1)] = dense[: 1 << k] * f
        return CoefficientMap.from_dense(dense, self.n)

    def _abs_factors(self) -> tuple[np.ndarray, np.ndarray]:
        return np.abs(np.asarray(self.factors, dtype=complex)), np.arange(1, self.n + 1, dtype=float)

    def p_norm(self, p: float) -> float:
        a, w = self._abs_factors()
        return float(abs(self.scale) * np.exp(0.5 * np.sum(np.log1p(w ** (2 * p) * a ** 2))))

    def dual_norm(self, p: float) -> float:
        if p < 0:
            raise ValueError(f"dual norm index must be >= 0, got {p}")
        return self.p_norm(-p)

    def growth_certificate(self, p: float) -> GrowthCertificate:
        """Exact maximum of ``|F(s)| weight(s)**-p`` over the truncation."""
        a, w = self._abs_factors()
        return GrowthCertificate(float(abs(self.scale) * np.prod(np.maximum(1.0, a * w ** -p))), p, self.n)
