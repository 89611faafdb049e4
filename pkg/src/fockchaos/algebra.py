"""Convolution and Wick product of generalized functionals.

Both products act on Fock transforms.  Convolution is the pointwise product;
the Wick product is the subset convolution

    (F <> G)(s) = sum over t subset of s of F(t) G(s - t).

``wick_naive`` evaluates that sum directly.  ``wick_fast`` uses the ranked
zeta transform: split each input by cardinality, take subset sums, multiply
rank-wise as polynomials in the cardinality, and invert with the Moebius
transform.  Cost O(n^2 2^n) time and O(n 2^n) memory.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .chaos import (
    GENERALIZED,
    CoefficientMap,
    GrowthCertificate,
    ProductFunctional,
    classify_growth,
    dual_norm,
    random_coefficients,
)
from .indexset import hs_series, popcounts

NAIVE_MAX_LEVEL = 20
FAST_MAX_LEVEL = 24
DEFAULT_MEMORY_LIMIT = 2 << 30
# Dispatcher threshold: naive below this truncation level, fast at or above.
WICK_NAIVE_BELOW = 8


def _common_level(F: CoefficientMap, G: CoefficientMap, n: int | None) -> int:
    level = max(F.n, G.n)
    if n is None:
        return level
    if n < level:
        raise ValueError(f"inputs live at truncation level {level} > {n}")
    return n


def convolve(F: CoefficientMap, G: CoefficientMap) -> CoefficientMap:
    """Pointwise product ``(F * G)(s) = F(s) G(s)``."""
    common, i, j = np.intersect1d(F.masks, G.masks, assume_unique=True, return_indices=True)
    return CoefficientMap.from_arrays(common, F.values[i] * G.values[j], max(F.n, G.n))


def wick_naive(F: CoefficientMap, G: CoefficientMap, n: int | None = None) -> CoefficientMap:
    """Wick product by direct summation.

    Sparse inputs are combined pair by pair (each disjoint pair ``(t, u)``
    contributes to ``t | u``); dense ones by walking the submasks of every
    output set, whichever touches fewer terms.  Both evaluate the same sum.
    """
    n = _common_level(F, G, n)
    if n > NAIVE_MAX_LEVEL:
        raise ValueError(f"naive Wick product costs 3^n; n={n} exceeds {NAIVE_MAX_LEVEL}, use wick_fast")
    out = np.zeros(1 << n, dtype=np.complex128)
    if len(F) * len(G) <= 3 ** n:
        gm = G.masks.astype(np.int64)
        for t, ft in zip(F.masks.astype(np.int64), F.values):
            ok = (gm & t) == 0
            np.add.at(out, gm[ok] | t, ft * G.values[ok])
    else:
        f = F.to_dense(n).tolist()
        g = G.to_dense(n).tolist()
        for s in range(1 << n):
            acc = 0j
            t = s
            while True:
                acc += f[t] * g[s ^ t]
                if t == 0:
                    break
                t = (t - 1) & s
            out[s] = acc
    return CoefficientMap.from_dense(out, n)


def _ranked_zeta(vec: np.ndarray, card: np.ndarray, n: int, dtype) -> np.ndarray:
    ranked = np.zeros((n + 1, 1 << n), dtype=dtype)
    ranked[card, np.arange(1 << n)] = vec
    h = 1
    for _ in range(n):
        v = ranked.reshape(n + 1, -1, 2, h)
        v[:, :, 1, :] += v[:, :, 0, :]
        h *= 2
    return ranked


def _moebius(ranked: np.ndarray, n: int) -> None:
    h = 1
    for _ in range(n):
        v = ranked.reshape(n + 1, -1, 2, h)
        v[:, :, 1, :] -= v[:, :, 0, :]
        h *= 2


def wick_fast(F: CoefficientMap, G: CoefficientMap, n: int | None = None,
              memory_limit: int = DEFAULT_MEMORY_LIMIT) -> CoefficientMap:
    """Wick product by ranked zeta transform, pointwise rank products and Moebius inversion."""
    n = _common_level(F, G, n)
    if n > FAST_MAX_LEVEL:
        raise ValueError(f"fast Wick product supports n <= {FAST_MAX_LEVEL}, got {n}")
    real = F.is_real() and G.is_real()
    dtype = np.float64 if real else np.complex128
    needed = 3 * (n + 1) * (1 << n) * np.dtype(dtype).itemsize
    if needed > memory_limit:
        raise MemoryError(f"fast Wick product at n={n} needs {needed} bytes, limit is {memory_limit}")
    f, g = F.to_dense(n), G.to_dense(n)
    if real:
        f, g = f.real, g.real
    card = popcounts(n)
    fz = _ranked_zeta(f, card, n, dtype)
    gz = _ranked_zeta(g, card, n, dtype)
    hz = np.zeros_like(fz)
    # fixed summation order i = 0..k keeps results independent of scheduling
    for k in range(n + 1):
        for i in range(k + 1):
            hz[k] += fz[i] * gz[k - i]
    del fz, gz
    _moebius(hz, n)
    return CoefficientMap.from_dense(hz[card, np.arange(1 << n)], n)


def wick(F: CoefficientMap, G: CoefficientMap, n: int | None = None, naive_below: int = WICK_NAIVE_BELOW) -> CoefficientMap:
    """Wick product, naive for small truncations and fast otherwise."""
    n = _common_level(F, G, n)
    if n < naive_below:
        return wick_naive(F, G, n)
    return wick_fast(F, G, n)


@dataclass(frozen=True)
class NormEstimateReport:
    """Dual norm of a certified functional against its growth-based bound.

    ``bound`` uses the weight series truncated at level ``n``; ``bound_upper``
    replaces it by the upper end of its enclosure of the infinite series.
    """

    C: float
    p: float
    q: float
    n: int
    norm: float
    bound: float
    bound_upper: float

    @property
    def passed(self) -> bool:
        return self.norm <= self.bound_upper

    @property
    def gap(self) -> float:
        """Relative slack ``bound / norm - 1`` of the truncated bound."""
        return self.bound / self.norm - 1 if self.norm else float("inf")


def _check_q(p: float, q: float) -> None:
    if not q > p + 0.5:
        raise ValueError(f"norm estimate needs q > p + 1/2, got p={p}, q={q}")


def verify_norm_estimate(F, C: float, p: float, q: float) -> NormEstimateReport:
    """Compare the dual q-norm of ``F`` with ``C * sqrt(sum weight**-2(q-p))``.

    ``F`` is a :class:`CoefficientMap` or a :class:`ProductFunctional` and
    ``(C, p)`` must be a growth certificate for it on its truncation.
    """
    _check_q(p, q)
    if isinstance(F, ProductFunctional):
        if F.growth_certificate(p).C > C * (1 + 1e-12):
            raise ValueError(f"(C={C}, p={p}) is not a growth certificate for this functional")
        norm = F.dual_norm(q)
    else:
        if not GrowthCertificate(C, p, F.n).holds(F):
            raise ValueError(f"(C={C}, p={p}) is not a growth certificate for this functional")
        norm = dual_norm(F, q)
    series = hs_series(p, q, F.n)
    return NormEstimateReport(C, p, q, F.n, norm, C * np.sqrt(series.partial), C * np.sqrt(series.upper))


def wick_growth_bound(F: CoefficientMap, G: CoefficientMap, p: float, q: float) -> GrowthCertificate:
    """Growth certificate ``(C, q)`` for ``F <> G`` from the dual p-norms of the factors.

    ``C = |F|_{-p} |G|_{-p} sqrt(S)`` where ``S`` is the upper end of the
    enclosure of ``sum weight**-2(q-p)``.
    """
    _check_q(p, q)
    n = max(F.n, G.n)
    series = hs_series(p, q, n)
    C = dual_norm(F, p) * dual_norm(G, p) * float(np.sqrt(series.upper))
    return GrowthCertificate(C, q, n, GENERALIZED)


@dataclass(frozen=True)
class LawsReport:
    n: int
    trials: int
    seed: int
    tol: float
    errors: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(e < self.tol for e in self.errors.values())


def algebra_laws_check(n: int, trials: int, seed: int, tol: float = 1e-10) -> LawsReport:
    """Check the algebra laws of both products on random triples.

    Commutativity, associativity and distributivity over addition for the
    convolution and the Wick product, plus their units (the constant map for
    convolution, the vacuum delta for the Wick product).  Errors are maxima of
    entrywise absolute differences.
    """
    if not 0 <= n <= 10:
        raise ValueError(f"laws check supports n <= 10, got {n}")
    rng = np.random.default_rng(seed)
    one = CoefficientMap.ones(n)
    vacuum = CoefficientMap.delta(0, n)
    errors = dict.fromkeys([
        "conv_commutative", "conv_associative", "conv_distributive", "conv_unit",
        "wick_commutative", "wick_associative", "wick_distributive", "wick_unit",
    ], 0.0)

    def record(name: str, a: CoefficientMap, b: CoefficientMap) -> None:
        errors[name] = max(errors[name], a.max_abs_diff(b))

    for _ in range(trials):
        F, G, H = (random_coefficients(n, rng, density=0.5) for _ in range(3))
        record("conv_commutative", convolve(F, G), convolve(G, F))
        record("conv_associative", convolve(convolve(F, G), H), convolve(F, convolve(G, H)))
        record("conv_distributive", convolve(F, G + H), convolve(F, G) + convolve(F, H))
        record("conv_unit", convolve(F, one), F)
        FG = wick(F, G, n)
        record("wick_commutative", FG, wick(G, F, n))
        record("wick_associative", wick(FG, H, n), wick(F, wick(G, H, n), n))
        record("wick_distributive", wick(F, G + H, n), FG + wick(F, H, n))
        record("wick_unit", wick(vacuum, F, n), F)
    return LawsReport(n, trials, seed, tol, errors)


def measured_growth(F: CoefficientMap, q: float) -> float:
    """Exhaustive growth constant of ``F`` at exponent ``q`` (0 for the zero map)."""
    if not len(F):
        return 0.0
    return classify_growth(F, [q])[0].C
