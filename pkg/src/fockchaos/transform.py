"""Chaos analysis and synthesis on truncated sample spaces.

``analyze`` maps the values of a functional on the 2^n atoms to its chaos
coefficients ``<Z_sigma, xi> = E[Z_sigma xi]``; ``synthesize`` rebuilds the
atom values from coefficients.  Both run in O(n 2^n) as n tensor stages, one
per coordinate.  The symmetric noise is routed through the unnormalized fast
Walsh-Hadamard butterfly :func:`fwht`, scaled by 2^-n.

Vectors are indexed by mask: atoms by outcome mask, coefficients by index-set
mask, so the Walsh correspondence needs no permutation.  A set outcome bit
means the increment took its upper value +1, while the Walsh kernel sends a
set bit to -1; the two differ by the sign ``(-1)**|sigma|``, applied by the
dispatcher.
"""
from __future__ import annotations

import numpy as np

from .chaos import CoefficientMap
from .indexset import popcounts
from .martingale import NoiseModel, atom_probabilities, basis_matrix

NAIVE_MAX_LEVEL = 12


def _level(size: int) -> int:
    if size == 0 or size & (size - 1):
        raise ValueError(f"length must be a power of two, got {size}")
    return size.bit_length() - 1


def fwht(values, out: np.ndarray | None = None) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform, ``(x, y) -> (x + y, x - y)`` per butterfly.

    Works on a copy unless ``out`` is given, in which case ``out`` is
    overwritten with the input and transformed in place.  Applying it twice
    multiplies by the length.
    """
    values = np.asarray(values)
    n = _level(values.size)
    dtype = np.result_type(values.dtype, np.float64)
    if out is None:
        out = np.array(values, dtype=dtype).ravel()
    else:
        out[...] = values.ravel()
    h = 1
    for _ in range(n):
        v = out.reshape(-1, 2, h)
        lo = v[:, 0, :].copy()
        v[:, 0, :] += v[:, 1, :]
        v[:, 1, :] = lo - v[:, 1, :]
        h *= 2
    return out


def _walsh_sign(n: int) -> np.ndarray:
    return 1.0 - 2.0 * (popcounts(n) & 1)


def _stages(vec: np.ndarray, mix: list[np.ndarray]) -> np.ndarray:
    # mix[k] is the 2x2 matrix applied to coordinate k: new[j] = sum_i mix[j, i] * old[i]
    h = 1
    for m in mix:
        v = vec.reshape(-1, 2, h)
        v0 = v[:, 0, :].copy()
        v1 = v[:, 1, :]
        v[:, 0, :] = m[0, 0] * v0 + m[0, 1] * v1
        v[:, 1, :] = m[1, 0] * v0 + m[1, 1] * v1
        h *= 2
    return vec


def analyze_dense(values, model: NoiseModel, n: int | None = None) -> np.ndarray:
    """Dense coefficient vector ``c[sigma] = E[Z_sigma * values]``."""
    values = np.asarray(values)
    level = _level(values.size)
    if n is not None and n != level:
        raise ValueError(f"expected {1 << n} atom values, got {values.size}")
    model.require(level)
    vec = np.array(values, dtype=np.complex128).ravel()
    if model.truncate(level).is_symmetric:
        return _walsh_sign(level) * fwht(vec) / (1 << level)
    mix = []
    for k in range(level):
        p, a, b = model.probs[k], model.up[k], model.down[k]
        # index 0 = outcome down (prob 1-p), index 1 = outcome up (prob p)
        mix.append(np.array([[1 - p, p], [(1 - p) * b, p * a]]))
    return _stages(vec, mix)


def synthesize_dense(coeffs, model: NoiseModel, n: int | None = None) -> np.ndarray:
    """Atom values ``sum_sigma c[sigma] Z_sigma(omega)`` from a dense coefficient vector."""
    coeffs = np.asarray(coeffs)
    level = _level(coeffs.size)
    if n is not None and n != level:
        raise ValueError(f"expected {1 << n} coefficients, got {coeffs.size}")
    model.require(level)
    vec = np.array(coeffs, dtype=np.complex128).ravel()
    if model.truncate(level).is_symmetric:
        return fwht(_walsh_sign(level) * vec)
    mix = [np.array([[1.0, model.down[k]], [1.0, model.up[k]]]) for k in range(level)]
    return _stages(vec, mix)


def analyze(values, model: NoiseModel, n: int) -> CoefficientMap:
    """Chaos coefficients of the functional with the given atom values."""
    values = np.asarray(values)
    if values.size != 1 << n:
        raise ValueError(f"expected {1 << n} atom values, got {values.size}")
    return CoefficientMap.from_dense(analyze_dense(values, model, n), n)


def synthesize(coeffs: CoefficientMap, model: NoiseModel, n: int) -> np.ndarray:
    """Atom values of the functional with chaos coefficients ``coeffs``."""
    if coeffs.n > n:
        raise ValueError(f"coefficients live at truncation level {coeffs.n} > {n}")
    return synthesize_dense(coeffs.to_dense(n), model, n)


def analyze_naive(values, model: NoiseModel, n: int) -> np.ndarray:
    """Reference O(4^n) analysis through the full basis matrix."""
    if n > NAIVE_MAX_LEVEL:
        raise ValueError(f"naive transform limited to n <= {NAIVE_MAX_LEVEL}")
    values = np.asarray(values, dtype=np.complex128).ravel()
    if values.size != 1 << n:
        raise ValueError(f"expected {1 << n} atom values, got {values.size}")
    B = basis_matrix(model, n)
    return B.T @ (atom_probabilities(model, n) * values)


def l2_norm(values, model: NoiseModel, n: int) -> float:
    """``sqrt(E|values|^2)`` by direct summation over atoms."""
    values = np.asarray(values).ravel()
    return float(np.sqrt(np.sum(atom_probabilities(model, n) * np.abs(values) ** 2)))
