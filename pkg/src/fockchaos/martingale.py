"""Two-point normal noises on a truncated sample space.

Coordinate ``k`` of the noise takes the value ``a_k = sqrt((1-p_k)/p_k)``
with probability ``p_k`` and ``b_k = -sqrt(p_k/(1-p_k))`` otherwise, which
gives mean 0 and variance 1.  On ``n`` coordinates the sample space has 2^n
atoms; atom ``omega`` is a bitmask whose bit ``k`` is set when the ``k``-th
increment took the value ``a_k``.  The martingale is the running sum of the
increments, ``M_m = Z_0 + ... + Z_m``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .indexset import IndexSet

MAX_EXACT_LEVEL = 14
EXHAUSTIVE_LEVEL = 7
PATH_BLOCK = 1024


@dataclass(frozen=True)
class NoiseModel:
    """Per-coordinate success probabilities of a two-point normal noise."""

    probs: tuple[float, ...]
    up: np.ndarray = field(init=False, repr=False, compare=False)
    down: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probs)
        for k, p in enumerate(probs):
            if not (math.isfinite(p) and 0.0 < p < 1.0):
                raise ValueError(f"probs[{k}] = {p} must lie strictly between 0 and 1")
        arr = np.array(probs, dtype=np.float64)
        up = np.sqrt((1 - arr) / arr)
        down = -np.sqrt(arr / (1 - arr))
        up.flags.writeable = False
        down.flags.writeable = False
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "up", up)
        object.__setattr__(self, "down", down)

    @classmethod
    def symmetric(cls, n: int) -> "NoiseModel":
        return cls((0.5,) * n)

    @classmethod
    def constant(cls, p: float, n: int) -> "NoiseModel":
        return cls((p,) * n)

    @property
    def n(self) -> int:
        return len(self.probs)

    @property
    def is_symmetric(self) -> bool:
        return all(p == 0.5 for p in self.probs)

    def truncate(self, n: int) -> "NoiseModel":
        self.require(n)
        return NoiseModel(self.probs[:n])

    def require(self, n: int) -> None:
        if n < 0:
            raise ValueError(f"truncation level must be >= 0, got {n}")
        if n > self.n:
            raise ValueError(f"noise model defines {self.n} coordinates, {n} requested")

    def moments(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-coordinate mean and second moment; exactly 0 and 1 up to rounding."""
        p = np.array(self.probs)
        return p * self.up + (1 - p) * self.down, p * self.up ** 2 + (1 - p) * self.down ** 2


def atom_probabilities(model: NoiseModel, n: int) -> np.ndarray:
    """Probabilities of the 2^n atoms, indexed by outcome mask."""
    model.require(n)
    prob = np.ones(1 << n)
    for k in range(n):
        pk = model.probs[k]
        prob[1 << k : 1 << (k + 1)] = prob[: 1 << k] * pk
        prob[: 1 << k] *= 1 - pk
    return prob


def increments(model: NoiseModel, n: int) -> np.ndarray:
    """Matrix ``Z[omega, k]`` of noise values on every atom."""
    model.require(n)
    omega = np.arange(1 << n)[:, None]
    bit = (omega >> np.arange(n)[None, :]) & 1
    return np.where(bit == 1, model.up[:n], model.down[:n])


def z_sigma_eval(sigma, omega: int, model: NoiseModel) -> float:
    """``Z_sigma(omega)``: the product of the increments indexed by ``sigma``."""
    sigma = IndexSet.coerce(sigma)
    model.require(max(sigma.max_level(), int(omega).bit_length()))
    out = 1.0
    for k in sigma:
        out *= model.up[k] if omega >> k & 1 else model.down[k]
    return out


def z_columns(model: NoiseModel, n: int, sigmas) -> np.ndarray:
    """Columns ``Z_sigma`` over all 2^n atoms for the given index sets."""
    Z = increments(model, n)
    out = np.ones((1 << n, len(sigmas)))
    for j, sigma in enumerate(sigmas):
        for k in IndexSet.coerce(sigma):
            out[:, j] *= Z[:, k]
    return out


def basis_matrix(model: NoiseModel, n: int) -> np.ndarray:
    """Full matrix ``B[omega, sigma] = Z_sigma(omega)`` of size 2^n x 2^n."""
    model.require(n)
    B = np.ones((1, 1))
    for k in range(n):
        # rows: outcome bit k (0 -> down, 1 -> up); cols: k in sigma
        factor = np.array([[1.0, model.down[k]], [1.0, model.up[k]]])
        B = np.kron(factor, B)
    return B


@dataclass(frozen=True)
class OrthonormalityReport:
    n: int
    exhaustive: bool
    pairs_checked: int
    max_error: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_error < self.tol


def verify_orthonormality(model: NoiseModel, n: int, pairs: int = 10_000, seed: int = 0, tol: float = 1e-10) -> OrthonormalityReport:
    """Check ``<Z_s, Z_t> = [s == t]`` by summing over atoms.

    All 4^n pairs for ``n <= 7``; above that a random block of about ``pairs``
    pairs (a sampled family of index sets against itself).
    """
    if not 0 <= n <= MAX_EXACT_LEVEL:
        raise ValueError(f"orthonormality check supports n <= {MAX_EXACT_LEVEL}, got {n}")
    P = atom_probabilities(model, n)
    if n <= EXHAUSTIVE_LEVEL:
        B = basis_matrix(model, n)
        gram = B.T @ (P[:, None] * B)
        err = float(np.abs(gram - np.eye(1 << n)).max())
        return OrthonormalityReport(n, True, 1 << (2 * n), err, tol)
    rng = np.random.default_rng(seed)
    size = min(1 << n, math.isqrt(pairs - 1) + 1)
    sigmas = rng.choice(1 << n, size=size, replace=False)
    cols = z_columns(model, n, sigmas.tolist())
    gram = cols.T @ (P[:, None] * cols)
    err = float(np.abs(gram - np.eye(size)).max())
    return OrthonormalityReport(n, False, size * size, err, tol)


@dataclass(frozen=True)
class MartingaleReport:
    n: int
    atoms_checked: int
    final_level_atoms: int
    max_mean_error: float
    max_square_error: float
    max_method_gap: float
    tol: float

    @property
    def passed(self) -> bool:
        return max(self.max_mean_error, self.max_square_error, self.max_method_gap) < self.tol


def martingale_values(model: NoiseModel, n: int) -> np.ndarray:
    """``M[omega, m]`` for m = 0..n-1 on all 2^n atoms."""
    return np.cumsum(increments(model, n), axis=1)


def verify_martingale(model: NoiseModel, n: int, tol: float = 1e-10) -> MartingaleReport:
    """Check both defining conditional identities on every conditioning atom.

    For each level ``m < n`` the conditional expectations given the first
    ``m`` increments are computed by summing the atom probabilities over all
    extensions of each conditioning atom, then compared with ``M_{m-1}`` and
    ``M_{m-1}**2 + 1`` (``0`` and ``1`` at ``m = 0``).  The one-step formula
    ``M_{m-1} + p_m a_m + (1 - p_m) b_m`` is computed as a second route.
    """
    if not 1 <= n <= MAX_EXACT_LEVEL:
        raise ValueError(f"martingale check supports 1 <= n <= {MAX_EXACT_LEVEL}, got {n}")
    P = atom_probabilities(model, n)
    M = martingale_values(model, n)
    mean_err = square_err = gap = 0.0
    atoms = 0
    for m in range(n):
        # rows: outcomes of increments m..n-1; cols: conditioning atom (first m increments)
        Pm = P.reshape(-1, 1 << m)
        Xm = M[:, m].reshape(-1, 1 << m)
        mass = Pm.sum(axis=0)
        cond_mean = (Pm * Xm).sum(axis=0) / mass
        cond_square = (Pm * Xm ** 2).sum(axis=0) / mass
        prev = M[: 1 << m, m - 1] if m else np.zeros(1)
        mean_err = max(mean_err, float(np.abs(cond_mean - prev).max()))
        square_err = max(square_err, float(np.abs(cond_square - (prev ** 2 + 1)).max()))
        pk = model.probs[m]
        one_step = prev + pk * model.up[m] + (1 - pk) * model.down[m]
        gap = max(gap, float(np.abs(one_step - cond_mean).max()))
        atoms += 1 << m
    return MartingaleReport(n, atoms, 1 << (n - 1), mean_err, square_err, gap, tol)


def simulate_paths(model: NoiseModel, n: int, count: int, seed: int, start: int = 0) -> np.ndarray:
    """Sample ``count`` trajectories ``(M_0, ..., M_{n-1})``; shape ``(count, n)``.

    Paths are generated in blocks of 1024 from a counter-based Philox stream
    keyed by ``(seed, block)``, so path ``i`` depends only on ``seed``, ``n``
    and ``i``.  ``start`` offsets the first path index, letting independent
    workers produce disjoint slices of the same ensemble.
    """
    model.require(n)
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if not 0 <= seed < 1 << 64:
        raise ValueError("seed must be a nonnegative 64-bit integer")
    p = np.array(model.probs[:n])
    out = np.empty((count, n))
    stop = start + count
    row = 0
    for block in range(start // PATH_BLOCK, (stop - 1) // PATH_BLOCK + 1):
        lo = max(start, block * PATH_BLOCK) - block * PATH_BLOCK
        hi = min(stop, (block + 1) * PATH_BLOCK) - block * PATH_BLOCK
        gen = np.random.Generator(np.random.Philox(key=[seed, block]))
        u = gen.random((hi, n))[lo:]
        z = np.where(u < p, model.up[:n], model.down[:n])
        out[row : row + hi - lo] = np.cumsum(z, axis=1)
        row += hi - lo
    return out
