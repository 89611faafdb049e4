"""Quick invariant suite behind ``fockchaos selftest``.

Each check is small enough to finish in well under a second and returns
``(passed, detail)``.  The pytest suite covers the same ground at full size.
"""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

from . import algebra, chaos, indexset, martingale, transform
from .chaos import CoefficientMap, ProductFunctional


def _product_identity():
    errs = []
    for p in (1.5, 2.0, 3.0):
        for n in range(13):
            direct = math.fsum(float(indexset.weight(s)) ** -p for s in indexset.enumerate_sets(n))
            product = math.prod(1 + m ** -p for m in range(1, n + 1))
            errs.append(abs(direct / product - 1))
            errs.append(abs(indexset.weight_series_sum(p, n) / product - 1))
    return max(errs) < 1e-12, f"max rel err {max(errs):.1e}"


def _series_bound():
    worst = 0.0
    for p in (1.5, 2.0, 3.0):
        for n in (1, 10, 30, 63):
            s = indexset.weight_series(p, n)
            worst = max(worst, s.partial / s.bound)
    return worst <= 1.0, f"max partial/bound {worst:.4f}"


def _orthonormality():
    reports = [martingale.verify_orthonormality(martingale.NoiseModel.constant(p, 6), 6) for p in (0.5, 0.3)]
    return all(r.passed for r in reports), f"max err {max(r.max_error for r in reports):.1e}"


def _martingale():
    reports = [martingale.verify_martingale(martingale.NoiseModel.constant(p, 8), 8) for p in (0.5, 0.3)]
    err = max(max(r.max_mean_error, r.max_square_error) for r in reports)
    return all(r.passed for r in reports), f"max err {err:.1e}"


def _transform_roundtrip():
    rng = np.random.default_rng(1)
    err = 0.0
    for model in (martingale.NoiseModel.symmetric(8), martingale.NoiseModel.constant(0.3, 8)):
        v = rng.normal(size=256) + 1j * rng.normal(size=256)
        c = transform.analyze(v, model, 8)
        err = max(err, np.abs(transform.synthesize(c, model, 8) - v).max())
        err = max(err, np.abs(c.to_dense(8) - transform.analyze_naive(v, model, 8)).max())
        err = max(err, abs(chaos.dual_norm(c, 0) - transform.l2_norm(v, model, 8)))
    return err < 1e-10, f"max err {err:.1e}"


def _duality():
    rng = np.random.default_rng(2)
    err = 0.0
    for _ in range(20):
        F = chaos.random_coefficients(6, rng, density=0.6)
        if not len(F):
            continue
        p = rng.uniform(0, 2)
        xi = chaos.norming_element(F, p)
        err = max(err, abs(abs(chaos.pairing(F, xi)) - chaos.dual_norm(F, p)))
    return err < 1e-10, f"max err {err:.1e}"


def _norm_estimates():
    count = CoefficientMap.from_function(len, 16)
    r1 = algebra.verify_norm_estimate(count, 1.0, 1.0, 2.0)
    r2 = algebra.verify_norm_estimate(ProductFunctional.sqrt_weight(30), 1.0, 0.5, 1.5)
    ok = r1.passed and r2.passed and r1.norm <= math.exp(math.pi ** 2 / 12) and r2.gap < 0.01
    return ok, f"count {r1.norm:.5f}, sqrt-weight {r2.norm:.5f}"


def _wick():
    rng = np.random.default_rng(3)
    err = 0.0
    for _ in range(5):
        F, G = chaos.random_coefficients(8, rng), chaos.random_coefficients(8, rng)
        err = max(err, algebra.wick_fast(F, G).max_abs_diff(algebra.wick_naive(F, G)))
    return err < 1e-10, f"max err {err:.1e}"


def _laws():
    r = algebra.algebra_laws_check(6, 10, seed=4)
    return r.passed, f"max err {max(r.errors.values()):.1e}"


def _simulation():
    model = martingale.NoiseModel.symmetric(10)
    a = martingale.simulate_paths(model, 10, 20_000, seed=5)
    b = martingale.simulate_paths(model, 10, 20_000, seed=5)
    last = a[:, -1]
    ok = np.array_equal(a, b) and abs(last.mean()) < 0.1 and abs(last.var() / 10 - 1) < 0.1
    return ok, f"mean {last.mean():+.4f}, var/10 {last.var() / 10:.4f}"


CHECKS: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("weight series product identity", _product_identity),
    ("weight series bound", _series_bound),
    ("orthonormality", _orthonormality),
    ("martingale identities", _martingale),
    ("chaos transform round trip", _transform_roundtrip),
    ("dual norm duality", _duality),
    ("norm estimates", _norm_estimates),
    ("wick fast vs naive", _wick),
    ("algebra laws", _laws),
    ("path simulation", _simulation),
]


def run() -> list[tuple[str, bool, str]]:
    results = []
    for name, check in CHECKS:
        try:
            ok, detail = check()
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((name, bool(ok), detail))
    return results
