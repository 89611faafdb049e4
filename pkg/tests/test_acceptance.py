"""Acceptance criteria, one function each, run at their stated tolerances.

Every criterion returns ``(passed, detail)``.  Under pytest the results are
collected and printed as one PASS/FAIL line per criterion at the end of the
session; ``python3 tests/test_acceptance.py`` prints the same lines directly.
"""
from __future__ import annotations

import hashlib
import math
import time

import numpy as np
import pytest

from fockchaos.algebra import (
    algebra_laws_check,
    measured_growth,
    verify_norm_estimate,
    wick,
    wick_fast,
    wick_growth_bound,
    wick_naive,
)
from fockchaos.chaos import (
    CoefficientMap,
    ProductFunctional,
    classify_growth,
    dual_norm,
    norming_element,
    p_norm,
    pairing,
    random_coefficients,
)
from fockchaos.indexset import hs_series, weight_series
from fockchaos.martingale import NoiseModel, simulate_paths, verify_martingale, verify_orthonormality
from fockchaos.transform import analyze, analyze_dense, analyze_naive, fwht, l2_norm, synthesize

RESULTS: dict[int, tuple[str, bool, str]] = {}

SINH_PI_OVER_PI = math.sinh(math.pi) / math.pi
COUNTING_BOUND = math.exp(math.pi ** 2 / 12)


def product_oracle(p: float, n: int) -> float:
    return math.prod(1 + m ** -p for m in range(1, n + 1))


def criterion_1():
    k = np.arange(1, 10 ** 6 + 1, dtype=float)
    start = time.perf_counter()
    worst_rel, ok = 0.0, True
    for p in (1.5, 2.0, 3.0):
        s = weight_series(p, 30)
        rel = abs(s.partial / product_oracle(p, 30) - 1)
        worst_rel = max(worst_rel, rel)
        ok &= rel < 1e-12 and s.partial <= math.exp(math.fsum(k ** -p))
    elapsed = time.perf_counter() - start
    s2 = weight_series(2.0, 30)
    ok &= s2.contains(SINH_PI_OVER_PI) and elapsed < 5
    return ok, (f"max rel err {worst_rel:.1e}; p=2 interval [{s2.partial:.6f}, {s2.upper:.6f}] "
                f"contains {SINH_PI_OVER_PI:.6f}; {elapsed:.2f}s")


def criterion_2():
    start = time.perf_counter()
    reports = [verify_orthonormality(m, 7) for m in (NoiseModel.symmetric(7), NoiseModel.constant(0.3, 7))]
    elapsed = time.perf_counter() - start
    err = max(r.max_error for r in reports)
    ok = all(r.exhaustive and r.pairs_checked == 4 ** 7 for r in reports) and err < 1e-10 and elapsed < 30
    return ok, f"{reports[0].pairs_checked} pairs x 2 models, max err {err:.1e}; {elapsed:.2f}s"


def criterion_3():
    models = {
        "symmetric": NoiseModel.symmetric(10),
        "p=0.3": NoiseModel.constant(0.3, 10),
        "mixed": NoiseModel(tuple(np.linspace(0.1, 0.9, 10))),
    }
    err = 0.0
    for model in models.values():
        for n in range(1, 11):
            r = verify_martingale(model, n)
            err = max(err, r.max_mean_error, r.max_square_error)
    return err < 1e-10, f"n=1..10, {len(models)} models, max err {err:.1e}"


def criterion_4():
    rng = np.random.default_rng(4)
    trip = pars = 0.0
    for model in (NoiseModel.symmetric(10), NoiseModel.constant(0.3, 10)):
        for _ in range(100):
            xi = rng.normal(size=1024) + 1j * rng.normal(size=1024)
            c = analyze(xi, model, 10)
            trip = max(trip, float(np.abs(synthesize(c, model, 10) - xi).max()))
            pars = max(pars, abs(dual_norm(c, 0) - l2_norm(xi, model, 10)))
    return trip < 1e-10 and pars < 1e-10, f"round trip {trip:.1e}, Parseval {pars:.1e}"


def criterion_5():
    rng = np.random.default_rng(5)
    err = 0.0
    for n in range(11):
        x = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        idx = np.arange(1 << n)
        # naive Walsh kernel (-1)^{|s & w|} by inner products
        parity = np.vectorize(lambda v: bin(v).count("1") & 1)(idx[:, None] & idx[None, :])
        err = max(err, float(np.abs(fwht(x) - (1 - 2 * parity) @ x).max()))
        for model in (NoiseModel.symmetric(n), NoiseModel.constant(0.3, n)):
            err = max(err, float(np.abs(analyze_dense(x, model, n) - analyze_naive(x, model, n)).max()))
    return err < 1e-10, f"n=0..10, max entrywise err {err:.1e}"


def criterion_6():
    rng = np.random.default_rng(6)
    err = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 9))
        F = random_coefficients(n, rng, density=0.6)
        if not len(F):
            F = CoefficientMap.delta(0, n)
        p = float(rng.uniform(0, 3))
        xi = norming_element(F, p)
        err = max(err, abs(abs(pairing(F, xi)) - dual_norm(F, p)), abs(p_norm(xi, p) - 1))
    return err < 1e-10, f"100 functionals, n<=8, max err {err:.1e}"


def criterion_7():
    rng = np.random.default_rng(7)
    ok, checked = True, 0
    for _ in range(100):
        n = int(rng.integers(1, 9))
        F = random_coefficients(n, rng, density=0.5, scale=float(rng.uniform(0.1, 10)))
        if not len(F):
            F = CoefficientMap.delta(0, n)
        p = float(rng.uniform(0, 2))
        C = measured_growth(F, p)
        for q in (p + 0.6, p + 2):
            r = verify_norm_estimate(F, C, p, q)
            ok &= r.passed and r.norm <= r.bound * (1 + 1e-12)
            checked += 1
    count = verify_norm_estimate(CoefficientMap.from_function(len, 16), 1.0, 1.0, 2.0)
    ok &= count.passed and count.norm <= COUNTING_BOUND
    root = verify_norm_estimate(ProductFunctional.sqrt_weight(30), 1.0, 0.5, 1.5)
    limit_gaps = [math.sqrt(SINH_PI_OVER_PI) / ProductFunctional.sqrt_weight(n).dual_norm(1.5) - 1
                  for n in (5, 10, 20, 30)]
    ok &= root.passed and root.norm <= math.sqrt(SINH_PI_OVER_PI) and root.gap < 0.01
    ok &= all(a > b for a, b in zip(limit_gaps, limit_gaps[1:]))
    return ok, (f"{checked} certified cases; counting n=16 norm {count.norm:.5f} <= {COUNTING_BOUND:.5f}; "
                f"sqrt-weight n=30 norm {root.norm:.5f}, gap {root.gap:.1e} vs truncated bound, "
                f"{limit_gaps[-1]:.2%} vs limit {math.sqrt(SINH_PI_OVER_PI):.5f}")


def criterion_8():
    rng = np.random.default_rng(8)
    err = 0.0
    for n in range(13):
        F, G = random_coefficients(n, rng), random_coefficients(n, rng)
        err = max(err, wick_fast(F, G, n).max_abs_diff(wick_naive(F, G, n)))
        Fr = CoefficientMap.from_arrays(F.masks, F.values.real, n)
        Gr = CoefficientMap.from_arrays(G.masks, G.values.real, n)
        err = max(err, wick_fast(Fr, Gr, n).max_abs_diff(wick_naive(Fr, Gr, n)))
    violations, worst = 0, 0.0
    for _ in range(100):
        F = random_coefficients(8, rng, density=float(rng.uniform(0.1, 1)))
        G = random_coefficients(8, rng, density=float(rng.uniform(0.1, 1)))
        p = float(rng.uniform(0, 2))
        q = p + float(rng.uniform(0.6, 2))
        cert = wick_growth_bound(F, G, p, q)
        measured = measured_growth(wick(F, G, 8), q)
        violations += measured > cert.C
        worst = max(worst, measured / cert.C)
    ok = err < 1e-10 and violations == 0
    return ok, (f"fast vs naive n=0..12 max err {err:.1e}; growth bound {violations}/100 violations, "
                f"max measured/C {worst:.3f}")


def criterion_9():
    r = algebra_laws_check(8, 100, seed=9)
    return r.passed, f"100 triples at n=8, max err {max(r.errors.values()):.1e}"


def criterion_10():
    model = NoiseModel.symmetric(10)
    a = simulate_paths(model, 10, 100_000, seed=10)
    b = simulate_paths(model, 10, 100_000, seed=10)
    last = a[:, 9]
    mean, ratio = float(last.mean()), float(last.var() / 10)
    same = hashlib.sha256(a.tobytes()).hexdigest() == hashlib.sha256(b.tobytes()).hexdigest()
    ok = abs(mean) < 0.05 and abs(ratio - 1) < 0.05 and same
    return ok, f"mean(M_9) {mean:+.4f}, var/10 {ratio:.4f}, byte-identical rerun {same}"


def criterion_11():
    rng = np.random.default_rng(11)
    violations, worst = 0, 0.0
    for _ in range(100):
        n = int(rng.integers(1, 9))
        F = random_coefficients(n, rng, density=0.5, scale=float(rng.uniform(0.1, 10)))
        if not len(F):
            F = CoefficientMap.delta(0, n)
        p = float(rng.uniform(0, 2))
        (cert,) = classify_growth(F, [p])
        q = p + 0.6
        factor = cert.C * math.sqrt(hs_series(p, q, n).partial)
        # random testing functionals plus the maximizer of the pairing
        for xi in [random_coefficients(n, rng, density=0.5) for _ in range(5)] + [norming_element(F, q)]:
            if not len(xi):
                continue
            ratio = abs(pairing(F, xi)) / (factor * p_norm(xi, q))
            worst = max(worst, ratio)
            violations += ratio > 1 + 1e-12
    return violations == 0, f"100 instances, {violations} violations, max |pairing|/bound {worst:.4f}"


CRITERIA = {
    1: ("weight-series convergence", criterion_1),
    2: ("orthonormality", criterion_2),
    3: ("martingale axioms", criterion_3),
    4: ("chaotic representation and Parseval", criterion_4),
    5: ("transform oracle", criterion_5),
    6: ("dual-norm formula", criterion_6),
    7: ("norm estimate", criterion_7),
    8: ("Wick correctness and growth bound", criterion_8),
    9: ("algebra laws", criterion_9),
    10: ("Monte Carlo sanity", criterion_10),
    11: ("characterization round trip", criterion_11),
}


def evaluate(number: int) -> tuple[bool, str]:
    name, fn = CRITERIA[number]
    ok, detail = fn()
    RESULTS[number] = (name, bool(ok), detail)
    return bool(ok), detail


def format_line(number: int) -> str:
    name, ok, detail = RESULTS[number]
    return f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {name}: {detail}"


@pytest.mark.acceptance
@pytest.mark.parametrize("number", list(CRITERIA), ids=[f"criterion_{k}" for k in CRITERIA])
def test_criterion(number):
    ok, detail = evaluate(number)
    assert ok, detail


if __name__ == "__main__":
    for k in CRITERIA:
        evaluate(k)
        print(format_line(k), flush=True)
    raise SystemExit(0 if all(ok for _, ok, _ in RESULTS.values()) else 1)
