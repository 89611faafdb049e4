import math

import numpy as np
import pytest

from fockchaos.algebra import (
    algebra_laws_check,
    convolve,
    measured_growth,
    verify_norm_estimate,
    wick,
    wick_fast,
    wick_growth_bound,
    wick_naive,
)
from fockchaos.chaos import CoefficientMap, ProductFunctional, dual_norm, random_coefficients
from fockchaos.indexset import IndexSet, weight


def wick_oracle(F, G, n):
    """Subset convolution from plain dicts, every disjoint pair visited once."""
    out = {}
    for t, a in F.items():
        for u, b in G.items():
            if int(t) & int(u) == 0:
                key = int(t) | int(u)
                out[key] = out.get(key, 0) + a * b
    return CoefficientMap(out, n)


def test_convolve_examples():
    F = CoefficientMap({0: 2.0, 3: 1j, 5: 4.0})
    G = CoefficientMap({3: 3.0, 5: 0.5, 6: 9.0})
    assert convolve(F, G) == CoefficientMap({3: 3j, 5: 2.0})
    assert convolve(F, CoefficientMap.ones(3)) == F
    assert convolve(F, CoefficientMap.zero()) == CoefficientMap.zero()


def test_wick_examples():
    F = CoefficientMap({(0,): 2.0, (1, 2): -1.0})
    assert wick_naive(CoefficientMap.delta(()), F) == F
    d1, d2 = CoefficientMap.delta((0,)), CoefficientMap.delta((1,))
    assert wick_naive(d1, d2) == CoefficientMap.delta((0, 1))
    assert wick_naive(d1, d1) == CoefficientMap.zero()
    # {0} is reachable as {} + {0} and {0} + {}
    a = CoefficientMap({(): 1.0, (0,): 2.0})
    b = CoefficientMap({(): 3.0, (0,): 5.0})
    assert wick_naive(a, b) == CoefficientMap({(): 3.0, (0,): 11.0})
    assert wick_fast(a, b) == wick_naive(a, b)


def test_fast_matches_naive_sparse():
    rng = np.random.default_rng(0)
    for _ in range(100):
        F = random_coefficients(10, rng, density=0.02)
        G = random_coefficients(10, rng, density=0.02)
        ref = wick_oracle(F, G, 10)
        assert wick_naive(F, G, 10).allclose(ref, atol=1e-12)
        assert wick_fast(F, G, 10).allclose(ref, atol=1e-12)


@pytest.mark.parametrize("n", [0, 1, 2, 5, 9, 12])
def test_fast_matches_naive_dense(n):
    rng = np.random.default_rng(n)
    F, G = random_coefficients(n, rng), random_coefficients(n, rng)
    assert wick_fast(F, G, n).max_abs_diff(wick_naive(F, G, n)) < 1e-10
    Fr = CoefficientMap.from_arrays(F.masks, F.values.real, n)
    Gr = CoefficientMap.from_arrays(G.masks, G.values.real, n)
    assert wick_fast(Fr, Gr, n).max_abs_diff(wick_naive(Fr, Gr, n)) < 1e-10


def test_wick_commutes_and_respects_support():
    rng = np.random.default_rng(1)
    for _ in range(30):
        F = random_coefficients(7, rng, density=0.1)
        G = random_coefficients(7, rng, density=0.1)
        W = wick(F, G, 7)
        assert W.allclose(wick(G, F, 7), atol=1e-12)
        sums = {int(t) | int(u) for t in F.support() for u in G.support() if int(t) & int(u) == 0}
        assert {int(s) for s in W.support()} <= sums


def test_wick_associative_against_triple_sum():
    rng = np.random.default_rng(2)
    n = 6
    F, G, H = (random_coefficients(n, rng, density=0.5) for _ in range(3))
    triple = {}
    for t, a in F.items():
        for u, b in G.items():
            for v, c in H.items():
                t_, u_, v_ = int(t), int(u), int(v)
                if t_ & u_ == 0 and (t_ | u_) & v_ == 0:
                    triple[t_ | u_ | v_] = triple.get(t_ | u_ | v_, 0) + a * b * c
    ref = CoefficientMap(triple, n)
    assert wick(wick(F, G, n), H, n).allclose(ref, atol=1e-10)
    assert wick(F, wick(G, H, n), n).allclose(ref, atol=1e-10)


def test_wick_limits():
    F = CoefficientMap.delta((0,), 21)
    with pytest.raises(ValueError):
        wick_naive(F, F)
    with pytest.raises(MemoryError):
        wick_fast(F, F, memory_limit=1 << 20)
    with pytest.raises(ValueError):
        wick_naive(CoefficientMap.delta((5,)), F, n=3)


def test_norm_estimate_examples():
    count = CoefficientMap.from_function(len, 12)
    r = verify_norm_estimate(count, 1.0, 1.0, 2.0)
    assert r.passed and r.norm <= math.exp(math.pi ** 2 / 12)
    oracle = math.sqrt(math.fsum(len(s) ** 2 / weight(s) ** 4 for s in map(IndexSet, range(1 << 12))))
    assert r.norm == pytest.approx(oracle, rel=1e-12)
    assert r.bound == pytest.approx(math.sqrt(math.prod(1 + m ** -2.0 for m in range(1, 13))), rel=1e-12)

    root = verify_norm_estimate(ProductFunctional.sqrt_weight(30), 1.0, 0.5, 1.5)
    assert root.norm == pytest.approx(math.sqrt(3.557536524707823), rel=1e-12)
    assert root.gap < 0.01
    assert root.bound_upper >= math.sqrt(math.sinh(math.pi) / math.pi)


def test_norm_estimate_rejects_bad_inputs():
    count = CoefficientMap.from_function(len, 6)
    with pytest.raises(ValueError):
        verify_norm_estimate(count, 1.0, 1.0, 1.5)
    with pytest.raises(ValueError):
        verify_norm_estimate(count, 0.5, 1.0, 2.0)
    with pytest.raises(ValueError):
        verify_norm_estimate(ProductFunctional.sqrt_weight(6), 0.9, 0.5, 1.5)


def test_norm_estimate_random_certified():
    rng = np.random.default_rng(3)
    for _ in range(50):
        F = random_coefficients(8, rng, density=0.3, scale=10)
        p = rng.uniform(0, 2)
        C = measured_growth(F, p)
        for q in (p + 0.6, p + 2):
            assert verify_norm_estimate(F, C, p, q).passed


def test_wick_growth_bound_dominates():
    rng = np.random.default_rng(4)
    for _ in range(40):
        F = random_coefficients(8, rng, density=0.4)
        G = random_coefficients(8, rng, density=0.4)
        p = rng.uniform(0, 1.5)
        cert = wick_growth_bound(F, G, p, p + 1)
        assert cert.holds(wick(F, G, 8))
        base = dual_norm(F, p) * dual_norm(G, p)
        truncated = math.sqrt(math.prod(1 + m ** -2.0 for m in range(1, 9)))
        assert base * truncated <= cert.C <= base * math.exp(math.pi ** 2 / 12)


def test_algebra_laws():
    report = algebra_laws_check(6, 10, seed=5)
    assert report.passed, report.errors
    assert set(report.errors) >= {"wick_associative", "conv_unit"}
    with pytest.raises(ValueError):
        algebra_laws_check(11, 1, 0)


def test_measured_growth_zero_map():
    assert measured_growth(CoefficientMap.zero(), 1.0) == 0.0
