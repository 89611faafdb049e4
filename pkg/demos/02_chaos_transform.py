"""
Chaos coefficients of a functional on atoms
===========================================

A functional on n coin flips is a vector of 2^n atom values.  Its chaos
coefficients are ``E[Z_sigma * xi]``.  The symmetric coin goes through the
fast Walsh-Hadamard transform, a biased one through 2x2 tensor stages.
"""
import numpy as np

from fockchaos import NoiseModel, analyze, synthesize
from fockchaos.martingale import martingale_values
from fockchaos.transform import l2_norm

n = 4
fair = NoiseModel.symmetric(n)
biased = NoiseModel.constant(0.3, n)

# the terminal value of the walk is first-chaos only
for model in (fair, biased):
    final = martingale_values(model, n)[:, -1]
    coeffs = analyze(final, model, n)
    print("p =", model.probs[0], "->", {tuple(s): round(v.real, 12) for s, v in coeffs.items() if abs(v) > 1e-12})

# squaring it adds a constant and second-chaos terms
square = analyze(martingale_values(fair, n)[:, -1] ** 2, fair, n)
print("M^2 coefficients:", {tuple(s): round(v.real, 12) for s, v in square.items() if abs(v) > 1e-12})

# round trip and Parseval on a random functional
rng = np.random.default_rng(0)
xi = rng.normal(size=1 << n)
c = analyze(xi, biased, n)
print("round-trip error:", np.abs(synthesize(c, biased, n) - xi).max())
print("sum |c|^2 =", np.sum(np.abs(c.values) ** 2), " E|xi|^2 =", l2_norm(xi, biased, n) ** 2)
