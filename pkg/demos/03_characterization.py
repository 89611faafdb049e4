"""
Growth certificates and dual norms
==================================

A generalized functional is described by its Fock transform, the map of
values on index sets.  Polynomial growth ``|F(sigma)| <= C weight**p`` buys
a finite dual q-norm for every q > p + 1/2, bounded by C times the square
root of the weight series at exponent 2(q - p).
"""
import math

from fockchaos import CoefficientMap, ProductFunctional, classify_growth, dual_norm, pairing
from fockchaos.algebra import verify_norm_estimate
from fockchaos.chaos import norming_element

# the counting functional F(sigma) = |sigma|
count = CoefficientMap.from_function(len, 12)
for cert in classify_growth(count, [0.0, 0.5, 1.0, 2.0]):
    print(f"p={cert.p}: C={cert.C:.4f}")

r = verify_norm_estimate(count, 1.0, 1.0, 2.0)
print(f"dual 2-norm {r.norm:.5f} <= bound {r.bound:.5f} <= exp(pi^2/12) {math.exp(math.pi ** 2 / 12):.5f}")

# sqrt(weight) is tight: the truncated bound is attained
root = ProductFunctional.sqrt_weight(30)
r = verify_norm_estimate(root, 1.0, 0.5, 1.5)
print(f"sqrt-weight n=30: norm {r.norm:.6f}, bound {r.bound:.6f}, "
      f"limit {math.sqrt(math.sinh(math.pi) / math.pi):.6f}")

# the dual norm is a maximum of pairings, attained by an explicit element
F = CoefficientMap({(): 1.0, (0,): -2.0, (1, 3): 0.5j})
xi = norming_element(F, 1.0)
print("dual norm", dual_norm(F, 1.0), "attained pairing", abs(pairing(F, xi)))
