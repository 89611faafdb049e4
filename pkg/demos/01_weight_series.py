"""
Weights and their inverse-power series
======================================

Each finite index set gets the weight ``prod(k + 1 for k in sigma)``.  The
sum of ``weight**-p`` over all subsets of {0, ..., n-1} factorizes as
``prod(1 + m**-p)`` and stays bounded as n grows once p > 1.
"""
import math

from fockchaos import IndexSet, weight, weight_series

sigma = IndexSet.of(1, 2)
print(sigma, "has weight", weight(sigma))

# partial sums settle quickly; the interval always brackets the limit
for n in (1, 5, 10, 30, 63):
    s = weight_series(2.0, n)
    print(f"n={n:2d}  partial={s.partial:.9f}  interval=[{s.interval[0]:.6f}, {s.interval[1]:.6f}]")

print("limit sinh(pi)/pi  =", math.sinh(math.pi) / math.pi)
print("closed-form bound  =", weight_series(2.0, 30).bound)

# close to p = 1 the series still converges, just slowly
for p in (1.1, 1.5, 3.0):
    s = weight_series(p, 40)
    print(f"p={p}: partial {s.partial:.4f}, upper {s.upper:.4f}, bound {s.bound:.4f}")
