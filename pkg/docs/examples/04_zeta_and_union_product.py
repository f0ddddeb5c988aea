# Set functions, the zeta transform and the union product.
#
# A set function assigns a number to every subset of a small universe. The
# zeta transform replaces f[Y] by the sum of f over subsets of Y, and the
# Moebius transform undoes it. The reason the solver works in the zeta
# domain is the last identity below: union products turn into pointwise
# products.

import numpy as np

from polydom.algebra import (
    SetFunction,
    mobius_transform,
    pointwise_product,
    union_product,
    zeta_transform,
)

f = SetFunction.from_values([1, 2])          # universe {a}: f[{}]=1, f[{a}]=2
print(zeta_transform(f).tolist())            # [1, 3]
print(mobius_transform(zeta_transform(f)).tolist())

rng = np.random.default_rng(0)
k = 6
f = SetFunction.from_values(rng.integers(-5, 6, 1 << k).tolist())
g = SetFunction.from_values(rng.integers(-5, 6, 1 << k).tolist())

h = union_product(f, g)                      # sum over X1 | X2 == X of f[X1] g[X2]
lhs = zeta_transform(h)
rhs = pointwise_product(zeta_transform(f), zeta_transform(g))
print("zeta turns the union product pointwise:", lhs == rhs)

# Modular arithmetic works the same way
p = (1 << 61) - 1
fm = SetFunction(f.universe, f.values, p)
print(mobius_transform(zeta_transform(fm)) == fm)
