"""Set functions on small subset lattices: zeta, Moebius and the union product.

A :class:`SetFunction` stores one value per subset of its universe, indexed by
bitmask. Values are Python integers (object arrays), optionally reduced
modulo a prime. This module is the reference the solver is checked against,
so each transform also has a naive form that follows its definition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

UNIVERSE_CAP = 25


@dataclass(frozen=True, eq=False)
class SetFunction:
    universe: tuple
    values: np.ndarray
    modulus: int | None = None

    def __post_init__(self):
        if len(self.universe) > UNIVERSE_CAP:
            raise ValueError(f"universe capped at {UNIVERSE_CAP} elements")
        vals = np.asarray(self.values, dtype=object)
        if vals.shape != (1 << len(self.universe),):
            raise ValueError(f"need {1 << len(self.universe)} values, got shape {vals.shape}")
        if self.modulus:
            vals = vals % self.modulus
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_values(cls, values, universe=None, modulus=None) -> "SetFunction":
        values = list(values)
        k = len(values).bit_length() - 1
        if universe is None:
            universe = tuple(range(k))
        return cls(tuple(universe), np.array(values, dtype=object), modulus)

    @classmethod
    def zeros(cls, universe, modulus=None) -> "SetFunction":
        return cls(tuple(universe), np.zeros(1 << len(universe), dtype=object), modulus)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, mask: int):
        return self.values[mask]

    def __eq__(self, other):
        if not isinstance(other, SetFunction):
            return NotImplemented
        return (
            self.universe == other.universe
            and self.modulus == other.modulus
            and list(self.values) == list(other.values)
        )

    def __add__(self, other):
        _same_universe(self, other)
        return SetFunction(self.universe, self.values + other.values, self.modulus)

    def scale(self, c) -> "SetFunction":
        return SetFunction(self.universe, self.values * c, self.modulus)

    def tolist(self) -> list:
        return [int(v) for v in self.values]


def _same_universe(f: SetFunction, g: SetFunction) -> None:
    if f.universe != g.universe or f.modulus != g.modulus:
        raise ValueError("set functions live on different universes or rings")


def zeta_naive(f: SetFunction) -> SetFunction:
    size = len(f)
    out = [0] * size
    for y in range(size):
        s = 0
        x = y
        while True:
            s += f.values[x]
            if x == 0:
                break
            x = (x - 1) & y
        out[y] = s
    return SetFunction(f.universe, np.array(out, dtype=object), f.modulus)


def zeta_transform(f: SetFunction) -> SetFunction:
    """Subset sums, one coordinate at a time (``k * 2**k`` additions)."""
    vals = f.values.copy()
    k = len(f.universe)
    for i in range(k):
        # view as (high, 2, low): add the "bit i clear" half into the "set" half
        v = vals.reshape(-1, 2, 1 << i)
        v[:, 1, :] += v[:, 0, :]
    return SetFunction(f.universe, vals, f.modulus)


def mobius_naive(f: SetFunction) -> SetFunction:
    size = len(f)
    out = [0] * size
    for y in range(size):
        s = 0
        x = y
        while True:
            if bin(y & ~x).count("1") % 2:
                s -= f.values[x]
            else:
                s += f.values[x]
            if x == 0:
                break
            x = (x - 1) & y
        out[y] = s
    return SetFunction(f.universe, np.array(out, dtype=object), f.modulus)


def mobius_transform(f: SetFunction) -> SetFunction:
    """Inverse of :func:`zeta_transform`, sign ``(-1)**|Y - X|``."""
    vals = f.values.copy()
    k = len(f.universe)
    for i in range(k):
        v = vals.reshape(-1, 2, 1 << i)
        v[:, 1, :] -= v[:, 0, :]
    return SetFunction(f.universe, vals, f.modulus)


def union_product_naive(f: SetFunction, g: SetFunction) -> SetFunction:
    """``(f * g)[X] = sum over X1 | X2 == X of f[X1] g[X2]``, by direct pair enumeration."""
    _same_universe(f, g)
    size = len(f)
    out = [0] * size
    fv, gv = f.values, g.values
    for a in range(size):
        fa = fv[a]
        if not fa:
            continue
        for b in range(size):
            out[a | b] += fa * gv[b]
    return SetFunction(f.universe, np.array(out, dtype=object), f.modulus)


def union_product(f: SetFunction, g: SetFunction) -> SetFunction:
    """The union product, grouped by the first argument's set.

    For fixed ``X1`` the sets ``X1 | X2`` depend only on ``X2`` outside
    ``X1``, so ``g`` is summed over the coordinates of ``X1`` and the marginal
    lands in the slice where those coordinates are set. Same sum as
    :func:`union_product_naive`, with ``2**k`` array operations instead of
    ``4**k`` scalar ones.
    """
    _same_universe(f, g)
    k = len(f.universe)
    if k == 0:
        return SetFunction(f.universe, f.values * g.values, f.modulus)
    fv, gv = f.values, g.values
    dtype = object
    bound = max(abs(int(v)) for v in fv) * max(abs(int(v)) for v in gv) * len(fv) * len(fv)
    if bound < 1 << 62:
        dtype = np.int64
    # axis i of the tensor view is bit k-1-i of the mask; the marginal for a
    # comes from the one for a minus its lowest bit, so the total work is 3**k
    marginals = [None] * len(fv)
    marginals[0] = gv.astype(dtype).reshape((2,) * k)
    out = np.zeros((2,) * k, dtype=dtype)
    for a in range(len(fv)):
        if a:
            low = (a & -a).bit_length() - 1
            marginals[a] = marginals[a & (a - 1)].sum(axis=k - 1 - low, keepdims=True)
        fa = fv[a]
        if not fa:
            continue
        where = tuple(slice(1, 2) if a >> (k - 1 - i) & 1 else slice(None) for i in range(k))
        out[where] += marginals[a] * (int(fa) if dtype is object else fa)
    values = np.array([int(v) for v in out.reshape(-1)], dtype=object)
    return SetFunction(f.universe, values, f.modulus)


def pointwise_product(f: SetFunction, g: SetFunction) -> SetFunction:
    _same_universe(f, g)
    return SetFunction(f.universe, f.values * g.values, f.modulus)
