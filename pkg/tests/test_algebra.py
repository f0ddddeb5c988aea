import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polydom.algebra import (
    SetFunction,
    mobius_naive,
    mobius_transform,
    pointwise_product,
    union_product,
    union_product_naive,
    zeta_naive,
    zeta_transform,
)

P = (1 << 61) - 1


@st.composite
def set_functions(draw, max_k=7, lo=-50, hi=50):
    k = draw(st.integers(0, max_k))
    vals = draw(st.lists(st.integers(lo, hi), min_size=1 << k, max_size=1 << k))
    return SetFunction.from_values(vals, universe=tuple(range(k)))


@st.composite
def pairs(draw, max_k=6):
    f = draw(set_functions(max_k))
    k = len(f.universe)
    vals = draw(st.lists(st.integers(-50, 50), min_size=1 << k, max_size=1 << k))
    return f, SetFunction.from_values(vals, universe=f.universe)


def sf(values):
    return SetFunction.from_values(values)


def test_zeta_examples():
    assert zeta_transform(sf([1, 2])).tolist() == [1, 3]
    assert zeta_transform(sf([0] * 8)).tolist() == [0] * 8
    assert zeta_transform(sf([1, 0, 0, 0])).tolist() == [1, 1, 1, 1]


def test_mobius_examples():
    assert mobius_transform(sf([1, 3])).tolist() == [1, 2]
    assert mobius_transform(sf([1] * 8)).tolist() == [1] + [0] * 7


def test_union_product_examples():
    e = sf([1, 0, 0, 0])
    assert union_product(e, e) == e
    assert union_product(sf([1, 1]), sf([1, 1])).tolist() == [1, 3]


def test_universe_mismatch():
    with pytest.raises(ValueError):
        union_product(sf([1, 1]), sf([1, 1, 1, 1]))
    with pytest.raises(ValueError):
        pointwise_product(sf([1, 1]), SetFunction.from_values([1, 1], modulus=P))


def test_bad_shape_and_cap():
    with pytest.raises(ValueError):
        SetFunction((0, 1), np.zeros(3, dtype=object))
    with pytest.raises(ValueError):
        SetFunction.zeros(range(26))


@settings(max_examples=150, deadline=None)
@given(set_functions())
def test_mobius_inverts_zeta(f):
    assert mobius_transform(zeta_transform(f)) == f
    assert zeta_transform(mobius_transform(f)) == f


@settings(max_examples=150, deadline=None)
@given(set_functions())
def test_fast_transforms_match_naive(f):
    assert zeta_transform(f) == zeta_naive(f)
    assert mobius_transform(f) == mobius_naive(f)


@settings(max_examples=150, deadline=None)
@given(pairs())
def test_union_product_becomes_pointwise(fg):
    f, g = fg
    h = union_product(f, g)
    assert h == union_product_naive(f, g)
    assert zeta_transform(h) == pointwise_product(zeta_transform(f), zeta_transform(g))


@settings(max_examples=60, deadline=None)
@given(pairs(), st.integers(-9, 9), st.integers(-9, 9))
def test_transforms_are_linear(fg, alpha, beta):
    f, g = fg
    combo = f.scale(alpha) + g.scale(beta)
    assert zeta_transform(combo) == zeta_transform(f).scale(alpha) + zeta_transform(g).scale(beta)
    assert mobius_transform(combo) == mobius_transform(f).scale(alpha) + mobius_transform(g).scale(beta)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 6).flatmap(lambda k: st.lists(st.integers(0, 1 << 90), min_size=1 << k, max_size=1 << k)))
def test_big_integers_stay_exact(vals):
    f = sf(vals)
    assert mobius_transform(zeta_transform(f)) == f
    assert union_product(f, f) == union_product_naive(f, f)


@settings(max_examples=40, deadline=None)
@given(pairs(max_k=5))
def test_modular_ring(fg):
    f, g = (SetFunction(x.universe, x.values, P) for x in fg)
    assert all(0 <= v < P for v in zeta_transform(f).tolist())
    assert mobius_transform(zeta_transform(f)) == f
    assert zeta_transform(union_product(f, g)) == pointwise_product(zeta_transform(f), zeta_transform(g))
