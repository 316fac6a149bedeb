"""Weierstrass models: discriminants, transforms, normalization."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2scan.model import (ModelTransform, WeierstrassModel, discriminant,
                          format_model, normalize_h, parse_model, poly_mul,
                          simplify, transform)
from tests.conftest import (CURVE_1665, CURVE_277A, CURVE_277B, CURVE_3732,
                            CURVE_QM)

small_ints = st.integers(min_value=-6, max_value=6)


def models(draw_f=small_ints, draw_h=st.integers(min_value=-3, max_value=3)):
    return st.builds(
        lambda f, h: WeierstrassModel(tuple(f), tuple(h)),
        st.lists(draw_f, min_size=7, max_size=7),
        st.lists(draw_h, min_size=4, max_size=4),
    )


def test_known_discriminants():
    assert discriminant(CURVE_277A) == 277
    assert discriminant(CURVE_277B) == 277
    assert abs(discriminant(CURVE_1665)) == 1665
    assert abs(discriminant(CURVE_QM)) == 524288
    assert discriminant(CURVE_3732) == 477696 == 2 ** 9 * 3 * 311


def test_singular_square_factor():
    # f = x^2 * quartic with h = 0 has Delta = 0
    f = poly_mul([0, 0, 1], [1, 2, 0, 1, 3])
    m = WeierstrassModel.make(f, [0, 0, 0, 0])
    assert discriminant(m) == 0
    assert not m.is_genus2()


def test_simplify():
    m = WeierstrassModel.make([1, 2, 3, 4, 5, 6, 7], [0, 0, 0, 0])
    assert simplify(m) == (4, 8, 12, 16, 20, 24, 28)
    m = WeierstrassModel.make([0] * 7, [1, 0, 0, 0])
    assert simplify(m) == (1, 0, 0, 0, 0, 0, 0)


def test_identity_transform():
    t = ModelTransform.make(1, 0, 0, 1)
    assert transform(CURVE_277A, t) == CURVE_277A


def test_scaling_transform():
    t = ModelTransform.make(1, 0, 0, 1, e=3)
    m = transform(CURVE_277A, t)
    assert discriminant(m) == 3 ** 20 * 277


def test_reversal_transform():
    m = WeierstrassModel.make([1, 2, 3, 4, 5, 6, 0], [1, 1, 1, 0])
    mt = transform(m, ModelTransform.make(0, 1, 1, 0))
    assert mt.f == (0, 6, 5, 4, 3, 2, 1)
    assert mt.h == (0, 1, 1, 1)
    assert discriminant(mt) == discriminant(m)


def test_transform_rejects_degenerate():
    with pytest.raises(ValueError):
        ModelTransform.make(1, 2, 2, 4)
    with pytest.raises(ValueError):
        ModelTransform.make(1, 0, 0, 1, e=0)


def test_covariance_random_1000():
    rng = random.Random(99)
    for _ in range(1000):
        m = WeierstrassModel(tuple(rng.randint(-5, 5) for _ in range(7)),
                             tuple(rng.randint(-3, 3) for _ in range(4)))
        while True:
            a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
            if a * d - b * c:
                break
        e = Fraction(rng.choice([1, 2, 3, -1, -2]), rng.choice([1, 2, 3]))
        j = [Fraction(rng.randint(-2, 2), rng.choice([1, 2])) for _ in range(4)]
        t = ModelTransform.make(a, b, c, d, e, j)
        assert discriminant(transform(m, t)) == \
            e ** 20 * Fraction(t.det) ** -30 * discriminant(m)


def test_normalize_h_constant_shift():
    m = WeierstrassModel.make([5, 1, 2, 3, 4, 5, 6], [2, 0, 0, 0])
    nm = normalize_h(m)
    assert nm.h == (0, 0, 0, 0)
    assert nm.f == (6, 1, 2, 3, 4, 5, 6)


def test_normalize_h_noop_when_already_reduced():
    m = WeierstrassModel.make([1, 2, 3, 4, 5, 6, 7], [1, 0, 1, 1])
    assert normalize_h(m) == m


@settings(max_examples=200, deadline=None)
@given(models())
def test_normalize_h_properties(m):
    nm = normalize_h(m)
    assert all(c in (0, 1) for c in nm.h)
    assert discriminant(nm) == discriminant(m)
    assert normalize_h(nm) == nm


@settings(max_examples=150, deadline=None)
@given(models())
def test_nonzero_disc_iff_squarefree_deg_5_or_6(m):
    s = simplify(m)
    deg = max((i for i, c in enumerate(s) if c), default=-1)
    sqfree = _squarefree_q(s) and deg >= 5
    assert (discriminant(m) != 0) == sqfree


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mod(a, b):
    a = list(a)
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        q = a[-1] / b[-1]
        off = len(a) - len(b)
        for i in range(len(b)):
            a[off + i] -= q * b[i]
        a.pop()
    return _trim(a)


def _squarefree_q(coeffs):
    """True iff gcd(s, s') over Q is constant (and s is nonzero)."""
    a = _trim([Fraction(c) for c in coeffs])
    if not a:
        return False
    b = _trim([Fraction(i * coeffs[i]) for i in range(1, len(coeffs))])
    while b:
        a, b = b, _poly_mod(a, b)
    return len(a) == 1


def test_encoding_roundtrip():
    enc = format_model(CURVE_277A)
    assert enc == "[[0,-1,-1,0,0,0,0],[1,1,1,1]]"
    assert parse_model(enc) == CURVE_277A
    with pytest.raises(ValueError):
        parse_model("[[1,2],[3]]")
    with pytest.raises(ValueError):
        parse_model("nonsense")
