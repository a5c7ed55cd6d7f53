"""Tests for the trigonometric Laurent polynomial algebra."""

from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phaseclone import (
    AffineForm,
    FirstOrderPoly,
    FullForm,
    LaurentPoly,
    NotDivisibleError,
    PureNegForm,
    ZeroDivisorError,
    ZeroPolynomialError,
    contains_root,
    exact_div,
    expand,
    factorize,
    has_second_order,
    mul,
)

from helpers import eval_on_grid, fp, grid, random_first_order

SQRT3 = math.sqrt(3.0)


# ---------------------------------------------------------------- evaluation

def test_eval_quarter_square():
    p = fp(0.25, 0.25, 0.5)  # (1/4)(e^{i phi}+1)(e^{-i phi}+1)
    assert p.eval(0.0) == pytest.approx(1.0)
    assert abs(p.eval(math.pi)) < 1e-15


def test_eval_zero_poly():
    z = FirstOrderPoly.zero()
    for phi in (0.0, 1.0, 2.5, math.pi):
        assert z.eval(phi) == 0


def test_eval_rejects_non_finite():
    with pytest.raises(ValueError):
        FirstOrderPoly(float("nan"), 0, 0)
    with pytest.raises(ValueError):
        FirstOrderPoly(0, complex(0, float("inf")), 0)


# ------------------------------------------------------------- real-valued

def test_real_valued_examples():
    assert fp(0.25, 0.25, 0.5).is_real_valued(1e-12)
    assert not fp(1j, 1j, 0).is_real_valued(1e-12)


def test_real_valued_random_conjugate_pair():
    rng = np.random.default_rng(7)
    for _ in range(50):
        alpha = rng.normal() + 1j * rng.normal()
        p = FirstOrderPoly(alpha, alpha.conjugate(), rng.normal())
        assert p.is_real_valued(1e-12)
        # independent oracle: imaginary part vanishes on a phase grid
        assert np.max(np.abs(eval_on_grid(p, grid(64)).imag)) < 1e-12


# -------------------------------------------------------------------- mul

def test_mul_opposite_frequencies():
    assert mul(fp(1, 0, 0), fp(0, 1, 0)).as_dict() == {0: 1}


def test_mul_negative_shift_square():
    assert mul(fp(0, 1, 1), fp(0, 1, 1)).as_dict() == {-2: 1, -1: 2, 0: 1}


def test_mul_counterexample_offdiagonals():
    # product of the two (e^{-i phi}+1) entries feeding the 4 e^{-i phi} slot
    lp = mul(fp(0, 1, 1), fp(0, 1, 1))
    assert lp.isclose(LaurentPoly.from_dict({-2: 1, -1: 2, 0: 1}), 0)


def test_mul_commutative_exact():
    rng = np.random.default_rng(11)
    for _ in range(200):
        p, q = random_first_order(rng), random_first_order(rng)
        assert mul(p, q) == mul(q, p)


finite = st.complex_numbers(allow_nan=False, allow_infinity=False, min_magnitude=0, max_magnitude=1e2)
polys = st.builds(FirstOrderPoly, finite, finite, finite)


@settings(max_examples=150, deadline=None)
@given(polys, polys, polys)
def test_mul_bilinear(p, q, r):
    left = mul(p + r, q)
    right = mul(p, q) + mul(r, q)
    scale = 1.0 + left.max_abs() + right.max_abs()
    assert left.distance(right) <= 1e-12 * scale


# --------------------------------------------------------------- exact_div

def test_exact_div_counterexample_entry():
    num = LaurentPoly.from_dict({-2: 1, -1: 2, 0: 1})
    q = exact_div(num, fp(0.25, 0.25, 0.5))
    assert q.distance(fp(0, 4, 0)) == 0


def test_exact_div_self_quotient():
    rng = np.random.default_rng(3)
    for _ in range(50):
        p = random_first_order(rng)
        q = exact_div(p.as_laurent(), p, 1e-10)
        assert q.distance(fp(0, 0, 1)) < 1e-12


def test_exact_div_degree_overflow():
    num = LaurentPoly.from_dict({2: 1})
    den = fp(0, 1, 0)
    with pytest.raises(NotDivisibleError) as exc:
        exact_div(num, den)
    assert exc.value.residual > 0.5
    # Oracle: the pointwise ratio e^{3 i phi} has no first-order content, so
    # projecting it onto span{e^{i phi}, 1, e^{-i phi}} leaves a large residual.
    phis = grid(64)
    ratio = np.exp(3j * phis)
    coeffs = [np.mean(ratio * np.exp(-1j * k * phis)) for k in (1, 0, -1)]
    fit = sum(c * np.exp(1j * k * phis) for c, k in zip(coeffs, (1, 0, -1)))
    assert np.max(np.abs(ratio - fit)) > 0.9


def test_exact_div_zero_divisor():
    with pytest.raises(ZeroDivisorError):
        exact_div(LaurentPoly.from_dict({0: 1}), FirstOrderPoly.zero())


def test_exact_div_zero_numerator():
    q = exact_div(LaurentPoly.zero(), fp(1, 2, 3))
    assert q == FirstOrderPoly.zero()


def test_exact_div_inverts_mul():
    rng = np.random.default_rng(17)
    for _ in range(500):
        p = random_first_order(rng)
        q = random_first_order(rng)
        got = exact_div(mul(p, q), q, 1e-10)
        assert got.distance(p) <= 1e-10 * (1.0 + p.max_abs())


def test_exact_div_affine_and_pure_divisors():
    rng = np.random.default_rng(23)
    for _ in range(100):
        p = random_first_order(rng)
        affine = fp(0, rng.normal() + 1j * rng.normal(), rng.normal() + 2.0)
        got = exact_div(mul(p, affine), affine, 1e-10)
        assert got.distance(p) <= 1e-9
        pure = fp(0, rng.normal() + 2.0, 0)
        got = exact_div(mul(p, pure), pure, 1e-10)
        assert got.distance(p) <= 1e-9


# --------------------------------------------------------------- factorize

def test_factorize_double_root():
    form = factorize(fp(0.25, 0.25, 0.5))
    assert isinstance(form, FullForm)
    assert form.scale == pytest.approx(0.25)
    assert form.w0 == pytest.approx(1.0)
    assert form.w1 == pytest.approx(1.0)


def test_factorize_separated_roots():
    form = factorize(fp(0.125, 0.125, 0.5))
    assert isinstance(form, FullForm)
    roots = sorted((form.w0, form.w1), key=abs)
    assert roots[0] == pytest.approx(2.0 - SQRT3, abs=1e-10)
    assert roots[1] == pytest.approx(2.0 + SQRT3, abs=1e-10)
    # canonical order puts the smaller-magnitude root first
    assert abs(form.w0) <= abs(form.w1)


def test_factorize_pure_negative():
    form = factorize(fp(0, 1, 0))
    assert isinstance(form, PureNegForm)
    assert form.b == 1


def test_factorize_affine():
    form = factorize(fp(0, 0.5, 2.0))
    assert isinstance(form, AffineForm)
    assert form.scale == 2.0
    assert form.w == pytest.approx(0.25)


def test_factorize_zero_raises():
    with pytest.raises(ZeroPolynomialError):
        factorize(FirstOrderPoly.zero())


# ------------------------------------------------------------------ expand

def test_expand_double_root():
    assert expand(FullForm(0.25, 1.0, 1.0)).distance(fp(0.25, 0.25, 0.5)) == 0


def test_expand_affine_constant():
    assert expand(AffineForm(3.5, 0.0)).distance(fp(0, 0, 3.5)) == 0


@settings(max_examples=150, deadline=None)
@given(
    st.complex_numbers(allow_nan=False, allow_infinity=False, min_magnitude=1e-2, max_magnitude=1e2),
    st.complex_numbers(allow_nan=False, allow_infinity=False, min_magnitude=0, max_magnitude=1e2),
    st.complex_numbers(allow_nan=False, allow_infinity=False, min_magnitude=0, max_magnitude=1e2),
)
def test_expand_factorize_round_trip_random_full(scale, w0, w1):
    p = expand(FullForm(scale, w0, w1))
    q = expand(factorize(p))
    phis = grid(64)
    diff = np.max(np.abs(eval_on_grid(p, phis) - eval_on_grid(q, phis)))
    ref = 1.0 + np.max(np.abs(eval_on_grid(p, phis)))
    assert diff <= 1e-9 * ref


def test_round_trip_bulk_and_scale_invariance():
    rng = np.random.default_rng(101)
    phis = grid(64)
    for _ in range(2000):
        p = random_first_order(rng)
        q = expand(factorize(p))
        ref = 1.0 + np.max(np.abs(eval_on_grid(p, phis)))
        assert np.max(np.abs(eval_on_grid(p, phis) - eval_on_grid(q, phis))) <= 1e-9 * ref

        k = rng.uniform(0.25, 4.0) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        fa, fb = factorize(p), factorize(k * p)
        assert isinstance(fa, FullForm) and isinstance(fb, FullForm)
        assert abs(fa.w0 - fb.w0) <= 1e-7 * (1 + abs(fa.w0))
        assert abs(fa.w1 - fb.w1) <= 1e-7 * (1 + abs(fa.w1))


# ----------------------------------------------------------- contains_root

def test_contains_root_double():
    assert contains_root(fp(0.125, 0.125, 0.25), 1.0) == 2


def test_contains_root_single():
    assert contains_root(fp(0, 1, 1), 1.0) == 1


def test_contains_root_constant():
    assert contains_root(fp(0, 0, 1), 1.0) == 0


def test_contains_root_rejects_zero():
    with pytest.raises(ValueError):
        contains_root(fp(1, 1, 1), 0.0)


def test_contains_root_matches_grid_zero_for_unit_roots():
    # For |z| = 1 the factor (x + z) vanishes exactly at e^{i phi} = -z;
    # check containment against that evaluation, which is an independent
    # criterion.
    rng = np.random.default_rng(29)
    for _ in range(100):
        z = cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        other = rng.uniform(0.2, 2.0) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        with_root = expand(FullForm(1.0 + rng.random(), z, other))
        without = random_first_order(rng)
        phi_star = cmath.phase(-z) % (2 * math.pi)
        assert contains_root(with_root, z) >= 1
        assert abs(with_root.eval(phi_star)) < 1e-10
        has = contains_root(without, z) >= 1
        vanishes = abs(without.eval(phi_star)) < 1e-10
        assert has == vanishes


# --------------------------------------------------------- second order

def test_has_second_order_true():
    assert has_second_order(LaurentPoly.from_dict({-2: 1, -1: 2, 0: 1}))


def test_has_second_order_false_constant():
    assert not has_second_order(LaurentPoly.from_dict({0: 1}))


def test_has_second_order_footnote_product():
    assert not has_second_order(mul(fp(0, 0, 1), fp(1, 0, 0)))


# ------------------------------------------------------------- structure

def test_laurent_degree_bounds():
    with pytest.raises(ValueError):
        LaurentPoly.from_dict({3: 1})
    with pytest.raises(ValueError):
        LaurentPoly.from_dict({0: 1}).coeff(5)


def test_conjugate_matches_pointwise():
    rng = np.random.default_rng(31)
    p = random_first_order(rng)
    q = p.conjugate()
    for phi in grid(16):
        assert q.eval(phi) == pytest.approx(p.eval(phi).conjugate())
