import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from doublestandard.circle_map import (
    CircleParams,
    eval_circle,
    eval_derivative,
    eval_lift,
    iterate_lift,
    reduce_angle,
)

A = st.floats(-3.0, 3.0, allow_nan=False)
B = st.floats(0.0, 1.0)
X = st.floats(-5.0, 5.0, allow_nan=False)


def mp_lift(a, b, x):
    mpmath.mp.dps = 40
    a, b, x = mpmath.mpf(a), mpmath.mpf(b), mpmath.mpf(x)
    return 2 * x + a + b / mpmath.pi * mpmath.sin(2 * mpmath.pi * x)


def test_lift_linear_case():
    assert eval_lift(CircleParams(0, 0), 0.3) == pytest.approx(0.6, abs=1e-15)


def test_lift_at_half():
    assert eval_lift(CircleParams(0.5, 1), 0.5) == pytest.approx(1.5, abs=1e-15)


def test_lift_against_high_precision():
    got = eval_lift(CircleParams(0.25, 0.5), 0.125)
    want = float(mp_lift(0.25, 0.5, 0.125))
    assert got == pytest.approx(want, abs=1e-15)
    assert want == pytest.approx(0.5 + 0.5 / math.pi * math.sin(math.pi / 4), abs=1e-15)


def test_circle_doubling():
    assert eval_circle(CircleParams(0, 0), 0.75) == pytest.approx(0.5)


def test_circle_fixed_point_at_half():
    assert eval_circle(CircleParams(0.5, 1), 0.5) == pytest.approx(0.5, abs=1e-15)


def test_circle_matches_high_precision():
    got = eval_circle(CircleParams(0.1, 0.7), 0.9)
    want = float(mp_lift(0.1, 0.7, 0.9) % 1)
    assert 0 <= got < 1
    assert got == pytest.approx(want, abs=1e-14)


@pytest.mark.parametrize("b,x,want", [(1.0, 0.5, 0.0), (0.0, 0.37, 2.0), (0.9, 0.5, 0.2)])
def test_derivative_examples(b, x, want):
    assert eval_derivative(CircleParams(0.3, b), x) == pytest.approx(want, abs=1e-14)


def test_iterate_closed_form():
    assert iterate_lift(CircleParams(0.5, 1), 0.5, 3) == pytest.approx(7.5, abs=1e-12)


def test_iterate_zero_is_identity():
    assert iterate_lift(CircleParams(0.2, 0.4), 0.77, 0) == 0.77


def test_iterate_negative_rejected():
    with pytest.raises(ValueError):
        iterate_lift(CircleParams(0.2, 0.4), 0.77, -1)


def test_shift_identity_example():
    lo = iterate_lift(CircleParams(0.0, 0.6), 0.2, 4)
    hi = iterate_lift(CircleParams(1.0, 0.6), 0.2, 4)
    assert hi - lo == pytest.approx(15.0, abs=1e-12)


def test_params_validation():
    with pytest.raises(ValueError):
        CircleParams(0.1, 1.2)
    with pytest.raises(ValueError):
        CircleParams(0.1, -0.1)
    assert CircleParams(1.25, 0.5).angle == pytest.approx(0.25)


def test_reduce_angle_negative_tiny():
    assert reduce_angle(-1e-20) == 0.0
    arr = reduce_angle(np.array([-0.25, 1.0, 2.5]))
    assert np.allclose(arr, [0.75, 0.0, 0.5])


@given(X)
def test_reduce_angle_idempotent(x):
    r = reduce_angle(x)
    assert 0.0 <= r < 1.0
    assert reduce_angle(r) == r


def test_derivative_bound_grid():
    xs = np.linspace(0, 1, 2001)
    for b in np.linspace(0, 1, 101):
        d = eval_derivative(CircleParams(0.0, b), xs)
        assert d.min() >= 2 * (1 - b) - 1e-12


@given(A, B, X)
def test_degree_two(a, b, x):
    p = CircleParams(a, b)
    # exact up to the rounding of X + 1 itself
    assert eval_lift(p, x + 1) - eval_lift(p, x) == pytest.approx(2.0, abs=1e-12)


@settings(max_examples=50)
@given(A, B, X, st.integers(1, 10))
def test_shift_identity(a, b, x, p):
    lo = iterate_lift(CircleParams(a, b), x, p)
    hi = iterate_lift(CircleParams(a + 1, b), x, p)
    want = lo + (2 ** p - 1)
    assert abs(hi - want) <= 1e-9 * max(1.0, abs(want))


@given(B)
def test_half_is_fixed_for_a_half(b):
    p = CircleParams(0.5, b)
    assert eval_circle(p, 0.5) == pytest.approx(0.5, abs=1e-14)
    assert eval_derivative(p, 0.5) == pytest.approx(2 - 2 * b, abs=1e-14)
