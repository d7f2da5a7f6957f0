import cmath
import math

import mpmath
import numpy as np
import pytest

from doublestandard.atlas import classify_param
from doublestandard.circle_map import CircleParams, eval_circle
from doublestandard.complex_map import (
    ComplexParams,
    OrbitTag,
    canonicalize_rotation,
    classify_critical_orbit,
    critical_points,
    distinguished_point,
    g_derivative,
    g_eval,
    g_general,
    g_iterate,
    params_from_critical_data,
)
from doublestandard.config import DEFAULT_CONFIG
from doublestandard.cycles import find_attracting_cycle
from doublestandard.errors import DegenerateB, InconsistentData, MapOverflow, NoConvergence
from doublestandard.semiconjugacy import type_from_point


def test_value_at_one():
    for a, b in [(0.1, 0.3), (0.7, 1.8)]:
        assert g_eval(ComplexParams(a, b), 1.0) == pytest.approx(cmath.exp(2j * math.pi * a), abs=1e-15)


def test_value_at_i_high_precision():
    mpmath.mp.dps = 40
    want = complex(mpmath.mpc(0, 1) ** 2 * mpmath.exp(mpmath.mpf("0.7") * (mpmath.mpc(0, 1) - 1 / mpmath.mpc(0, 1))))
    got = g_eval(ComplexParams(0.0, 0.7), 1j)
    assert got == pytest.approx(want, abs=1e-14)
    assert want == pytest.approx(-cmath.exp(1.4j), abs=1e-14)


def test_reflection_symmetry():
    rng = np.random.default_rng(0)
    z = rng.uniform(0.3, 3, 10000) * np.exp(2j * np.pi * rng.uniform(0, 1, 10000))
    a = rng.uniform(0, 1, 10000)
    b = rng.uniform(0, 2, 10000)
    worst = 0.0
    for ai, bi, zi in zip(a, b, z):
        p = ComplexParams(ai, bi)
        lhs = g_eval(p, 1 / np.conj(zi))
        rhs = 1 / np.conj(g_eval(p, zi))
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    assert worst < 1e-12


def test_circle_compatibility():
    x = np.linspace(0, 1, 500, endpoint=False)
    for a, b in [(0.2, 0.5), (0.81, 1.0), (0.5, 0.0)]:
        w = g_eval(ComplexParams(a, b), np.exp(2j * np.pi * x))
        ang = np.mod(np.angle(w) / (2 * np.pi), 1.0)
        want = eval_circle(CircleParams(a, b), x)
        d = np.abs(ang - want) % 1
        assert np.max(np.minimum(d, 1 - d)) < 1e-12
        assert np.max(np.abs(np.abs(w) - 1)) < 1e-12


def test_overflow_and_zero():
    with pytest.raises(MapOverflow):
        g_eval(ComplexParams(0.1, 1.0), 1e-4)
    with pytest.raises(ValueError):
        g_eval(ComplexParams(0.1, 1.0), 0)
    with pytest.raises(ValueError):
        ComplexParams(0.1, -1.0)


def test_derivative_matches_difference():
    p = ComplexParams(0.3, 0.8)
    for z in [0.4 + 0.2j, -1.3 + 0.5j, 2j]:
        h = 1e-6
        fd = (g_eval(p, z + h) - g_eval(p, z - h)) / (2 * h)
        assert abs(g_derivative(p, z) - fd) < 1e-6 * abs(fd)
    w, d = g_iterate(p, 0.9 + 0.1j, 3)
    h = 1e-7
    fd = (g_iterate(p, 0.9 + 0.1j + h, 3)[0] - g_iterate(p, 0.9 + 0.1j - h, 3)[0]) / (2 * h)
    assert abs(d - fd) < 1e-5 * abs(fd)


def test_critical_points_double_root():
    assert critical_points(1.0) == (-1 + 0j, -1 + 0j)


def test_critical_points_real_pair():
    c1, c2 = critical_points(0.5)
    assert c1.real < 0 and c2.real < 0 and c1.imag == 0 and c2.imag == 0
    assert abs(c1) <= 1
    assert abs(c1 * c2 - 1) < 1e-12


def test_critical_points_b_zero():
    with pytest.raises(DegenerateB):
        critical_points(0.0)


@pytest.mark.parametrize("b", [0.05, 0.3, 0.77, 0.999, 1.0, 1.4, 3.0])
def test_critical_points_are_critical(b):
    p = ComplexParams(0.37, b)
    c1, c2 = critical_points(b)
    assert abs(c1 * c2 - 1) < 1e-12
    for c in (c1, c2):
        scale = abs(g_eval(p, c)) * (abs(b) + 2 / abs(c) + b / abs(c) ** 2)
        assert abs(g_derivative(p, c)) <= 1e-10 * scale


def test_params_from_critical_data_round_trip():
    p = ComplexParams(0.3, 0.8)
    om = critical_points(p.b)[0]
    q = params_from_critical_data(om, g_eval(p, om))
    assert q.a == pytest.approx(0.3, abs=1e-10) and q.b == pytest.approx(0.8, abs=1e-10)
    rng = np.random.default_rng(1)
    for _ in range(50):
        p = ComplexParams(rng.uniform(0, 1), rng.uniform(0.05, 0.99))
        for om in critical_points(p.b):
            q = params_from_critical_data(om, g_eval(p, om))
            da = abs(q.a - p.a) % 1
            assert min(da, 1 - da) < 1e-10 and abs(q.b - p.b) < 1e-10


def test_params_from_critical_data_b_one():
    v = g_eval(ComplexParams(0.2, 1.0), -1.0)
    assert params_from_critical_data(-1.0, v).b == pytest.approx(1.0, abs=1e-15)


def test_params_from_critical_data_inconsistent():
    p = ComplexParams(0.3, 0.8)
    om = critical_points(p.b)[0]
    with pytest.raises(InconsistentData):
        params_from_critical_data(om, 1.1 * g_eval(p, om))


def test_canonicalize_identity_and_rotation():
    lam = cmath.exp(2j * math.pi * 0.3)
    q, rho = canonicalize_rotation(lam, 0.7)
    assert rho == pytest.approx(1.0) and q.a == pytest.approx(0.3) and q.b == pytest.approx(0.7)
    th = 0.9
    _, rho = canonicalize_rotation(lam, 0.7 * cmath.exp(1j * th))
    assert rho == pytest.approx(cmath.exp(-1j * th), abs=1e-15)


def test_canonicalize_conjugation_pointwise():
    rng = np.random.default_rng(4)
    for _ in range(20):
        lam = cmath.exp(2j * math.pi * rng.uniform(0, 1))
        beta = rng.uniform(0.1, 2) * cmath.exp(2j * math.pi * rng.uniform(0, 1))
        q, rho = canonicalize_rotation(lam, beta)
        for z in rng.uniform(0.5, 1.5, 10) * np.exp(2j * np.pi * rng.uniform(0, 1, 10)):
            lhs = g_general(lam, beta, rho * z) / rho
            assert abs(lhs - g_eval(q, z)) < 1e-12 * max(1.0, abs(lhs))


def test_classify_superattracting():
    oc = classify_critical_orbit(ComplexParams(0.5, 1.0))
    assert oc.tag is OrbitTag.CIRCLE_ATTRACTING
    assert oc.distinguished == pytest.approx(0.5, abs=1e-9)


def test_classify_fixed_point():
    oc = classify_critical_orbit(ComplexParams(0.5, 0.9))
    assert oc.tag is OrbitTag.CIRCLE_ATTRACTING
    assert oc.cycle.points[0] == pytest.approx(0.5, abs=1e-12)
    assert oc.distinguished == pytest.approx(0.5, abs=1e-12)


def test_classify_finds_pair_attracting_somewhere():
    rng = np.random.default_rng(8)
    tags = set()
    for _ in range(400):
        tags.add(classify_critical_orbit(ComplexParams(rng.uniform(-0.5, 0.5), rng.uniform(1.0, 2.0))).tag)
        tags.add(classify_critical_orbit(ComplexParams(rng.uniform(0, 1), rng.uniform(0.5, 1.0))).tag)
    assert OrbitTag.PAIR_ATTRACTING in tags
    assert {OrbitTag.ESCAPE_ZERO, OrbitTag.CIRCLE_ATTRACTING} <= tags


def test_classify_b_zero():
    with pytest.raises(DegenerateB):
        classify_critical_orbit(ComplexParams(0.2, 0.0))


def test_distinguished_point_examples():
    p = ComplexParams(0.5, 0.9)
    cyc = find_attracting_cycle(CircleParams(0.5, 0.9))
    assert distinguished_point(p, cyc) == pytest.approx(0.5, abs=1e-12)
    p = ComplexParams(0.10280018173027317, 1.0)
    cyc = find_attracting_cycle(CircleParams(p.a, 1.0))
    assert distinguished_point(p, cyc) == pytest.approx(0.5, abs=1e-8)


def test_distinguished_point_stable_under_budget():
    cp = CircleParams(0.9, 0.97)
    cyc = find_attracting_cycle(cp)
    assert cyc.period == 2
    p = ComplexParams(cp.a, cp.b)
    x1 = distinguished_point(p, cyc)
    cfg2 = DEFAULT_CONFIG.__class__(**{**DEFAULT_CONFIG.to_dict(), "orbit_budget": 200000})
    assert distinguished_point(p, cyc, cfg2) == x1
    assert min(abs(x1 - x) for x in cyc.points) == 0.0


def test_distinguished_point_no_convergence():
    cp = CircleParams(0.9, 0.97)
    cyc = find_attracting_cycle(cp)
    cfg = DEFAULT_CONFIG.__class__(**{**DEFAULT_CONFIG.to_dict(), "orbit_budget": 2})
    with pytest.raises(NoConvergence):
        distinguished_point(ComplexParams(cp.a, cp.b), cyc, cfg)


def test_both_critical_orbits_agree_and_type_matches():
    rng = np.random.default_rng(6)
    n = 0
    while n < 20:
        a, b = rng.uniform(0, 1), rng.uniform(0.55, 1.0)
        s = classify_param(CircleParams(a, b))
        if not s.in_tongue:
            continue
        n += 1
        p = ComplexParams(a, b)
        cyc = s.cycle
        xi = distinguished_point(p, cyc)
        xo = distinguished_point(p, cyc, outer=True)
        assert xi == xo
        assert type_from_point(CircleParams(a, b), xi, cyc.period) == s.type


def test_multiplier_is_real():
    for a, b in [(0.5, 0.9), (0.9, 0.97), (0.8245941407968072, 0.97)]:
        cyc = find_attracting_cycle(CircleParams(a, b))
        z0 = cmath.exp(2j * math.pi * cyc.points[0])
        _, d = g_iterate(ComplexParams(a, b), z0, cyc.period)
        assert abs(d.imag) < 1e-9
        assert abs(d.real - cyc.multiplier) < 1e-9
