"""The complexification g_{a,b}(z) = e^{2 pi i a} z^2 exp(b (z - 1/z)) on C*.

On the unit circle g_{a,b}(e^{2 pi i x}) = e^{2 pi i f_{a,b}(x)}.  The map is
symmetric with respect to the circle: g(1/conj z) = 1/conj g(z).

Orbits are iterated internally in the logarithmic coordinate Z
(z = e^{2 pi i Z}), where g becomes F(Z) = 2Z + a + (b/pi) sin(2 pi Z).
"""

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels as K
from .circle_map import reduce_angle
from .config import DEFAULT_CONFIG
from .cycles import Cycle, refine_cycle
from .errors import DegenerateB, InconsistentData, MapOverflow, NoConvergence

_EXP_LIMIT = 700.0


@dataclass(frozen=True)
class ComplexParams:
    """(a, b) with b >= 0; unlike :class:`CircleParams`, b > 1 is allowed."""

    a: float
    b: float

    def __post_init__(self):
        if not self.b >= 0.0:
            raise ValueError(f"b must be >= 0, got {self.b}")
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))

    @property
    def circle_monotone(self):
        return self.b <= 1.0


def _check_nonzero(z):
    if np.any(np.asarray(z) == 0):
        raise ValueError("g is not defined at z = 0")


def g_eval(params, z):
    _check_nonzero(z)
    z = np.asarray(z, dtype=complex)
    expo = params.b * (z - 1.0 / z)
    if np.any(np.abs(expo.real) > _EXP_LIMIT):
        raise MapOverflow("|b Re(z - 1/z)| too large; clamp with the escape threshold first")
    out = np.exp(2j * np.pi * params.a) * z * z * np.exp(expo)
    return complex(out) if out.ndim == 0 else out


def g_derivative(params, z):
    """g'(z) = g(z) (b z^2 + 2 z + b) / z^2."""
    z = np.asarray(z, dtype=complex)
    out = g_eval(params, z) * (params.b * z * z + 2.0 * z + params.b) / (z * z)
    return complex(out) if np.ndim(out) == 0 else out


def g_iterate(params, z, n):
    """(g^n(z), (g^n)'(z)) by the chain rule."""
    d = 1.0 + 0j
    z = complex(z)
    for _ in range(n):
        d *= g_derivative(params, z)
        z = g_eval(params, z)
    return z, d


def g_general(lambda_front, b_complex, z):
    """Symmetric member lambda z^2 exp(beta z - conj(beta)/z), |lambda| = 1."""
    z = np.asarray(z, dtype=complex)
    out = lambda_front * z * z * np.exp(b_complex * z - np.conj(b_complex) / z)
    return complex(out) if out.ndim == 0 else out


def critical_points(b):
    """Roots of b z^2 + 2 z + b, the inner one (|z| <= 1) first.

    For b < 1 both are negative reals with product 1; b = 1 gives the double
    root -1; for b > 1 they are conjugate points of the unit circle (the one
    with positive imaginary part is returned first).
    """
    if b == 0:
        raise DegenerateB("b = 0 has no critical points in C*")
    if b < 0:
        raise ValueError("b must be > 0")
    if b < 1.0:
        inner = -b / (1.0 + math.sqrt(1.0 - b * b))
        return complex(inner), complex(1.0 / inner)
    if b == 1.0:
        return complex(-1.0), complex(-1.0)
    s = math.sqrt(b * b - 1.0)
    return complex(-1.0, s) / b, complex(-1.0, -s) / b


def params_from_critical_data(omega, critical_value, tol=1e-9):
    """Recover (a, b) from a critical point and its critical value.

    b = -2 omega / (1 + omega^2) (both critical points give the same b), and
    e^{2 pi i a} = v / (omega^2 e^{b (omega - 1/omega)}).
    """
    omega = complex(omega)
    denom = 1.0 + omega * omega
    if abs(denom) < 1e-300:
        raise InconsistentData("1 + omega^2 = 0")
    bc = -2.0 * omega / denom
    if abs(bc.imag) > tol * max(1.0, abs(bc)) or bc.real <= 0:
        raise InconsistentData(f"omega={omega} does not belong to the symmetric real family")
    b = bc.real
    rot = complex(critical_value) / (omega * omega * cmath.exp(b * (omega - 1.0 / omega)))
    if abs(abs(rot) - 1.0) > tol:
        raise InconsistentData(f"critical value has the wrong modulus (|ratio| = {abs(rot):.12g})")
    a = reduce_angle(cmath.phase(rot) / (2.0 * math.pi))
    return ComplexParams(a, b)


def canonicalize_rotation(lambda_front, b_complex):
    """Conjugate lambda z^2 exp(beta z - conj(beta)/z) by a rotation into the family.

    Returns (ComplexParams, rho) with rho the unit complex number making
    rho * beta real positive; then rho^{-1} g(rho z) = g_{a,|beta|}(z).
    """
    lambda_front = complex(lambda_front)
    b_complex = complex(b_complex)
    if b_complex == 0:
        raise ValueError("b_complex must be nonzero")
    rho = abs(b_complex) / b_complex
    lam = rho * lambda_front
    a = reduce_angle(cmath.phase(lam) / (2.0 * math.pi))
    return ComplexParams(a, abs(b_complex)), rho


class OrbitTag(enum.Enum):
    CIRCLE_ATTRACTING = "circle_attracting"
    PAIR_ATTRACTING = "pair_attracting"
    ESCAPE_ZERO = "escape_zero"
    ESCAPE_INFINITY = "escape_infinity"
    UNDECIDED = "undecided"


_TAGS = {
    K.CLS_CIRCLE: OrbitTag.CIRCLE_ATTRACTING,
    K.CLS_PAIR: OrbitTag.PAIR_ATTRACTING,
    K.CLS_ESCAPE_ZERO: OrbitTag.ESCAPE_ZERO,
    K.CLS_ESCAPE_INF: OrbitTag.ESCAPE_INFINITY,
    K.CLS_UNDECIDED: OrbitTag.UNDECIDED,
}


@dataclass(frozen=True)
class OrbitClass:
    tag: OrbitTag
    cycle: Optional[Cycle] = None
    distinguished: Optional[float] = None
    period: Optional[int] = None


def critical_lift(b):
    """Log-coordinate Z of the inner critical point (z = e^{2 pi i Z})."""
    if b <= 0:
        raise DegenerateB("b = 0 has no critical points in C*")
    return complex(K.critical_lift(float(b)))


def distinguished_point(params, cycle, cfg=DEFAULT_CONFIG, outer=False):
    """Angle of the cycle point in the basin component holding the critical points.

    The inner critical orbit (or the outer one, its reflection, with
    ``outer=True``) is followed until its p-subsampled iterates settle on
    one cycle point.
    """
    c = critical_lift(params.b)
    zi = -c.imag if outer else c.imag
    xs = np.array(cycle.points, dtype=float)
    j = K.distinguished_index(params.a, params.b, c.real, zi, xs, cfg.orbit_budget, 1e-8,
                              cfg.escape_log_threshold)
    if j < 0:
        raise NoConvergence("critical orbit did not settle on the cycle within the budget")
    return float(xs[j])


def classify_critical_orbit(params, cfg=DEFAULT_CONFIG):
    """Fate of the inner critical orbit of g_{a,b}.

    The outer critical point is the reflection of the inner one and has the
    reflected orbit, so it is not iterated here.
    """
    if params.b <= 0:
        raise DegenerateB("b = 0 has no critical points in C*")
    code, q, zr, _ = K.classify_orbit(params.a, params.b, cfg.orbit_budget, cfg.max_period,
                                      cfg.cycle_tol, cfg.escape_log_threshold, cfg.on_circle_tol)
    tag = _TAGS[code]
    if tag is OrbitTag.PAIR_ATTRACTING:
        return OrbitClass(tag, period=q)
    if tag is not OrbitTag.CIRCLE_ATTRACTING:
        return OrbitClass(tag)
    try:
        cyc = refine_cycle(params, zr, q, cfg)
        if abs(cyc.multiplier) >= 1.0 - cfg.root_tol:
            return OrbitClass(OrbitTag.UNDECIDED)
        xd = distinguished_point(params, cyc, cfg)
    except NoConvergence:
        return OrbitClass(OrbitTag.UNDECIDED)
    idx = min(range(cyc.period), key=lambda i: abs(cyc.points[i] - xd))
    return OrbitClass(tag, cycle=cyc.with_distinguished(idx), distinguished=xd, period=cyc.period)
