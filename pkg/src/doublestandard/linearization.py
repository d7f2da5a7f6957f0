"""Koenigs linearization at an attracting circle cycle and the deformation
arithmetic built on it (radial stretch, Beltrami coefficients, pullbacks).

Solving the Beltrami equation itself is out of scope; everything here is
explicit arithmetic on the chart.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .complex_map import g_derivative, g_eval, g_iterate
from .config import DEFAULT_CONFIG
from .errors import AtBasePoint, CriticalOnOrbit, DomainEscape, NoConvergence, OutOfRange

# iterate until the orbit is this close to the base point, then correct to
# second order: truncation ~ |u|^2, roundoff ~ eps/|u|
_SETTLE = 1e-5
_ESCAPE = 0.5


def _g_second(params, z):
    """(g'(z), g''(z)) from g' = g q and g'' = g (q^2 + q')."""
    gz = g_eval(params, z)
    q = 2.0 / z + params.b * (1.0 + 1.0 / (z * z))
    dq = -2.0 / (z * z) - 2.0 * params.b / (z * z * z)
    return gz * q, gz * (q * q + dq)


@dataclass(frozen=True)
class KoenigsChart:
    """Linearizing chart phi of g^p at the cycle point ``base`` (|base| = 1).

    phi(base) = 0, phi o g^p = lambda_ phi, and phi'(base) = scale.  The
    default ``scale`` is i * base (unit speed, tangent to the circle,
    counter-clockwise).
    """

    params: object
    period: int
    base: complex
    lambda_: float
    depth: int
    scale: complex
    radius: float
    quad: complex  # second-order coefficient of the unnormalized chart

    def __call__(self, z):
        return koenigs_eval(self, z)


def _unnormalized(chart_like, z, want_derivative):
    """Limit lambda^{-n} (g^{pn}(z) - x0) with a second-order tail correction.

    Returns (value, derivative) for the chart with phi'(x0) = 1.
    """
    params, p, x0, lam, depth, B = chart_like
    w = complex(z)
    d = 1.0 + 0j
    ln = 1.0
    for n in range(depth + 1):
        u = w - x0
        if abs(u) < _SETTLE or (n > 0 and abs(u) < 1e-12):
            val = (u + B * u * u) / ln
            der = d * (1.0 + 2.0 * B * u) / ln if want_derivative else None
            return val, der
        if abs(u) > _ESCAPE:
            raise DomainEscape(f"orbit of {z} left the linearization domain")
        if want_derivative:
            w, dn = g_iterate(params, w, p)
            d *= dn
        else:
            for _ in range(p):
                w = g_eval(params, w)
        ln *= lam
    raise DomainEscape(f"orbit of {z} did not reach the base point within depth {depth}")


def _chart_tuple(chart):
    return (chart.params, chart.period, chart.base, chart.lambda_, chart.depth, chart.quad)


def koenigs_eval(chart, z):
    val, _ = _unnormalized(_chart_tuple(chart), z, False)
    return chart.scale * val


def koenigs_derivative(chart, z):
    """phi'(z) through the chain rule along the orbit."""
    _, der = _unnormalized(_chart_tuple(chart), z, True)
    return chart.scale * der


def koenigs_derivative_fd(chart, z, h=1e-7):
    """Central finite difference of the chart, kept as an independent check."""
    return (koenigs_eval(chart, z + h) - koenigs_eval(chart, z - h)) / (2 * h)


def koenigs_chart(params, cycle, cfg=DEFAULT_CONFIG, index=None, scale=None):
    """Build the chart at the distinguished cycle point (or ``cycle.points[index]``).

    The multiplier must lie in (0, 1): superattracting cycles need Böttcher
    coordinates, which are not provided.  The domain radius starts at 0.1
    and is halved until the functional equation holds to 1e-7 on a ring at
    half the radius.
    """
    lam = float(cycle.multiplier)
    if not 0.0 < lam < 1.0:
        raise OutOfRange(f"Koenigs chart needs a multiplier in (0, 1), got {lam}")
    if index is None:
        index = cycle.distinguished_index if cycle.distinguished_index is not None else 0
    x0 = cmath.exp(2j * math.pi * cycle.points[index])
    p = cycle.period
    # second derivative of g^p at x0 by the chain rule
    z, d1, d2 = x0, 1.0 + 0j, 0j
    for _ in range(p):
        g1, g2 = _g_second(params, z)
        d1, d2 = g1 * d1, g2 * d1 * d1 + g1 * d2
        z = g_eval(params, z)
    quad = (d2 / 2.0) / (lam - lam * lam)
    if scale is None:
        scale = 1j * x0
    radius = 0.1
    for _ in range(30):
        chart = KoenigsChart(params, p, x0, lam, cfg.koenigs_depth, complex(scale), radius, quad)
        try:
            if _ring_residual(chart, 0.5 * radius) < 1e-7:
                return chart
        except DomainEscape:
            pass
        radius *= 0.5
    raise NoConvergence("no linearization disk found")


def _ring_residual(chart, r, n=8):
    worst = 0.0
    for k in range(n):
        z = chart.base + r * cmath.exp(2j * math.pi * (k + 0.5) / n)
        gz = z
        for _ in range(chart.period):
            gz = g_eval(chart.params, gz)
        worst = max(worst, abs(koenigs_eval(chart, gz) - chart.lambda_ * koenigs_eval(chart, z)))
    return worst


def symmetric_scale(base):
    """The unit scale i * conj(base) for which conj(phi(1/conj z)) = phi(z).

    With the tangent scale i * base the reflected chart differs from phi by
    the constant factor conj(base)^4.
    """
    return 1j * complex(base).conjugate()


@dataclass(frozen=True)
class DeformationStep:
    lambda_: float
    rho: float
    alpha: float
    mu_modulus: float


def alpha_for_multiplier(lam, rho):
    """Stretch exponent sending multiplier lam to rho = lam^(1 + alpha)."""
    if not (0.0 < lam < 1.0 and 0.0 < rho < 1.0):
        raise OutOfRange(f"lambda and rho must lie in (0, 1), got {lam}, {rho}")
    return math.log(rho) / math.log(lam) - 1.0


def deformation_step(lam, rho):
    alpha = alpha_for_multiplier(lam, rho)
    return DeformationStep(lam, rho, alpha, abs(alpha / 2) / abs(1 + alpha / 2))


def radial_stretch(alpha, z):
    """chi(z) = |z|^alpha z."""
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise ValueError("z must be nonzero")
    out = np.abs(z) ** alpha * z
    return complex(out) if out.ndim == 0 else out


def beltrami_of_stretch(alpha, z):
    """mu_chi(z) = (alpha/2)/(1 + alpha/2) * z / conj(z)."""
    if not alpha > -1.0:
        raise OutOfRange("alpha must be > -1")
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise ValueError("z must be nonzero")
    out = (alpha / 2) / (1 + alpha / 2) * z / np.conj(z)
    return complex(out) if out.ndim == 0 else out


def composed_dilatation(chart, alpha, z):
    """Beltrami coefficient of chi o phi at z.

    Its modulus is |alpha/2| / |1 + alpha/2| everywhere; under the reflection
    z -> 1/conj(z) it transforms as mu(1/conj z) = conj(mu(z)) (z/conj z)^2.
    """
    if alpha == 0:
        return 0j
    val, der = _unnormalized(_chart_tuple(chart), z, True)
    if val == 0 or abs(complex(z) - chart.base) < 1e-14:
        raise AtBasePoint("the coefficient is undefined at the base point")
    phi = chart.scale * val
    dphi = chart.scale * der
    k = (alpha / 2) / (1 + alpha / 2)
    return k * (phi / phi.conjugate()) * (dphi.conjugate() / dphi)


def pullback_dilatation(params, mu_at_target, z, n):
    """mu(z) = conj((g^n)'(z)) / (g^n)'(z) * mu(g^n(z))."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return complex(mu_at_target)
    d = 1.0 + 0j
    w = complex(z)
    for _ in range(n):
        d *= g_derivative(params, w)
        w = g_eval(params, w)
    if d == 0:
        raise CriticalOnOrbit(f"(g^{n})'({z}) = 0")
    return (d.conjugate() / d) * complex(mu_at_target)
