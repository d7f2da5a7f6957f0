"""
Linearizing an attracting cycle and changing its multiplier
===========================================================

Near an attracting fixed point of the complexified map, the Koenigs chart
turns g into multiplication by the multiplier.  Composing with a radial
stretch moves the multiplier to any other value in (0, 1), at the price of a
Beltrami coefficient of constant modulus.
"""

import cmath

from doublestandard.complex_map import ComplexParams, classify_critical_orbit, g_eval
from doublestandard.linearization import (
    composed_dilatation,
    deformation_step,
    koenigs_chart,
    koenigs_derivative,
    koenigs_eval,
)

params = ComplexParams(0.47, 0.85)
orbit = classify_critical_orbit(params)
chart = koenigs_chart(params, orbit.cycle)
x0 = chart.base
print(f"fixed point at angle {cmath.phase(x0) / (2 * cmath.pi):.6f}, multiplier {chart.lambda_:.6f}")
print(f"chart radius {chart.radius:.3g}, derivative at base {koenigs_derivative(chart, x0):.6f}")

# The functional equation on a few points of a small circle around x0.
for k in range(4):
    z = x0 + 0.5 * chart.radius * cmath.exp(2j * cmath.pi * k / 4)
    lhs = koenigs_eval(chart, g_eval(params, z))
    print(f"  |phi(g z) - lambda phi(z)| = {abs(lhs - chart.lambda_ * koenigs_eval(chart, z)):.2e}")

# Reflection through the circle: with this normalization the chart picks up
# the unimodular factor conj(x0)^4.
z = x0 + 0.3 * chart.radius
ratio = koenigs_eval(chart, 1 / z.conjugate()).conjugate() / koenigs_eval(chart, z)
print(f"reflected ratio {ratio:.6f} vs conj(x0)^4 = {x0.conjugate() ** 4:.6f}")

# Moving the multiplier to rho.
for rho in (0.05, 0.3, 0.9):
    step = deformation_step(chart.lambda_, rho)
    mu = composed_dilatation(chart, step.alpha, z)
    print(f"rho={rho}: alpha={step.alpha:+.4f} |mu|={step.mu_modulus:.4f} (sampled {abs(mu):.4f})")
