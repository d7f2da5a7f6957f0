"""
Tongues, their sections and tips
================================

A tongue collects the parameters whose map has an attracting cycle of a given
type.  Below b = 1/2 the map expands everywhere, so all tongues live in the
strip 1/2 < b <= 1.  This script slices a few of them horizontally and walks
one down to its tip.
"""

from doublestandard import BinaryType, cross_section, tongue_tip
from doublestandard.atlas import tip_exponent_estimate

taus = [BinaryType(0, 1), BinaryType(1, 2), BinaryType(2, 2), BinaryType(1, 3)]

# Horizontal slices.  The period-2 tongues have not appeared yet at b = 0.8.
for tau in taus:
    for b in (0.8, 0.9, 0.95, 1.0):
        iv = cross_section(tau, b)
        text = ", ".join(f"[{lo:.5f}, {hi:.5f}]" for lo, hi in iv) or "empty"
        print(f"tau={tau!s:>4} b={b:.2f}: {text}")

# The lowest b of each tongue.  Longer periods start higher up.
for tau in taus:
    print(f"tip of {tau}: {tongue_tip(tau):.5f}")

# How fast the width opens above the tip.  Exploratory only.
est = tip_exponent_estimate(BinaryType(1, 2))
print(f"width ~ (b - tip)^{est.exponent:.3f}, log residual {est.residual:.2e}")
