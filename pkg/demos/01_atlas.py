"""
Superattracting parameters on the top edge
==========================================

At b = 1 the critical point x = 1/2 of the circle map is degenerate, and a
parameter a is superattracting of period p when 1/2 returns to itself after
p steps.  There is one such parameter per periodic point of the doubling
map, so 2^p - 1 of them at period p.
"""

import numpy as np

from doublestandard import BinaryType, atlas_up_to, classify_param, superattracting_atlas
from doublestandard.atlas import return_value
from doublestandard.circle_map import CircleParams

# The return value h(a) = F^p(1/2) - 1/2 climbs 2^p - 1 levels as a goes once
# around, and it does so with slope at least one.
a = np.linspace(0.0, 1.0, 2001)
for p in (1, 2, 3):
    h = np.array([return_value(x, p) for x in a]) - 0.5
    print(f"p={p}: h(1) - h(0) = {h[-1] - h[0]:.12f}, min slope {np.min(np.diff(h) / np.diff(a)):.4f}")

# Each integer level crossed is one superattracting parameter.
for p in range(1, 9):
    print(f"period {p}: {len(superattracting_atlas(p))} parameters")

# Everything up to period three, sorted by a.
for e in atlas_up_to(3):
    s = classify_param(CircleParams(e.a_super, 1.0))
    print(f"  tau = {str(e.type):>4}  a = {e.a_super:.6f}  multiplier {s.cycle.multiplier:.1e}")

# The type of the period-1 entry is 0 and it sits at a = 1/2.
print(BinaryType(0, 1), superattracting_atlas(1)[0].a_super)
