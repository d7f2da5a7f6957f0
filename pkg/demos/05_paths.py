"""
Climbing a tongue to its superattracting point
==============================================

From any parameter in a tongue, step b upward and keep a at the middle of the
current slice.  The path stays in the tongue and ends at the superattracting
parameter on b = 1, while the multiplier drains away to zero.
"""

from doublestandard import BinaryType, atlas_parameter, cross_section, path_to_superattracting
from doublestandard.circle_map import CircleParams

tau = BinaryType(2, 3)
lo, hi = cross_section(tau, 0.96)[0]
start = CircleParams(lo + 0.1 * (hi - lo), 0.96)
path = path_to_superattracting(tau, start)

for (a, b), lam in list(zip(path.vertices, path.multipliers))[::2]:
    print(f"  a={a:.6f} b={b:.5f} |lambda|={lam:.4f}")
print(f"end {path.end}, atlas a = {atlas_parameter(tau):.12f}, flagged steps {len(path.violations)}")
