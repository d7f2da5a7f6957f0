"""
Two pictures of the parameter plane
===================================

The first image colors (a, b) by the period of the attracting circle cycle.
The second follows the inner critical point of the complexified map and
colors by its fate: blue when it is captured by a circle cycle, red and green
when it escapes to 0 or infinity.  Where they overlap the two pictures agree.
"""

import sys
from pathlib import Path

import numpy as np

from doublestandard import _kernels as K
from doublestandard.render import RenderManifest, render

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out.mkdir(exist_ok=True)

tongues = RenderManifest((0.0, 1.0, 0.0, 1.0), 512, 256, "tongues")
complex_ = RenderManifest.default("complex_classes", 256, 256)
for name, man in (("tongues", tongues), ("complex", complex_)):
    res = render(man)
    (out / f"{name}.ppm").write_bytes(res.ppm_bytes())
    (out / f"{name}.legend.csv").write_text(res.legend_csv())
    (out / f"{name}.manifest.json").write_text(man.to_json())
    print(f"wrote {out / name}.ppm")

# Cell-by-cell comparison on the strip both pictures share.
shared = (0.0, 1.0, 0.5, 1.0)
t = render(RenderManifest(shared, 256, 128, "tongues")).grid
c = render(RenderManifest(shared, 256, 128, "complex_classes")).grid
keep = (t.outcome != K.T_UNDECIDED) & (c.cls != K.CLS_UNDECIDED)
agree = ((t.outcome == K.T_IN) == (c.cls == K.CLS_CIRCLE))[keep]
print(f"agreement on the shared strip: {100 * agree.mean():.2f}% of {keep.sum()} cells")
