"""Tongues of the double standard family f(x) = 2x + a + (b/pi) sin(2 pi x).

Real dynamics (cycles, the semiconjugacy to doubling, tongue membership and
the b = 1 atlas), the complexification on C*, Koenigs charts with the
deformation arithmetic built on them, and deterministic parameter-plane
rasters.
"""

__version__ = "0.1.0"

from .atlas import (
    AtlasEntry,
    ConnectivityReport,
    Outcome,
    TipExponent,
    TonguePath,
    TongueSample,
    Window,
    atlas_parameter,
    atlas_up_to,
    classify_param,
    connectivity_check,
    cross_section,
    path_to_superattracting,
    superattracting_atlas,
    tip_exponent_estimate,
    tongue_raster,
    tongue_tip,
)
from .circle_map import (
    CircleParams,
    eval_circle,
    eval_derivative,
    eval_lift,
    iterate_lift,
    reduce_angle,
)
from .complex_map import (
    ComplexParams,
    OrbitClass,
    OrbitTag,
    canonicalize_rotation,
    classify_critical_orbit,
    critical_points,
    distinguished_point,
    g_derivative,
    g_eval,
    g_iterate,
    params_from_critical_data,
)
from .config import DEFAULT_CONFIG, SolverConfig
from .cycles import Cycle, find_attracting_cycle, refine_cycle
from .errors import DomainError
from .linearization import (
    DeformationStep,
    KoenigsChart,
    alpha_for_multiplier,
    beltrami_of_stretch,
    composed_dilatation,
    deformation_step,
    koenigs_chart,
    koenigs_derivative,
    koenigs_eval,
    pullback_dilatation,
    radial_stretch,
)
from .render import RenderManifest, render, render_complex_plane, render_tongue_plane
from .semiconjugacy import BinaryType, all_types, phi_eval, phi_lift, type_from_point
