"""Parameter-plane rasters: the tongue picture of the real family and the
critical-orbit classes of the complex family, written as binary PPM (P6).

A :class:`RenderManifest` fixes every input, and equal manifests give equal
bytes whatever the thread count.
"""

import colorsys
import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from ._raster import orbit_grid, tongue_grid
from .atlas import Window
from .circle_map import reduce_angle
from .config import DEFAULT_CONFIG, SolverConfig
from .semiconjugacy import BinaryType

MODES = ("tongues", "complex_classes")

COMPLEX_PALETTE = {
    "circle_attracting": (0, 0, 255),
    "escape_zero": (255, 0, 0),
    "escape_infinity": (0, 255, 0),
    "pair_attracting": (255, 200, 0),
    "undecided": (0, 0, 0),
}

_CLS_KEY = {
    K.CLS_CIRCLE: "circle_attracting",
    K.CLS_PAIR: "pair_attracting",
    K.CLS_ESCAPE_ZERO: "escape_zero",
    K.CLS_ESCAPE_INF: "escape_infinity",
    K.CLS_UNDECIDED: "undecided",
}


def tongue_palette(max_period=DEFAULT_CONFIG.max_period):
    """No attractor white, undecided grey, period p at an evenly spaced hue."""
    pal = {"no_attractor": (255, 255, 255), "undecided": (128, 128, 128)}
    for p in range(1, max_period + 1):
        r, g, b = colorsys.hsv_to_rgb(((p - 1) * 0.618033988749895) % 1.0, 0.85, 0.8)
        pal[f"period_{p}"] = (round(r * 255), round(g * 255), round(b * 255))
    return pal


def default_palette(mode, cfg=DEFAULT_CONFIG):
    if mode == "tongues":
        return tongue_palette(cfg.max_period)
    if mode == "complex_classes":
        return dict(COMPLEX_PALETTE)
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def _version():
    from . import __version__
    return __version__


@dataclass(frozen=True)
class RenderManifest:
    window: tuple
    width: int
    height: int
    mode: str
    palette: dict = field(default=None)
    cfg: SolverConfig = DEFAULT_CONFIG
    tool_version: str = field(default_factory=_version)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if int(self.width) < 1 or int(self.height) < 1:
            raise ValueError("width and height must be >= 1")
        win = tuple(float(v) for v in self.window)
        if len(win) != 4:
            raise ValueError("window is (a_min, a_max, b_min, b_max)")
        Window(*win)
        object.__setattr__(self, "window", win)
        object.__setattr__(self, "width", int(self.width))
        object.__setattr__(self, "height", int(self.height))
        pal = self.palette if self.palette is not None else default_palette(self.mode, self.cfg)
        object.__setattr__(self, "palette", {k: tuple(int(c) for c in v) for k, v in pal.items()})

    @classmethod
    def default(cls, mode, width=512, height=256, window=None, cfg=DEFAULT_CONFIG):
        if window is None:
            window = (0.0, 1.0, 0.0, 1.0) if mode == "tongues" else (-0.5, 0.5, 0.0, 2.0)
        return cls(window, width, height, mode, cfg=cfg)

    def to_dict(self):
        return {
            "window": list(self.window),
            "width": self.width,
            "height": self.height,
            "mode": self.mode,
            "palette": {k: list(v) for k, v in self.palette.items()},
            "cfg": self.cfg.to_dict(),
            "tool_version": self.tool_version,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, data):
        return cls(
            window=tuple(data["window"]),
            width=data["width"],
            height=data["height"],
            mode=data["mode"],
            palette=data.get("palette"),
            cfg=SolverConfig.from_dict(data.get("cfg", {})),
            tool_version=data.get("tool_version", _version()),
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class Render:
    image: np.ndarray  # (height, width, 3) uint8, row 0 at b_max
    legend: list  # rows of dicts
    grid: object

    def ppm_bytes(self):
        return ppm_bytes(self.image)

    def legend_csv(self):
        return legend_csv(self.legend)


def ppm_bytes(image):
    h, w, _ = image.shape
    return f"P6\n{w} {h}\n255\n".encode("ascii") + np.ascontiguousarray(image, np.uint8).tobytes()


def read_ppm(data):
    """Inverse of :func:`ppm_bytes` for the exact header it writes."""
    magic, dims, maxval, rest = data.split(b"\n", 3)
    if magic != b"P6" or maxval != b"255":
        raise ValueError("not a P6 pixmap with maxval 255")
    w, h = (int(t) for t in dims.split())
    return np.frombuffer(rest, dtype=np.uint8).reshape(h, w, 3)


def legend_csv(rows):
    buf = io.StringIO()
    cols = ["key", "type", "period", "r", "g", "b", "pixels"]
    wr = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    wr.writeheader()
    for row in rows:
        wr.writerow({c: row.get(c, "") for c in cols})
    return buf.getvalue()


def _centers(manifest):
    return Window(*manifest.window).centers(manifest.width, manifest.height)


def render_tongue_plane(manifest, threads=None):
    """Color each cell center by its tongue outcome, hue by cycle period.

    The legend has one row per type present, then the no-attractor and
    undecided counts.
    """
    if manifest.mode != "tongues":
        raise ValueError("manifest mode must be 'tongues'")
    a, b = _centers(manifest)
    grid = tongue_grid(reduce_angle(a), b, manifest.cfg, threads)
    pal = manifest.palette
    img = np.empty(grid.outcome.shape + (3,), dtype=np.uint8)
    img[grid.outcome == K.T_NONE] = pal["no_attractor"]
    img[grid.outcome == K.T_UNDECIDED] = pal["undecided"]
    inside = grid.outcome == K.T_IN
    for p in np.unique(grid.period[inside]):
        img[inside & (grid.period == p)] = pal[f"period_{int(p)}"]
    legend = []
    pairs = np.stack([grid.period[inside], grid.knum[inside]], axis=1)
    if pairs.size:
        uniq, counts = np.unique(pairs, axis=0, return_counts=True)
        for (p, k), n in zip(uniq, counts):
            tau = BinaryType.from_numerator(int(k), int(p))
            rgb = pal[f"period_{int(p)}"]
            legend.append({"key": tau.label, "type": str(tau), "period": int(p),
                           "r": rgb[0], "g": rgb[1], "b": rgb[2], "pixels": int(n)})
    for key, code in (("no_attractor", K.T_NONE), ("undecided", K.T_UNDECIDED)):
        rgb = pal[key]
        legend.append({"key": key, "type": "", "period": "", "r": rgb[0], "g": rgb[1],
                       "b": rgb[2], "pixels": int(np.sum(grid.outcome == code))})
    return Render(img, legend, grid)


def render_complex_plane(manifest, threads=None):
    """Color each cell center by the fate of the inner critical orbit."""
    if manifest.mode != "complex_classes":
        raise ValueError("manifest mode must be 'complex_classes'")
    a, b = _centers(manifest)
    grid = orbit_grid(reduce_angle(a), b, manifest.cfg, threads)
    pal = manifest.palette
    img = np.empty(grid.cls.shape + (3,), dtype=np.uint8)
    legend = []
    for code, key in _CLS_KEY.items():
        sel = grid.cls == code
        img[sel] = pal[key]
        rgb = pal[key]
        legend.append({"key": key, "type": "", "period": "", "r": rgb[0], "g": rgb[1],
                       "b": rgb[2], "pixels": int(sel.sum())})
    return Render(img, legend, grid)


def render(manifest, threads=None):
    if manifest.mode == "tongues":
        return render_tongue_plane(manifest, threads)
    return render_complex_plane(manifest, threads)
