"""Tongues of the real family: membership, the superattracting atlas at b = 1,
cross-sections, tips, connectedness on rasters, and paths to the atlas.
"""

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import ndimage

from . import _kernels as K
from ._raster import cell_centers, tongue_grid
from .circle_map import CircleParams, reduce_angle
from .config import DEFAULT_CONFIG
from .cycles import Cycle, cycle_from_point
from .errors import BisectionFailure, InsufficientData, PathBroken, TypeMismatch
from .semiconjugacy import BinaryType, type_from_point

# ---------------------------------------------------------------- membership


class Outcome(enum.Enum):
    IN_TONGUE = "in_tongue"
    NO_ATTRACTOR = "no_attractor"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class TongueSample:
    params: CircleParams
    outcome: Outcome
    type: Optional[BinaryType] = None
    cycle: Optional[Cycle] = None

    @property
    def in_tongue(self):
        return self.outcome is Outcome.IN_TONGUE

    def is_type(self, tau):
        return self.outcome is Outcome.IN_TONGUE and self.type == tau


def _classify_raw(a, b, cfg):
    return K.classify_tongue(float(a), float(b), cfg.max_transient, cfg.max_period,
                             cfg.cycle_tol, cfg.root_tol, cfg.orbit_budget,
                             cfg.escape_log_threshold)


def classify_param(params, cfg=DEFAULT_CONFIG):
    """Tongue membership of (a, b).

    The type is read off the distinguished cycle point xd: if F^p(xd) = xd + m
    then the semiconjugacy sends xd to m / (2^p - 1) exactly.
    """
    out, p, k, _, xd = _classify_raw(params.a, params.b, cfg)
    if out == K.T_NONE:
        return TongueSample(params, Outcome.NO_ATTRACTOR)
    if out != K.T_IN:
        return TongueSample(params, Outcome.UNDECIDED)
    cyc = cycle_from_point(params, xd, p).with_distinguished(0)
    return TongueSample(params, Outcome.IN_TONGUE, BinaryType.from_numerator(k, p), cyc)


def _is_type(a, b, tau, cfg):
    out, p, k, _, _ = _classify_raw(reduce_angle(a), b, cfg)
    return out == K.T_IN and p == tau.p and k == tau.k


# ---------------------------------------------------------------- atlas


@dataclass(frozen=True)
class AtlasEntry:
    type: BinaryType
    a_super: float


def return_value(a, p):
    """F^p_{a,1}(1/2), strictly increasing in a with slope >= 1."""
    x = 0.5
    for _ in range(p):
        x = 2.0 * x + a + math.sin(2.0 * math.pi * x) / math.pi
    return x


def _exact_period_at_one(a, p, tol):
    for q in range(1, p + 1):
        if p % q == 0:
            v = return_value(a, q) - 0.5
            if abs(v - round(v)) < tol:
                return q
    return p


def _solve_level(p, m, iters=200):
    lo, hi = 0.0, 1.0
    if not return_value(lo, p) - 0.5 <= m <= return_value(hi, p) - 0.5:
        raise BisectionFailure(f"level {m} is not bracketed on [0, 1] for period {p}")
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        v = return_value(mid, p) - 0.5
        if v < m:
            lo = mid
        else:
            hi = mid
        if return_value(lo, p) - 0.5 > m or return_value(hi, p) - 0.5 < m:
            raise BisectionFailure(f"bracket lost at a={mid} (period {p}, level {m})")
    vl = abs(return_value(lo, p) - 0.5 - m)
    vh = abs(return_value(hi, p) - 0.5 - m)
    return lo if vl <= vh else hi


def superattracting_atlas(p_max, cfg=DEFAULT_CONFIG):
    """All 2^p - 1 parameters a in [0, 1) where 1/2 is periodic with period
    dividing p = p_max for b = 1, one per type k/(2^p - 1).

    a -> F^p_{a,1}(1/2) - 1/2 is strictly increasing and gains exactly 2^p - 1
    over [0, 1]; it equals 2^(p-1) - 1/2 at a = 0, so the integer levels hit
    are m = 2^(p-1), ..., 2^(p-1) + 2^p - 2.
    """
    p = int(p_max)
    if p < 1:
        raise ValueError("p_max must be >= 1")
    base = 1 << (p - 1)
    by_type = {}
    for m in range(base, base + (1 << p) - 1):
        a = _solve_level(p, m)
        q = _exact_period_at_one(a, p, cfg.root_tol * (1 << p))
        tau = type_from_point(CircleParams(a, 1.0), 0.5, q, cfg)
        if tau in by_type:
            # a lower-period solution already found; keep the first
            if abs(by_type[tau] - a) > cfg.root_tol:
                raise BisectionFailure(f"type {tau} found at two parameters")
            continue
        by_type[tau] = a
    return [AtlasEntry(t, a) for t, a in sorted(by_type.items(), key=lambda kv: kv[1])]


def atlas_up_to(p_max, cfg=DEFAULT_CONFIG):
    """Atlas entries of every type with exact period <= p_max, sorted by a."""
    seen = {}
    for p in range(1, int(p_max) + 1):
        for e in superattracting_atlas(p, cfg):
            seen.setdefault(e.type, e)
    return sorted(seen.values(), key=lambda e: e.a_super)


def atlas_parameter(tau, cfg=DEFAULT_CONFIG):
    """a_tau, the b = 1 parameter with superattracting cycle of type tau."""
    for e in superattracting_atlas(tau.p, cfg):
        if e.type == tau:
            return e.a_super
    raise BisectionFailure(f"type {tau} missing from the period-{tau.p} atlas")


# ---------------------------------------------------------------- sections


def _edge(a_in, a_out, b, tau, tol, cfg):
    """Bisect between a member and a non-member down to width tol."""
    while abs(a_out - a_in) > tol:
        mid = 0.5 * (a_in + a_out)
        if mid in (a_in, a_out):
            break
        if _is_type(mid, b, tau, cfg):
            a_in = mid
        else:
            a_out = mid
    return a_in


def local_section(tau, b, lo, hi, cells, cfg=DEFAULT_CONFIG, tol=None, threads=None):
    """Member intervals of tau at height b inside [lo, hi], from a scan of
    ``cells`` cell centers with bisected endpoints.  Intervals touching the
    window edges are clipped there.
    """
    tol = cfg.root_tol if tol is None else tol
    if b <= 0.5:
        return []
    a = cell_centers(lo, hi, cells)
    g = tongue_grid(reduce_angle(a), np.array([b]), cfg, threads)
    mask = g.type_mask(tau.k, tau.p)[0]
    out = []
    j = 0
    while j < cells:
        if not mask[j]:
            j += 1
            continue
        s = j
        while j < cells and mask[j]:
            j += 1
        left = lo if s == 0 else _edge(a[s], a[s - 1], b, tau, tol, cfg)
        right = hi if j == cells else _edge(a[j - 1], a[j], b, tau, tol, cfg)
        out.append((left, right))
    return out


def cross_section(tau, b, cfg=DEFAULT_CONFIG, threads=None):
    """Maximal intervals of a in [0, 1) with an attracting cycle of type tau.

    An interval running across a = 0 is returned once, as (lo, hi) with
    hi > 1.  Undecided cells count as non-members.
    """
    if b <= 0.5:
        return []
    iv = local_section(tau, b, 0.0, 1.0, cfg.section_cells, cfg, threads=threads)
    if len(iv) > 1 and iv[0][0] == 0.0 and iv[-1][1] == 1.0:
        first = iv.pop(0)
        iv[-1] = (iv[-1][0], 1.0 + first[1])
    elif len(iv) == 1 and iv[0] == (0.0, 1.0):
        pass
    return iv


def _interval_around(tau, a, b, cfg, step=1.0 / 4096, tol=None):
    """The member interval containing a (walk outward, then bisect), or None."""
    tol = cfg.root_tol if tol is None else tol
    if not _is_type(a, b, tau, cfg):
        return None
    ends = []
    for sign in (-1.0, 1.0):
        inside, h = a, step
        while True:
            probe = inside + sign * h
            if abs(probe - a) >= 0.5:
                ends.append(probe)
                break
            if _is_type(probe, b, tau, cfg):
                inside = probe
                h = min(2.0 * h, 16.0 * step)
            elif h > step:
                h = step
                continue
            else:
                ends.append(_edge(inside, probe, b, tau, tol, cfg))
                break
    return ends[0], ends[1]


# ---------------------------------------------------------------- tips


def _spine(tau, b_stop, cfg):
    """Descend from (a_tau, 1) tracking the member interval; returns the list
    of (b, lo, hi) down to the last nonempty level above b_stop."""
    a = atlas_parameter(tau, cfg)
    b = 1.0
    step = 1.0 / 64
    levels = []
    iv = _interval_around(tau, a, b, cfg)
    while iv is not None:
        levels.append((b, iv[0], iv[1]))
        nb = b - step
        if nb <= b_stop:
            break
        a = 0.5 * (iv[0] + iv[1])
        iv = _interval_around(tau, a, nb, cfg)
        if iv is None:
            iv = _search_near(tau, nb, levels[-1][1], levels[-1][2], cfg)
        b = nb
    return levels


def _search_near(tau, b, lo, hi, cfg, cells=256, margin=1e-4):
    """Member interval at b near the known interval [lo, hi] at a nearby b.

    The center of [lo, hi] is tried first, then a scan of a window a few
    widths wide.
    """
    w = hi - lo
    iv = _interval_around(tau, 0.5 * (lo + hi), b, cfg, step=max(w, 1e-12) / 64)
    if iv is not None:
        return iv
    found = local_section(tau, b, lo - 2 * w - margin, hi + 2 * w + margin, cells, cfg)
    if not found:
        return None
    return max(found, key=lambda iv: iv[1] - iv[0])


def tongue_tip(tau, cfg=DEFAULT_CONFIG):
    """Lowest b at which the tongue of type tau is nonempty.

    The tongue is followed down from its atlas point; once it disappears,
    bisection in b (with a local scan around the last interval) narrows the
    tip to root_tol.  Always >= 1/2.

    Close to the tip the cycle is nearly neutral and converges slowly, so
    the classifier's transient budget, not root_tol, limits the accuracy
    (about 1e-4 in b for the default budget).
    """
    levels = _spine(tau, 0.5, cfg)
    b_hi, lo, hi = levels[-1]
    b_lo = max(0.5, b_hi - 1.0 / 64)
    while b_hi - b_lo > cfg.root_tol:
        mid = 0.5 * (b_lo + b_hi)
        iv = (_search_near(tau, mid, lo, hi, cfg, margin=max(1e-4, b_hi - b_lo), cells=512)
              if mid > 0.5 else None)
        if iv is None:
            b_lo = mid
        else:
            b_hi, (lo, hi) = mid, iv
    return b_hi


@dataclass(frozen=True)
class TipExponent:
    exponent: float
    residual: float
    tip: float
    offsets: tuple
    widths: tuple


def tip_exponent_estimate(tau, cfg=DEFAULT_CONFIG, tip=None, n_samples=8, decade_low=1e-3):
    """Slope of log(width) against log(b - tip) over one decade above the tip.

    Offsets run geometrically from ``decade_low`` (capped so the decade fits
    below b = 1) to ten times that.  Widths under 1e-7 are discarded.
    """
    if tip is None:
        tip = tongue_tip(tau, cfg)
    d0 = min(decade_low, (1.0 - tip) / 10.0)
    usable_off, usable_w = [], []
    if d0 > 0:
        levels = _spine(tau, tip, cfg)
        for off in d0 * np.logspace(0.0, 1.0, n_samples):
            b = tip + off
            ref = min(levels, key=lambda lv: abs(lv[0] - b)) if levels else None
            if ref is None:
                break
            iv = _search_near(tau, b, ref[1], ref[2], cfg, cells=512)
            if iv is None:
                continue
            lo, hi = iv
            w = hi - lo
            if w > 1e-7:
                usable_off.append(off)
                usable_w.append(w)
    if len(usable_w) < 5:
        raise InsufficientData(f"only {len(usable_w)} usable section widths above tip {tip}")
    x = np.log(usable_off)
    y = np.log(usable_w)
    coef, res, *_ = np.polyfit(x, y, 1, full=True)
    resid = float(np.sqrt(res[0] / len(x))) if len(res) else 0.0
    return TipExponent(float(coef[0]), resid, float(tip), tuple(usable_off), tuple(usable_w))


# ---------------------------------------------------------------- rasters


@dataclass(frozen=True)
class Window:
    a_min: float = 0.0
    a_max: float = 1.0
    b_min: float = 0.5
    b_max: float = 1.0

    def __post_init__(self):
        if not (self.a_max > self.a_min and self.b_max > self.b_min):
            raise ValueError("window must be nondegenerate")

    def centers(self, width, height):
        """(a_vals, b_vals) of cell centers; row 0 is the top (b = b_max)."""
        return (cell_centers(self.a_min, self.a_max, width),
                cell_centers(self.b_max, self.b_min, height))

    def pixel_of(self, a, b, width, height):
        j = int(math.floor((a - self.a_min) / (self.a_max - self.a_min) * width))
        i = int(math.floor((self.b_max - b) / (self.b_max - self.b_min) * height))
        return min(max(i, 0), height - 1), min(max(j, 0), width - 1)


def tongue_raster(window, width, height, cfg=DEFAULT_CONFIG, threads=None):
    a, b = window.centers(width, height)
    return tongue_grid(reduce_angle(a), b, cfg, threads)


@dataclass(frozen=True)
class ConnectivityReport:
    type: BinaryType
    width: int
    height: int
    components: int
    pixels: int
    anchor: tuple
    anchor_in_component: bool
    undecided_fraction: float
    passed: bool
    raw_components: int = 0
    refined_pixels: int = 0
    note: str = ""

    def line(self):
        verdict = "PASS" if self.passed else "FAIL"
        return (f"{verdict} type={self.type.label} components={self.components} "
                f"(center sampling: {self.raw_components}) pixels={self.pixels} "
                f"anchor_in={self.anchor_in_component} "
                f"undecided={self.undecided_fraction:.4%} {self.note}".rstrip())


MIN_RESOLUTION = 64
_FOUR = ndimage.generate_binary_structure(2, 1)


def components(mask):
    """4-connected component labels of a boolean raster."""
    return ndimage.label(mask, structure=_FOUR)


def refine_coverage(mask, tau, window, cfg=DEFAULT_CONFIG, sub=(5, 17), max_rounds=256,
                    threads=None):
    """Grow a center-sampled mask toward cell coverage.

    A cell joins when any point of a ``sub`` = (rows, cols) grid spanning the
    closed cell (edges included) is a member, so a thin tongue passing from
    one cell into the next marks both.  Only 8-neighbours of current members
    are tested, and the step is repeated until nothing changes.  This
    recovers tongues thinner than a pixel, which center sampling breaks into
    pieces.
    """
    height, width = mask.shape
    a_vals, b_vals = window.centers(width, height)
    da = (window.a_max - window.a_min) / width
    db = (window.b_max - window.b_min) / height
    off_b = np.linspace(-0.5, 0.5, sub[0])
    off_a = np.linspace(-0.5, 0.5, sub[1])
    mask = mask.copy()
    tested = mask.copy()
    for _ in range(max_rounds):
        cand = ndimage.binary_dilation(mask, structure=np.ones((3, 3), bool)) & ~tested
        if not cand.any():
            break
        tested |= cand
        for i in np.nonzero(cand.any(axis=1))[0]:
            cols = np.nonzero(cand[i])[0]
            pts = (a_vals[cols][:, None] + off_a[None, :] * da).ravel()
            bs = b_vals[i] + off_b * db
            g = tongue_grid(reduce_angle(pts), bs[bs > 0.5], cfg, threads)
            hit = g.type_mask(tau.k, tau.p).any(axis=0).reshape(cols.size, sub[1]).any(axis=1)
            mask[i, cols[hit]] = True
    return mask


def connectivity_check(tau, window=None, width=1024, height=512, cfg=DEFAULT_CONFIG,
                       raster=None, threads=None, refine=True):
    """Rasterize the window, keep the pixels of type tau and count their
    4-connected components.  PASS iff there is exactly one and it holds the
    pixel of (a_tau, 1).

    With ``refine`` the center-sampled pixel set is grown to cell coverage
    first (see :func:`refine_coverage`).  A precomputed ``raster`` of
    matching shape may be passed to share work across types.
    """
    window = window or Window()
    if width < MIN_RESOLUTION or height < MIN_RESOLUTION:
        return ConnectivityReport(tau, width, height, 0, 0, (-1, -1), False, 0.0, False,
                                  note=f"resolution too low (need >= {MIN_RESOLUTION}x"
                                       f"{MIN_RESOLUTION})")
    if raster is None:
        raster = tongue_raster(window, width, height, cfg, threads)
    if raster.outcome.shape != (height, width):
        raise ValueError("raster shape does not match the requested resolution")
    raw = raster.type_mask(tau.k, tau.p)
    _, n_raw = components(raw)
    mask = refine_coverage(raw, tau, window, cfg, threads=threads) if refine else raw
    _, n = components(mask)
    anchor = window.pixel_of(atlas_parameter(tau, cfg), 1.0, width, height)
    inside = bool(mask[anchor])
    und = float(np.mean(raster.undecided))
    return ConnectivityReport(tau, width, height, int(n), int(mask.sum()), anchor, inside,
                              und, n == 1 and inside, raw_components=int(n_raw),
                              refined_pixels=int(mask.sum() - raw.sum()))


# ---------------------------------------------------------------- paths


@dataclass(frozen=True)
class TonguePath:
    type: BinaryType
    vertices: tuple
    multipliers: tuple
    violations: tuple = field(default=())

    @property
    def end(self):
        return self.vertices[-1]


def path_to_superattracting(tau, start, cfg=DEFAULT_CONFIG, flag_tol=1e-3, min_step=1e-6):
    """Polyline inside the tongue from ``start`` up to (a_tau, 1).

    b rises by cfg.path_step (halved when the next level loses the previous
    a); at each level a is the midpoint of the member interval holding the
    previous a.  Multipliers are recorded by modulus and increases beyond
    ``flag_tol`` are listed in ``violations`` (indices of the later vertex).
    """
    s = classify_param(start, cfg)
    if not s.is_type(tau):
        got = s.type.label if s.type is not None else s.outcome.value
        raise TypeMismatch(f"start {start} is not in the tongue of type {tau.label} ({got})")
    a_tau = atlas_parameter(tau, cfg)
    verts = [(start.a, start.b)]
    mults = [abs(s.cycle.multiplier)]
    if start.b == 1.0 and abs(reduce_angle(start.a - a_tau + 0.5) - 0.5) <= cfg.root_tol:
        return TonguePath(tau, tuple(verts), tuple(mults))
    a, b = start.a, start.b
    step = cfg.path_step
    while b < 1.0:
        nb = min(1.0, b + step)
        iv = _interval_around(tau, a, nb, cfg)
        if iv is None:
            if step / 2 < min_step:
                raise PathBroken(f"no member interval holds a={a} at b={nb}", b=nb)
            step /= 2
            continue
        if nb == 1.0:
            # the b = 1 interval holding a must be the one of the atlas point
            shift = a_tau + round(a - a_tau)
            if not iv[0] <= shift <= iv[1]:
                raise PathBroken(f"atlas point {a_tau} is not in the b = 1 interval {iv}", b=1.0)
            a = shift
        else:
            a = 0.5 * (iv[0] + iv[1])
        b = nb
        lam = _classify_raw(reduce_angle(a), b, cfg)[3]
        verts.append((a, b))
        mults.append(abs(lam))
    viol = tuple(i for i in range(1, len(mults)) if mults[i] > mults[i - 1] + flag_tol)
    return TonguePath(tau, tuple(verts), tuple(mults), viol)
