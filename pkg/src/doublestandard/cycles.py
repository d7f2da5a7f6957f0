"""Attracting cycles of the real circle map and their multipliers."""

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import _kernels as K
from .circle_map import eval_derivative, eval_lift, reduce_angle
from .config import DEFAULT_CONFIG
from .errors import NoConvergence, WrongPeriod


@dataclass(frozen=True)
class Cycle:
    """A periodic orbit recorded on the lift.

    ``lift_points[i+1] == F(lift_points[i])`` and
    ``F(lift_points[-1]) == lift_points[0] + shift``.
    """

    period: int
    lift_points: tuple
    shift: int
    multiplier: float
    distinguished_index: Optional[int] = None

    @property
    def points(self):
        """Cycle points reduced to [0, 1), in orbit order."""
        return tuple(reduce_angle(x) for x in self.lift_points)

    @property
    def distinguished(self):
        if self.distinguished_index is None:
            return None
        return self.points[self.distinguished_index]

    def with_distinguished(self, index):
        return replace(self, distinguished_index=int(index) % self.period)

    def same_orbit(self, other, tol):
        """True when both cycles are the same set of points mod 1."""
        if self.period != other.period:
            return False
        return all(min(_circle_dist(x, y) for y in other.points) < tol for x in self.points)


def _circle_dist(x, y):
    d = abs(x - y) % 1.0
    return min(d, 1.0 - d)


def cycle_from_point(params, x0, p):
    """Assemble a :class:`Cycle` from a (refined) periodic point."""
    pts = [float(reduce_angle(x0))]
    for _ in range(p - 1):
        pts.append(float(eval_lift(params, pts[-1])))
    shift = int(round(float(eval_lift(params, pts[-1])) - pts[0]))
    mult = float(np.prod([eval_derivative(params, x) for x in pts]))
    return Cycle(period=p, lift_points=tuple(pts), shift=shift, multiplier=mult)


def refine_cycle(params, x_guess, p, cfg=DEFAULT_CONFIG):
    """Newton-refine a period-p orbit of F near ``x_guess``.

    If the refined point has a smaller exact period q | p the cycle is
    returned with period q.
    """
    if not 1 <= p <= cfg.max_period:
        raise ValueError(f"period must lie in [1, {cfg.max_period}]")
    st, x0, _, _ = K.refine(params.a, params.b, float(x_guess), p, cfg.root_tol, 60)
    if st != K.OK:
        raise NoConvergence(f"Newton failed for period {p} near x={x_guess}")
    q = K.exact_period(params.a, params.b, x0, p, cfg.cycle_tol)
    if q != p:
        st, xq, _, _ = K.refine(params.a, params.b, x0, q, cfg.root_tol, 60)
        if st != K.OK:
            raise NoConvergence(f"Newton failed for reduced period {q}")
        if _circle_dist(xq, x0) > 1e3 * cfg.cycle_tol:
            raise WrongPeriod(f"period {p} orbit does not reduce cleanly to period {q}")
        x0, p = xq, q
    return cycle_from_point(params, x0, p)


def detect_status(params, cfg=DEFAULT_CONFIG):
    """Raw detection: (status, period, x0) with status one of the kernel codes."""
    st, p, x0, _, _ = K.find_cycle(params.a, params.b, cfg.max_transient, cfg.max_period,
                                   cfg.cycle_tol, cfg.root_tol)
    return st, p, x0


def find_attracting_cycle(params, cfg=DEFAULT_CONFIG):
    """The attracting circle cycle of f_{a,b}, or None.

    For b <= 1/2 every cycle has multiplier >= (2 - 2b)^p >= 1, so the answer
    is None without iterating.  Near-neutral cycles (multiplier within
    root_tol of 1) are reported as None as well.
    """
    st, p, x0 = detect_status(params, cfg)
    if st != K.OK:
        return None
    return cycle_from_point(params, x0, p)
