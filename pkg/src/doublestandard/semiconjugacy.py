"""Monotone semiconjugacy of f_{a,b} to the doubling map, and binary types."""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .circle_map import reduce_angle
from .config import DEFAULT_CONFIG
from .errors import ResidualTooLarge


def exact_doubling_period(k, p):
    """Smallest q | p such that k/(2^p - 1) has period q under doubling."""
    den = (1 << p) - 1
    for q in range(1, p + 1):
        if p % q == 0 and (k * ((1 << q) - 1)) % den == 0:
            return q
    return p


@dataclass(frozen=True, order=True)
class BinaryType:
    """A periodic point tau = k / (2^p - 1) of the doubling map, p its exact period.

    Build non-canonical pairs through :meth:`from_numerator`, which reduces
    to the exact period.
    """

    k: int
    p: int

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("period must be >= 1")
        if not 0 <= self.k < max(1, (1 << self.p) - 1):
            raise ValueError(f"numerator {self.k} out of range for period {self.p}")
        if exact_doubling_period(self.k, self.p) != self.p:
            raise ValueError(f"{self.k}/(2^{self.p}-1) is not in canonical form; "
                             "use BinaryType.from_numerator")

    @classmethod
    def from_numerator(cls, k, p):
        den = (1 << p) - 1
        k %= den
        q = exact_doubling_period(k, p)
        return cls(k * ((1 << q) - 1) // den, q)

    @classmethod
    def from_fraction(cls, value):
        """From a rational with odd denominator, e.g. Fraction(2, 7)."""
        fr = Fraction(value) % 1
        p = 1
        while ((1 << p) - 1) % fr.denominator:
            p += 1
            if p > 62:
                raise ValueError(f"{value} is not periodic under doubling with small period")
        return cls.from_numerator(fr.numerator * (((1 << p) - 1) // fr.denominator), p)

    @classmethod
    def parse(cls, text):
        """Parse the CLI notation ``K/P`` (numerator K, period P)."""
        try:
            k, p = (int(t) for t in text.split("/"))
        except ValueError:
            raise ValueError(f"type must look like K/P, got {text!r}") from None
        if p < 1:
            raise ValueError("period must be >= 1")
        return cls.from_numerator(k, p)

    @property
    def denominator(self):
        return (1 << self.p) - 1

    @property
    def fraction(self):
        return Fraction(self.k, self.denominator) if self.denominator > 1 else Fraction(0)

    @property
    def value(self):
        return float(self.fraction)

    @property
    def label(self):
        return f"{self.k}/{self.p}"

    def doubled(self):
        return BinaryType.from_numerator(2 * self.k, self.p)

    def orbit(self):
        out = [self]
        t = self.doubled()
        while t != self:
            out.append(t)
            t = t.doubled()
        return out

    def __str__(self):
        return str(self.fraction)


def all_types(p):
    """Every type whose exact period divides p, i.e. all k/(2^p - 1)."""
    return sorted({BinaryType.from_numerator(k, p) for k in range((1 << p) - 1)})


def phi_lift(params, X, depth=None):
    """Lift of the semiconjugacy: F^n(X) / 2^n with n = depth.

    The orbit is followed on the circle and the integer part of every lift
    step is accumulated as a binary digit, so nothing overflows.  The
    truncation error is at most (|a| + b/pi) 2^{-n}.
    """
    n = DEFAULT_CONFIG.phi_depth if depth is None else depth
    if n < 1:
        raise ValueError("depth must be >= 1")
    X = np.asarray(X, dtype=float)
    whole = np.floor(X)
    x = X - whole
    acc = np.zeros_like(x)
    scale = 0.5
    a, c = params.a, params.b / np.pi
    for _ in range(n):
        y = 2.0 * x + a + c * np.sin(2.0 * np.pi * x)
        d = np.floor(y)
        x = y - d
        acc = acc + d * scale
        scale *= 0.5
    out = acc + x * (2.0 * scale) + whole
    return float(out) if out.ndim == 0 else out


def phi_eval(params, x, cfg=DEFAULT_CONFIG):
    return reduce_angle(phi_lift(params, x, cfg.phi_depth))


def type_from_point(params, x0, p, cfg=DEFAULT_CONFIG):
    """Round phi(x0) to the nearest k/(2^p - 1).

    x0 must be a point of a period-p attracting cycle.  Raises
    ResidualTooLarge when phi(x0) is not within root_tol * 2^p of a candidate,
    which points to a wrong period or a near-neutral cycle.
    """
    t = phi_eval(params, x0, cfg)
    den = (1 << p) - 1
    k = round(t * den)
    resid = abs(t - k / den)
    resid = min(resid, 1.0 - resid)
    if resid >= cfg.root_tol * (1 << p):
        raise ResidualTooLarge(f"phi(x0)={t!r} is {resid:.3g} away from the nearest k/{den}")
    return BinaryType.from_numerator(k % den, p)
