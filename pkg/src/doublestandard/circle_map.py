"""The real double standard family.

We use the ``+`` sign convention

    F_{a,b}(X) = 2X + a + (b/pi) sin(2 pi X),

so that for b = 1 the critical point of the circle map sits at x = 1/2.  The
other common convention (``- (b/pi) sin``) is conjugate to this one by
x -> x + 1/2 together with a -> a + 1/2.

All functions accept numpy arrays as well as scalars.
"""

from dataclasses import dataclass

import numpy as np


def reduce_angle(x):
    """Reduce mod 1 into [0, 1)."""
    y = np.mod(x, 1.0)
    # np.mod can return exactly 1.0 for tiny negative inputs
    if np.ndim(y) == 0:
        return 0.0 if y >= 1.0 else float(y)
    return np.where(y >= 1.0, 0.0, y)


@dataclass(frozen=True)
class CircleParams:
    """Parameters (a, b) of f_{a,b}.

    ``a`` is kept as given (not reduced mod 1) because the lift depends on the
    real value: F_{a+1,b} = F_{a,b} + 1.  The circle map only sees ``angle``.
    """

    a: float
    b: float

    def __post_init__(self):
        if not 0.0 <= self.b <= 1.0:
            raise ValueError(f"b must lie in [0, 1], got {self.b}")
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))

    @property
    def angle(self):
        return reduce_angle(self.a)


def eval_lift(params, X):
    return 2.0 * X + params.a + (params.b / np.pi) * np.sin(2.0 * np.pi * X)


def eval_circle(params, x):
    return reduce_angle(eval_lift(params, x))


def eval_derivative(params, x):
    """f'(x) = 2 + 2b cos(2 pi x), bounded below by 2(1 - b)."""
    return 2.0 + 2.0 * params.b * np.cos(2.0 * np.pi * x)


def iterate_lift(params, X, n):
    """n-fold composition of the lift.

    The lift grows like 2^n; for deep iteration work on the circle instead
    (see :func:`doublestandard.semiconjugacy.phi_lift`).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    for _ in range(n):
        X = eval_lift(params, X)
    return X

