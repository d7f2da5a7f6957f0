"""Compiled inner loops shared by the scalar API and the raster renderers.

Everything here works on plain floats/ints so numba can compile it in
nopython mode.  The complex map is iterated in the logarithmic coordinate
``Z`` with ``z = exp(2*pi*i*Z)``, where it becomes the entire lift
``F(Z) = 2Z + a + (b/pi) sin(2 pi Z)``; ``Im Z > 0`` is the unit disk.
"""

import math

import numpy as np
from numba import njit

TWO_PI = 2.0 * math.pi

# status codes
OK = 0
NONE = 1
NO_CONVERGENCE = 2
UNDECIDED = 3

# orbit classes (complex critical orbit)
CLS_CIRCLE = 0
CLS_PAIR = 1
CLS_ESCAPE_ZERO = 2
CLS_ESCAPE_INF = 3
CLS_UNDECIDED = 4

# tongue outcomes
T_IN = 0
T_NONE = 1
T_UNDECIDED = 2

N_FALLBACK_SEEDS = 16
_LYAP_WINDOW = 1000
_LYAP_WARMUP = 3000
_LYAP_EXIT = 0.1


@njit(cache=True, nogil=True)
def lift(a, b, x):
    return 2.0 * x + a + (b / math.pi) * math.sin(TWO_PI * x)


@njit(cache=True, nogil=True)
def frac(x):
    y = x - math.floor(x)
    if y >= 1.0:
        y -= 1.0
    return y


@njit(cache=True, nogil=True)
def deriv(b, x):
    return 2.0 + 2.0 * b * math.cos(TWO_PI * x)


@njit(cache=True, nogil=True)
def lift_iter(a, b, x, n):
    for _ in range(n):
        x = lift(a, b, x)
    return x


@njit(cache=True, nogil=True)
def circle_dist(x, y):
    d = abs(x - y)
    d -= math.floor(d)
    return min(d, 1.0 - d)


@njit(cache=True, nogil=True)
def lift_return(a, b, x, p):
    """(F^p(x), (F^p)'(x)) with the true lift, valid for moderate p."""
    der = 1.0
    for _ in range(p):
        der *= deriv(b, x)
        x = lift(a, b, x)
    return x, der


@njit(cache=True, nogil=True)
def refine(a, b, x_guess, p, root_tol, max_newton):
    """Newton on G(X) = F^p(X) - X - m with m frozen from the guess.

    Converged means |G| < root_tol and a Newton step below 10*root_tol; a
    slow, linearly converging iteration (double root, multiplier ~ 1) fails
    the second test.  A step that does not shrink |G| is halved up to 40
    times.  Returns (status, X0 in [0,1), shift, multiplier)."""
    x = frac(x_guess)
    fx, der = lift_return(a, b, x, p)
    m = round(fx - x)
    g = fx - x - m
    for _ in range(max_newton):
        slope = der - 1.0
        if abs(slope) < 1e-12:
            return NO_CONVERGENCE, x, m, der
        step = -g / slope
        if abs(g) < root_tol and abs(step) < 10.0 * root_tol:
            xn = x + step
            fn, dn = lift_return(a, b, xn, p)
            if abs(fn - xn - m) <= abs(g):
                x = xn
            xr = frac(x)
            fxr, derr = lift_return(a, b, xr, p)
            return OK, xr, round(fxr - xr), derr
        if abs(step) > 0.25:
            step = 0.25 if step > 0 else -0.25
        accepted = False
        for _h in range(40):
            xn = x + step
            fn, dn = lift_return(a, b, xn, p)
            gn = fn - xn - m
            if abs(gn) < abs(g):
                x, g, der = xn, gn, dn
                accepted = True
                break
            step *= 0.5
        if not accepted:
            return NO_CONVERGENCE, x, m, der
    return NO_CONVERGENCE, x, m, der


@njit(cache=True, nogil=True)
def exact_period(a, b, x0, p, tol):
    """Smallest q dividing p with f^q(x0) = x0 on the circle."""
    for q in range(1, p + 1):
        if p % q != 0:
            continue
        y = x0
        for _ in range(q):
            y = frac(lift(a, b, y))
        if circle_dist(y, x0) < tol:
            return q
    return p


@njit(cache=True, nogil=True)
def detect_from_seed(a, b, seed, max_transient, max_period, cycle_tol):
    """Iterate the circle map from ``seed`` looking for a near-periodic window.

    Returns (status, period, point).  ``status`` is NONE when the windowed
    Lyapunov average stays clearly positive (no attractor), UNDECIDED on
    budget exhaustion."""
    x = seed
    ref = x
    ref_n = 0
    lyap = 0.0
    chaotic_windows = 0
    for n in range(1, max_transient + 1):
        lyap += math.log(abs(deriv(b, x)) + 1e-300)
        x = frac(lift(a, b, x))
        q = n - ref_n
        if circle_dist(x, ref) < cycle_tol:
            return OK, q, x
        if q >= max_period:
            ref = x
            ref_n = n
        if n % _LYAP_WINDOW == 0:
            if lyap / _LYAP_WINDOW > _LYAP_EXIT:
                chaotic_windows += 1
            else:
                chaotic_windows = 0
            lyap = 0.0
            if n >= _LYAP_WARMUP and chaotic_windows >= 3:
                return NONE, 0, x
    return UNDECIDED, 0, x


@njit(cache=True, nogil=True)
def find_cycle(a, b, max_transient, max_period, cycle_tol, root_tol):
    """Attracting circle cycle of f_{a,b}, or a non-OK status.

    Returns (status, period, X0, shift, multiplier)."""
    if b <= 0.5:
        return NONE, 0, 0.0, 0, 0.0
    saw_undecided = False
    for s in range(N_FALLBACK_SEEDS + 1):
        if s == 0:
            seed = 0.5
        else:
            seed = (s - 0.5) / N_FALLBACK_SEEDS
        st, q, x = detect_from_seed(a, b, seed, max_transient, max_period, cycle_tol)
        if st == NONE:
            return NONE, 0, 0.0, 0, 0.0
        if st == UNDECIDED:
            saw_undecided = True
            # the cheap seed timed out; other seeds see the same attractor
            break
        rs, x0, m, lam = refine(a, b, x, q, root_tol, 60)
        if rs != OK:
            return UNDECIDED, 0, 0.0, 0, 0.0
        p = exact_period(a, b, x0, q, cycle_tol)
        if p != q:
            rs, x0, m, lam = refine(a, b, x0, p, root_tol, 60)
            if rs != OK:
                return UNDECIDED, 0, 0.0, 0, 0.0
        if abs(lam) < 1.0 - root_tol:
            return OK, p, x0, m, lam
        return UNDECIDED, 0, 0.0, 0, 0.0
    if saw_undecided:
        return UNDECIDED, 0, 0.0, 0, 0.0
    return NONE, 0, 0.0, 0, 0.0


@njit(cache=True, nogil=True)
def critical_lift(b):
    """Log-coordinate of the inner critical point (Im >= 0)."""
    if b < 1.0:
        return complex(0.5, math.acosh(1.0 / b) / TWO_PI)
    if b == 1.0:
        return complex(0.5, 0.0)
    # both critical points on the circle; take the one in (1/4, 1/2)
    return complex(math.acos(-1.0 / b) / TWO_PI, 0.0)


@njit(cache=True, nogil=True)
def clift(a, b, zr, zi):
    """Complex lift F(Z) for Z = zr + i zi, split into real/imag parts."""
    s = TWO_PI * zr
    t = TWO_PI * zi
    ch = math.cosh(t)
    sh = math.sinh(t)
    k = b / math.pi
    return 2.0 * zr + a + k * math.sin(s) * ch, 2.0 * zi + k * math.cos(s) * sh


@njit(cache=True, nogil=True)
def distinguished_index(a, b, zr0, zi0, xs, max_iter, match_tol, escape_log):
    """Index j such that the p-subsampled critical orbit tends to xs[j].

    ``xs`` are the cycle points in orbit order.  Returns -1 when the orbit does
    not settle within the budget.  The orbit index n at which Z_n is near
    xs[j] tells us Z_{kp} -> xs[(j - n) mod p]."""
    p = xs.shape[0]
    zr = zr0
    zi = zi0
    prev = -1
    hits = 0
    for n in range(1, max_iter + 1):
        zr, zi = clift(a, b, zr, zi)
        zr = zr - math.floor(zr)
        if abs(zi) * TWO_PI > escape_log:
            return -1
        if abs(zi) < match_tol:
            for j in range(p):
                if circle_dist(zr, xs[j]) < match_tol:
                    idx = (j - n) % p
                    if idx == prev:
                        hits += 1
                        if hits >= 2:
                            return idx
                    else:
                        prev = idx
                        hits = 0
                    break
    return -1


@njit(cache=True, nogil=True)
def cycle_points(a, b, x0, p):
    xs = np.empty(p)
    x = x0
    for i in range(p):
        xs[i] = x
        x = frac(lift(a, b, x))
    return xs


@njit(cache=True, nogil=True)
def classify_tongue(a, b, max_transient, max_period, cycle_tol, root_tol, max_orbit,
                    escape_log):
    """Full tongue classification of one parameter.

    Returns (outcome, period, k, multiplier, distinguished point)."""
    st, p, x0, m, lam = find_cycle(a, b, max_transient, max_period, cycle_tol, root_tol)
    if st == NONE:
        return T_NONE, 0, 0, 0.0, 0.0
    if st != OK:
        return T_UNDECIDED, 0, 0, 0.0, 0.0
    xs = cycle_points(a, b, x0, p)
    c = critical_lift(b)
    j = distinguished_index(a, b, c.real, c.imag, xs, max_orbit, 1e-8, escape_log)
    if j < 0:
        return T_UNDECIDED, p, 0, lam, 0.0
    xd = xs[j]
    fx, _ = lift_return(a, b, xd, p)
    md = round(fx - xd)
    den = (1 << p) - 1
    k = md % den
    return T_IN, p, k, lam, xd


@njit(cache=True, nogil=True)
def classify_orbit(a, b, max_iter, max_period, cycle_tol, escape_log, circle_tol):
    """Classify the inner critical orbit.  Returns (class, period, zr, zi)."""
    if b <= 0.0:
        return CLS_UNDECIDED, 0, 0.0, 0.0
    c = critical_lift(b)
    zr = c.real
    zi = c.imag
    ref_r = zr
    ref_i = zi
    ref_n = 0
    for n in range(1, max_iter + 1):
        zr, zi = clift(a, b, zr, zi)
        zr = zr - math.floor(zr)
        if TWO_PI * zi > escape_log:
            return CLS_ESCAPE_ZERO, 0, zr, zi
        if -TWO_PI * zi > escape_log:
            return CLS_ESCAPE_INF, 0, zr, zi
        q = n - ref_n
        if abs(zi - ref_i) < cycle_tol and circle_dist(zr, ref_r) < cycle_tol:
            # confirm on-circle for the p points of the cycle
            on = True
            wr = zr
            wi = zi
            for _ in range(q):
                if TWO_PI * abs(wi) >= circle_tol:
                    on = False
                    break
                wr, wi = clift(a, b, wr, wi)
                wr = wr - math.floor(wr)
            if on:
                return CLS_CIRCLE, q, zr, zi
            return CLS_PAIR, q, zr, zi
        if q >= max_period:
            ref_r = zr
            ref_i = zi
            ref_n = n
    return CLS_UNDECIDED, 0, zr, zi


@njit(cache=True, nogil=True)
def tongue_rows(a_vals, b_vals, row_lo, row_hi, outcome, period, knum, lam,
                max_transient, max_period, cycle_tol, root_tol, max_orbit, escape_log):
    """Fill rows [row_lo, row_hi) of the tongue raster in place."""
    for i in range(row_lo, row_hi):
        for j in range(a_vals.shape[0]):
            o, p, k, l, _ = classify_tongue(a_vals[j], b_vals[i], max_transient, max_period,
                                            cycle_tol, root_tol, max_orbit, escape_log)
            outcome[i, j] = o
            period[i, j] = p
            knum[i, j] = k
            lam[i, j] = l


@njit(cache=True, nogil=True)
def orbit_rows(a_vals, b_vals, row_lo, row_hi, cls, period,
               max_iter, max_period, cycle_tol, escape_log, circle_tol):
    for i in range(row_lo, row_hi):
        for j in range(a_vals.shape[0]):
            c, p, _, _ = classify_orbit(a_vals[j], b_vals[i], max_iter, max_period,
                                        cycle_tol, escape_log, circle_tol)
            cls[i, j] = c
            period[i, j] = p
