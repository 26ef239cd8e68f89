"""Closed-form spherical Bessel functions of half-integer order.

All four families used by the analytic threshold formulas are covered:

    j_n(x) = sqrt(pi/2x) J_{n+1/2}(x)      regular oscillatory
    y_n(x) = sqrt(pi/2x) Y_{n+1/2}(x)      irregular oscillatory
    i_n(x) = sqrt(pi/2x) I_{n+1/2}(x)      regular exponential
    k_n(x) = sqrt(pi/2x) K_{n+1/2}(x)      decaying exponential

with the elementary anchors j0 = sin(x)/x, y0 = -cos(x)/x, i0 = sinh(x)/x,
k0 = (pi/2) e^{-x}/x.  Orders are small non-negative integers (the dominant
use is n = kappa - 1, kappa, kappa <= ~6), so no general-purpose Bessel
machinery is needed: closed forms for n <= 1, three-term recurrences upward,
and Taylor series near the origin where the closed forms cancel.

`reduced_j(n, z)` is the entire function j_n(x)/x^n continued to z = x^2.
It is what makes the square-well threshold ratios a single analytic formula
across the oscillatory (z > 0) and evanescent (z < 0) regimes.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "spherical_j",
    "spherical_y",
    "modified_i",
    "modified_k",
    "reduced_j",
    "double_factorial",
    "spherical_j_zero",
]

# exp argument beyond which sinh/cosh overflow float64
_EXP_OVERFLOW = 709.0


def double_factorial(m: int) -> float:
    """Odd double factorial m!! with the conventions (-1)!! = 1, (-3)!! = -1."""
    if m == -3:
        return -1.0
    out = 1.0
    while m >= 1:
        out *= m
        m -= 2
    return out


def _validate(x, name: str, positive: bool = True):
    x = np.asarray(x, dtype=float)
    if np.any(np.isnan(x)):
        raise ValueError(f"{name}: NaN argument rejected")
    if positive and np.any(x <= 0.0):
        raise ValueError(f"{name}: argument must be > 0")
    return x


def _series_j(n: int, x: np.ndarray) -> np.ndarray:
    # j_n(x) = x^n/(2n+1)!! * sum_m (-x^2/2)^m / (m! (2n+3)(2n+5)...(2n+2m+1))
    z = x * x
    term = np.ones_like(x)
    acc = np.ones_like(x)
    for m in range(1, 30):
        term = term * (-z / 2.0) / (m * (2 * n + 2 * m + 1))
        acc += term
        if np.max(np.abs(term)) < 1e-18 * np.max(np.abs(acc)):
            break
    return x**n / double_factorial(2 * n + 1) * acc


def _series_i(n: int, x: np.ndarray) -> np.ndarray:
    z = x * x
    term = np.ones_like(x)
    acc = np.ones_like(x)
    for m in range(1, 200):
        term = term * (z / 2.0) / (m * (2 * n + 2 * m + 1))
        acc += term
        if np.max(term) < 1e-18 * np.max(acc):
            break
    return x**n / double_factorial(2 * n + 1) * acc


def _upward_j(n: int, x: np.ndarray) -> np.ndarray:
    jm = np.sin(x) / x
    if n == 0:
        return jm
    jc = jm / x - np.cos(x) / x
    for m in range(1, n):
        jm, jc = jc, (2 * m + 1) / x * jc - jm
    return jc


def _downward_j(n: int, x: np.ndarray) -> np.ndarray:
    # Miller's algorithm: recur downward from a padded order, normalize on j0.
    start = n + 18
    jp = np.zeros_like(x)
    jc = np.full_like(x, 1e-30)
    saved = None
    for m in range(start, 0, -1):
        jp, jc = jc, (2 * m + 1) / x * jc - jp
        if m - 1 == n:
            saved = jc.copy()
    scale = (np.sin(x) / x) / jc
    return saved * scale


def spherical_j(n: int, x):
    """Regular spherical Bessel j_n(x) for integer n >= 0, x > 0.

    Closed trigonometric forms with upward recurrence where stable, Taylor
    series near the origin, downward recurrence for x < n.  Accepts scalars
    or arrays.
    """
    if n < 0:
        raise ValueError("order must be >= 0")
    xa = _validate(x, "spherical_j")
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    out = np.empty_like(xa)

    small = xa * xa < (2 * n + 3)
    if np.any(small):
        out[small] = _series_j(n, xa[small])
    rest = ~small
    if np.any(rest):
        if n >= 4:
            down = rest & (xa < n)
            if np.any(down):
                out[down] = _downward_j(n, xa[down])
            up = rest & ~down
        else:
            up = rest
        if np.any(up):
            out[up] = _upward_j(n, xa[up])
    return float(out[0]) if scalar else out


def spherical_y(n: int, x):
    """Irregular spherical Bessel y_n(x), singular as -(2n-1)!!/x^{n+1} at 0.

    Upward recurrence from y0 = -cos(x)/x is stable for all n since |y_n|
    grows with the order.
    """
    if n < 0:
        raise ValueError("order must be >= 0")
    xa = _validate(x, "spherical_y")
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    ym = -np.cos(xa) / xa
    if n == 0:
        return float(ym[0]) if scalar else ym
    yc = ym / xa - np.sin(xa) / xa
    for m in range(1, n):
        ym, yc = yc, (2 * m + 1) / xa * yc - ym
    return float(yc[0]) if scalar else yc


def modified_i(n: int, x):
    """Modified spherical Bessel i_n(x) = sqrt(pi/2x) I_{n+1/2}(x).

    Series for moderate x (all terms positive, no cancellation), hyperbolic
    closed forms plus upward recurrence for large x.  Raises OverflowError
    once e^x exceeds the float64 range.
    """
    if n < 0:
        raise ValueError("order must be >= 0")
    xa = _validate(x, "modified_i")
    if np.any(xa > _EXP_OVERFLOW):
        raise OverflowError("modified_i: argument too large, e^x overflows float64")
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    out = np.empty_like(xa)

    small = xa < max(2 * n + 2, 2)
    if np.any(small):
        out[small] = _series_i(n, xa[small])
    big = ~small
    if np.any(big):
        xb = xa[big]
        im = np.sinh(xb) / xb
        if n == 0:
            out[big] = im
        else:
            ic = np.cosh(xb) / xb - np.sinh(xb) / (xb * xb)
            for m in range(1, n):
                im, ic = ic, im - (2 * m + 1) / xb * ic
            out[big] = ic
    return float(out[0]) if scalar else out


def modified_k(n: int, x):
    """Decaying modified spherical Bessel k_n(x) = sqrt(pi/2x) K_{n+1/2}(x).

    Elementary for every order: k0 = (pi/2) e^{-x}/x and the upward
    recurrence k_{n+1} = k_{n-1} + (2n+1)/x k_n has only positive terms.
    Underflows quietly to 0 for very large x.
    """
    if n < 0:
        raise ValueError("order must be >= 0")
    xa = _validate(x, "modified_k")
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    km = (np.pi / 2.0) * np.exp(-xa) / xa
    if n == 0:
        return float(km[0]) if scalar else km
    kc = km * (1.0 + 1.0 / xa)
    for m in range(1, n):
        km, kc = kc, km + (2 * m + 1) / xa * kc
    return float(kc[0]) if scalar else kc


def reduced_j(n: int, z):
    """The entire function j_n(x)/x^n continued to z = x^2.

    For z > 0 it equals spherical_j(n, sqrt(z))/sqrt(z)^n, for z < 0 it
    equals modified_i(n, sqrt(-z))/sqrt(-z)^n, and at z = 0 it takes the
    value 1/(2n+1)!!.  Used for branch-free square-well threshold ratios.
    """
    if n < 0:
        raise ValueError("order must be >= 0")
    za = np.asarray(z, dtype=float)
    if np.any(np.isnan(za)):
        raise ValueError("reduced_j: NaN argument rejected")
    scalar = za.ndim == 0
    za = np.atleast_1d(za)
    out = np.empty_like(za)

    mid = np.abs(za) < (2 * n + 3)
    if np.any(mid):
        zm = za[mid]
        term = np.ones_like(zm)
        acc = np.ones_like(zm)
        for m in range(1, 40):
            term = term * (-zm / 2.0) / (m * (2 * n + 2 * m + 1))
            acc += term
            if np.max(np.abs(term)) < 1e-18 * np.max(np.abs(acc)):
                break
        out[mid] = acc / double_factorial(2 * n + 1)
    pos = ~mid & (za > 0)
    if np.any(pos):
        xp = np.sqrt(za[pos])
        out[pos] = spherical_j(n, xp) / xp**n
    neg = ~mid & (za < 0)
    if np.any(neg):
        xn = np.sqrt(-za[neg])
        out[neg] = modified_i(n, xn) / xn**n
    return float(out[0]) if scalar else out


def spherical_j_zero(n: int, k: int) -> float:
    """k-th positive zero of j_n (k = 1, 2, ...) by bracketing and bisection.

    Zeros are simple and separated by more than 1, so scanning unit-length
    brackets starting just beyond the order cannot skip any.
    """
    if k < 1:
        raise ValueError("zero index starts at 1")
    found = 0
    a = max(n, 1e-3)
    fa = spherical_j(n, a)
    while True:
        b = a + 1.0
        fb = spherical_j(n, b)
        if fa * fb < 0.0:
            found += 1
            if found == k:
                lo, hi = a, b
                for _ in range(200):
                    mid = 0.5 * (lo + hi)
                    fm = spherical_j(n, mid)
                    if fa * fm <= 0.0:
                        hi, fb = mid, fm
                    else:
                        lo, fa = mid, fm
                    if hi - lo < 1e-14 * hi:
                        break
                return 0.5 * (lo + hi)
        a, fa = b, fb
        if a > 1e4:
            raise RuntimeError("zero bracketing ran away")
