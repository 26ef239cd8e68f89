"""Fixed-step RK4 integration kernels for the coupled radial system

    f'(r) = -(kappa/r) f - (E - V(r) + M) g
    g'(r) = +(kappa/r) g + (E - V(r) - M) f

with V piecewise constant.  Integration is segment-aligned (n_steps per
constant segment) so the integrator never steps across a discontinuity
and keeps full 4th order.  Reciprocal stage radii are precomputed once
per segment and shared across all lanes of a batch.

These loops dominate the runtime of spectrum scans and phase-shift curves
(thousands of integrations per parameter point), so the batch kernel is
compiled with numba.  A pure-numpy fallback, vectorized across the batch
dimension, is selected by setting the environment variable

    DIRAC_LEVINSON_PURE_NUMPY=1

or automatically when numba is not importable.  ``benchmarks/kernel_benchmark.py``
compares the two paths on an identical workload.

Only the ray (f, g) matters downstream; whenever a lane's magnitude
exceeds 1e100 it is rescaled by a positive factor, which preserves signs
and the projective ray.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "interior_rays",
    "trajectory",
    "advance",
    "using_numba",
    "rays_numpy",
    "trajectory_numpy",
]

_RESCALE = 1e100
_CHECK_EVERY = 64

_PURE = os.environ.get("DIRAC_LEVINSON_PURE_NUMPY", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _PURE:
        raise ImportError("pure-numpy path requested")
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):  # passthrough decorator
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


def using_numba() -> bool:
    """True when the compiled kernel path is active."""
    return _HAVE_NUMBA


def _stage_inv_r(r_a: float, r_b: float, n_steps: int) -> np.ndarray:
    # reciprocal radii at the 2*n_steps+1 RK4 stage points of [r_a, r_b]
    h = (r_b - r_a) / n_steps
    pts = r_a + 0.5 * h * np.arange(2 * n_steps + 1)
    return 1.0 / pts


@njit(cache=True)
def _rays_kernel(kappa, energies, pots, M, seg_ends, r_start, n_steps, inv_r):
    B = energies.shape[0]
    S = seg_ends.shape[0]
    out_f = np.empty(B)
    out_g = np.empty(B)
    for b in range(B):
        E = energies[b]
        r_a = r_start
        f = -(E - pots[b, 0] + M) * r_a / (2.0 * kappa + 1.0)
        g = 1.0
        for s in range(S):
            r_b = seg_ends[s]
            h = (r_b - r_a) / n_steps
            wp = E - pots[b, s] + M
            wm = E - pots[b, s] - M
            for i in range(n_steps):
                ir0 = inv_r[s, 2 * i]
                ir1 = inv_r[s, 2 * i + 1]
                ir2 = inv_r[s, 2 * i + 2]
                k1f = -kappa * ir0 * f - wp * g
                k1g = kappa * ir0 * g + wm * f
                f1 = f + 0.5 * h * k1f
                g1 = g + 0.5 * h * k1g
                k2f = -kappa * ir1 * f1 - wp * g1
                k2g = kappa * ir1 * g1 + wm * f1
                f2 = f + 0.5 * h * k2f
                g2 = g + 0.5 * h * k2g
                k3f = -kappa * ir1 * f2 - wp * g2
                k3g = kappa * ir1 * g2 + wm * f2
                f3 = f + h * k3f
                g3 = g + h * k3g
                k4f = -kappa * ir2 * f3 - wp * g3
                k4g = kappa * ir2 * g3 + wm * f3
                f = f + h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f)
                g = g + h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g)
                if i % _CHECK_EVERY == _CHECK_EVERY - 1:
                    m = max(abs(f), abs(g))
                    if m > _RESCALE:
                        f /= m
                        g /= m
            r_a = r_b
        out_f[b] = f
        out_g[b] = g
    return out_f, out_g


def rays_numpy(kappa, energies, pots, M, seg_ends, r_start, n_steps, inv_r):
    """Pure-numpy batch integrator, vectorized across lanes."""
    energies = np.asarray(energies, dtype=float)
    B = energies.shape[0]
    S = len(seg_ends)
    r_a = r_start
    f = -(energies - pots[:, 0] + M) * r_a / (2.0 * kappa + 1.0)
    g = np.ones(B)
    for s in range(S):
        r_b = seg_ends[s]
        h = (r_b - r_a) / n_steps
        wp = energies - pots[:, s] + M
        wm = energies - pots[:, s] - M
        for i in range(n_steps):
            ir0 = inv_r[s, 2 * i]
            ir1 = inv_r[s, 2 * i + 1]
            ir2 = inv_r[s, 2 * i + 2]
            k1f = -kappa * ir0 * f - wp * g
            k1g = kappa * ir0 * g + wm * f
            f1 = f + 0.5 * h * k1f
            g1 = g + 0.5 * h * k1g
            k2f = -kappa * ir1 * f1 - wp * g1
            k2g = kappa * ir1 * g1 + wm * f1
            f2 = f + 0.5 * h * k2f
            g2 = g + 0.5 * h * k2g
            k3f = -kappa * ir1 * f2 - wp * g2
            k3g = kappa * ir1 * g2 + wm * f2
            f3 = f + h * k3f
            g3 = g + h * k3g
            k4f = -kappa * ir2 * f3 - wp * g3
            k4g = kappa * ir2 * g3 + wm * f3
            f = f + h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f)
            g = g + h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g)
            if i % _CHECK_EVERY == _CHECK_EVERY - 1:
                m = np.maximum(np.abs(f), np.abs(g))
                mask = m > _RESCALE
                if mask.any():
                    f = np.where(mask, f / m, f)
                    g = np.where(mask, g / m, g)
        r_a = r_b
    return f, g


def interior_rays(kappa: int, energies, pots, M: float, seg_ends, r0: float, n_steps: int):
    """Integrate the regular solution from r0*1e-6 to r0 for a batch of lanes.

    Parameters
    ----------
    kappa : positive integer channel.
    energies : (B,) energies, one per lane.
    pots : (B, S) potential value per lane and segment.
    seg_ends : (S,) increasing segment outer radii, last = r0.
    n_steps : RK4 steps per segment.

    Returns the unnormalized boundary pair (f(r0), g(r0)) per lane, with the
    regular initialization g ~ r^kappa, f ~ -(E - V(0) + M) r^{kappa+1}/(2k+1)
    rescaled by r_start^-kappa (a positive factor, so the ray is unchanged).
    """
    if kappa < 1:
        raise ValueError("interior integration requires kappa >= 1 (use the mirror map)")
    energies = np.ascontiguousarray(energies, dtype=float)
    pots = np.ascontiguousarray(pots, dtype=float)
    seg_ends = np.ascontiguousarray(seg_ends, dtype=float)
    if not np.all(np.isfinite(energies)):
        raise ValueError("non-finite energy")
    r_start = r0 * 1e-6
    inv_r = np.empty((len(seg_ends), 2 * n_steps + 1))
    r_a = r_start
    for s, r_b in enumerate(seg_ends):
        inv_r[s] = _stage_inv_r(r_a, r_b, n_steps)
        r_a = r_b
    fn = _rays_kernel if _HAVE_NUMBA else rays_numpy
    f, g = fn(float(kappa), energies, pots, float(M), seg_ends, r_start, int(n_steps), inv_r)
    if not (np.all(np.isfinite(f)) and np.all(np.isfinite(g))):
        raise FloatingPointError("non-finite value in radial integration")
    return f, g


@njit(cache=True)
def _trajectory_kernel(kappa, E, M, seg_ends, seg_vals, r_start, f0, g0, n_steps, inv_r, radii, fs, gs):
    S = seg_ends.shape[0]
    f = f0
    g = g0
    idx = 0
    fs[0] = f
    gs[0] = g
    r_a = r_start
    for s in range(S):
        r_b = seg_ends[s]
        h = (r_b - r_a) / n_steps
        wp = E - seg_vals[s] + M
        wm = E - seg_vals[s] - M
        for i in range(n_steps):
            ir0 = inv_r[s, 2 * i]
            ir1 = inv_r[s, 2 * i + 1]
            ir2 = inv_r[s, 2 * i + 2]
            k1f = -kappa * ir0 * f - wp * g
            k1g = kappa * ir0 * g + wm * f
            f1 = f + 0.5 * h * k1f
            g1 = g + 0.5 * h * k1g
            k2f = -kappa * ir1 * f1 - wp * g1
            k2g = kappa * ir1 * g1 + wm * f1
            f2 = f + 0.5 * h * k2f
            g2 = g + 0.5 * h * k2g
            k3f = -kappa * ir1 * f2 - wp * g2
            k3g = kappa * ir1 * g2 + wm * f2
            f3 = f + h * k3f
            g3 = g + h * k3g
            k4f = -kappa * ir2 * f3 - wp * g3
            k4g = kappa * ir2 * g3 + wm * f3
            f = f + h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f)
            g = g + h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g)
            if i % _CHECK_EVERY == _CHECK_EVERY - 1:
                m = max(abs(f), abs(g))
                if m > _RESCALE:
                    f /= m
                    g /= m
            idx += 1
            radii[idx] = r_a + (i + 1) * h
            fs[idx] = f
            gs[idx] = g
        r_a = r_b


def trajectory_numpy(kappa, E, M, seg_ends, seg_vals, r_start, f0, g0, n_steps, inv_r, radii, fs, gs):
    """Pure-python single-lane trajectory (fallback path)."""
    f, g = f0, g0
    idx = 0
    fs[0], gs[0] = f, g
    r_a = r_start
    for s in range(len(seg_ends)):
        r_b = seg_ends[s]
        h = (r_b - r_a) / n_steps
        wp = E - seg_vals[s] + M
        wm = E - seg_vals[s] - M
        row = inv_r[s]
        for i in range(n_steps):
            ir0 = row[2 * i]
            ir1 = row[2 * i + 1]
            ir2 = row[2 * i + 2]
            k1f = -kappa * ir0 * f - wp * g
            k1g = kappa * ir0 * g + wm * f
            f1 = f + 0.5 * h * k1f
            g1 = g + 0.5 * h * k1g
            k2f = -kappa * ir1 * f1 - wp * g1
            k2g = kappa * ir1 * g1 + wm * f1
            f2 = f + 0.5 * h * k2f
            g2 = g + 0.5 * h * k2g
            k3f = -kappa * ir1 * f2 - wp * g2
            k3g = kappa * ir1 * g2 + wm * f2
            f3 = f + h * k3f
            g3 = g + h * k3g
            k4f = -kappa * ir2 * f3 - wp * g3
            k4g = kappa * ir2 * g3 + wm * f3
            f = f + h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f)
            g = g + h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g)
            if i % _CHECK_EVERY == _CHECK_EVERY - 1:
                m = max(abs(f), abs(g))
                if m > _RESCALE:
                    f /= m
                    g /= m
            idx += 1
            radii[idx] = r_a + (i + 1) * h
            fs[idx] = f
            gs[idx] = g
        r_a = r_b


def trajectory(kappa: int, E: float, M: float, seg_ends, seg_vals, r0: float, n_steps: int,
               f0: float | None = None, g0: float | None = None):
    """Full sampled trajectory from r0*1e-6 to r0 (n_steps per segment).

    Default initial data is the regular solution; pass (f0, g0) to integrate
    an arbitrary ray (used by Wronskian checks).  Returns (radii, f, g).
    """
    if kappa < 1:
        raise ValueError("interior integration requires kappa >= 1")
    seg_ends = np.ascontiguousarray(seg_ends, dtype=float)
    seg_vals = np.ascontiguousarray(seg_vals, dtype=float)
    r_start = r0 * 1e-6
    if f0 is None and g0 is None:
        f0 = -(E - seg_vals[0] + M) * r_start / (2.0 * kappa + 1.0)
        g0 = 1.0
    S = len(seg_ends)
    inv_r = np.empty((S, 2 * n_steps + 1))
    r_a = r_start
    for s, r_b in enumerate(seg_ends):
        inv_r[s] = _stage_inv_r(r_a, r_b, n_steps)
        r_a = r_b
    total = S * n_steps + 1
    radii = np.empty(total)
    radii[0] = r_start
    fs = np.empty(total)
    gs = np.empty(total)
    fn = _trajectory_kernel if _HAVE_NUMBA else trajectory_numpy
    fn(float(kappa), float(E), float(M), seg_ends, seg_vals, r_start,
       float(f0), float(g0), int(n_steps), inv_r, radii, fs, gs)
    if not (np.all(np.isfinite(fs)) and np.all(np.isfinite(gs))):
        raise FloatingPointError("non-finite value in radial integration")
    return radii, fs, gs


@njit(cache=True)
def _advance_kernel(kappa, E, V, M, r_a, r_b, f, g, n):
    h = (r_b - r_a) / n
    wp = E - V + M
    wm = E - V - M
    for i in range(n):
        r = r_a + i * h
        ir0 = 1.0 / r
        ir1 = 1.0 / (r + 0.5 * h)
        ir2 = 1.0 / (r + h)
        k1f = -kappa * ir0 * f - wp * g
        k1g = kappa * ir0 * g + wm * f
        f1 = f + 0.5 * h * k1f
        g1 = g + 0.5 * h * k1g
        k2f = -kappa * ir1 * f1 - wp * g1
        k2g = kappa * ir1 * g1 + wm * f1
        f2 = f + 0.5 * h * k2f
        g2 = g + 0.5 * h * k2g
        k3f = -kappa * ir1 * f2 - wp * g2
        k3g = kappa * ir1 * g2 + wm * f2
        f3 = f + h * k3f
        g3 = g + h * k3g
        k4f = -kappa * ir2 * f3 - wp * g3
        k4g = kappa * ir2 * g3 + wm * f3
        f = f + h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f)
        g = g + h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g)
    return f, g


def _advance_python(kappa, E, V, M, r_a, r_b, f, g, n):
    h = (r_b - r_a) / n
    wp = E - V + M
    wm = E - V - M
    for i in range(n):
        r = r_a + i * h
        ir0 = 1.0 / r
        ir1 = 1.0 / (r + 0.5 * h)
        ir2 = 1.0 / (r + h)
        k1f = -kappa * ir0 * f - wp * g
        k1g = kappa * ir0 * g + wm * f
        f1 = f + 0.5 * h * k1f
        g1 = g + 0.5 * h * k1g
        k2f = -kappa * ir1 * f1 - wp * g1
        k2g = kappa * ir1 * g1 + wm * f1
        f2 = f + 0.5 * h * k2f
        g2 = g + 0.5 * h * k2g
        k3f = -kappa * ir1 * f2 - wp * g2
        k3g = kappa * ir1 * g2 + wm * f2
        f3 = f + h * k3f
        g3 = g + h * k3g
        k4f = -kappa * ir2 * f3 - wp * g3
        k4g = kappa * ir2 * g3 + wm * f3
        f = f + h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f)
        g = g + h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g)
    return f, g


def advance(kappa, E, V, M, r_a, r_b, f, g, n=8):
    """Advance one state across [r_a, r_b] inside a constant-V segment."""
    fn = _advance_kernel if _HAVE_NUMBA else _advance_python
    return fn(float(kappa), float(E), float(V), float(M), float(r_a), float(r_b), float(f), float(g), int(n))
