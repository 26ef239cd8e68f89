"""Bound states in the gap (-M, M) and half-bound detection.

A bound state is a gap energy at which the regular interior ray meets the
decaying exterior ray (the match condition).  With both rays unit
normalized and continuous in E, the cross product

    X(E) = f_int g_ext - g_int f_ext

vanishes exactly at matches and nowhere else, and is an ordinary smooth
function of E even where either ratio passes through infinity, so roots
are found by scanning a gap grid for sign changes and bisecting.  The
interior angle falls and the exterior angle rises monotonically in E, so
roots are simple.

Negative kappa is served by the symmetry map: the (kappa, E, V) solution
with f and g exchanged solves (-kappa, -E, -V), hence the -kappa spectrum
in V is the kappa spectrum in -V with energies negated.

The half-bound configuration (kappa = 1, A(-M) = rho1) is a finite but
non-normalizable threshold solution: it is flagged, never counted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exterior import bound_exterior_rays, threshold_constants
from .interior import (
    N_STEPS_DEFAULT,
    ProjectiveRatio,
    closed_form_threshold_ratio,
    interior_rays_batch,
)
from .potential import AngularChannel, CutoffPotential, PhysicalScale, reflect

__all__ = [
    "SpectrumReport",
    "GridResolutionError",
    "find_bound_states",
    "detect_half_bound",
    "solve_negative_kappa",
    "threshold_ratio_of",
]

SCAN_POINTS = 2000
SCAN_EDGE = 1e-8
SCAN_DENSE_EDGE = 1e-4
SCAN_TAIL_POINTS = 32
HALF_BOUND_TOL = 1e-9


class GridResolutionError(RuntimeError):
    """Two spectrum roots may share one scan cell; refine the scan grid."""


@dataclass(frozen=True)
class SpectrumReport:
    """Bound-state energies (ascending), their count, and half-bound flags."""

    bound_energies: tuple[float, ...]
    half_bound_at_plus_M: bool
    half_bound_at_minus_M: bool

    @property
    def count(self) -> int:
        return len(self.bound_energies)


def _scan_grid(M: float) -> np.ndarray:
    base = np.linspace(-M + SCAN_EDGE, M - SCAN_EDGE, SCAN_POINTS)
    eps = np.geomspace(SCAN_EDGE, SCAN_DENSE_EDGE, SCAN_TAIL_POINTS + 1)[1:]
    grid = np.concatenate([base, -M + eps, M - eps])
    return np.unique(grid)


def threshold_ratio_of(p: CutoffPotential, ch: AngularChannel, scale: PhysicalScale,
                       threshold: int, n_steps: int = N_STEPS_DEFAULT) -> ProjectiveRatio:
    """A_kappa(threshold*M): closed form for the square well, else integrated."""
    if p.is_square_well():
        return closed_form_threshold_ratio(p.well_depth, scale, p.r0, ch, threshold)
    f, g = interior_rays_batch(p, ch, np.array([threshold * scale.M]), scale.M, n_steps)
    return ProjectiveRatio(float(f[0]), float(g[0]))


def _cross_values(p, ch, energies, M, n_steps):
    fi, gi = interior_rays_batch(p, ch, energies, M, n_steps)
    ni = np.hypot(fi, gi)
    fe, ge = bound_exterior_rays(ch, energies, M, p.r0)
    ne = np.hypot(fe, ge)
    return (fi * ge - gi * fe) / (ni * ne)


def find_bound_states(p: CutoffPotential, ch: AngularChannel, scale: PhysicalScale,
                      tol: float = 1e-12, n_steps: int = N_STEPS_DEFAULT) -> SpectrumReport:
    """All gap bound states by sign-change scan plus bisection of X(E).

    The scan grid is 2000 uniform points across the gap, geometrically
    densified within 1e-4 of both thresholds where near-critical states
    accumulate.  Each root is bisected to ``tol`` in energy and must match
    projectively to 1e-9.
    """
    if ch.kappa < 0:
        return solve_negative_kappa(p, ch, scale, "spectrum", tol=tol, n_steps=n_steps)
    if tol < 1e-15:
        raise ValueError("tol below float resolution")
    M = scale.M
    grid = _scan_grid(M)
    # two-stage scan: cheap steps locate brackets in the uniform bulk (sign
    # changes survive the coarser integration away from the thresholds),
    # full accuracy handles the densified tails and all refinement
    bulk = min(n_steps, 1024)
    near_edge = np.minimum(grid + M, M - grid) < 1.01 * SCAN_DENSE_EDGE
    xs = np.empty_like(grid)
    if np.any(~near_edge):
        xs[~near_edge] = _cross_values(p, ch, grid[~near_edge], M, bulk)
    if np.any(near_edge):
        xs[near_edge] = _cross_values(p, ch, grid[near_edge], M, n_steps)

    def xval(E: float) -> float:
        return float(_cross_values(p, ch, np.array([E]), M, n_steps)[0])

    roots = []
    for i in range(len(grid) - 1):
        x0, x1 = xs[i], xs[i + 1]
        if x0 == 0.0:
            roots.append(grid[i])
            continue
        if x0 * x1 < 0.0:
            lo, hi = grid[i], grid[i + 1]
            flo, fhi = xval(lo), xval(hi)
            if flo == 0.0:
                roots.append(lo)
                continue
            if flo * fhi > 0.0:
                # coarse-scan sign slip right next to a root: the true
                # bracket is one cell over
                if i + 2 < len(grid) and flo * xval(grid[i + 2]) < 0.0:
                    hi, fhi = grid[i + 2], xval(grid[i + 2])
                elif i >= 1 and xval(grid[i - 1]) * flo < 0.0:
                    lo, hi = grid[i - 1], grid[i]
                    flo, fhi = xval(lo), xval(hi)
                else:
                    continue
            fm = None
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                fm = xval(mid)
                if flo * fm <= 0.0:
                    hi = mid
                else:
                    lo, flo = mid, fm
                if hi - lo < tol and abs(fm) < 1e-9:
                    break
            root = 0.5 * (lo + hi)
            if abs(xval(root)) >= 1e-9:
                raise GridResolutionError(
                    f"projective match not reached at E={root!r}; refine n_steps")
            roots.append(root)

    # same-sign cells whose parabolic interpolant dips through zero hide
    # an unresolved root pair
    for i in range(1, len(grid) - 1):
        a, b, c = xs[i - 1], xs[i], xs[i + 1]
        if a * b < 0 or b * c < 0 or b == 0.0:
            continue
        denom = (a - 2 * b + c)
        if denom == 0.0:
            continue
        t = 0.5 * (a - c) / denom
        if -1.0 < t < 1.0:
            extremum = b - 0.25 * (a - c) * t
            if extremum * b < 0.0:
                raise GridResolutionError(
                    f"possible root pair in cell around E={grid[i]!r}; "
                    f"refine the scan grid near this energy")

    hb_plus, hb_minus = detect_half_bound(p, ch, scale, HALF_BOUND_TOL, n_steps)
    return SpectrumReport(
        bound_energies=tuple(float(r) for r in roots),
        half_bound_at_plus_M=hb_plus,
        half_bound_at_minus_M=hb_minus,
    )


def detect_half_bound(p: CutoffPotential, ch: AngularChannel, scale: PhysicalScale,
                      tol: float = HALF_BOUND_TOL, n_steps: int = N_STEPS_DEFAULT):
    """(at +M, at -M) flags; -M requires kappa = 1 with A(-M) = rho1.

    Detection at +M is reserved for kappa = -1, where the mirrored channel
    has its half-bound at the opposite threshold.
    """
    if ch.kappa < 0:
        return solve_negative_kappa(p, ch, scale, "half_bound", tol=tol, n_steps=n_steps)
    if ch.kappa != 1:
        return (False, False)
    a = threshold_ratio_of(p, ch, scale, -1, n_steps)
    rho1 = threshold_constants(scale, p.r0, ch).rho1
    target = ProjectiveRatio.from_value(rho1)
    return (False, a.distance(target) < tol)


def solve_negative_kappa(p: CutoffPotential, ch: AngularChannel, scale: PhysicalScale,
                         request: str, **kw):
    """Serve a kappa <= -1 request through the mirrored positive channel.

    The pipeline runs on (-kappa, -V); energies are negated back and the
    threshold roles (hence the half-bound flags) swap.
    """
    if ch.kappa > 0:
        raise ValueError("solve_negative_kappa expects kappa <= -1")
    mirror_ch = ch.mirror()
    mirror_p = reflect(p)
    if request == "spectrum":
        rep = find_bound_states(mirror_p, mirror_ch, scale, **kw)
        return SpectrumReport(
            bound_energies=tuple(sorted(-e for e in rep.bound_energies)),
            half_bound_at_plus_M=rep.half_bound_at_minus_M,
            half_bound_at_minus_M=rep.half_bound_at_plus_M,
        )
    if request == "half_bound":
        plus, minus = detect_half_bound(mirror_p, mirror_ch, scale, **kw)
        return (minus, plus)
    raise ValueError(f"unknown request {request!r}")
