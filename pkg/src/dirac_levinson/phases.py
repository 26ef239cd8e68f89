"""Scattering phase shifts delta_kappa(E) and their threshold limits.

Matching the interior ray (f, g)(r0-) to the combination
cos(delta) * (regular pair) - sin(delta) * (irregular pair) of free
solutions gives

    tan delta = (A g1 - f1) / (A g2 - f2)          (all at r = r0)

which fixes delta mod pi; the free interior ray makes the numerator vanish,
so delta = 0 identically at zero coupling.  The absolute value of delta is
defined by continuity from the free particle: the starting grid point
(kr0 = 40 by default) is anchored by continuation in the overall coupling
strength from zero, and the curve is then unwrapped in energy down to the
threshold.  The limit is extrapolated from the last three geometric grid
points and snapped to the half-integer lattice {n pi/2} on which it is
guaranteed to lie.

Near threshold the exact matching reduces to

    tan delta ~ -(kr0)^{2k-1}/((2k-1)!!(2k-3)!!) * (A + 2Mr0/(2k+1)) / (A + 2M(2k-1)/(k^2 r0))

for E just above +M, and for E just below -M to

    tan delta ~ -(kr0)^{2k-1}/((2k-1)!!(2k-3)!!)
                * (A - k^2 r0/(2M(2k+1))) / (A - rho1 [1 - k^2 r0^2/((2k-1)(2k-3))])

with (-1)!! = 1 and the (2k-3) = -1 factor taken literally at kappa = 1.
(The coefficient is the double-factorial form of pi (kr0/2)^{2k-1} /
(Gamma(k+1/2) Gamma(k-1/2)); a bare extra factor pi sometimes quoted with
the double factorials does not survive the small-argument Bessel expansion,
and the asymptotic-consistency tests pin the version used here against the
full matching.)

An independent route to the same threshold limits is the jump ledger:
accumulate +-pi per landmark crossing of the closed-form threshold ratio
along the coupling path (see ``events``).  The two methods must agree
exactly after lattice snapping; their agreement is the strongest
cross-check in the suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import events as _events
from .exterior import threshold_constants
from .interior import (
    N_STEPS_DEFAULT,
    EnergyPoint,
    ProjectiveRatio,
    interior_rays_batch,
)
from .potential import AngularChannel, CutoffPotential, PhysicalScale, square_well
from .special import double_factorial, spherical_j, spherical_y

__all__ = [
    "GridSpec",
    "PhaseShiftRecord",
    "RefinementError",
    "tan_delta",
    "delta_principal_batch",
    "anchor_at_start",
    "delta_curve",
    "threshold_tan_asymptotic",
    "threshold_limit_by_jumps",
    "snap_to_lattice",
]

HALF_PI = 0.5 * math.pi
SNAP_TOL = 1e-6 * math.pi


class RefinementError(RuntimeError):
    """A phase-curve jump could not be resolved by grid refinement."""


@dataclass(frozen=True)
class GridSpec:
    """Geometric energy grid toward a threshold, in units of kr0."""

    kr0_start: float = 40.0
    kr0_floor: float = 1e-4
    points_per_decade: int = 12
    anchor_step: float = 0.25
    max_points: int = 4000

    def momenta(self, r0: float) -> np.ndarray:
        if self.kr0_start < 40.0 - 1e-12:
            raise ValueError("grid must start at kr0 >= 40")
        decades = math.log10(self.kr0_start / self.kr0_floor)
        n = int(math.ceil(decades * self.points_per_decade)) + 1
        expo = np.linspace(0.0, decades, n)
        return self.kr0_start * 10.0 ** (-expo) / r0


@dataclass(frozen=True)
class PhaseShiftRecord:
    """Unwrapped phase-shift curve toward one threshold.

    ``energies`` are ordered toward the threshold (|E| descending),
    ``delta`` carries the unwrapped values, and the extrapolated limit is
    snapped onto the lattice {n pi/2} with the integer kept alongside.
    """

    threshold: int
    energies: np.ndarray
    delta: np.ndarray
    threshold_limit: float
    threshold_in_half_pi_units: int
    half_bound_flag: bool

    def __post_init__(self):
        gaps = np.abs(np.diff(self.delta))
        if gaps.size and np.max(gaps) >= HALF_PI:
            raise ValueError("unwrap validity violated: adjacent gap >= pi/2")
        if abs(self.threshold_limit - self.threshold_in_half_pi_units * HALF_PI) > SNAP_TOL:
            raise ValueError("threshold limit is off the half-pi lattice")


def _principal(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    d = np.arctan2(num, den)
    d = np.where(d > HALF_PI, d - math.pi, d)
    d = np.where(d <= -HALF_PI, d + math.pi, d)
    return d


def tan_delta(a: ProjectiveRatio, ch: AngularChannel, e: EnergyPoint,
              scale: PhysicalScale, r0: float):
    """(sin delta, cos delta) up to a common sign, from matching at r0."""
    if not e.is_scattering:
        raise ValueError("tan_delta requires a scattering energy, |E| > M")
    k = e.k
    x = k * r0
    f1 = -(e.E + scale.M) * r0 * spherical_j(ch.kappa, x)
    g1 = x * spherical_j(ch.kappa - 1, x)
    f2 = -(e.E + scale.M) * r0 * spherical_y(ch.kappa, x)
    g2 = x * spherical_y(ch.kappa - 1, x)
    num = a.f0 * g1 - a.g0 * f1
    den = a.f0 * g2 - a.g0 * f2
    h = math.hypot(num, den)
    return num / h, den / h


def delta_principal_batch(p: CutoffPotential, ch: AngularChannel, scale: PhysicalScale,
                          energies: np.ndarray, n_steps: int = N_STEPS_DEFAULT,
                          scales=None) -> np.ndarray:
    """Principal-value delta mod pi in (-pi/2, pi/2] for a batch of energies."""
    energies = np.asarray(energies, dtype=float)
    F, G = interior_rays_batch(p, ch, energies, scale.M, n_steps, scales=scales)
    k = np.sqrt(energies * energies - scale.M * scale.M)
    x = k * p.r0
    f1 = -(energies + scale.M) * p.r0 * spherical_j(ch.kappa, x)
    g1 = x * spherical_j(ch.kappa - 1, x)
    f2 = -(energies + scale.M) * p.r0 * spherical_y(ch.kappa, x)
    g2 = x * spherical_y(ch.kappa - 1, x)
    return _principal(F * g1 - G * f1, F * g2 - G * f2)


def _unwrap_to(prev: float, principal: float) -> float:
    return principal + math.pi * round((prev - principal) / math.pi)


def anchor_at_start(p: CutoffPotential, ch: AngularChannel, scale: PhysicalScale,
                    threshold: int, grid: GridSpec, n_steps: int = N_STEPS_DEFAULT) -> float:
    """Unwrapped delta at the starting grid energy, by coupling continuation.

    Walks the scaled family s*V(r) from s = 0 (free, delta = 0) to s = 1 at
    the fixed starting energy, unwrapping mod-pi values along the way.  The
    ladder is refined wherever adjacent steps move delta by >= 0.45 pi.
    """
    k_start = grid.kr0_start / p.r0
    E = threshold * math.sqrt(scale.M**2 + k_start**2)
    span = max(1.0, p.max_abs * p.r0)
    n = int(math.ceil(span / grid.anchor_step)) + 2
    s_grid = list(np.linspace(0.0, 1.0, n))
    d_prev = 0.0
    i = 1
    guard = 0
    while i < len(s_grid):
        dp = delta_principal_batch(p, ch, scale, np.array([E]), n_steps,
                                   scales=np.array([s_grid[i]]))[0]
        d_new = _unwrap_to(d_prev, dp)
        if abs(d_new - d_prev) >= 0.45 * math.pi:
            guard += 1
            if guard > 60:
                raise RefinementError(
                    f"anchor ladder not resolvable near s in ({s_grid[i-1]}, {s_grid[i]})")
            s_grid.insert(i, 0.5 * (s_grid[i - 1] + s_grid[i]))
            continue
        d_prev = d_new
        i += 1
    return d_prev


def delta_curve(p: CutoffPotential, ch: AngularChannel, scale: PhysicalScale,
                threshold: int, grid: GridSpec = GridSpec(),
                n_steps: int = N_STEPS_DEFAULT, anchor: float | None = None) -> PhaseShiftRecord:
    """Unwrapped delta(E) toward E = threshold*M and its snapped limit.

    The start value is anchored by coupling continuation (or passed in when
    the caller has already walked a coupling ladder); the curve is unwrapped
    by continuity over the geometric grid, refining the grid wherever an
    adjacent gap reaches 0.45 pi; the limit is Aitken-extrapolated from the
    last three points and snapped to {n pi/2}.
    """
    if threshold not in (+1, -1):
        raise ValueError("threshold must be +1 or -1")
    if ch.kappa < 0:
        # symmetry map: the -kappa curve in V at E is the kappa curve in -V
        # at -E with f and g exchanged, and the exchange preserves delta
        from .potential import reflect

        rec = delta_curve(reflect(p), ch.mirror(), scale, -threshold, grid, n_steps, anchor)
        return PhaseShiftRecord(
            threshold=threshold,
            energies=-rec.energies,
            delta=rec.delta,
            threshold_limit=rec.threshold_limit,
            threshold_in_half_pi_units=rec.threshold_in_half_pi_units,
            half_bound_flag=rec.half_bound_flag,
        )
    if anchor is None:
        anchor = anchor_at_start(p, ch, scale, threshold, grid, n_steps)

    ks = list(grid.momenta(p.r0))
    Es = [threshold * math.sqrt(scale.M**2 + k * k) for k in ks]
    principals = list(delta_principal_batch(p, ch, scale, np.array(Es), n_steps))

    deltas = [_unwrap_to(anchor, principals[0])]
    i = 1
    while i < len(ks):
        d_new = _unwrap_to(deltas[-1], principals[i])
        if abs(d_new - deltas[-1]) >= 0.45 * math.pi:
            if len(ks) >= grid.max_points or ks[i - 1] / ks[i] < 1.0 + 1e-13:
                raise RefinementError(
                    f"phase jump not resolvable in kr0 bracket "
                    f"({ks[i]*p.r0:.6e}, {ks[i-1]*p.r0:.6e})")
            k_mid = math.sqrt(ks[i - 1] * ks[i])
            E_mid = threshold * math.sqrt(scale.M**2 + k_mid * k_mid)
            p_mid = delta_principal_batch(p, ch, scale, np.array([E_mid]), n_steps)[0]
            ks.insert(i, k_mid)
            Es.insert(i, E_mid)
            principals.insert(i, p_mid)
            continue
        deltas.append(d_new)
        i += 1

    d1, d2, d3 = deltas[-3], deltas[-2], deltas[-1]
    num = (d3 - d2) ** 2
    den = (d3 - d2) - (d2 - d1)
    limit = d3 if abs(den) < 1e-14 else d3 - num / den
    units = round(limit / HALF_PI)
    if abs(limit - units * HALF_PI) > SNAP_TOL:
        raise RefinementError(
            f"threshold limit {limit!r} is {abs(limit - units*HALF_PI):.2e} off the "
            f"half-pi lattice; refine the grid or the coupling ladder")
    return PhaseShiftRecord(
        threshold=threshold,
        energies=np.array(Es),
        delta=np.array(deltas),
        threshold_limit=units * HALF_PI,
        threshold_in_half_pi_units=units,
        half_bound_flag=(abs(ch.kappa) == 1 and units % 2 != 0),
    )


def threshold_tan_asymptotic(a: ProjectiveRatio, ch: AngularChannel, e: EnergyPoint,
                             scale: PhysicalScale, r0: float) -> float:
    """Leading near-threshold tan delta from the matching ratio alone."""
    if ch.kappa < 1:
        raise ValueError("kappa must be >= 1")
    k = e.k
    x = k * r0
    kap = ch.kappa
    M = scale.M
    coef = x ** (2 * kap - 1) / (double_factorial(2 * kap - 1) * double_factorial(2 * kap - 3))
    A = a.value
    if e.E > 0:
        if math.isinf(A):
            frac = 1.0
        else:
            frac = (A + 2.0 * M * r0 / (2 * kap + 1)) / (A + 2.0 * M * (2 * kap - 1) / (k * k * r0))
    else:
        rho1 = threshold_constants(scale, r0, ch).rho1
        if math.isinf(A):
            frac = 1.0
        else:
            frac = (A - k * k * r0 / (2.0 * M * (2 * kap + 1))) / \
                   (A - rho1 * (1.0 - k * k * r0 * r0 / ((2 * kap - 1) * (2 * kap - 3))))
    return -coef * frac


def threshold_limit_by_jumps(lam_target: float, ch: AngularChannel, scale: PhysicalScale,
                             r0: float, threshold: int,
                             step: float = 0.01) -> _events.EventLedger:
    """Threshold limit of delta for the square well, by jump accumulation.

    Walks lambda from 0 to lam_target counting landmark crossings of the
    closed-form ratio; a rho1 crossing exactly at lam_target yields the
    half-bound half jump for kappa = 1 (flagged on the ledger).
    """
    if ch.kappa < 1:
        raise ValueError("kappa must be >= 1 here; negative kappa is served by symmetry")
    lo, hi = min(0.0, lam_target), max(0.0, lam_target)
    evs = _events.find_square_well_events(ch, scale, r0, lo - 10 * _events.TOUCH_TOL,
                                          hi + 10 * _events.TOUCH_TOL, step)
    return _events.accumulate_threshold_delta(evs, lam_target, threshold, ch.kappa)


def snap_to_lattice(delta: float, tol: float = SNAP_TOL):
    """Snap an extrapolated limit onto {n pi/2}; returns (units, snapped)."""
    units = round(delta / HALF_PI)
    if abs(delta - units * HALF_PI) > tol:
        raise ValueError(f"{delta} is not within {tol} of the half-pi lattice")
    return units, units * HALF_PI
