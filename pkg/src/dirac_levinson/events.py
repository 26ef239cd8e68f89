"""Jump events of the threshold matching ratios along a coupling path.

Bound states are created and destroyed only at two kinds of landmark
crossings of the interior matching ratio:

  * A_kappa(+M) through infinity  (g(r0) = 0):  a positive-energy
    scattering state becomes bound (or conversely), delta_kappa(M)
    jumps by +-pi;
  * A_kappa(-M) through rho1 = (2 kappa - 1)/(2 M r0):  a bound state
    becomes a negative-energy scattering state (or conversely),
    delta_kappa(-M) jumps by -+pi.

For kappa = 1 a path that ends exactly on a rho1 crossing leaves the
system in the half-bound configuration and contributes half a jump
(+-pi/2).  Paths always start at zero coupling, where delta = 0 by the
free-particle convention.

Events are bracketed on a coupling grid and bisected on continuous
numerator/denominator pairs, so crossings through infinity are ordinary
sign changes.  The square-well family uses the closed-form pair; general
cutoff potentials use the overall scale s*V(r), s in [0, 1], with the
pairs obtained by integration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exterior import threshold_constants
from .interior import interior_rays_batch, threshold_ratio_pair
from .potential import AngularChannel, CutoffPotential, PhysicalScale

__all__ = [
    "JumpEvent",
    "EventLedger",
    "find_square_well_events",
    "find_scaled_events",
    "accumulate_threshold_delta",
]

A_PLUS_INF = "A_plus_through_infinity"
A_MINUS_RHO1 = "A_minus_through_rho1"
HALF_BOUND_TOUCH = "half_bound_touch"

LAMBDA_TOL = 1e-12
TOUCH_TOL = 1e-9


@dataclass(frozen=True)
class JumpEvent:
    """A landmark crossing at coupling lambda_star.

    ``direction`` is the crossing sense of the ratio when the coupling is
    traversed in the increasing direction: -1 for A decreasing through the
    landmark, +1 for increasing.  (For the square well A decreases
    monotonically in lambda, so direction is -1 for every event; scaled
    general potentials can produce both.)
    """

    lambda_star: float
    kind: str
    direction: int


def _bisect_root(fn, lo, hi, flo, fhi, tol=LAMBDA_TOL):
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = fn(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)


def _scan_events(grid, Fs, Gs, rho1, fn_pair, kind_plus: bool):
    """Bracket sign changes of G (plus) or F - rho1*G (minus) and bisect."""
    if kind_plus:
        vals = Gs
        kind = A_PLUS_INF
    else:
        vals = Fs - rho1 * Gs
        kind = A_MINUS_RHO1
    events = []
    for i in range(len(grid) - 1):
        v0, v1 = vals[i], vals[i + 1]
        if v0 == 0.0:
            # grid point exactly on the event (handled once, from the left cell)
            lam0 = grid[i]
            a_lo = _ratio_at(fn_pair, lam0 - 1e-7)
            events.append(_classify(lam0, kind, a_lo, rho1))
            continue
        if v0 * v1 < 0.0:
            if kind_plus:
                f = lambda lam: fn_pair(lam)[1]
            else:
                f = lambda lam: fn_pair(lam)[0] - rho1 * fn_pair(lam)[1]
            lam_star = _bisect_root(f, grid[i], grid[i + 1], v0, v1)
            a_lo = _ratio_at(fn_pair, grid[i])
            events.append(_classify(lam_star, kind, a_lo, rho1))
    return events


def _ratio_at(fn_pair, lam):
    F, G = fn_pair(lam)
    if G == 0.0:
        return math.inf
    return F / G


def _classify(lam_star, kind, a_before, rho1):
    # ratio value just below the crossing decides the sense
    if kind == A_PLUS_INF:
        direction = -1 if a_before < 0.0 else +1
    else:
        direction = -1 if a_before > rho1 else +1
    return JumpEvent(lambda_star=float(lam_star), kind=kind, direction=direction)


def find_square_well_events(ch: AngularChannel, scale: PhysicalScale, r0: float,
                            lam_lo: float, lam_hi: float, step: float = 0.01):
    """All jump events of the square-well family with lambda in [lam_lo, lam_hi].

    Detection runs on the closed-form continuous pairs (machine-precision
    locations); the scan step is halved near brackets implicitly by the
    bisection.  Events are returned sorted by lambda_star.
    """
    if ch.kappa < 1:
        raise ValueError("events are detected in the positive-kappa frame")
    if step <= 0.0 or not (lam_hi >= lam_lo):
        raise ValueError("bad lambda range")
    n = max(2, int(math.ceil((lam_hi - lam_lo) / step)) + 1)
    grid = np.linspace(lam_lo, lam_hi, n)
    rho1 = threshold_constants(scale, r0, ch).rho1
    events = []
    for threshold, kind_plus in ((+1, True), (-1, False)):
        def pair(lam, thr=threshold):
            return threshold_ratio_pair(lam, scale, r0, ch, thr)

        Fs = np.empty(n)
        Gs = np.empty(n)
        for i, lam in enumerate(grid):
            Fs[i], Gs[i] = pair(lam)
        events.extend(_scan_events(grid, Fs, Gs, rho1, pair, kind_plus))
    return sorted(events, key=lambda e: e.lambda_star)


def find_scaled_events(p: CutoffPotential, ch: AngularChannel, scale: PhysicalScale,
                       step: float = 0.01, n_steps: int = 4096):
    """Jump events along the scaling path s*V(r), s in [0, 1].

    The threshold pairs come from ODE integration, so this works for any
    piecewise-constant cutoff potential.  Event positions are s values.
    """
    if ch.kappa < 1:
        raise ValueError("events are detected in the positive-kappa frame")
    n = max(2, int(math.ceil(1.0 / step)) + 1)
    grid = np.linspace(0.0, 1.0, n)
    rho1 = threshold_constants(scale, p.r0, ch).rho1
    events = []
    for threshold, kind_plus in ((+1, True), (-1, False)):
        E = threshold * scale.M
        fs, gs = interior_rays_batch(p, ch, np.full(n, E), scale.M, n_steps, scales=grid)
        norm = np.hypot(fs, gs)
        Fs, Gs = fs / norm, gs / norm

        def pair(s, E=E):
            f, g = interior_rays_batch(p, ch, np.array([E]), scale.M, n_steps,
                                       scales=np.array([s]))
            nn = math.hypot(f[0], g[0])
            return f[0] / nn, g[0] / nn

        events.extend(_scan_events(grid, Fs, Gs, rho1, pair, kind_plus))
    return sorted(events, key=lambda e: e.lambda_star)


@dataclass(frozen=True)
class EventLedger:
    """Accumulated threshold jump with the half-bound bookkeeping."""

    delta: float
    half_bound: bool
    critical_touch: bool


def accumulate_threshold_delta(events, lam_target: float, threshold: int,
                               kappa: int, touch_tol: float = TOUCH_TOL) -> EventLedger:
    """Signed jump accumulation along the path 0 -> lam_target.

    Full crossings strictly inside the path contribute +-pi; a rho1
    crossing exactly at lam_target contributes +-pi/2 for kappa = 1 (the
    half-bound touch) and is reported, never silently rounded, for
    kappa > 1 or at the +M landmark.
    """
    kind = A_PLUS_INF if threshold == +1 else A_MINUS_RHO1
    orient = 1.0 if lam_target >= 0.0 else -1.0
    delta = 0.0
    half = False
    touch = False
    for ev in events:
        if ev.kind != kind:
            continue
        inside = (0.0 < ev.lambda_star < lam_target - touch_tol) if orient > 0 else \
                 (lam_target + touch_tol < ev.lambda_star < 0.0)
        at_end = abs(ev.lambda_star - lam_target) <= touch_tol
        if not inside and not at_end:
            continue
        d_eff = ev.direction * orient
        jump = -d_eff * math.pi if threshold == +1 else d_eff * math.pi
        if at_end:
            if threshold == -1 and abs(kappa) == 1:
                delta += 0.5 * jump
                half = True
            else:
                touch = True
        else:
            delta += jump
    return EventLedger(delta=delta, half_bound=half, critical_touch=touch)
