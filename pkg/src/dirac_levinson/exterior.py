"""Free-field solutions for r > r0 at scattering, gap, and threshold energies.

Scattering (|E| > M, k = sqrt(E^2 - M^2)): two oscillatory solutions

    f1 = -(E + M) r j_kappa(kr),   g1 = kr j_{kappa-1}(kr)
    f2 = -(E + M) r y_kappa(kr),   g2 = kr y_{kappa-1}(kr)

whose asymptotic g-amplitudes are unit sine/cosine waves, so the physical
combination cos(delta) * sol1 - sin(delta) * sol2 defines the phase shift
with delta = 0 for the free interior ray.  Their Wronskian f1 g2 - f2 g1 =
-(E + M)/k is r-independent.

Gap (|E| < M, tau = sqrt(M^2 - E^2)): one decaying solution

    f = (E + M) r k_kappa(tau r),  g = tau r k_{kappa-1}(tau r)

giving the exterior ratio B(E) = (E+M)/tau * k_kappa(tau r0)/k_{kappa-1}(tau r0),
strictly increasing from rho1 = (2 kappa - 1)/(2 M r0) at E -> -M to
+infinity at E -> +M.  Bound states occur where the interior ray meets it.

Thresholds (E = +-M exactly): the free equations are power laws,

    E = +M:  g = g(r0) (r/r0)^kappa
             f = f(r0) (r/r0)^-kappa - rho2 g(r0) [(r/r0)^{kappa+1} - (r/r0)^-kappa]
    E = -M:  f = f(r0) (r/r0)^-kappa
             g = g(r0) (r/r0)^kappa + (1/rho1) f(r0) [(r/r0)^{1-kappa} - (r/r0)^kappa]

with rho2 = 2 M r0/(2 kappa + 1).  These are what the exterior node rules
are read off from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .interior import EnergyPoint, ProjectiveRatio
from .potential import AngularChannel, PhysicalScale
from .special import modified_k, spherical_j, spherical_y

__all__ = [
    "ThresholdConstants",
    "threshold_constants",
    "scattering_pair",
    "bound_exterior_ratio",
    "bound_exterior_rays",
    "threshold_exterior",
]


@dataclass(frozen=True)
class ThresholdConstants:
    """The two threshold anchors rho1 = (2k-1)/(2Mr0), rho2 = 2Mr0/(2k+1)."""

    rho1: float
    rho2: float


def threshold_constants(scale: PhysicalScale, r0: float, ch: AngularChannel) -> ThresholdConstants:
    if ch.kappa < 1:
        raise ValueError("kappa must be >= 1")
    return ThresholdConstants(
        rho1=(2 * ch.kappa - 1) / (2.0 * scale.M * r0),
        rho2=2.0 * scale.M * r0 / (2 * ch.kappa + 1),
    )


def scattering_pair(ch: AngularChannel, e: EnergyPoint, r: float):
    """The two independent free solutions ((f1, g1), (f2, g2)) at radius r."""
    if not e.is_scattering:
        raise ValueError("scattering pair requires |E| > M")
    k = e.k
    x = k * r
    f1 = -(e.E + e.M) * r * spherical_j(ch.kappa, x)
    g1 = x * spherical_j(ch.kappa - 1, x)
    f2 = -(e.E + e.M) * r * spherical_y(ch.kappa, x)
    g2 = x * spherical_y(ch.kappa - 1, x)
    return (f1, g1), (f2, g2)


def bound_exterior_rays(ch: AngularChannel, energies, M: float, r0: float):
    """Decaying-solution rays (f, g)(r0+) for an array of gap energies."""
    energies = np.asarray(energies, dtype=float)
    if np.any(np.abs(energies) >= M):
        raise ValueError("gap solution requires |E| < M")
    tau = np.sqrt(M * M - energies * energies)
    x = tau * r0
    F = (energies + M) * modified_k(ch.kappa, x)
    G = tau * modified_k(ch.kappa - 1, x)
    return F, G


def bound_exterior_ratio(ch: AngularChannel, e: EnergyPoint, scale: PhysicalScale,
                         r0: float) -> ProjectiveRatio:
    """B_kappa(E) = f/g at r0+ of the decaying solution, as a projective ray."""
    if ch.kappa < 1:
        raise ValueError("kappa must be >= 1")
    F, G = bound_exterior_rays(ch, np.array([e.E]), scale.M, r0)
    return ProjectiveRatio(float(F[0]), float(G[0]))


def threshold_exterior(ch: AngularChannel, threshold: int, boundary, r0: float,
                       scale: PhysicalScale, r):
    """Exact power-law continuation of a threshold boundary pair to r >= r0."""
    if ch.kappa < 1:
        raise ValueError("kappa must be >= 1")
    r = np.asarray(r, dtype=float)
    if np.any(r < r0):
        raise ValueError("exterior continuation requires r >= r0")
    fb, gb = boundary
    kap = ch.kappa
    t = r / r0
    tc = threshold_constants(scale, r0, ch)
    if threshold == +1:
        g = gb * t**kap
        f = fb * t**-kap - tc.rho2 * gb * (t ** (kap + 1) - t**-kap)
    elif threshold == -1:
        f = fb * t**-kap
        g = gb * t**kap + (1.0 / tc.rho1) * fb * (t ** (1 - kap) - t**kap)
    else:
        raise ValueError("threshold must be +1 or -1")
    return f, g
