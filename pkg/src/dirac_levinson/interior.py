"""Interior solutions of the radial system on (0, r0] and the matching ratio.

Near the origin only one solution is admissible for kappa >= 1; its leading
behavior is g ~ r^kappa, f ~ -(E - V(0) + M) r^{kappa+1}/(2 kappa + 1), which
fixes the boundary ray (f(r0), g(r0)) up to normalization.  The matching
ratio A = f/g at r0- is carried projectively (as a unit 2-vector) so that
A = infinity is an ordinary point: crossings of A through infinity are the
bound-state creation events and must be regular.

For a square well the threshold ratios A(+-M) also have closed forms.  With
W = E_threshold + lambda and z = (W^2 - M^2) r0^2,

    A = -(W + M) r0 * redj_kappa(z) / redj_{kappa-1}(z)

where redj_n is the reduced spherical Bessel function j_n(x)/x^n continued
to z = x^2.  This single expression covers the oscillatory and evanescent
coupling regimes and is analytic across the regime boundaries
lambda in {0, +-2M}, where it reduces to the small-argument limits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kernels import interior_rays, trajectory
from .potential import AngularChannel, CutoffPotential, PhysicalScale
from .special import reduced_j

__all__ = [
    "EnergyPoint",
    "ProjectiveRatio",
    "RadialSamples",
    "N_STEPS_DEFAULT",
    "integrate_radial",
    "interior_ratio",
    "interior_rays_batch",
    "closed_form_threshold_ratio",
    "threshold_ratio_pair",
]

N_STEPS_DEFAULT = 4096


@dataclass(frozen=True)
class EnergyPoint:
    """An energy with its derived momentum scale.

    k = sqrt(E^2 - M^2) in the scattering region |E| > M, and
    tau = sqrt(M^2 - E^2) in the gap |E| < M.
    """

    E: float
    M: float = 1.0

    @property
    def k(self) -> float:
        if abs(self.E) < self.M:
            raise ValueError("k is defined for |E| >= M")
        return math.sqrt(self.E * self.E - self.M * self.M)

    @property
    def tau(self) -> float:
        if abs(self.E) > self.M:
            raise ValueError("tau is defined for |E| <= M")
        return math.sqrt(self.M * self.M - self.E * self.E)

    @property
    def is_scattering(self) -> bool:
        return abs(self.E) > self.M


@dataclass(frozen=True)
class ProjectiveRatio:
    """The boundary ray (f0, g0), unit length, first nonzero entry positive.

    Encodes A = f0/g0 with A = infinity (g0 = 0) a regular value.
    """

    f0: float
    g0: float

    def __post_init__(self):
        n = math.hypot(self.f0, self.g0)
        if n == 0.0:
            raise ValueError("zero ray")
        f, g = self.f0 / n, self.g0 / n
        if f < 0.0 or (f == 0.0 and g < 0.0):
            f, g = -f, -g
        object.__setattr__(self, "f0", f)
        object.__setattr__(self, "g0", g)

    @property
    def value(self) -> float:
        """A as a float; +inf when g0 = 0 (the two signs are identified)."""
        if self.g0 == 0.0:
            return math.inf
        return self.f0 / self.g0

    @property
    def is_infinite(self) -> bool:
        return self.g0 == 0.0

    def distance(self, other: "ProjectiveRatio") -> float:
        """Projective (chordal) distance |f0 g0' - g0 f0'| = |sin(angle)|."""
        return abs(self.f0 * other.g0 - self.g0 * other.f0)

    @classmethod
    def from_value(cls, a: float) -> "ProjectiveRatio":
        if math.isinf(a):
            return cls(1.0, 0.0)
        return cls(a, 1.0)


@dataclass(frozen=True)
class RadialSamples:
    """Sampled radial pair on an ascending grid; f and g share the grid."""

    radii: np.ndarray
    f: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        if not (len(self.radii) == len(self.f) == len(self.g)):
            raise ValueError("sample arrays must have equal length")
        if np.any(np.diff(self.radii) <= 0):
            raise ValueError("radii must be strictly increasing")
        if not (np.any(self.f != 0.0) or np.any(self.g != 0.0)):
            raise ValueError("trivial (all-zero) solution")

    @property
    def boundary_ray(self) -> ProjectiveRatio:
        return ProjectiveRatio(self.f[-1], self.g[-1])


def integrate_radial(p: CutoffPotential, ch: AngularChannel, e: EnergyPoint,
                     n_steps: int = N_STEPS_DEFAULT) -> RadialSamples:
    """Integrate the regular solution across (r0*1e-6, r0], sampled per step.

    Serves kappa >= 1 only; negative kappa goes through the mirror map in
    the spectrum module.
    """
    if ch.kappa < 1:
        raise ValueError("kappa must be >= 1 here; negative kappa is served by symmetry")
    if n_steps < 100:
        raise ValueError("n_steps < 100 is below the contract minimum")
    radii, f, g = trajectory(ch.kappa, e.E, e.M, p.seg_ends, p.seg_vals, p.r0, n_steps)
    return RadialSamples(radii, f, g)


def interior_ratio(p: CutoffPotential, ch: AngularChannel, e: EnergyPoint,
                   n_steps: int = N_STEPS_DEFAULT) -> ProjectiveRatio:
    """The matching ray (f, g)(r0-) of the regular interior solution."""
    f, g = interior_rays_batch(p, ch, np.array([e.E]), e.M, n_steps)
    return ProjectiveRatio(float(f[0]), float(g[0]))


def interior_rays_batch(p: CutoffPotential, ch: AngularChannel, energies, M: float,
                        n_steps: int = N_STEPS_DEFAULT, scales=None):
    """Boundary rays for a batch of energies (optionally scaling V per lane).

    ``scales`` multiplies the whole potential lane-by-lane (used for
    coupling-continuation anchors); default is 1 for every lane.
    Returns raw (f, g) arrays, continuous in the lane parameters.
    """
    energies = np.asarray(energies, dtype=float)
    vals = p.seg_vals
    if scales is None:
        pots = np.broadcast_to(vals, (len(energies), len(vals))).copy()
    else:
        scales = np.asarray(scales, dtype=float)
        pots = scales[:, None] * vals[None, :]
    return interior_rays(ch.kappa, energies, pots, M, p.seg_ends, p.r0, n_steps)


def threshold_ratio_pair(lam: float, scale: PhysicalScale, r0: float,
                         ch: AngularChannel, threshold: int):
    """Continuous numerator/denominator pair (F, G) with A = F/G at E = +-M.

    W = threshold*M + lambda, z = (W^2 - M^2) r0^2:
        F = -(W + M) r0 redj_kappa(z),   G = redj_{kappa-1}(z).
    Both entries are real and jointly continuous in lambda, which makes
    pole (G = 0) and level crossings bracketable without branch dispatch.
    """
    if ch.kappa < 1:
        raise ValueError("kappa must be >= 1 here")
    if threshold not in (+1, -1):
        raise ValueError("threshold must be +1 or -1")
    M = scale.M
    W = threshold * M + lam
    z = (W * W - M * M) * r0 * r0
    F = -(W + M) * r0 * reduced_j(ch.kappa, z)
    G = reduced_j(ch.kappa - 1, z)
    return F, G


def closed_form_threshold_ratio(lam: float, scale: PhysicalScale, r0: float,
                                ch: AngularChannel, threshold: int) -> ProjectiveRatio:
    """Square-well matching ratio A_kappa(threshold*M) in closed form.

    Dispatches the oscillatory/evanescent coupling regimes through the
    analytic continuation z = (W^2 - M^2) r0^2, so the regime boundaries
    lambda in {0, +-2M} evaluate to their small-argument limits and poles
    come out as the regular value A = infinity.
    """
    F, G = threshold_ratio_pair(lam, scale, r0, ch, threshold)
    return ProjectiveRatio(float(F), float(G))
