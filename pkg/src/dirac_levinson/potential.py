"""Cutoff spherically symmetric potentials and angular-momentum channels.

Potentials are piecewise constant and vanish identically beyond a cutoff
radius r0; the square well

    V(r) = -lambda  (r <= r0),   V(r) = 0  (r > r0)

is the one-segment case (attractive for lambda > 0, repulsive for
lambda < 0).  Every analytic formula downstream is exact per constant
segment, and smooth potentials can be step-approximated by the caller.

Natural units hbar = c = 1 throughout: the fermion mass M and r0 carry
all scales.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "CutoffPotential",
    "AngularChannel",
    "PhysicalScale",
    "square_well",
    "reflect",
    "potential_from_json",
    "potential_to_json",
]


@dataclass(frozen=True)
class PhysicalScale:
    """The fermion mass M > 0 in natural units."""

    M: float = 1.0

    def __post_init__(self):
        if not (self.M > 0.0):
            raise ValueError("mass must be positive")


@dataclass(frozen=True)
class AngularChannel:
    """Dirac angular quantum number kappa != 0.

    kappa encodes both j and the orbital angular momentum:
    kappa = j + 1/2 when l = j + 1/2, kappa = -(j + 1/2) when l = j - 1/2.
    """

    kappa: int

    def __post_init__(self):
        if self.kappa == 0:
            raise ValueError("kappa = 0 is not a Dirac channel")

    @property
    def j(self) -> float:
        return abs(self.kappa) - 0.5

    @property
    def l(self) -> int:
        return self.kappa if self.kappa > 0 else -self.kappa - 1

    def mirror(self) -> "AngularChannel":
        return AngularChannel(-self.kappa)


@dataclass(frozen=True)
class CutoffPotential:
    """Piecewise-constant V(r) vanishing for r > r0.

    ``segments`` is an ordered tuple of (outer_radius, value) pairs with
    strictly increasing radii; the last outer radius is the cutoff r0.
    The boundary r = r0 belongs to the interior segment (V(r0) = last
    segment value).
    """

    segments: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.segments:
            raise ValueError("potential needs at least one segment")
        prev = 0.0
        for r, _v in self.segments:
            if not (r > prev):
                raise ValueError("segment radii must be strictly increasing and positive")
            prev = r

    @property
    def r0(self) -> float:
        return self.segments[-1][0]

    @property
    def seg_ends(self) -> np.ndarray:
        return np.array([r for r, _ in self.segments], dtype=float)

    @property
    def seg_vals(self) -> np.ndarray:
        return np.array([v for _, v in self.segments], dtype=float)

    @property
    def max_abs(self) -> float:
        return max(abs(v) for _, v in self.segments)

    def evaluate(self, r: float) -> float:
        """Pointwise V(r); exactly 0 beyond the cutoff."""
        if not (r > 0.0):
            raise ValueError("radius must be positive")
        for rend, v in self.segments:
            if r <= rend:
                return v
        return 0.0

    def is_square_well(self) -> bool:
        return len(self.segments) == 1

    @property
    def well_depth(self) -> float:
        """lambda of the square well (V = -lambda inside); single segment only."""
        if not self.is_square_well():
            raise ValueError("not a single square well")
        return -self.segments[0][1]


def square_well(lam: float, r0: float) -> CutoffPotential:
    """Square well of depth parameter lambda: V = -lambda on (0, r0]."""
    if not (r0 > 0.0):
        raise ValueError("cutoff radius must be positive")
    return CutoffPotential(((float(r0), -float(lam)),))


def reflect(p: CutoffPotential) -> CutoffPotential:
    """V -> -V with the cutoff unchanged (the kappa <-> -kappa companion)."""
    return CutoffPotential(tuple((r, -v) for r, v in p.segments))


def potential_from_json(text: str) -> CutoffPotential:
    """Parse {"segments": [[r, V], ...], "r0": number}; r0 must close the list."""
    data = json.loads(text)
    segs = tuple((float(r), float(v)) for r, v in data["segments"])
    p = CutoffPotential(segs)
    r0 = float(data["r0"])
    if abs(p.r0 - r0) > 1e-12 * max(1.0, abs(r0)):
        raise ValueError("r0 field disagrees with the last segment radius")
    return p


def potential_to_json(p: CutoffPotential) -> str:
    return json.dumps({"segments": [[r, v] for r, v in p.segments], "r0": p.r0})
