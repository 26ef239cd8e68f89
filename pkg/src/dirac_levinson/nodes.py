"""Node counts of the threshold radial functions f and g at E = +-M.

Interior nodes on (0, r0) are strict sign changes of the sampled regular
solution; each candidate crossing is re-bisected with local integration to
1e-10 * r0 so that numerical jitter near a hard zero is never double
counted, and a zero landing on the cutoff radius is booked as the boundary
flag rather than an interior node.  (Zeros of either component are simple:
a double zero of f forces g = 0 at the same point and hence the trivial
solution.)

Exterior nodes on (r0, infinity) follow from the threshold power laws:

  E = +M: g keeps its sign (boundary zero only when A = infinity);
          f has one node iff 0 < A < infinity, located at
          (r/r0)^{2 kappa + 1} = 1 + A/rho2, a boundary zero when A = 0.
  E = -M: f = f(r0)(r/r0)^-kappa never vanishes at finite r but always
          dies off at infinity (recorded as a flag, counted nowhere);
          g has one node iff A >= rho1, located at
          (r/r0)^{2 kappa - 1} = A/(A - rho1), which sits at r0 when
          A = infinity and escapes to infinity as A -> rho1+.

Totals add interior, exterior, and boundary-r0 zeros; the decay-at-infinity
flag stays out of every total (counting it would spoil the free base case).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .exterior import ThresholdConstants, threshold_constants
from .interior import N_STEPS_DEFAULT, ProjectiveRatio, RadialSamples, integrate_radial, EnergyPoint
from .kernels import advance
from .potential import AngularChannel, CutoffPotential, PhysicalScale, reflect
from .spectrum import threshold_ratio_of

__all__ = [
    "NodeReport",
    "count_interior_nodes",
    "exterior_nodes",
    "node_report",
]

BOUNDARY_SNAP = 1e-9
NOISE_FLOOR = 5e-14
ZERO_REFINE = 1e-10


@dataclass(frozen=True)
class NodeReport:
    """Per-component node bookkeeping at one threshold."""

    threshold: int
    f_nodes_interior: int
    g_nodes_interior: int
    f_nodes_exterior: int
    g_nodes_exterior: int
    node_at_r0_f: bool
    node_at_r0_g: bool
    node_at_infinity_f: bool
    node_at_infinity_g: bool = False

    @property
    def f_total(self) -> int:
        return self.f_nodes_interior + self.f_nodes_exterior + int(self.node_at_r0_f)

    @property
    def g_total(self) -> int:
        return self.g_nodes_interior + self.g_nodes_exterior + int(self.node_at_r0_g)


def count_interior_nodes(samples: RadialSamples, component: str) -> int:
    """Strict sign changes of one component on the open interval (0, r0).

    A boundary zero (final sample at the noise floor) belongs to the r0
    ledger and is excluded here.
    """
    v = {"f": samples.f, "g": samples.g}[component]
    vmax = float(np.max(np.abs(v)))
    if vmax == 0.0:
        raise ValueError(f"component {component} is identically zero")
    w = v.copy()
    if abs(w[-1]) < BOUNDARY_SNAP * vmax:
        w = w[:-1]
    s = np.sign(w[np.abs(w) > NOISE_FLOOR * vmax])
    return int(np.sum(s[1:] * s[:-1] < 0))


def _crossing_indices(v: np.ndarray, vmax: float):
    s = np.sign(v)
    idx = []
    for i in range(len(v) - 1):
        if s[i] != 0 and s[i + 1] != 0 and s[i] != s[i + 1]:
            idx.append(i)
        elif s[i + 1] == 0 and abs(v[i + 1]) <= NOISE_FLOOR * vmax and s[i] != 0:
            # exact-zero sample: pair with the next nonzero sign
            for j in range(i + 2, len(v)):
                if s[j] != 0:
                    if s[j] != s[i]:
                        idx.append(i)
                    break
    return idx


def _refine_zero(p: CutoffPotential, ch: AngularChannel, E: float, M: float,
                 samples: RadialSamples, comp: str, i: int) -> float:
    """Bisect the zero inside (radii[i], radii[i+1]) to 1e-10 * r0."""
    ra, rb = samples.radii[i], samples.radii[i + 1]
    fa, ga = samples.f[i], samples.g[i]
    V = p.evaluate(0.5 * (ra + rb))
    pick = 0 if comp == "f" else 1
    v_lo = (fa, ga)[pick]
    lo, hi = ra, rb
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        fm, gm = advance(ch.kappa, E, V, M, ra, mid, fa, ga, n=8)
        vm = (fm, gm)[pick]
        if vm == 0.0:
            return mid
        if v_lo * vm < 0.0:
            hi = mid
        else:
            lo = mid
        if hi - lo < ZERO_REFINE * p.r0:
            break
    return 0.5 * (lo + hi)


def exterior_nodes(threshold: int, a: ProjectiveRatio, tc: ThresholdConstants):
    """(f_count, g_count, flags) for the region r > r0 from the power laws."""
    is_inf = abs(a.g0) < BOUNDARY_SNAP
    is_zero = abs(a.f0) < BOUNDARY_SNAP
    A = a.value
    flags = {"node_at_r0_f": False, "node_at_r0_g": False,
             "node_at_infinity_f": False, "node_at_infinity_g": False}
    if threshold == +1:
        f_count = 1 if (not is_inf and not is_zero and A > 0.0) else 0
        g_count = 0
        flags["node_at_r0_f"] = is_zero
        flags["node_at_r0_g"] = is_inf
    elif threshold == -1:
        f_count = 0
        flags["node_at_infinity_f"] = True
        flags["node_at_r0_f"] = is_zero
        flags["node_at_r0_g"] = is_inf
        if is_inf:
            g_count = 0  # the single zero sits exactly at r0, booked in the flag
        else:
            g_count = 1 if A >= tc.rho1 else 0
    else:
        raise ValueError("threshold must be +1 or -1")
    return f_count, g_count, flags


def node_report(p: CutoffPotential, ch: AngularChannel, scale: PhysicalScale,
                threshold: int, n_steps: int = N_STEPS_DEFAULT) -> NodeReport:
    """Full interior plus exterior node count at E = threshold * M."""
    if ch.kappa < 0:
        rep = node_report(reflect(p), ch.mirror(), scale, -threshold, n_steps)
        return NodeReport(
            threshold=threshold,
            f_nodes_interior=rep.g_nodes_interior,
            g_nodes_interior=rep.f_nodes_interior,
            f_nodes_exterior=rep.g_nodes_exterior,
            g_nodes_exterior=rep.f_nodes_exterior,
            node_at_r0_f=rep.node_at_r0_g,
            node_at_r0_g=rep.node_at_r0_f,
            node_at_infinity_f=rep.node_at_infinity_g,
            node_at_infinity_g=rep.node_at_infinity_f,
        )
    E = threshold * scale.M
    samples = integrate_radial(p, ch, EnergyPoint(E, scale.M), n_steps)
    ratio = threshold_ratio_of(p, ch, scale, threshold, n_steps)
    tc = threshold_constants(scale, p.r0, ch)
    f_ext, g_ext, flags = exterior_nodes(threshold, ratio, tc)

    counts = {}
    for comp in ("f", "g"):
        v = getattr(samples, comp)
        vmax = float(np.max(np.abs(v)))
        if vmax == 0.0:
            # identically-zero component (free g at -M never occurs; f at -M
            # with A=0 does): zero function has no nodes
            counts[comp] = 0
            continue
        zeros = []
        for i in _crossing_indices(v, vmax):
            zeros.append(_refine_zero(p, ch, E, scale.M, samples, comp, i))
        zeros = [z for z in zeros if z < p.r0 * (1.0 - 1e-9)]
        for z1, z2 in zip(zeros, zeros[1:]):
            if z2 - z1 < ZERO_REFINE * p.r0:
                raise RuntimeError(f"coincident zeros near r={z1}; jitter suspected")
        counts[comp] = len(zeros)
        # a clean boundary zero can also show up as a final-cell crossing
        if abs(v[-1]) < BOUNDARY_SNAP * vmax:
            flags[f"node_at_r0_{comp}"] = True

    return NodeReport(
        threshold=threshold,
        f_nodes_interior=counts["f"],
        g_nodes_interior=counts["g"],
        f_nodes_exterior=f_ext,
        g_nodes_exterior=g_ext,
        **flags,
    )
