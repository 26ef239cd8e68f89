"""Machine-checkable verdicts for Levinson's theorem and its refinements.

The Dirac-equation statement verified here is

    N_kappa = (1/pi) [delta(M) + delta(-M)]
              - (1/2) [sin^2 delta(M) + sin^2 delta(-M)]           (L)

with the threshold limits snapped onto the lattice {n pi/2}; on that
lattice the right-hand side is an exact integer, so the residual is
computed in integer half-pi units and is either exactly zero or >= 1/2.

The stronger per-threshold statement

    n(+-M) = delta(+-M)/pi - (1/2) sin^2 delta(+-M)                (S)

(with n(M) counting the nodes of f at +M and n(-M) the nodes of g at -M)
holds in the weak-coupling regime max|V| < 2M but fails for strong
coupling, where threshold limits go negative while node counts cannot.

The modified per-threshold statement for the square well dispatches on the
sign of each limit:

    (i)   delta(M) >= 0:   delta(M)/pi = nodes of g at +M (all r)
    (ii)  delta(M) <  0:  -delta(M)/pi = nodes of g at +M on (0, r0)
    (iii) delta(-M) >= 0:  delta(-M)/pi - sin^2/2 = nodes of g at -M (all r)
    (iv)  delta(-M) <  0: -delta(-M)/pi + sin^2/2 = interior minus exterior
                            nodes of g at -M

Each case verdict is recorded with its numbers; alternative node-count
readings (f versus g, whole-axis versus interior-only) are carried in the
details for transparency.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .events import find_scaled_events, find_square_well_events, accumulate_threshold_delta
from .interior import N_STEPS_DEFAULT
from .nodes import NodeReport, node_report
from .phases import GridSpec, delta_curve, threshold_limit_by_jumps
from .potential import AngularChannel, CutoffPotential, PhysicalScale, reflect
from .spectrum import find_bound_states

__all__ = [
    "LevinsonReport",
    "MethodDisagreement",
    "verify_levinson",
    "verify_levinson_detailed",
    "check_strong_statement",
    "check_modified_statement",
    "assemble_verdicts",
]

HALF_PI = 0.5 * math.pi


class MethodDisagreement(RuntimeError):
    """Continuity-unwrapped and jump-ledger threshold limits disagree."""


@dataclass(frozen=True)
class LevinsonReport:
    """Snapshot of every verdict for one (potential, kappa) point."""

    kappa: int
    delta_plus: float
    delta_minus: float
    sin2_plus: float
    sin2_minus: float
    N_kappa: int
    eq2_lhs: float
    eq2_rhs: float
    residual: float
    eq3_plus_holds: bool
    eq3_minus_holds: bool
    modified_c_holds: bool | None
    regime: str

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "LevinsonReport":
        return cls(**d)


def _sin2(units: int) -> float:
    return 1.0 if units % 2 else 0.0


def assemble_verdicts(kappa: int, units_plus: int, units_minus: int, n_bound: int,
                      nodes_plus: NodeReport, nodes_minus: NodeReport,
                      regime: str, square_well: bool):
    """Build the report plus the case ledger from precomputed pipeline parts.

    All arithmetic runs in integer half-pi units, so the Eq.-(L) residual
    is exact: zero when the theorem holds, at least 1/2 when it does not.
    """
    up, um = units_plus, units_minus
    odd_p, odd_m = up % 2, um % 2
    rhs_units2 = (up + um) - (odd_p + odd_m)  # twice the RHS, integer
    rhs = rhs_units2 / 2.0
    residual = abs(n_bound - rhs)

    # stronger statement: n(M) counts f at +M, n(-M) counts g at -M
    target_plus = (up - odd_p) // 2
    target_minus = (um - odd_m) // 2
    eq3_plus = nodes_plus.f_total == target_plus
    eq3_minus = nodes_minus.g_total == target_minus

    cases = None
    modified = None
    if square_well:
        cases = {}
        if up >= 0:
            observed = nodes_plus.g_total
            cases["plus"] = {
                "case": "i", "target": up / 2.0, "observed": observed,
                "holds": (up % 2 == 0) and observed == up // 2,
                "f_total_matches_g_total": nodes_plus.f_total == nodes_plus.g_total,
                "f_interior_matches_g_total": nodes_plus.f_nodes_interior == nodes_plus.g_total,
            }
        else:
            observed = nodes_plus.g_nodes_interior
            cases["plus"] = {
                "case": "ii", "target": -up / 2.0, "observed": observed,
                "holds": (up % 2 == 0) and observed == (-up) // 2,
            }
        if um >= 0:
            observed = nodes_minus.g_total
            cases["minus"] = {
                "case": "iii", "target": (um - odd_m) / 2.0, "observed": observed,
                "holds": observed == (um - odd_m) // 2,
            }
        else:
            observed = nodes_minus.g_nodes_interior - nodes_minus.g_nodes_exterior
            cases["minus"] = {
                "case": "iv", "target": (-um + odd_m) / 2.0, "observed": observed,
                "holds": observed == (-um + odd_m) // 2,
            }
        modified = cases["plus"]["holds"] and cases["minus"]["holds"]

    report = LevinsonReport(
        kappa=kappa,
        delta_plus=up * HALF_PI,
        delta_minus=um * HALF_PI,
        sin2_plus=_sin2(up),
        sin2_minus=_sin2(um),
        N_kappa=n_bound,
        eq2_lhs=float(n_bound),
        eq2_rhs=rhs,
        residual=residual,
        eq3_plus_holds=eq3_plus,
        eq3_minus_holds=eq3_minus,
        modified_c_holds=modified,
        regime=regime,
    )
    details = {
        "cases": cases,
        "eq3_targets": {"plus": target_plus, "minus": target_minus},
        "node_totals": {
            "f_plus": nodes_plus.f_total, "g_plus": nodes_plus.g_total,
            "f_minus": nodes_minus.f_total, "g_minus": nodes_minus.g_total,
        },
        "alternative_eq3": {
            "plus_with_g": nodes_plus.g_total == target_plus,
            "minus_with_f": nodes_minus.f_total == target_minus,
            "plus_interior_only": nodes_plus.f_nodes_interior == target_plus,
            "minus_interior_only": nodes_minus.g_nodes_interior == target_minus,
        },
        "nodes_plus": nodes_plus,
        "nodes_minus": nodes_minus,
    }
    return report, details


def _threshold_units(p: CutoffPotential, ch: AngularChannel, scale: PhysicalScale,
                     threshold: int, grid: GridSpec, n_steps: int,
                     anchor: float | None = None):
    """Threshold limit in half-pi units by both methods; they must agree."""
    rec = delta_curve(p, ch, scale, threshold, grid, n_steps, anchor=anchor)
    if p.is_square_well():
        ledger = threshold_limit_by_jumps(p.well_depth, ch, scale, p.r0, threshold)
    else:
        evs = find_scaled_events(p, ch, scale, n_steps=n_steps)
        ledger = accumulate_threshold_delta(evs, 1.0, threshold, ch.kappa)
    jump_units = round(ledger.delta / HALF_PI)
    if jump_units != rec.threshold_in_half_pi_units:
        raise MethodDisagreement(
            f"threshold {threshold:+d}: continuity gives {rec.threshold_in_half_pi_units} "
            f"half-pi units, jump ledger gives {jump_units}")
    return rec.threshold_in_half_pi_units


def verify_levinson_detailed(p: CutoffPotential, ch: AngularChannel, scale: PhysicalScale,
                             grid: GridSpec = GridSpec(), n_steps: int = N_STEPS_DEFAULT):
    """(LevinsonReport, details) for one potential and channel."""
    if ch.kappa < 0:
        rep, det = verify_levinson_detailed(reflect(p), ch.mirror(), scale, grid, n_steps)
        mirrored = LevinsonReport(
            kappa=ch.kappa,
            delta_plus=rep.delta_minus,
            delta_minus=rep.delta_plus,
            sin2_plus=rep.sin2_minus,
            sin2_minus=rep.sin2_plus,
            N_kappa=rep.N_kappa,
            eq2_lhs=rep.eq2_lhs,
            eq2_rhs=rep.eq2_rhs,
            residual=rep.residual,
            eq3_plus_holds=rep.eq3_minus_holds,
            eq3_minus_holds=rep.eq3_plus_holds,
            modified_c_holds=rep.modified_c_holds,
            regime=rep.regime,
        )
        return mirrored, det
    units_plus = _threshold_units(p, ch, scale, +1, grid, n_steps)
    units_minus = _threshold_units(p, ch, scale, -1, grid, n_steps)
    spec_rep = find_bound_states(p, ch, scale, n_steps=n_steps)
    nodes_plus = node_report(p, ch, scale, +1, n_steps)
    nodes_minus = node_report(p, ch, scale, -1, n_steps)
    regime = "weak" if p.max_abs < 2.0 * scale.M else "strong"
    return assemble_verdicts(ch.kappa, units_plus, units_minus, spec_rep.count,
                             nodes_plus, nodes_minus, regime, p.is_square_well())


def verify_levinson(p: CutoffPotential, ch: AngularChannel, scale: PhysicalScale,
                    grid: GridSpec = GridSpec(), n_steps: int = N_STEPS_DEFAULT) -> LevinsonReport:
    """Eq.-(L) verification with both threshold-limit methods cross-checked."""
    report, _ = verify_levinson_detailed(p, ch, scale, grid, n_steps)
    return report


def check_strong_statement(p: CutoffPotential, ch: AngularChannel, scale: PhysicalScale,
                           grid: GridSpec = GridSpec(), n_steps: int = N_STEPS_DEFAULT):
    """(plus_holds, minus_holds, details) for the per-threshold statement (S)."""
    report, details = verify_levinson_detailed(p, ch, scale, grid, n_steps)
    return report.eq3_plus_holds, report.eq3_minus_holds, details


def check_modified_statement(p: CutoffPotential, ch: AngularChannel, scale: PhysicalScale,
                             grid: GridSpec = GridSpec(), n_steps: int = N_STEPS_DEFAULT):
    """(verdict, case ledger) of the sign-dispatched square-well statement."""
    if not p.is_square_well():
        raise ValueError("the modified statement is defined for the square-well family")
    report, details = verify_levinson_detailed(p, ch, scale, grid, n_steps)
    return report.modified_c_holds, details["cases"]
