"""Square-well depth sweeps: rows, jump events, and flat-file exports.

One sweep produces a SweepRow per grid depth lambda (threshold ratios,
snapped threshold limits from the continuity and jump methods, bound-state
count, node counts, and the theorem verdicts) plus the refined event
ledger.  Coupling-continuation anchors for the phase curves are walked once
along the whole lambda ladder at the fixed starting energy, then reused by
every row, so the output is deterministic and independent of any internal
batching.

CSV schema (exact column order):

    lambda, A_plus, A_minus, delta_plus_over_pi, delta_minus_over_pi, N,
    f_nodes_plus, g_nodes_plus, f_nodes_minus_interior,
    g_nodes_minus_interior, g_nodes_minus_exterior, eq2_residual,
    eq3_plus, eq3_minus, modified_c

Infinite ratios are serialized as the literal "inf"/"-inf" picked by the
approach direction of the sweep.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass

import numpy as np

from .events import (
    JumpEvent,
    accumulate_threshold_delta,
    find_square_well_events,
)
from .interior import N_STEPS_DEFAULT, ProjectiveRatio, closed_form_threshold_ratio, threshold_ratio_pair
from .levinson import MethodDisagreement, assemble_verdicts
from .nodes import NodeReport, node_report
from .phases import GridSpec, delta_curve, delta_principal_batch
from .potential import AngularChannel, CutoffPotential, PhysicalScale, square_well
from .spectrum import find_bound_states

logger = logging.getLogger(__name__)

__all__ = [
    "SweepRow",
    "lambda_sweep",
    "event_ledger_to_threshold_delta",
    "rows_to_csv",
    "events_to_json",
    "CSV_COLUMNS",
]

CSV_COLUMNS = (
    "lambda", "A_plus", "A_minus", "delta_plus_over_pi", "delta_minus_over_pi",
    "N", "f_nodes_plus", "g_nodes_plus", "f_nodes_minus_interior",
    "g_nodes_minus_interior", "g_nodes_minus_exterior", "eq2_residual",
    "eq3_plus", "eq3_minus", "modified_c",
)


@dataclass(frozen=True)
class SweepRow:
    lam: float
    a_plus: ProjectiveRatio
    a_minus: ProjectiveRatio
    units_plus: int
    units_minus: int
    N: int
    nodes_plus: NodeReport
    nodes_minus: NodeReport
    eq2_residual: float
    eq3_plus: bool
    eq3_minus: bool
    modified_c: bool
    near_event: bool
    methods_agree: bool

    @property
    def delta_plus_over_pi(self) -> float:
        return self.units_plus / 2.0

    @property
    def delta_minus_over_pi(self) -> float:
        return self.units_minus / 2.0


def _anchor_ladder(ch: AngularChannel, scale: PhysicalScale, r0: float,
                   lams: np.ndarray, threshold: int, grid: GridSpec, n_steps: int):
    """Unwrapped delta at the start energy for every requested lambda.

    One batched principal-value evaluation over a refined lambda ladder,
    unwrapped outward from lambda = 0 in both directions.
    """
    base = square_well(1.0, r0)
    k_start = grid.kr0_start / r0
    E = threshold * math.sqrt(scale.M**2 + k_start**2)

    pts = set(float(x) for x in lams)
    pts.add(0.0)
    lo = min(pts)
    hi = max(pts)
    n_fill = int(math.ceil((hi - lo) / grid.anchor_step)) + 1
    pts.update(float(x) for x in np.linspace(lo, hi, max(n_fill, 2)))
    ladder = sorted(pts)

    vals = delta_principal_batch(base, ch, scale, np.full(len(ladder), E), n_steps,
                                 scales=np.array(ladder))
    principal = {lam: float(v) for lam, v in zip(ladder, vals)}

    def principal_at(lam: float) -> float:
        if lam not in principal:
            v = delta_principal_batch(base, ch, scale, np.array([E]), n_steps,
                                      scales=np.array([lam]))[0]
            principal[lam] = float(v)
        return principal[lam]

    anchors = {0.0: principal_at(0.0)}

    def walk(seq):
        prev_lam, prev_d = 0.0, anchors[0.0]
        stack = list(seq)
        i = 0
        guard = 0
        while i < len(stack):
            lam = stack[i]
            pv = principal_at(lam)
            d = pv + math.pi * round((prev_d - pv) / math.pi)
            if abs(d - prev_d) >= 0.45 * math.pi:
                guard += 1
                if guard > 200:
                    raise MethodDisagreement(
                        f"anchor ladder unresolvable near lambda={lam}")
                stack.insert(i, 0.5 * (prev_lam + lam))
                continue
            anchors[lam] = d
            prev_lam, prev_d = lam, d
            i += 1

    walk([x for x in ladder if x > 0.0])
    walk([x for x in reversed(ladder) if x < 0.0])
    return anchors


def lambda_sweep(ch: AngularChannel, scale: PhysicalScale, r0: float,
                 lam_min: float, lam_max: float, step: float,
                 grid: GridSpec = GridSpec(), n_steps: int = N_STEPS_DEFAULT,
                 event_step: float = 0.01, strict_methods: bool = True):
    """Sweep the well depth; returns (rows, events).

    Negative kappa delegates to the mirrored positive channel on the
    negated depth range (V -> -V, E -> -E, f <-> g): ratios invert
    projectively, thresholds and node components swap.  Events come back
    in the requested frame with lambda_star negated (kind names keep the
    mirrored channel's landmark labels).
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    if lam_max < lam_min:
        raise ValueError("empty lambda range")
    if ch.kappa < 0:
        rows_m, events_m = lambda_sweep(ch.mirror(), scale, r0, -lam_max, -lam_min,
                                        step, grid, n_steps, event_step, strict_methods)
        rows = [_mirror_row(r) for r in reversed(rows_m)]
        events = [JumpEvent(-e.lambda_star, e.kind, -e.direction)
                  for e in reversed(events_m)]
        return rows, events

    n_rows = int(round((lam_max - lam_min) / step)) if lam_max > lam_min else 0
    lams = lam_min + step * np.arange(n_rows + 1)
    if lams[-1] > lam_max + 1e-12:
        lams = lams[:-1]

    events = find_square_well_events(ch, scale, r0, min(0.0, lam_min) - 1e-6,
                                     max(0.0, lam_max) + 1e-6, event_step)
    anchors_p = _anchor_ladder(ch, scale, r0, lams, +1, grid, n_steps)
    anchors_m = _anchor_ladder(ch, scale, r0, lams, -1, grid, n_steps)

    rows = []
    for lam in lams:
        lam = float(lam)
        pot = square_well(lam, r0)
        rec_p = delta_curve(pot, ch, scale, +1, grid, n_steps, anchor=anchors_p[lam])
        rec_m = delta_curve(pot, ch, scale, -1, grid, n_steps, anchor=anchors_m[lam])
        led_p = accumulate_threshold_delta(events, lam, +1, ch.kappa)
        led_m = accumulate_threshold_delta(events, lam, -1, ch.kappa)
        agree = (round(led_p.delta / (math.pi / 2)) == rec_p.threshold_in_half_pi_units
                 and round(led_m.delta / (math.pi / 2)) == rec_m.threshold_in_half_pi_units)
        if strict_methods and not agree:
            raise MethodDisagreement(
                f"lambda={lam}: continuity ({rec_p.threshold_in_half_pi_units}, "
                f"{rec_m.threshold_in_half_pi_units}) half-pi units vs jump ledger "
                f"({led_p.delta / math.pi:.3f} pi, {led_m.delta / math.pi:.3f} pi)")

        spect = find_bound_states(pot, ch, scale, n_steps=n_steps)
        nodes_p = node_report(pot, ch, scale, +1, n_steps)
        nodes_m = node_report(pot, ch, scale, -1, n_steps)
        regime = "weak" if pot.max_abs < 2.0 * scale.M else "strong"
        report, _ = assemble_verdicts(ch.kappa, rec_p.threshold_in_half_pi_units,
                                      rec_m.threshold_in_half_pi_units, spect.count,
                                      nodes_p, nodes_m, regime, True)
        near = any(abs(lam - e.lambda_star) < 1.5 * step for e in events)
        rows.append(SweepRow(
            lam=lam,
            a_plus=closed_form_threshold_ratio(lam, scale, r0, ch, +1),
            a_minus=closed_form_threshold_ratio(lam, scale, r0, ch, -1),
            units_plus=rec_p.threshold_in_half_pi_units,
            units_minus=rec_m.threshold_in_half_pi_units,
            N=spect.count,
            nodes_plus=nodes_p,
            nodes_minus=nodes_m,
            eq2_residual=report.residual,
            eq3_plus=report.eq3_plus_holds,
            eq3_minus=report.eq3_minus_holds,
            modified_c=bool(report.modified_c_holds),
            near_event=near,
            methods_agree=agree,
        ))
        logger.debug("row lambda=%g N=%d units=(%d,%d)", lam, spect.count,
                     rec_p.threshold_in_half_pi_units, rec_m.threshold_in_half_pi_units)
    return rows, events


def _swap_report(rep: NodeReport, threshold: int) -> NodeReport:
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


def _mirror_row(r: SweepRow) -> SweepRow:
    # kappa <-> -kappa: lambda -> -lambda, thresholds swap, f <-> g, A -> 1/A
    return SweepRow(
        lam=-r.lam,
        a_plus=ProjectiveRatio(r.a_minus.g0, r.a_minus.f0),
        a_minus=ProjectiveRatio(r.a_plus.g0, r.a_plus.f0),
        units_plus=r.units_minus,
        units_minus=r.units_plus,
        N=r.N,
        nodes_plus=_swap_report(r.nodes_minus, +1),
        nodes_minus=_swap_report(r.nodes_plus, -1),
        eq2_residual=r.eq2_residual,
        eq3_plus=r.eq3_minus,
        eq3_minus=r.eq3_plus,
        modified_c=r.modified_c,
        near_event=r.near_event,
        methods_agree=r.methods_agree,
    )


def event_ledger_to_threshold_delta(events, lam: float, threshold: int, kappa: int) -> float:
    """Signed pi (or half-pi) accumulation of the ledger along 0 -> lambda."""
    return accumulate_threshold_delta(events, lam, threshold, kappa).delta


def _fmt_ratio(a: ProjectiveRatio, lam: float, scale: PhysicalScale, r0: float,
               ch: AngularChannel, threshold: int) -> str:
    if a.is_infinite:
        # sign by approach direction: the ratio falls monotonically in lambda,
        # so an ascending sweep reaches a pole from the -inf side
        F, G = threshold_ratio_pair(lam - 1e-9, scale, r0, ch, threshold)
        return "-inf" if (F / G) < 0 else "inf"
    return f"{a.value:.12g}"


def _fmt_half(units: int) -> str:
    return f"{units / 2.0:g}"


def rows_to_csv(rows, ch: AngularChannel, scale: PhysicalScale, r0: float) -> str:
    """Serialize rows in the fixed column order (deterministic bytes)."""
    out = [",".join(CSV_COLUMNS)]
    pos_ch = AngularChannel(abs(ch.kappa))
    for r in rows:
        if ch.kappa > 0:
            ap = _fmt_ratio(r.a_plus, r.lam, scale, r0, pos_ch, +1)
            am = _fmt_ratio(r.a_minus, r.lam, scale, r0, pos_ch, -1)
        else:
            # mirrored ratios: the mirror's -lambda approach flips sides
            ap = _fmt_ratio(r.a_plus, -r.lam, scale, r0, pos_ch, -1) if r.a_plus.is_infinite \
                else f"{r.a_plus.value:.12g}"
            am = _fmt_ratio(r.a_minus, -r.lam, scale, r0, pos_ch, +1) if r.a_minus.is_infinite \
                else f"{r.a_minus.value:.12g}"
        out.append(",".join([
            f"{r.lam:.12g}", ap, am,
            _fmt_half(r.units_plus), _fmt_half(r.units_minus),
            str(r.N),
            str(r.nodes_plus.f_total), str(r.nodes_plus.g_total),
            str(r.nodes_minus.f_nodes_interior), str(r.nodes_minus.g_nodes_interior),
            str(r.nodes_minus.g_nodes_exterior),
            f"{r.eq2_residual:.12g}",
            "true" if r.eq3_plus else "false",
            "true" if r.eq3_minus else "false",
            "true" if r.modified_c else "false",
        ]))
    return "\n".join(out) + "\n"


def events_to_json(events) -> str:
    return json.dumps(
        [{"lambda_star": e.lambda_star, "kind": e.kind, "direction": e.direction}
         for e in events],
        indent=2,
    )
