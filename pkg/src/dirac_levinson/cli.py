"""Command-line front end: phase-shift curves, theorem verification, sweeps.

Exit codes are a stable contract: 0 success, 1 verification finding
(a theorem residual above tolerance or a method disagreement), 2 usage or
configuration error.  Natural units with M and r0 configurable; the
potential is either an inline square-well depth (--lambda) or a JSON file
{"segments": [[r, V], ...], "r0": number} (--potential).  LOG_LEVEL in
{error, warn, info, debug} controls logging.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .interior import N_STEPS_DEFAULT
from .levinson import MethodDisagreement, verify_levinson
from .phases import GridSpec, RefinementError, delta_curve, threshold_limit_by_jumps
from .potential import AngularChannel, PhysicalScale, potential_from_json, square_well
from .sweep import events_to_json, lambda_sweep, rows_to_csv

logger = logging.getLogger(__name__)

_LOG_LEVELS = {"error": logging.ERROR, "warn": logging.WARNING,
               "info": logging.INFO, "debug": logging.DEBUG}


def _add_common(sp: argparse.ArgumentParser, potential: bool = True):
    sp.add_argument("--M", type=float, default=1.0, help="fermion mass (natural units)")
    sp.add_argument("--r0", type=float, default=1.0, help="cutoff radius")
    sp.add_argument("--kappa", type=int, required=True, help="Dirac channel, nonzero integer")
    sp.add_argument("--tol", type=float, default=1e-9, help="verification tolerance")
    sp.add_argument("--n-steps", type=int, default=N_STEPS_DEFAULT,
                    help="RK4 steps per potential segment")
    sp.add_argument("--out", type=str, default=None, help="output file path")
    if potential:
        grp = sp.add_mutually_exclusive_group(required=True)
        grp.add_argument("--lambda", dest="lam", type=float,
                         help="square-well depth (V = -lambda inside r0)")
        grp.add_argument("--potential", type=str,
                         help="JSON potential description file")


def _build_potential(args, parser):
    if args.kappa == 0:
        parser.error("--kappa must be a nonzero integer")
    if getattr(args, "potential", None):
        try:
            with open(args.potential, "r", encoding="utf-8") as fh:
                return potential_from_json(fh.read())
        except (OSError, ValueError, KeyError) as exc:
            parser.error(f"bad potential file: {exc}")
    return square_well(args.lam, args.r0)


def cmd_phase_shift(args, parser) -> int:
    p = _build_potential(args, parser)
    ch = AngularChannel(args.kappa)
    scale = PhysicalScale(args.M)
    threshold = +1 if args.threshold == "plus" else -1
    try:
        rec = delta_curve(p, ch, scale, threshold, GridSpec(), args.n_steps)
    except RefinementError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if p.is_square_well() and abs(args.kappa) == args.kappa:
        ledger = threshold_limit_by_jumps(p.well_depth, ch, scale, p.r0, threshold)
        jump_units = round(ledger.delta / (0.5 * __import__("math").pi))
        if jump_units != rec.threshold_in_half_pi_units:
            print(f"error: method disagreement (continuity {rec.threshold_in_half_pi_units} "
                  f"vs jump {jump_units} half-pi units)", file=sys.stderr)
            return 1
    if args.out:
        lines = ["E,delta"]
        lines += [f"{e:.12g},{d:.12g}" for e, d in zip(rec.energies, rec.delta)]
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
        logger.info("wrote %d curve points to %s", len(rec.delta), args.out)
    print(f"delta/pi = {rec.threshold_in_half_pi_units / 2.0:g}")
    if rec.half_bound_flag:
        print("half-bound configuration at this threshold")
    return 0


def cmd_verify(args, parser) -> int:
    p = _build_potential(args, parser)
    ch = AngularChannel(args.kappa)
    scale = PhysicalScale(args.M)
    try:
        report = verify_levinson(p, ch, scale, n_steps=args.n_steps)
    except (MethodDisagreement, RefinementError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    payload = json.dumps(report.to_dict(), indent=2)
    print(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    return 0 if report.residual < args.tol else 1


def cmd_sweep(args, parser) -> int:
    if args.step <= 0:
        parser.error("--step must be positive")
    if args.lambda_max < args.lambda_min:
        parser.error("--lambda-max must be >= --lambda-min")
    ch = AngularChannel(args.kappa)
    scale = PhysicalScale(args.M)
    try:
        rows, events = lambda_sweep(ch, scale, args.r0, args.lambda_min,
                                    args.lambda_max, args.step, n_steps=args.n_steps)
    except (MethodDisagreement, RefinementError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    csv_text = rows_to_csv(rows, ch, scale, args.r0)
    out = args.out or "sweep.csv"
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(csv_text)
    events_path = args.events or (out + ".events.json")
    with open(events_path, "w", encoding="utf-8") as fh:
        fh.write(events_to_json(events) + "\n")
    logger.info("wrote %d rows to %s and %d events to %s",
                len(rows), out, len(events), events_path)
    worst = max((r.eq2_residual for r in rows), default=0.0)
    print(f"rows: {len(rows)}  events: {len(events)}  max_eq2_residual: {worst:.3g}")
    return 0 if worst < args.tol else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirac-levinson",
        description="Relativistic partial-wave scattering and Levinson-theorem "
                    "verification for cutoff potentials",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("phase-shift", help="phase-shift curve toward a threshold")
    _add_common(sp)
    sp.add_argument("--threshold", choices=("plus", "minus"), required=True)
    sp.set_defaults(fn=cmd_phase_shift)

    sv = sub.add_parser("verify", help="verify Levinson's theorem at one point")
    _add_common(sv)
    sv.set_defaults(fn=cmd_verify)

    sw = sub.add_parser("sweep", help="sweep the square-well depth")
    _add_common(sw, potential=False)
    sw.add_argument("--lambda-min", type=float, required=True)
    sw.add_argument("--lambda-max", type=float, required=True)
    sw.add_argument("--step", type=float, required=True)
    sw.add_argument("--events", type=str, default=None, help="events JSON path")
    sw.set_defaults(fn=cmd_sweep)
    return parser


def main(argv=None) -> int:
    level = os.environ.get("LOG_LEVEL", "warn").lower()
    logging.basicConfig(level=_LOG_LEVELS.get(level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.fn(args, parser)


def entry():
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
