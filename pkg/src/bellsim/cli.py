"""Command-line entry point: ``bellsim {stage,sweep,series-demo,relativity}``.

Exit codes: 0 success, 1 usage or configuration error, 2 internal
invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .harness import (
    MODELS,
    DEFAULT_EVENT1,
    DEFAULT_EVENT2,
    ExperimentConfig,
    InvariantViolation,
    RelativityScenario,
    run_relativity_example,
    run_series_demo,
    run_stage,
    run_sweep,
    theta_grid,
)
from .relativity import C_EXACT, C_SI, SpacetimeEvent

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVARIANT = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bellsim", description="Bell-experiment Monte Carlo and relativity toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def config_flags(p):
        p.add_argument("--config", type=Path, help="JSON file with ExperimentConfig fields")
        p.add_argument("--model", choices=MODELS)
        p.add_argument("--trials", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--phi", dest="phi_policy", metavar="uniform|fixed:<deg>")
        p.add_argument("--measure-b-first", dest="measure_a_first", action="store_false", default=None)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--out", type=Path)

    p = sub.add_parser("stage", help="run one stage of the four-stage experiment")
    config_flags(p)
    p.add_argument("--stage", type=int, choices=(1, 2, 3, 4), required=True)
    p.add_argument("--theta-deg", dest="theta", type=float)

    p = sub.add_parser("sweep", help="Monte Carlo mismatch over a grid of angles (CSV)")
    config_flags(p)
    p.add_argument("--theta-start", type=float, default=0.0)
    p.add_argument("--theta-end", type=float, default=90.0)
    p.add_argument("--theta-step", type=float, default=10.0)
    p.add_argument("--gap-mode", action="store_true")

    p = sub.add_parser("series-demo", help="flip-construction demonstration of the mismatch bound")
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--mode", choices=("sampled", "exhaustive"), default="exhaustive")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("relativity", help="frame-dependent ordering of the two detection events")
    p.add_argument("--scenario", choices=("paper", "custom"), default="paper",
                   help="paper: the built-in detector geometry and u=1.1c link; custom: use the flags below")
    p.add_argument("--x1", type=float, help="event 1 position (m)")
    p.add_argument("--t1-ns", type=float, help="event 1 time (ns)")
    p.add_argument("--x2", type=float, help="event 2 position (m)")
    p.add_argument("--t2-ns", type=float, help="event 2 time (ns)")
    p.add_argument("--beta", type=float, help="velocity of the moving frame, v/c")
    p.add_argument("--u-over-c", type=float, help="signal speed for the link example, u/c")
    p.add_argument("--link-beta", type=float, help="frame velocity for the link example (default: --beta)")
    p.add_argument("--dx-m", type=float, help="link distance in meters (default: c x 1 s)")
    p.add_argument("--not-entangled", dest="entangled", action="store_false")
    p.add_argument("--c-exact", action=argparse.BooleanOptionalAction, default=True,
                   help="use c = 3e8 m/s exactly (default) instead of 299792458 m/s")
    p.add_argument("--out", type=Path)
    return parser


def _config(args) -> ExperimentConfig:
    base = ExperimentConfig.from_json(args.config) if args.config else ExperimentConfig()
    overrides = {k: getattr(args, k) for k in ("model", "trials", "seed", "phi_policy", "measure_a_first", "theta")
                 if getattr(args, k, None) is not None}
    return base.replace(**overrides)


def _stats_dict(stats) -> dict:
    return {"n": stats.n, "mismatches": stats.mismatches, "e": stats.e, "f": stats.f,
            "ci_half_width": stats.ci_half_width}


def cmd_stage(args) -> None:
    cfg = _config(args)
    res = run_stage(cfg, args.stage, workers=args.workers)
    s = res.stats
    print(f"model={cfg.model} stage={res.stage} axes=({res.axis_a:g}, {res.axis_b:g}) "
          f"relative={res.relative_angle:g} deg")
    print(f"trials={s.n} mismatches={s.mismatches} E={s.e:.6f} F={s.f:.6f} ci3=+/-{s.ci_half_width:.6f}")
    if args.out:
        payload = {"config": {**cfg.__dict__}, "stage": res.stage, "axis_a": res.axis_a,
                   "axis_b": res.axis_b, "stats": _stats_dict(s)}
        args.out.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def cmd_sweep(args) -> None:
    cfg = _config(args)
    grid = theta_grid(args.theta_start, args.theta_end, args.theta_step)
    table = run_sweep(cfg, grid, out=args.out, gap_mode=args.gap_mode, workers=args.workers)
    sys.stdout.write(table.to_csv())


def cmd_series_demo(args) -> None:
    dist = run_series_demo(args.n, args.k, args.seed, args.mode, args.samples)
    print(f"n={dist.n} k={dist.k} mode={args.mode} pairs={dist.pairs}")
    for value in dist.support:
        print(f"  mismatch(a,b) = {str(value):>6} ({float(value):.4f}): {dist.counts[value]}")
    print(f"min={dist.min} max={dist.max} bound 2k/n={dist.bound} holds={dist.bound_holds}")
    print(f"mismatch(base,a), mismatch(base,b) values: {sorted(str(v) for v in dist.base_mismatches)}")
    if args.out:
        payload = {"n": dist.n, "k": dist.k, "mode": args.mode, "pairs": dist.pairs,
                   "distribution": {str(v): c for v, c in sorted(dist.counts.items())},
                   "min": str(dist.min), "max": str(dist.max), "bound": str(dist.bound),
                   "bound_holds": dist.bound_holds}
        args.out.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def cmd_relativity(args) -> None:
    c = C_EXACT if args.c_exact else C_SI
    if args.scenario == "paper":
        scenario = RelativityScenario(c=c)
    else:
        missing = [f for f in ("x1", "t1_ns", "x2", "t2_ns", "beta") if getattr(args, f) is None]
        if missing:
            raise UsageError("custom scenario needs " + ", ".join("--" + m.replace("_", "-") for m in missing))
        scenario = RelativityScenario(
            event1=SpacetimeEvent(args.x1, args.t1_ns * 1e-9, DEFAULT_EVENT1.label),
            event2=SpacetimeEvent(args.x2, args.t2_ns * 1e-9, DEFAULT_EVENT2.label),
            beta=args.beta, entangled=args.entangled, c=c, u_over_c=args.u_over_c,
            link_beta=args.beta if args.link_beta is None else args.link_beta, link_delta_x=args.dx_m,
        )
    report = run_relativity_example(scenario, out=args.out)
    print(report.to_text())


COMMANDS = {
    "stage": cmd_stage,
    "sweep": cmd_sweep,
    "series-demo": cmd_series_demo,
    "relativity": cmd_relativity,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except InvariantViolation as exc:
        print(f"bellsim: invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (UsageError, ValueError, OSError) as exc:
        print(f"bellsim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
