"""Command-line interface.

Exit codes: 0 success, 1 configuration error, 2 numerical/domain error,
3 failed self-check.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import asymptotics as asy
from . import config as cfgio
from .checks import run_checks
from .diagram import diagram
from .model import ConfigurationError, CrackChannelError, TipState
from .propagation import propagate
from .report import deltak_csv, diagram_csv, fmt, trace_csv

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_CHECK = 0, 1, 2, 3


def _count(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    value = float(text)
    if not value.is_integer() or value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer or 'inf', got {text!r}")
    return int(value)


def _angle(text: str) -> float:
    try:
        return cfgio.parse_angle(text)
    except ConfigurationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(args):
    try:
        run = cfgio.load(args.config)
    except OSError as exc:
        raise ConfigurationError(cfgio.Issue("unreadable config", str(exc))) from None
    if getattr(args, "alpha", None) is not None:
        run = run.with_alpha(args.alpha)
    return run


def cmd_propagate(args) -> int:
    run = _load(args)
    trace = propagate(cfgio.expand_arrays(run))
    _emit(trace_csv(trace), args.out)
    return EXIT_OK


def cmd_diagram(args) -> int:
    run = _load(args)
    cfgio.expand_arrays(run)  # validate the initial state
    _emit(diagram_csv(diagram(run, threads=args.threads)), args.out)
    return EXIT_OK


def cmd_deltak(args) -> int:
    run = _load(args)
    config = cfgio.expand_arrays(run)
    _emit(deltak_csv(config, TipState.at(args.tip, config.load)), args.out)
    return EXIT_OK


def cmd_asym(args) -> int:
    f = args.formula
    rows: list[tuple[str, float]] = []
    if f in ("microcrack", "rigid"):
        fn = asy.far_single_microcrack if f == "microcrack" else asy.far_single_rigid
        rows.append(("relative", fn(args.d, args.phi, args.alpha, args.s,
                                    args.mu_plus, args.mu_minus, args.side)))
    elif f in ("microcrack-channel", "mixed-channel"):
        arrangement = (asy.Arrangement.MICROCRACK_PERPENDICULAR_ROWS if f == "microcrack-channel"
                       else asy.Arrangement.RIGID_ABOVE_MICROCRACK_BELOW)
        spec = asy.ChannelSpec(args.n_ahead, args.n_behind, args.h, args.w, args.s, args.alpha, arrangement)
        if f == "microcrack-channel":
            rows += [("bracket", asy.microcrack_bracket(spec)), ("delta", asy.channel_microcracks(spec, args.a))]
        else:
            rows += [("bracket", asy.mixed_bracket(spec)), ("delta", asy.channel_mixed(spec, args.a))]
    else:  # mixed-infinite
        rows += [
            ("bracket", asy.mixed_infinite_bracket(args.n_behind, args.h, args.w)),
            ("delta", asy.channel_mixed_infinite(args.n_behind, args.h, args.w, args.alpha, args.s, args.a)),
        ]
    _emit("quantity,value\n" + "".join(f"{k},{fmt(v)}\n" for k, v in rows), args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    results = run_checks()
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}")
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="crackchannel",
        description="Mode III interface crack propagation through channels of small line defects.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def with_config(sp, alpha=True):
        sp.add_argument("config", help="JSON run configuration")
        sp.add_argument("--out", help="write CSV here instead of stdout")
        if alpha:
            sp.add_argument("--alpha", type=_angle, help="override the array inclination (rad or '<n>deg')")

    sp = sub.add_parser("propagate", help="quasi-static propagation trace")
    with_config(sp)
    sp.set_defaults(func=cmd_propagate)

    sp = sub.add_parser("diagram", help="shielding-amplification diagram")
    with_config(sp, alpha=False)
    sp.add_argument("--threads", type=int, default=None,
                    help="worker threads (default: $CRACKCHANNEL_THREADS or CPU count)")
    sp.set_defaults(func=cmd_diagram)

    sp = sub.add_parser("deltak", help="per-defect SIF perturbation at a tip position")
    with_config(sp)
    sp.add_argument("--tip", type=float, required=True, help="global tip x coordinate")
    sp.set_defaults(func=cmd_deltak)

    sp = sub.add_parser("asym", help="far-load closed-form formulas")
    sp.add_argument("formula", choices=["microcrack", "rigid", "microcrack-channel", "mixed-channel",
                                        "mixed-infinite"])
    sp.add_argument("--d", type=float, default=1.0)
    sp.add_argument("--phi", type=_angle, default=math.pi / 2)
    sp.add_argument("--alpha", type=_angle, default=0.0)
    sp.add_argument("--s", type=float, default=1.0, help="defect half-length")
    sp.add_argument("--mu-plus", type=float, default=1.0)
    sp.add_argument("--mu-minus", type=float, default=1.0)
    sp.add_argument("--side", choices=["upper", "lower"], default=None)
    sp.add_argument("--n-ahead", type=_count, default=0)
    sp.add_argument("--n-behind", type=_count, default=0)
    sp.add_argument("--h", type=float, default=1.0)
    sp.add_argument("--w", type=float, default=1.0)
    sp.add_argument("--a", type=float, default=1.0, help="load-tip distance")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_asym)

    sp = sub.add_parser("check", help="run the built-in identity suite")
    sp.set_defaults(func=cmd_check)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print("configuration error:", file=sys.stderr)
        for issue in exc.issues:
            print(f"  {issue}", file=sys.stderr)
        return EXIT_CONFIG
    except (CrackChannelError, ArithmeticError, ValueError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
