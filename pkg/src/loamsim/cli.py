"""Command-line front end: design constellations, run sweeps, verify designs.

stdout carries only the artifact (JSON, CSV, or report); diagnostics go to
stderr. Exit codes: 0 success, 2 usage error, 1 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .channel import ChannelState, effective_min_distance
from .constellations import (
    InfeasibleDesignError,
    constellation_to_json,
    design_loam,
    design_to_json,
    gen_pam,
    gen_psk,
    gen_qam,
    mean_power,
    strong_reference_threshold,
)
from .oracle import oracle_free_search_m2, oracle_ray_search, power_feasible
from .simulate import (
    ConfigError,
    run_sweep,
    ser_points_to_csv,
    ser_points_to_json,
    sweep_config_from_dict,
)


def _write_artifact(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_design(args, parser: argparse.ArgumentParser) -> int:
    if args.order < 2:
        parser.error("order must be >= 2")
    h = complex(args.h_re, args.h_im)
    b = complex(args.b_re, args.b_im)
    if args.scheme == "qam" and math.isqrt(args.order) ** 2 != args.order:
        parser.error(f"qam requires a perfect-square order, got {args.order}")
    try:
        if args.scheme == "loam":
            state = ChannelState(h=h, b=b, power=args.power, order=args.order)
            text = design_to_json(design_loam(state))
        else:
            gen = {"pam": gen_pam, "qam": gen_qam, "psk": gen_psk}[args.scheme]
            text = constellation_to_json(gen(args.power, args.order), h, b)
    except (ValueError, InfeasibleDesignError) as exc:
        print(f"design failed: {exc}", file=sys.stderr)
        return 1
    _write_artifact(text, args.out)
    return 0


def _cmd_sweep(args) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"config is not valid JSON: {exc}", file=sys.stderr)
        return 1
    try:
        config = sweep_config_from_dict(doc)
        config.validate()
        points = run_sweep(config, workers=args.threads)
    except ConfigError as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 1
    _write_artifact(ser_points_to_csv(points), args.out)
    if args.json_out is not None:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(ser_points_to_json(points))
    return 0


def _verify_checks(order: int, steps: int, grid: int, scenarios: int, seed: int):
    """Yield (name, passed, detail) tuples for the verification report."""
    rng = np.random.default_rng(seed)
    regimes = ("lo-free", "weak", "strong")
    for regime in regimes:
        for case in range(scenarios):
            power = 1.0
            h = rng.uniform(0.25, 2.0) * np.exp(1j * rng.uniform(0.0, 2 * math.pi))
            threshold = strong_reference_threshold(power, order, abs(h))
            if regime == "lo-free":
                b = 0.0 + 0.0j
            else:
                frac = rng.uniform(0.05, 0.95) if regime == "weak" else rng.uniform(1.0, 5.0)
                b = math.sqrt(frac * threshold) * np.exp(1j * rng.uniform(0.0, 2 * math.pi))
            state = ChannelState(h=complex(h), b=complex(b), power=power, order=order)
            outcome = design_loam(state)
            expected = effective_min_distance(outcome.points, state.h, state.b)
            found = oracle_ray_search(state, steps=steps, seed=seed + case).min_distance
            rel_gap = (found - expected) / expected
            ok = -1e-2 <= rel_gap <= 1e-3
            yield (
                f"ray-search vs closed-form spacing [{regime} #{case}]",
                ok,
                f"measured={found:.6g} expected={expected:.6g} rel_gap={rel_gap:.2e}",
            )
            feasible = power_feasible(outcome.points, power)
            yield (
                f"design power feasibility [{regime} #{case}]",
                feasible,
                f"mean_power={mean_power(outcome.points):.9f} budget={power}",
            )
    if order == 2:
        for case in range(scenarios):
            power = 1.0
            h = rng.uniform(0.25, 2.0) * np.exp(1j * rng.uniform(0.0, 2 * math.pi))
            threshold = strong_reference_threshold(power, order, abs(h))
            b = math.sqrt(rng.uniform(0.05, 2.0) * threshold) * np.exp(
                1j * rng.uniform(0.0, 2 * math.pi)
            )
            result = oracle_free_search_m2(complex(h), complex(b), power, grid=grid)
            ray_dir = np.exp(-1j * np.angle(-b / h))
            off_ray = max(
                abs((result.x0 * ray_dir).imag), abs((result.x1 * ray_dir).imag)
            )
            ok = off_ray < 0.02 * math.sqrt(power)
            yield (
                f"free-search collinearity [#{case}]",
                ok,
                f"max_off_ray={off_ray:.4g} tolerance={0.02 * math.sqrt(power):.4g}",
            )
            state = ChannelState(h=complex(h), b=complex(b), power=power, order=order)
            ray = oracle_ray_search(state, steps=steps, seed=seed + case).min_distance
            ok2 = result.min_distance <= ray * (1.0 + 1e-2)
            yield (
                f"free-search vs ray-search [#{case}]",
                ok2,
                f"free={result.min_distance:.6g} ray={ray:.6g}",
            )


def _cmd_verify(args) -> int:
    all_ok = True
    for name, ok, detail in _verify_checks(
        args.order, args.steps, args.grid, args.scenarios, args.seed
    ):
        tag = "PASS" if ok else "FAIL"
        all_ok = all_ok and ok
        sys.stdout.write(f"{tag} {name}: {detail}\n")
    sys.stdout.write("verification PASSED\n" if all_ok else "verification FAILED\n")
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loamsim",
        description="Adaptive constellation design and SER simulation for "
        "amplitude-only receivers",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_design = sub.add_parser("design", help="design a constellation and emit JSON")
    p_design.add_argument("--h-re", type=float, required=True)
    p_design.add_argument("--h-im", type=float, default=0.0)
    p_design.add_argument("--b-re", type=float, default=0.0)
    p_design.add_argument("--b-im", type=float, default=0.0)
    p_design.add_argument("--power", type=float, required=True)
    p_design.add_argument("--order", type=int, required=True)
    p_design.add_argument(
        "--scheme", choices=("loam", "pam", "qam", "psk"), default="loam"
    )
    p_design.add_argument("--out", default=None, help="write JSON here instead of stdout")

    p_sweep = sub.add_parser("sweep", help="run a Monte-Carlo SER sweep from a JSON config")
    p_sweep.add_argument("config", help="path to the sweep config (JSON)")
    p_sweep.add_argument("--out", default=None, help="write CSV here instead of stdout")
    p_sweep.add_argument("--json-out", default=None, help="also write a JSON mirror here")
    p_sweep.add_argument(
        "--threads", type=int, default=None, help="cap worker threads (default: all cores)"
    )

    p_verify = sub.add_parser("verify", help="run brute-force design verification")
    p_verify.add_argument("--order", type=int, default=4)
    p_verify.add_argument("--steps", type=int, default=1500, help="ray-search line grid size")
    p_verify.add_argument("--grid", type=int, default=60, help="free-search grid per axis")
    p_verify.add_argument("--scenarios", type=int, default=3, help="scenarios per regime")
    p_verify.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "design":
        return _cmd_design(args, parser)
    if args.command == "sweep":
        return _cmd_sweep(args)
    return _cmd_verify(args)


if __name__ == "__main__":
    sys.exit(main())
