"""Command line entry point.

Trajectory strings are X outcomes followed by Z outcomes, stabiliser 0
first: at d=2, ``1001`` means X=(1,0) and Z=(0,1).

Exit codes: 0 success, 1 computational failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any, Sequence

from .amplitude import InjectionState, ZeroProbabilityTrajectory, bloch, normalize, random_chi
from .bitkit import to_bits
from .catalog import (
    chi_json,
    distribution_stats,
    enumerate_all,
    enumerate_trivial_x,
    sample_trajectories,
    to_csv,
    to_json,
)
from .coset import Trajectory, coset_representatives, enumerate_coset, format_coset
from .lattice import build_layout
from .oracle import MAX_QUBITS, compare_with_oracle
from .projector import ENGINES, default_workers, project, trajectory_probability


class UsageError(Exception):
    pass


def _add_chi(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("injection state (radians, or raw amplitudes)")
    g.add_argument("--theta", type=float)
    g.add_argument("--phi", type=float)
    for name in ("alpha-re", "alpha-im", "beta-re", "beta-im"):
        g.add_argument(f"--{name}", type=float)


def _chi(args) -> tuple[InjectionState, dict[str, Any]] | None:
    angles = args.theta is not None or args.phi is not None
    raw = [args.alpha_re, args.alpha_im, args.beta_re, args.beta_im]
    raw_given = any(v is not None for v in raw)
    if angles and raw_given:
        raise UsageError("give either --theta/--phi or the complex amplitudes, not both")
    if angles:
        if args.theta is None:
            raise UsageError("--theta is required with --phi")
        phi = args.phi or 0.0
        return InjectionState.from_angles(args.theta, phi), {"theta": args.theta, "phi": phi}
    if raw_given:
        re_a, im_a, re_b, im_b = (v or 0.0 for v in raw)
        alpha, beta = complex(re_a, im_a), complex(re_b, im_b)
        norm2 = abs(alpha) ** 2 + abs(beta) ** 2
        if abs(norm2 - 1.0) > 1e-9:
            raise UsageError(f"injection amplitudes must be normalised, |a|^2+|b|^2 = {norm2}")
        chi = InjectionState.from_amplitudes(alpha, beta, normalize=True)
        return chi, chi_json(chi)
    return None


def _layout(args):
    if args.distance < 2:
        raise UsageError("--distance must be >= 2")
    return build_layout(args.distance)


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def cmd_layout(args) -> Any:
    return _layout(args).to_json()


def cmd_coset(args) -> Any:
    layout = _layout(args)
    if layout.distance > 3:
        raise UsageError("coset listing is limited to d <= 3")
    bits = args.z_outcomes
    if len(bits) != layout.num_stabs or any(c not in "01" for c in bits):
        raise UsageError(f"--z-outcomes must be {layout.num_stabs} bits")
    z = tuple(int(c) for c in bits)
    rep0, rep1 = coset_representatives(layout, z)
    n = layout.num_data
    return {
        "z_outcomes": bits,
        "strings": format_coset(layout, enumerate_coset(layout, z)),
        "frame": {"rep0": to_bits(rep0, n), "rep1": to_bits(rep1, n)},
    }


def cmd_state(args) -> Any:
    layout = _layout(args)
    try:
        trajectory = Trajectory.parse(args.trajectory, layout)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    chi = _chi(args)
    result = project(layout, trajectory, args.engine, workers=args.workers)
    n = layout.num_data
    out: dict[str, Any] = {
        "trajectory": str(trajectory),
        "A_coeffs": result.A.coeffs,
        "B_coeffs": result.B.coeffs,
        "alpha_L": None,
        "beta_L": None,
        "bloch": None,
        "probability": None,
        "frame": {"rep0": to_bits(result.frame[0], n), "rep1": to_bits(result.frame[1], n)},
    }
    if args.symbolic:
        out["A"] = result.A.format()
        out["B"] = result.B.format()
    if chi is not None:
        state, spec = chi
        out["chi"] = spec
        out["probability"] = trajectory_probability(result, state)
        try:
            (a, b), _ = normalize(result.logical, state)
        except ZeroProbabilityTrajectory:
            if args.strict:
                raise
        else:
            out["alpha_L"], out["beta_L"] = _pair(a), _pair(b)
            out["bloch"] = list(bloch(a, b))
    return out


def cmd_enumerate(args) -> Any:
    layout = _layout(args)
    chi = _chi(args)
    if chi is None:
        raise UsageError("enumerate needs an injection state")
    state, spec = chi
    if args.sample is not None:
        entries = sample_trajectories(layout, state, args.sample, args.seed, args.workers)
    elif args.all:
        entries = enumerate_all(layout, state, args.workers)
    else:
        entries = enumerate_trivial_x(layout, state, args.workers)
    text = to_csv(entries) if args.format == "csv" else to_json(layout, spec, entries)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
        summary = distribution_stats(entries)
        summary["out"] = args.out
        return summary
    sys.stdout.write(text)
    return None


def _parse_count(spec: str, name: str) -> int | None:
    if spec == "all":
        return None
    if spec.startswith("random:"):
        try:
            return int(spec.split(":", 1)[1])
        except ValueError:
            pass
    raise UsageError(f"{name} must be 'all' or 'random:<n>', got {spec!r}")


def cmd_oracle_check(args) -> Any:
    layout = _layout(args)
    if layout.num_data > MAX_QUBITS:
        raise UsageError("oracle-check supports d in {2, 3}")
    rng = random.Random(args.seed)
    k = layout.num_stabs
    n_traj = _parse_count(args.trajectories, "--trajectories")
    if n_traj is None:
        words = [(x, z) for x in range(1 << k) for z in range(1 << k)]
    else:
        words = [(rng.getrandbits(k), rng.getrandbits(k)) for _ in range(n_traj)]
    n_chi = _parse_count(args.chis, "--chis")
    if n_chi is None:
        raise UsageError("--chis must be random:<m>")
    chis = [random_chi(rng) for _ in range(n_chi)]

    rows = []
    worst = 0.0
    for x, z in words:
        trajectory = Trajectory.from_words(x, z, k)
        result = project(layout, trajectory, args.engine)
        dev = compare_with_oracle(layout, result, chis)
        worst = max(worst, dev)
        rows.append({"trajectory": str(trajectory), "max_deviation": float(dev)})
    return {
        "distance": layout.distance,
        "trajectories": rows,
        "max_deviation": float(worst),
        "tolerance": args.tol,
        "pass": bool(worst < args.tol),
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="transinj", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("layout", help="print the code layout as JSON")
    p.add_argument("--distance", type=int, required=True)
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("coset", help="list strings consistent with Z outcomes (d <= 3)")
    p.add_argument("--distance", type=int, required=True)
    p.add_argument("--z-outcomes", required=True)
    p.set_defaults(func=cmd_coset)

    p = sub.add_parser("state", help="logical state for one trajectory")
    p.add_argument("--distance", type=int, required=True)
    p.add_argument("--trajectory", required=True, help="X bits then Z bits")
    _add_chi(p)
    p.add_argument("--engine", choices=ENGINES, default="solver")
    p.add_argument("--symbolic", action="store_true", help="include polynomial text")
    p.add_argument("--strict", action="store_true", help="exit 1 on zero-probability trajectories")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("enumerate", help="catalog of trajectories")
    p.add_argument("--distance", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--trivial-x", action="store_true", help="X outcomes all zero (default)")
    mode.add_argument("--all", action="store_true", help="every trajectory (d <= 3)")
    mode.add_argument("--sample", type=int, metavar="COUNT", help="uniform trivial-X sample (d <= 6)")
    p.add_argument("--seed", type=int, default=0)
    _add_chi(p)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("oracle-check", help="compare against the statevector oracle")
    p.add_argument("--distance", type=int, required=True, choices=(2, 3))
    p.add_argument("--trajectories", default="all")
    p.add_argument("--chis", default="random:5")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--engine", choices=ENGINES, default="solver")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "workers", 0) is None:
        args.workers = default_workers()
    try:
        out = args.func(args)
    except (UsageError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except (ZeroProbabilityTrajectory, OverflowError, ArithmeticError) as exc:
        print(f"{parser.prog}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if out is not None:
        json.dump(out, sys.stdout, indent=1)
        sys.stdout.write("\n")
    if args.command == "oracle-check" and not out["pass"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
