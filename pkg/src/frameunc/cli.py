"""Command-line entry point: ``frameunc {gen,curve,bounds,verify,separate}``.

Exit codes: 0 on success (``verify``: every inequality holds), 1 when an
inequality fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import generators as gen
from .bounds import (
    FramePair,
    entropic_rhs,
    k_frame_bound,
    lp_bound,
    support_bound,
    weak_support_bound,
)
from .coherence import coherence_curve
from .frames import FrameError, frame_to_dict, load_frames, save_frames
from .separation import exhaustive_separate
from .verify import SLACK_TOL, TrialConfig, random_trials

KINDS = ("kronecker", "fourier", "mub", "bmub", "random-onb", "random-frame", "mdct", "tight")


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _num(v: float):
    return v if math.isfinite(v) else None


def _load_pair(args) -> FramePair:
    if args.pair:
        frames = load_frames(args.pair)
        if len(frames) != 2:
            raise UsageError(f"{args.pair} holds {len(frames)} frames, expected a pair")
        U, V = frames
    elif args.u and args.v:
        U, = load_frames(args.u)
        V, = load_frames(args.v)
    else:
        raise UsageError("give either --pair or both --u and --v")
    return FramePair(U, V)


def _add_pair_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pair", help="JSON bundle holding two frames")
    p.add_argument("--u", help="JSON file with the first frame")
    p.add_argument("--v", help="JSON file with the second frame")


# ------------------------------------------------------------------ commands


def cmd_gen(args) -> int:
    n = args.dim
    kind = args.kind
    if kind == "kronecker":
        frames = [gen.kronecker_basis(n)]
    elif kind == "fourier":
        frames = [gen.fourier_basis(n)]
    elif kind == "mub":
        frames = list(gen.mub_pair(n))
    elif kind == "bmub":
        if not args.blocks:
            raise UsageError("bmub needs --blocks")
        if n is not None and sum(args.blocks) != n:
            raise UsageError(f"blocks {args.blocks} do not add up to --dim {n}")
        frames = list(gen.bmub(args.blocks))
    elif kind == "random-onb":
        frames = list(gen.random_onb_pair(n, args.seed))
    elif kind == "random-frame":
        m = args.size or 2 * n
        frames = [gen.random_frame(n, m, args.seed), gen.random_frame(n, m, args.seed + 1)]
    elif kind == "mdct":
        if not args.window:
            raise UsageError("mdct needs --window (one or more comma-separated lengths)")
        frames = [gen.mdct_basis(n, w) for w in args.window]
    else:
        frames = [gen.tight_frame(args.name, n if n is not None else 2, args.size)]
        if args.angle is not None:
            if args.name != "mercedes":
                raise UsageError("--angle only applies to the mercedes frame")
            frames.append(gen.mercedes(args.angle))
    if args.out:
        save_frames(args.out, frames)
    else:
        payload = frame_to_dict(frames[0]) if len(frames) == 1 else {"frames": [frame_to_dict(f) for f in frames]}
        sys.stdout.write(json.dumps(payload) + "\n")
    return 0


def cmd_curve(args) -> int:
    pair = _load_pair(args)
    if not (1.0 <= args.rmin <= args.rmax <= 2.0) or args.count < 1:
        raise UsageError("the r grid must satisfy 1 <= rmin <= rmax <= 2 with count >= 1")
    grid = np.linspace(args.rmin, args.rmax, args.count)
    curve = coherence_curve(pair.U, pair.V, grid, U_dual=pair.U_dual, V_dual=pair.V_dual)
    value, r_opt = pair.mu_star
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["r", "mu_uv", "mu_vu", "geomean"])
    for row in zip(grid, curve.mu_uv, curve.mu_vu, curve.geomean):
        writer.writerow([f"{v:.15g}" for v in row])
    buf.write(f"# mu_star={value:.15g},r_opt={r_opt:.15g}\n")
    _emit(buf.getvalue(), args.out)
    return 0


def bounds_report(pair: FramePair, r_values, alphas: int = 5, p_values=(1.0, 1.5, 2.0)) -> dict:
    """All bound constants of a pair as a JSON-ready dictionary."""
    prod, total, r_opt = support_bound(pair)
    report = {
        "labels": [pair.U.label, pair.V.label],
        "frame_bounds": {"U": list(pair.bounds_u), "V": list(pair.bounds_v)},
        "tight": pair.tight,
        "rho": pair.rho,
        "sigma": pair.sigma,
        "mu_star": pair.mu_star[0],
        "r_opt": r_opt,
        "support_bound_product": prod,
        "support_bound_sum": total,
        "k_frame_bound": dict(zip(("product", "sum"), k_frame_bound([pair.U, pair.V]))),
        "tight_shannon_bound": -2.0 * math.log(pair.mu_star[0]) if pair.tight else None,
        "per_r": [],
    }
    for r in r_values:
        entry = {
            "r": r,
            "nu_r": pair.nu_r(r),
            "mu_r_uv": pair.mu_r_uv(r),
            "mu_r_vu": pair.mu_r_vu(r),
        }
        if r < 2.0:
            entry["weak_support_bound"] = weak_support_bound(pair, r=r)
            entry["entropic"] = []
            for alpha in np.linspace(r / 2.0, 1.0, alphas):
                beta, rhs = entropic_rhs(pair, r=r, alpha=float(alpha))
                entry["entropic"].append(
                    {"alpha": float(alpha), "beta": _num(beta), "rhs": _num(rhs), "informative": math.isfinite(rhs)}
                )
            entry["lp"] = [{"p": p, "constant": lp_bound(pair, p=p, r=r)} for p in p_values if r <= p <= 2.0]
        report["per_r"].append(entry)
    return report


def cmd_bounds(args) -> int:
    pair = _load_pair(args)
    r_values = args.r or [1.0]
    if any(not 1.0 <= r <= 2.0 for r in r_values):
        raise UsageError("--r values must lie in [1, 2]")
    _emit(_json(bounds_report(pair, r_values)), args.out)
    return 0


def cmd_verify(args) -> int:
    pair = _load_pair(args)
    config = TrialConfig(n_trials=args.trials, seed=args.seed, tol=args.tol)
    batch = random_trials(pair, config=config)
    _emit(_json(batch.to_dict()), args.out)
    return 0 if batch.all_passed else 1


def cmd_separate(args) -> int:
    U, = load_frames(args.u)
    V, = load_frames(args.v)
    try:
        raw = np.asarray(json.loads(Path(args.signal).read_text())["values"], dtype=float)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"malformed signal file: {exc}") from exc
    if raw.ndim != 2 or raw.shape[1] != 2:
        raise UsageError("signal 'values' must be a list of [re, im] pairs")
    u = raw[:, 0] + 1j * raw[:, 1]
    result = exhaustive_separate(U, V, u, k_max=args.kmax, tol=args.tol)
    _emit(_json(result.to_dict()), args.out)
    return 0


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frameunc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write frame JSON")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--dim", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--blocks", type=_int_list, help="BMUB block sizes, e.g. 2,4")
    p.add_argument("--window", type=_int_list, help="MDCT window length(s), e.g. 8,16")
    p.add_argument("--name", choices=gen.TIGHT_FRAMES, default="mercedes", help="tight frame name")
    p.add_argument("--size", type=int, help="number of vectors (harmonic / random-frame)")
    p.add_argument("--angle", type=float, help="also emit a Mercedes frame rotated by this angle")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("curve", help="CSV of r-coherences over a grid of r")
    _add_pair_args(p)
    p.add_argument("--rmin", type=float, default=1.0)
    p.add_argument("--rmax", type=float, default=2.0)
    p.add_argument("--count", type=int, default=201)
    p.add_argument("--out")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("bounds", help="JSON report of the bound constants")
    _add_pair_args(p)
    p.add_argument("--r", type=float, action="append", help="order r (repeatable)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="random-trial verification of every inequality")
    _add_pair_args(p)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=SLACK_TOL)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("separate", help="exhaustive two-frame signal separation")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--signal", required=True)
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_separate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen" and args.kind != "bmub" and args.kind != "tight" and args.dim is None:
        parser.error("--dim is required for this kind")
    try:
        return args.func(args)
    except (UsageError, FrameError, ValueError, OSError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
