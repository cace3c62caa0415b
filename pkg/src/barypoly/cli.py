"""Command line front end.

Subcommands:
  alpha       stationary value and instability certificate for one p
  trajectory  iterate the sorted conjugate state, emit CSV
  dual        averaging-polygon image points of the dual weights, emit CSV
  verify      randomized verification sweep, emit PASS/FAIL lines or JSON
  figure      SVG of the collapsing averaging polygon

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
Options may be loaded from a JSON config file; explicit flags win.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .analysis import KNOWN_CHECKS, CheckResult, default_suite, trajectory_checks
from .dynamics import WeightTuple, conjugate_of, run_trajectory
from .geometry import PointSet, centroid, dual_sequence, limit_point, polygon_step, weight_orders
from .stationary import certificate, solve_alpha

__all__ = ["main", "RunConfig", "figure_iterates"]

_FLOAT_FMT = "%.17g"


@dataclass
class RunConfig:
    """Resolved options shared by the subcommands."""

    p: int | None = None
    dim: int = 2
    weights: tuple[float, ...] | None = None
    points: list[list[float]] | None = None
    max_steps: int = 200
    seed: int = 0
    output_dir: str = "."
    extra: dict = field(default_factory=dict)


def _fmt(x: float) -> str:
    return _FLOAT_FMT % x


def _parse_weights(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad weight list {text!r}: {exc}") from None


def _load_config(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    return data


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        raw = _load_config(args.config)
        known = {"p", "dim", "weights", "points", "max_steps", "seed", "output_dir"}
        for key, value in raw.items():
            if key in known:
                if key == "weights":
                    value = tuple(float(v) for v in value)
                setattr(cfg, key, value)
            else:
                cfg.extra[key] = value
    if getattr(args, "p", None) is not None:
        cfg.p = args.p
    if getattr(args, "weights", None) is not None:
        cfg.weights = args.weights
    if getattr(args, "steps", None) is not None:
        cfg.max_steps = args.steps
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    if getattr(args, "out_dir", None) is not None:
        cfg.output_dir = args.out_dir
    if getattr(args, "points_file", None):
        with open(args.points_file, encoding="utf-8") as fh:
            cfg.points = json.load(fh)
    return cfg


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline="\n"), True


# ---------------------------------------------------------------------------
# alpha
# ---------------------------------------------------------------------------

def cmd_alpha(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    cfg = _resolve_config(args)
    if cfg.p is None:
        parser.error("alpha needs --p")
    if cfg.p < 3:
        print(f"error: the instability certificate requires p >= 3, got {cfg.p}", file=sys.stderr)
        return 2
    cert = certificate(cfg.p)
    if args.json:
        payload = {
            "p": cert.p,
            "alpha": cert.alpha,
            "beta": cert.beta,
            "lambda_repulsive": cert.lambda_repulsive,
            "lambda_contractive": cert.lambda_contractive,
            "instability_margin": cert.instability_margin,
            "stationary_weight": 1.0 - cert.alpha,
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"p = {cert.p}")
        print(f"alpha = {_fmt(cert.alpha)}")
        print(f"stationary weight 1 - alpha = {_fmt(1.0 - cert.alpha)}")
        print(f"beta = alpha**(p-2) = {_fmt(cert.beta)}")
        print(f"repulsive eigenvalue (1-p)*beta = {_fmt(cert.lambda_repulsive)}")
        print(f"contractive eigenvalue beta = {_fmt(cert.lambda_contractive)}")
        print(f"instability margin |lambda|-1 = {_fmt(cert.instability_margin)}")
    return 0


# ---------------------------------------------------------------------------
# trajectory
# ---------------------------------------------------------------------------

def cmd_trajectory(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    cfg = _resolve_config(args)
    if cfg.weights is None:
        parser.error("trajectory needs --weights (comma separated, each in (0,1))")
    try:
        t0 = WeightTuple.of(cfg.weights)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    alpha = solve_alpha(t0.p)
    traj = run_trajectory(conjugate_of(t0), cfg.max_steps, alpha)

    out, close = _open_out(args.out)
    try:
        header = ["m"] + [f"u_{k + 1}" for k in range(traj.p)] + ["spread", "phase"]
        out.write(",".join(header) + "\n")
        for m, state in enumerate(traj.states):
            row = [str(m)]
            row.extend(_fmt(v) for v in state.u)
            row.append(_fmt(traj.spread[m]))
            row.append(traj.phase[m].value)
            out.write(",".join(row) + "\n")
    finally:
        if close:
            out.close()

    note = sys.stderr if (args.out is None or args.out == "-") else sys.stdout
    if traj.saturation_step is not None:
        print(
            f"saturated at step {traj.saturation_step}: a component left (0, 1); "
            f"{len(traj.states)} states recorded",
            file=note,
        )
    else:
        print(f"recorded {len(traj.states)} states (no saturation)", file=note)
    return 0


# ---------------------------------------------------------------------------
# dual
# ---------------------------------------------------------------------------

def _points_from_config(cfg: RunConfig, p: int) -> PointSet:
    if cfg.points is not None:
        return PointSet.of(cfg.points)
    pts = [
        (math.cos(2.0 * math.pi * k / p), math.sin(2.0 * math.pi * k / p))
        for k in range(p)
    ]
    return PointSet.of(pts)


def cmd_dual(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    cfg = _resolve_config(args)
    if cfg.weights is None:
        parser.error("dual needs --weights (comma separated, each in (0,1))")
    try:
        t0 = WeightTuple.of(cfg.weights)
        pts = _points_from_config(cfg, t0.p)
        record = dual_sequence(pts, t0, cfg.max_steps)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    out, close = _open_out(args.out)
    try:
        dim = record.points.shape[1]
        header = ["m"] + [f"g_{d + 1}" for d in range(dim)] + ["distance"]
        out.write(",".join(header) + "\n")
        for m in range(record.points.shape[0]):
            row = [str(m)]
            row.extend(_fmt(v) for v in record.points[m])
            row.append(_fmt(record.distances_to_centroid[m]))
            out.write(",".join(row) + "\n")
    finally:
        if close:
            out.close()

    note = sys.stderr if (args.out is None or args.out == "-") else sys.stdout
    if record.fitted_rate is None:
        print("fitted rate: not enough usable samples", file=note)
    else:
        print(f"fitted log-distance rate per step: {_fmt(record.fitted_rate)}", file=note)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _emit_verify_report(results: list[CheckResult], config: dict, args) -> int:
    passed = all(r.passed for r in results)
    if args.json or args.out:
        payload = {
            "config": config,
            "checks": [r.as_json() for r in results],
            "passed": passed,
        }
        text = json.dumps(payload, indent=2)
        if args.out:
            Path(args.out).write_text(text + "\n", encoding="utf-8")
        else:
            print(text)
    if not (args.json and not args.out):
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'} {r.name}")
        print(f"{'all checks passed' if passed else 'CHECK FAILURES PRESENT'}")
    return 0 if passed else 1


def cmd_verify(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    cfg = _resolve_config(args)
    checks = args.check or None
    if checks:
        unknown = set(checks).difference(KNOWN_CHECKS)
        if unknown:
            print(
                f"error: unknown checks {sorted(unknown)}; known: {', '.join(KNOWN_CHECKS)}",
                file=sys.stderr,
            )
            return 2

    if cfg.weights is not None and not args.sweep:
        try:
            t0 = WeightTuple.of(cfg.weights)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        alpha = solve_alpha(t0.p)
        traj = run_trajectory(conjugate_of(t0), cfg.max_steps, alpha)
        results = trajectory_checks(traj)
        if checks:
            results = [r for r in results if r.name in checks]
        config = {"weights": list(t0.t), "max_steps": cfg.max_steps}
        return _emit_verify_report(results, config, args)

    p_values = [cfg.p] if cfg.p is not None else [3, 4, 5, 6, 7, 8]
    if any(p < 3 for p in p_values):
        print("error: verification sweeps require p >= 3", file=sys.stderr)
        return 2
    seeds = args.seeds if args.seeds is not None else 100
    results = default_suite(
        p_values=p_values,
        seeds_per_p=seeds,
        max_steps=cfg.max_steps if cfg.max_steps != 200 else 400,
        rng_seed=cfg.seed,
        checks=checks,
        inject_fault=args.inject_fault,
    )
    config = {
        "p_values": p_values,
        "seeds_per_p": seeds,
        "rng_seed": cfg.seed,
        "inject_fault": args.inject_fault,
    }
    return _emit_verify_report(results, config, args)


# ---------------------------------------------------------------------------
# figure
# ---------------------------------------------------------------------------

def figure_iterates(
    A: PointSet,
    t: WeightTuple,
    min_iters: int = 60,
    shrink: float = 1e-3,
    cap: int = 20000,
) -> list[PointSet]:
    """Averaging-polygon iterates, run until visibly collapsed.

    Iterates until at least min_iters steps are drawn and the diameter has
    dropped below shrink times the initial diameter, hard-capped at cap
    steps.
    """

    def diameter(ps: PointSet) -> float:
        pts = ps.points
        d = 0.0
        for i in range(pts.shape[0] - 1):
            d = max(d, float(np.max(np.linalg.norm(pts[i + 1:] - pts[i], axis=1))))
        return d

    d0 = diameter(A)
    iterates = [A]
    B = A
    while len(iterates) - 1 < cap:
        B = polygon_step(B, t)
        iterates.append(B)
        if len(iterates) - 1 >= min_iters and diameter(B) <= shrink * d0:
            break
    return iterates


_ORDER_COLORS = ("#1f77b4", "#d62728")


def _svg_poly(points: np.ndarray, to_px, color: str, width: float, opacity: float) -> str:
    coords = " ".join("%.4f,%.4f" % to_px(pt) for pt in list(points) + [points[0]])
    return (
        f'<polyline points="{coords}" fill="none" stroke="{color}" '
        f'stroke-width="{width:.4f}" stroke-opacity="{opacity:.4f}" />'
    )


def _render_svg(families: list[tuple[list[PointSet], str]], limits: list[tuple[np.ndarray, str]],
                center_pt: np.ndarray) -> str:
    all_pts = np.vstack([ps.points for fam, _ in families for ps in fam])
    lo = all_pts.min(axis=0)
    hi = all_pts.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-30))
    scale = 900.0 / span
    mid = (lo + hi) / 2.0

    def to_px(pt: np.ndarray) -> tuple[float, float]:
        x = 500.0 + (float(pt[0]) - float(mid[0])) * scale
        y = 500.0 - (float(pt[1]) - float(mid[1])) * scale
        return x, y

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1000 1000" '
        'width="1000" height="1000">',
        '<rect width="1000" height="1000" fill="white" />',
    ]
    for fam, color in families:
        n = len(fam)
        for i, ps in enumerate(fam):
            opacity = 1.0 if n <= 1 else max(0.15, 1.0 - 0.85 * i / (n - 1))
            width = 2.0 if i == 0 else 1.2
            lines.append(_svg_poly(ps.points, to_px, color, width, opacity))
    for pt, color in limits:
        x, y = to_px(pt)
        lines.append(f'<circle cx="{x:.4f}" cy="{y:.4f}" r="5" fill="{color}" />')
    cx, cy = to_px(center_pt)
    lines.append(
        f'<circle cx="{cx:.4f}" cy="{cy:.4f}" r="3" fill="black" stroke="white" stroke-width="1" />'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def cmd_figure(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    cfg = _resolve_config(args)
    if cfg.weights is None:
        parser.error("figure needs --weights (comma separated, each in (0,1))")
    try:
        t0 = WeightTuple.of(cfg.weights)
        A = _points_from_config(cfg, t0.p)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if A.dim != 2:
        print(f"error: figures need planar points, got dim={A.dim}", file=sys.stderr)
        return 2
    try:
        A.require_distinct()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    orders = [0, 1] if args.superpose else [args.order]
    try:
        weight_list = weight_orders(t0, max(orders))
    except Exception as exc:
        print(f"error: weight order iteration failed: {exc}", file=sys.stderr)
        return 2

    families = []
    limits = []
    for color_idx, order in enumerate(orders):
        t = weight_list[order]
        fam = figure_iterates(A, t)
        color = _ORDER_COLORS[color_idx % len(_ORDER_COLORS)]
        families.append((fam, color))
        limits.append((limit_point(A, t), color))

    svg = _render_svg(families, limits, centroid(A))

    if args.out:
        out_path = Path(args.out)
    else:
        name = "figure_superposed.svg" if args.superpose else f"figure_order{args.order}.svg"
        out_path = Path(cfg.output_dir) / name
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(svg, encoding="utf-8")
    n_total = sum(len(fam) for fam, _ in families)
    print(f"wrote {out_path} ({n_total} polygons)")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="barypoly",
        description="weight-product polygon averaging: trajectories, duals, verifiers, figures",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--config", help="JSON config file; explicit flags override it")
        sp.add_argument("--p", type=int, help="number of components")
        sp.add_argument("--seed", type=int, help="RNG seed for randomized draws")

    sp = sub.add_parser("alpha", help="stationary value and instability certificate")
    add_common(sp)
    sp.add_argument("--json", action="store_true", help="emit a JSON object")
    sp.set_defaults(fn=cmd_alpha)

    sp = sub.add_parser("trajectory", help="iterate the sorted conjugate state, CSV output")
    add_common(sp)
    sp.add_argument("--weights", type=_parse_weights, help="initial weights, comma separated")
    sp.add_argument("--steps", type=int, help="iteration count (default 200)")
    sp.add_argument("--out", help="CSV path ('-' for stdout, the default)")
    sp.set_defaults(fn=cmd_trajectory)

    sp = sub.add_parser("dual", help="dual limit-point sequence, CSV output")
    add_common(sp)
    sp.add_argument("--weights", type=_parse_weights, help="initial weights, comma separated")
    sp.add_argument("--steps", type=int, help="sequence length (default 200)")
    sp.add_argument("--points-file", help="JSON array of base points (default: regular polygon)")
    sp.add_argument("--out", help="CSV path ('-' for stdout, the default)")
    sp.set_defaults(fn=cmd_dual)

    sp = sub.add_parser("verify", help="randomized verification sweep")
    add_common(sp)
    sp.add_argument("--check", action="append", help="restrict to this check (repeatable)")
    sp.add_argument("--weights", type=_parse_weights, help="verify one trajectory instead of sweeping")
    sp.add_argument("--sweep", action="store_true",
                    help="force the randomized sweep even when --weights is present")
    sp.add_argument("--steps", type=int, help="steps per trajectory (default 400)")
    sp.add_argument("--seeds", type=int, help="random seeds per p (default 100)")
    sp.add_argument("--inject-fault", action="store_true",
                    help="corrupt one trajectory to demonstrate failure detection")
    sp.add_argument("--json", action="store_true", help="emit the JSON report to stdout")
    sp.add_argument("--out", help="write the JSON report to this path")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("figure", help="SVG of the collapsing averaging polygon")
    add_common(sp)
    sp.add_argument("--weights", type=_parse_weights, help="initial weights, comma separated")
    sp.add_argument("--order", type=int, default=0,
                    help="weight order: 0 uses the seed weights, n the n-th derived weights")
    sp.add_argument("--superpose", action="store_true", help="overlay orders 0 and 1")
    sp.add_argument("--points-file", help="JSON array of planar base points")
    sp.add_argument("--out", help="SVG path (default: figure_order<N>.svg)")
    sp.add_argument("--out-dir", dest="out_dir", help="directory for default output names")
    sp.set_defaults(fn=cmd_figure)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args, parser)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
