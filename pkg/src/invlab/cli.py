"""Command-line front end: distance queries, geodesics, sweeps, kernels, verification.

Exit codes: 0 on success, 1 on a validation error (bad literal, unknown
domain, point outside the domain; the diagnostic names the offending flag),
2 when the verification suite fails.  Identical argv and seed produce
byte-identical output files: all randomness is counter-based and keyed by the
seed, CSV floats carry 17 significant digits, and parallel workloads (capped
by the INVLAB_THREADS environment variable) aggregate in input order.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field, replace

import numpy as np

from . import bergman as bergman_lab
from . import distances, geodesics, localization, metrics, parsing, sampling, verify
from .geometry import (
    Ball,
    Domain,
    EmptyIntersectionError,
    HalfDiscScaled,
    MembershipError,
    UnitDisc,
    UnsupportedDomainError,
    dimension,
)


class FlagError(ValueError):
    """Validation failure attributed to a specific flag."""

    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


@dataclass(frozen=True)
class RunConfig:
    seed: int = 42
    tolerances: dict = field(default_factory=dict)
    solver: geodesics.SolverConfig = geodesics.SolverConfig()
    output_path: str = ""
    format: str = "csv"

    def __post_init__(self):
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")
        for name in self.tolerances:
            if name not in verify.TOLERANCES:
                raise ValueError(f"unknown tolerance name {name!r}")


def load_config(path: str | None) -> RunConfig:
    if not path:
        return RunConfig()
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FlagError("--config", str(exc))
    solver = geodesics.SolverConfig(**raw.get("solver", {}))
    return RunConfig(
        seed=int(raw.get("seed", 42)),
        tolerances=dict(raw.get("tolerances", {})),
        solver=solver,
        output_path=str(raw.get("output_path", "")),
        format=str(raw.get("format", "csv")),
    )


def thread_cap() -> int:
    raw = os.environ.get("INVLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _parse_with(flag: str, parser, text: str):
    try:
        return parser(text)
    except (ValueError, EmptyIntersectionError) as exc:
        raise FlagError(flag, str(exc))


def _member_point(flag: str, domain: Domain, text: str) -> np.ndarray:
    pt = _parse_with(flag, parsing.parse_point, text)
    from .geometry import contains

    if len(pt) != dimension(domain):
        raise FlagError(
            flag, f"point has {len(pt)} coordinates, domain needs {dimension(domain)}"
        )
    if not contains(domain, pt):
        raise FlagError(flag, f"point {text} lies outside the domain")
    return pt


def _write_text(path: str, text: str) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _gap_csv(z: complex, w: complex, radius: float) -> str:
    g = distances.localization_gap(z, w, radius)
    cells = [
        parsing.format_complex(z),
        parsing.format_complex(w),
        parsing.format_float(g.k_local),
        parsing.format_float(g.k_global),
        parsing.format_float(g.term_boundary),
        parsing.format_float(g.term_separation),
        parsing.format_float(g.gap),
        parsing.format_float(g.residual),
    ]
    return "z,w,k_loc,k_glob,t1,t2,gap,residual\n" + ",".join(cells) + "\n"


def cmd_distance(args, config: RunConfig) -> int:
    domain = _parse_with("--domain", parsing.parse_domain, args.domain)
    if args.which == "gap":
        if not isinstance(domain, HalfDiscScaled):
            raise FlagError("--which", "gap needs a halfdisc:r=<r> domain")
        z = _member_point("--z", domain, args.z)[0]
        w = _member_point("--w", domain, args.w)[0]
        _write_text(args.out or config.output_path, _gap_csv(z, w, domain.radius))
        return 0
    z = _member_point("--z", domain, args.z)
    w = _member_point("--w", domain, args.w)
    fn = {
        "k": distances.kobayashi_distance,
        "c": distances.caratheodory_distance,
        "l": distances.lempert_function,
    }[args.which]
    try:
        value = fn(domain, z, w)
    except UnsupportedDomainError as exc:
        raise FlagError("--domain", str(exc))
    _write_text(
        args.out or config.output_path, parsing.format_float(value.value) + "\n"
    )
    return 0


def cmd_gap(args, config: RunConfig) -> int:
    domain = HalfDiscScaled(args.r)
    z = _member_point("--z", domain, args.z)[0]
    w = _member_point("--w", domain, args.w)[0]
    _write_text(args.out or config.output_path, _gap_csv(z, w, args.r))
    return 0


def _geodesic_oracle(domain: Domain, metric: str):
    """Distance oracle matching the chosen metric, or None when unavailable."""
    if metric == "kobayashi":
        return distances.distance_batch(domain)
    scale = None
    if isinstance(domain, UnitDisc):
        scale = math.sqrt(2.0) if metric == "bergman" else 1.0
    elif isinstance(domain, Ball):
        scale = math.sqrt(domain.n + 1) if metric == "bergman" else 1.0
    if scale is None:
        return None
    base = distances.distance_batch(domain)
    return lambda Z, W: scale * base(Z, W)


def cmd_geodesic(args, config: RunConfig) -> int:
    domain = _parse_with("--domain", parsing.parse_domain, args.domain)
    z = _member_point("--z", domain, args.z)
    w = _member_point("--w", domain, args.w)
    try:
        density = {
            "kobayashi": metrics.kobayashi_density,
            "bergman": metrics.bergman_density,
            "nbergman": metrics.normalized_bergman_density,
        }[args.metric](domain)
    except UnsupportedDomainError as exc:
        raise FlagError("--metric", str(exc))
    nodes = args.nodes if args.nodes is not None else config.solver.node_count
    levels = args.levels if args.levels is not None else config.solver.refinement_levels
    try:
        solver = replace(config.solver, node_count=nodes, refinement_levels=levels)
    except ValueError as exc:
        raise FlagError("--nodes", str(exc))
    try:
        curve, length = geodesics.minimize_curve(density, z, w, solver)
    except UnsupportedDomainError as exc:
        raise FlagError("--domain", str(exc))
    oracle = _geodesic_oracle(domain, args.metric)
    epsilon = (
        geodesics.epsilon_certificate(curve, density, oracle).epsilon
        if oracle is not None
        else None
    )
    nodes = [
        [coord for c in row for coord in (c.real, c.imag)] for row in curve.nodes
    ]
    payload = {"nodes": nodes, "length": length, "epsilon": epsilon}
    _write_text(args.out or config.output_path, json.dumps(payload) + "\n")
    return 0


def cmd_bergman(args, config: RunConfig) -> int:
    domain = _parse_with("--domain", parsing.parse_domain, args.domain)
    z = _member_point("--z", domain, args.z)
    N = args.truncation
    try:
        kr = bergman_lab.bergman_kernel_diag(domain, z, N)
    except (UnsupportedDomainError, ValueError) as exc:
        raise FlagError("--domain", str(exc))
    beta = beta_tilde = None
    if args.X is not None:
        X = _parse_with("--X", parsing.parse_point, args.X)
        if len(X) != dimension(domain):
            raise FlagError("--X", "vector dimension does not match the domain")
        try:
            beta = bergman_lab.bergman_metric_numeric(domain, z, X, N, args.step)
        except (MembershipError, ValueError) as exc:
            raise FlagError("--X", str(exc))
        beta_tilde = beta / math.sqrt(dimension(domain) + 1)
    payload = {
        "kernel": kr.kernel_diag,
        "K_D": kr.kernel_sqrt,
        "beta": beta,
        "beta_tilde": beta_tilde,
        "tail": kr.tail_estimate,
    }
    _write_text(args.out or config.output_path, json.dumps(payload) + "\n")
    return 0


def _sweep_rows(family: str, region: float, samples: int, seed: int):
    if family == "imaginary-axis":
        if not (0.0 < region < 1.0):
            raise FlagError("--region", "imaginary-axis sweeps need region in (0, 1)")
        ts = np.geomspace(region * 1e-3, region, samples)
        pairs = [(1j * t, 0.5j * t) for t in ts]
    elif family == "random-cap":
        if not (0.0 < region < 1.0):
            raise FlagError("--region", "random-cap sweeps need region in (0, 1)")
        z, w = sampling.halfdisc_pairs(seed, samples, region)
        ts = np.abs(z - w)
        pairs = list(zip(z, w))
    elif family == "normal":
        if not (0.0 < region <= 1.0):
            raise FlagError("--region", "normal sweeps need region in (0, 1]")
        ts = region * 2.0 ** -(np.arange(samples) + 6.0)
        pairs = [(2j * t, 1j * t) for t in ts]
    else:
        raise FlagError("--family", f"unknown family {family!r}")
    rows = []
    for t, (z, w) in zip(ts, pairs):
        g = distances.localization_gap(complex(z), complex(w))
        if family == "random-cap":
            rhs = localization.planar_gap_bound(
                1.0, complex(z), complex(w), z.imag, w.imag
            )
        else:
            rhs = localization.two_term_gap_bound(complex(z), complex(w))
        rows.append((float(t), complex(z), complex(w), g.gap, rhs, g.gap / rhs))
    return rows


def cmd_sweep(args, config: RunConfig) -> int:
    if args.samples < 2:
        raise FlagError("--samples", "need at least two samples")
    seed = args.seed if args.seed is not None else config.seed
    rows = _sweep_rows(args.family, args.region, args.samples, seed)
    lines = ["t,z,w,gap,rhs,ratio"]
    for t, z, w, gap, rhs, ratio in rows:
        lines.append(
            ",".join(
                [
                    parsing.format_float(t),
                    parsing.format_complex(z),
                    parsing.format_complex(w),
                    parsing.format_float(gap),
                    parsing.format_float(rhs),
                    parsing.format_float(ratio),
                ]
            )
        )
    _write_text(args.out or config.output_path, "\n".join(lines) + "\n")
    return 0


def cmd_verify(args, config: RunConfig) -> int:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    seed = args.seed if args.seed is not None else config.seed
    try:
        report, ok = verify.run_verify(
            names, seed, thread_cap(), config.tolerances or None
        )
    except ValueError as exc:
        raise FlagError("--suite", str(exc))
    for name, entry in report.items():
        summary = " ".join(
            f"{k}={parsing.format_float(v)}" for k, v in entry["measured"].items()
        )
        print(f"{'PASS' if entry['pass'] else 'FAIL'} {name} {summary}")
    out = args.out or config.output_path or "report.json"
    with open(out, "w") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    return 0 if ok else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invlab",
        description="invariant-metric laboratory on model complex domains",
    )
    parser.add_argument("--config", help="JSON run configuration", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("distance", help="closed-form distance between two points")
    d.add_argument("--domain", required=True)
    d.add_argument("--z", required=True)
    d.add_argument("--w", required=True)
    d.add_argument("--which", choices=["k", "c", "l", "gap"], default="k")
    d.add_argument("--out", default=None)

    g = sub.add_parser("gap", help="half-disc localization gap decomposition")
    g.add_argument("--z", required=True)
    g.add_argument("--w", required=True)
    g.add_argument("--r", type=float, default=1.0)
    g.add_argument("--out", default=None)

    geo = sub.add_parser("geodesic", help="variational geodesic between two points")
    geo.add_argument("--domain", required=True)
    geo.add_argument("--z", required=True)
    geo.add_argument("--w", required=True)
    geo.add_argument("--nodes", type=int, default=None)
    geo.add_argument("--levels", type=int, default=None)
    geo.add_argument(
        "--metric", choices=["kobayashi", "bergman", "nbergman"], default="kobayashi"
    )
    geo.add_argument("--out", default=None)

    b = sub.add_parser("bergman", help="numeric kernel and metric via moments")
    b.add_argument("--domain", required=True)
    b.add_argument("--z", required=True)
    b.add_argument("--X", default=None)
    b.add_argument("--truncation", type=int, default=50)
    b.add_argument("--step", type=float, default=1e-3)
    b.add_argument("--out", default=None)

    s = sub.add_parser("sweep", help="gap-versus-bound sweep tables")
    s.add_argument(
        "--family", choices=["imaginary-axis", "random-cap", "normal"], required=True
    )
    s.add_argument("--region", type=float, required=True)
    s.add_argument("--samples", type=int, required=True)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--out", default=None)

    v = sub.add_parser("verify", help="run the verification suites")
    v.add_argument("--suite", default="all")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--out", default=None)

    return parser


COMMANDS = {
    "distance": cmd_distance,
    "gap": cmd_gap,
    "geodesic": cmd_geodesic,
    "bergman": cmd_bergman,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def run_command(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        config = load_config(args.config)
        return COMMANDS[args.command](args, config)
    except FlagError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (MembershipError, UnsupportedDomainError, EmptyIntersectionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
