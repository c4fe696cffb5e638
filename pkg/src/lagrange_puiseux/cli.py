"""Command-line front end.

Exit codes: 0 every identity verified, 1 a mismatch was found, 2 usage error,
3 internal or precision error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .branches import RSpec, power_sum, solve_ramified_branch, solve_unramified
from .identity import ConsistencyError, VerificationReport, verify, working_order
from .rng import random_rspecs
from .series import PrecisionError, SeriesError, format_field, polynomial, to_field

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


@dataclass
class CampaignConfig:
    mode: str
    r_coeffs: list = field(default_factory=list)
    e: int = 1
    order: int = 8
    cases: int = 25
    seed: int = 0
    deg_min: int = 2
    deg_max: int = 5
    coeff_bound: int = 3
    json: bool = False
    root: str | None = None
    jobs: int = 1

    def rspec(self) -> RSpec:
        return RSpec(tuple(self.r_coeffs), self.root)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--e", type=int, default=1, help="ramification index (default 1)")
    common.add_argument("--order", type=int, default=8, help="q-order N to verify through (default 8)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")

    single = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    single.add_argument("--r", required=True, help="coefficients of R, comma-separated, ascending")
    single.add_argument(
        "--root", default=None,
        help="designated e-th root of r_0 (default: 1 when r_0 = 1, else the rational root if one exists)",
    )

    parser = argparse.ArgumentParser(
        prog="lagrange-puiseux",
        description="Lagrange inversion over Newton-Puiseux branches and the G_e(R) product identity.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="mode", required=True)
    sub.add_parser("invert", parents=[common, single], allow_abbrev=False,
                   help="solve H^e = qR(H) and print the branch series and power sums")
    sub.add_parser("verify", parents=[common, single], allow_abbrev=False,
                   help="verify the identity for one R")
    rv = sub.add_parser("random-verify", parents=[common], allow_abbrev=False,
                        help="verify the identity for seeded random R")
    rv.add_argument("--cases", type=int, default=25)
    rv.add_argument("--seed", type=int, default=0, help="64-bit unsigned seed")
    rv.add_argument("--deg-min", type=int, default=2)
    rv.add_argument("--deg-max", type=int, default=5)
    rv.add_argument("--coeff-bound", type=int, default=3)
    rv.add_argument("--jobs", type=int, default=1, help="worker processes (output order is unaffected)")
    return parser


def parse_args(argv) -> CampaignConfig:
    """Parse and validate; usage errors exit with status 2."""
    parser = _build_parser()
    ns = parser.parse_args(argv)
    if ns.e <= 0:
        parser.error("--e must be a positive integer")
    if ns.order <= 0:
        parser.error("--order must be a positive integer")
    cfg = CampaignConfig(mode=ns.mode, e=ns.e, order=ns.order, json=ns.json)
    if ns.mode in ("invert", "verify"):
        try:
            coeffs = [to_field(c) for c in ns.r.split(",")]
        except ValueError as exc:
            parser.error(f"--r: {exc}")
        if not coeffs[0]:
            parser.error("--r: r_0 must be nonzero")
        if ns.root is not None:
            try:
                to_field(ns.root)
            except ValueError as exc:
                parser.error(f"--root: {exc}")
        cfg.r_coeffs = coeffs
        cfg.root = ns.root
        try:
            cfg.rspec().designated_root(cfg.e)
        except ValueError as exc:
            parser.error(f"--root: {exc}")
    else:
        if ns.cases <= 0:
            parser.error("--cases must be positive")
        if not 0 <= ns.seed < 1 << 64:
            parser.error("--seed must be a 64-bit unsigned integer")
        if ns.deg_min < 1:
            parser.error("--deg-min must be at least 1")
        if ns.deg_max < ns.deg_min:
            parser.error("--deg-max must be at least --deg-min")
        if ns.coeff_bound <= 0:
            parser.error("--coeff-bound must be positive")
        if ns.jobs <= 0:
            parser.error("--jobs must be positive")
        cfg.cases = ns.cases
        cfg.seed = ns.seed
        cfg.deg_min = ns.deg_min
        cfg.deg_max = ns.deg_max
        cfg.coeff_bound = ns.coeff_bound
        cfg.jobs = ns.jobs
    return cfg


def _poly_text(coeffs) -> str:
    return polynomial(coeffs).format("z")


def _format_report(rep: VerificationReport) -> str:
    lines = [
        f"R = {_poly_text(rep.r)}   e = {rep.e}   order = {rep.order}",
        "lhs: " + ", ".join(format_field(c) for c in rep.lhs),
        "rhs: " + ", ".join(format_field(c) for c in rep.rhs),
    ]
    if rep.equal:
        lines.append("equal: yes")
    else:
        lines.append(f"equal: NO (first mismatch at q^{rep.first_mismatch})")
    return "\n".join(lines)


def _emit(cfg: CampaignConfig, rep: VerificationReport, out) -> None:
    if cfg.json:
        out.write(rep.to_json() + "\n")
    else:
        out.write(_format_report(rep) + "\n")


def _run_invert(cfg: CampaignConfig, out) -> int:
    R = cfg.rspec()
    N = cfg.order
    if cfg.e == 1:
        H = solve_unramified(R, N)
        sums = []
        series = H
    else:
        B = solve_ramified_branch(R, cfg.e, cfg.e * (N + 1))
        series = B.g
        sums = [power_sum(B, m, N + 1) for m in range(1, 2 * cfg.e + 1)]
    if cfg.json:
        doc = {
            "r": [format_field(c) for c in R.coeffs],
            "e": cfg.e,
            "order": N,
            "series": series.to_json(),
            "power_sums": [p.to_json() for p in sums],
        }
        out.write(json.dumps(doc, separators=(",", ":")) + "\n")
    else:
        name = "H(q)" if cfg.e == 1 else f"g(t), t = q^(1/{cfg.e})"
        out.write(f"{name} = {series.format('q' if cfg.e == 1 else 't')}\n")
        for m, p in enumerate(sums, 1):
            out.write(f"p_{m}(q) = {p.format('q')}\n")
    return EXIT_OK


def _verify_case(args):
    coeffs, e, order = args
    return verify(RSpec(coeffs), e, order)


def run_campaign(cfg: CampaignConfig, out=None, err=None) -> int:
    """Run the configured mode, writing reports to ``out``; returns the exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        if cfg.mode == "invert":
            return _run_invert(cfg, out)
        if cfg.mode == "verify":
            rep = verify(cfg.rspec(), cfg.e, cfg.order)
            _emit(cfg, rep, out)
            return EXIT_OK if rep.equal else EXIT_MISMATCH
        specs = random_rspecs(cfg.seed, cfg.cases, cfg.deg_min, cfg.deg_max, cfg.coeff_bound)
        if cfg.deg_max <= cfg.e:
            err.write(f"note: deg R <= e always gives G_e(R) = 1; use --deg-max > {cfg.e} for coverage\n")
        jobs = [(R.coeffs, cfg.e, cfg.order) for R in specs]
        if cfg.jobs > 1:
            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                reports = list(pool.map(_verify_case, jobs))
        else:
            reports = [_verify_case(j) for j in jobs]
        failures = 0
        for rep in reports:
            _emit(cfg, rep, out)
            if not rep.equal:
                failures += 1
        err.write(f"{len(reports) - failures}/{len(reports)} cases verified\n")
        return EXIT_OK if failures == 0 else EXIT_MISMATCH
    except (PrecisionError, ConsistencyError) as exc:
        err.write(f"internal error: {exc}\n")
        err.write(f"working t-order budget e(N+e+2) = {working_order(cfg.e, cfg.order)}\n")
        return EXIT_INTERNAL
    except SeriesError as exc:
        err.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL


def main(argv=None) -> int:
    try:
        cfg = parse_args(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return run_campaign(cfg)


if __name__ == "__main__":
    sys.exit(main())
