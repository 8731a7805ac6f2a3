"""Command-line entry point: ``hw bound | simulate | verify | report``.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage or
input error.  ``HW_THREADS`` supplies the default for ``--threads``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__, bounds, linalg, mc, verify
from .exceptions import HansonWrightError
from .subgauss import RngStream, parse_dist


def _default_threads() -> int:
    raw = os.environ.get("HW_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=42, help="master seed (unsigned 64-bit)")
    parser.add_argument("--threads", type=int, default=_default_threads(),
                        help="worker threads for Monte Carlo chunks (default: $HW_THREADS or 1)")
    parser.add_argument("--out", help="write output to this file instead of stdout")
    parser.add_argument("--format", choices=("json", "csv"), default="json")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_ready(value):
    """inf is not valid JSON; unbounded domains serialize as null."""
    if isinstance(value, float) and math.isinf(value):
        return None
    return value


def parse_grid(text: str) -> np.ndarray:
    """Parse ``a:b:step`` into the inclusive grid a, a+step, ..., <= b."""
    parts = text.split(":")
    if len(parts) != 3:
        raise HansonWrightError(f"grid must look like a:b:step, got {text!r}")
    try:
        a, b, step = (float(p) for p in parts)
    except ValueError as exc:
        raise HansonWrightError(f"non-numeric grid component in {text!r}") from exc
    if step <= 0 or b < a:
        raise HansonWrightError(f"grid {text!r} needs step > 0 and b >= a")
    count = int(math.floor((b - a) / step + 1e-9)) + 1
    return a + step * np.arange(count)


def cmd_bound(args) -> int:
    m = linalg.read_matrix(args.matrix)
    spec = bounds.make_bound_spec(m, args.sigma2)
    payload = {
        "c1": spec.c1,
        "c2": spec.c2,
        "diagonal_free": spec.diagonal_free,
        "frob2": spec.frob2,
        "opnorm": spec.opnorm,
        "lambda_max": _json_ready(spec.lambda_max),
    }
    if args.lam is not None:
        payload["mgf_bound"] = bounds.hw_mgf_bound(spec, args.lam)
    if args.t is not None:
        payload["tail_bound"] = bounds.hw_tail_bound(spec, args.t)
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _simulate_csv(rows) -> str:
    lines = ["t_or_lambda,estimate,ci_low,ci_high,bound,pass"]
    for r in rows:
        lines.append(",".join([
            format(r["at"], ".17g"), format(r["estimate"], ".17g"),
            format(r["ci_low"], ".17g"), format(r["ci_high"], ".17g"),
            format(r["bound"], ".17g"), str(r["pass"]).lower(),
        ]))
    return "\n".join(lines) + "\n"


def cmd_simulate(args) -> int:
    if (args.t_grid is None) == (args.lambda_grid is None):
        raise HansonWrightError("exactly one of --t-grid or --lambda-grid is required")
    m = linalg.read_matrix(args.matrix)
    dist = parse_dist(args.dist)
    if args.samples < 1:
        raise HansonWrightError("--samples must be at least 1")
    spec = bounds.make_bound_spec(m, dist.proxy_sigma2)
    rng = RngStream(args.seed, 0)

    notes = []
    if spec.frob2 == 0.0:
        notes.append("degenerate matrix: the quadratic form is constant and every bound holds trivially")

    samples = mc.sample_centered_forms(m, dist, rng, args.samples, threads=args.threads)
    if float(np.abs(samples).max()) == 0.0 and spec.frob2 > 0.0:
        notes.append("all centered samples are exactly zero (constant quadratic form)")
    if args.dump:
        with open(args.dump, "w", encoding="utf-8") as fh:
            fh.writelines(format(v, ".17g") + "\n" for v in samples)

    rows = []
    if args.t_grid is not None:
        suite = mc.run_tail_suite(m, dist, parse_grid(args.t_grid), args.samples,
                                  args.confidence, rng, samples=samples)
        for c in suite.checks:
            rows.append({"at": c.t, "estimate": c.estimate.point, "ci_low": c.estimate.ci_low,
                         "ci_high": c.estimate.ci_high, "bound": c.bound, "pass": c.passed})
        all_passed = suite.all_passed
        kind = "tail"
    else:
        suite = mc.run_mgf_suite(m, dist, parse_grid(args.lambda_grid), args.samples,
                                 args.confidence, rng, samples=samples)
        for c in suite.checks:
            rows.append({"at": c.lam, "estimate": c.estimate.mean, "ci_low": c.estimate.ci_low,
                         "ci_high": c.estimate.ci_high, "bound": c.bound, "pass": c.passed})
        all_passed = suite.all_passed
        kind = "mgf"

    if args.format == "csv":
        _emit(_simulate_csv(rows), args.out)
    else:
        payload = {
            "matrix": args.matrix,
            "dist": dist.label(),
            "kind": kind,
            "samples": args.samples,
            "seed": args.seed,
            "confidence": args.confidence,
            "spec": {
                "c1": spec.c1, "c2": spec.c2, "diagonal_free": spec.diagonal_free,
                "frob2": spec.frob2, "opnorm": spec.opnorm,
                "lambda_max": _json_ready(spec.lambda_max),
            },
            "notes": notes,
            "checks": rows,
            "all_passed": all_passed,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0 if all_passed else 1


def cmd_verify(args) -> int:
    report = verify.run_verification(args.suite, args.seed, threads=args.threads,
                                     mc_samples=args.samples)
    text = verify.report_to_csv(report) if args.format == "csv" else verify.report_to_json(report)
    _emit(text, args.out)
    return 0 if report.all_passed else 1


def cmd_report(args) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise HansonWrightError(f"cannot read report {args.file}: {exc}") from exc
    _emit(verify.render_report_table(payload), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hw",
        description="Hanson-Wright bounds for sub-Gaussian quadratic forms: "
                    "compute them, and verify them against exact oracles and simulation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser("bound", help="resolve constants/norms and evaluate the closed-form bounds")
    p_bound.add_argument("--matrix", required=True, help="matrix file (.json or .csv)")
    p_bound.add_argument("--sigma2", type=float, required=True, help="variance proxy sigma^2")
    p_bound.add_argument("--t", type=float, default=None, help="tail threshold for the tail bound")
    p_bound.add_argument("--lambda", dest="lam", type=float, default=None,
                         help="MGF argument for the MGF bound")
    _add_common(p_bound)
    p_bound.set_defaults(func=cmd_bound)

    p_sim = sub.add_parser("simulate", help="Monte Carlo tails or MGFs vs. the closed-form bounds")
    p_sim.add_argument("--matrix", required=True, help="matrix file (.json or .csv)")
    p_sim.add_argument("--dist", required=True,
                       help="distribution: gaussian:<sigma> | rademacher | uniform:<a>")
    p_sim.add_argument("--samples", type=int, required=True, help="number of Monte Carlo draws")
    p_sim.add_argument("--t-grid", default=None, help="tail thresholds a:b:step")
    p_sim.add_argument("--lambda-grid", default=None, help="MGF arguments a:b:step")
    p_sim.add_argument("--confidence", type=float, default=0.999)
    p_sim.add_argument("--dump", default=None, help="also write the raw centered samples to this file")
    _add_common(p_sim)
    p_sim.set_defaults(func=cmd_simulate)

    p_ver = sub.add_parser("verify", help="run a verification suite and emit a report")
    p_ver.add_argument("--suite", choices=verify.SUITES, default="full")
    p_ver.add_argument("--samples", type=int, default=verify.DEFAULT_MC_SAMPLES,
                       help="Monte Carlo draws per suite cell")
    _add_common(p_ver)
    p_ver.set_defaults(func=cmd_verify)

    p_rep = sub.add_parser("report", help="pretty-print a JSON verification report as a table")
    p_rep.add_argument("file", help="report file produced by `hw verify`")
    p_rep.add_argument("--out", help="write output to this file instead of stdout")
    p_rep.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (HansonWrightError, OverflowError) as exc:
        print(f"hw: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"hw: i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
