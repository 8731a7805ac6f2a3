"""Verification suites: every inequality in the package checked in one run.

Three check categories:

* ``scalar``     -- pure scalar inequalities on dense grids (no randomness).
* ``exact``      -- closed-form Gaussian oracles vs. the bounds, plus norm
                    and eigensolver facts on seeded random matrices.
* ``montecarlo`` -- empirical tails / MGFs of simulated quadratic forms vs.
                    the closed-form bounds, and the sub-Gaussian-vs-Gaussian
                    hollow-form comparison.

Every random object derives from the master seed, and Monte Carlo reductions
are in fixed chunk order, so a report is a pure function of
``(seed, suite, mc_samples)`` -- reports from repeat runs are byte-identical
apart from the timestamp, regardless of thread count.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from datetime import datetime, timezone
from importlib import resources

import numpy as np

from . import __version__, bounds, ensembles, linalg, mc, oracle
from .exceptions import ValidationError
from .subgauss import RngStream, exact_central_square_moment, exact_even_moment, gaussian, rademacher, uniform

SUITES = ("scalar", "exact", "montecarlo", "full")
DEFAULT_MC_SAMPLES = 50_000
CONFIDENCE = 0.999  # soundness failures should indicate bugs, not noise

# substream tags for the suite's independent random objects
_TAG_EXACT = 101
_TAG_MATRICES = 102
_TAG_CELLS = 103
_TAG_COMPARE = 104

_MC_DISTS = (gaussian(1.0), rademacher(), uniform(1.0))
_MC_SIZES = (2, 5, 20, 50)


@dataclass(frozen=True)
class Check:
    id: str
    category: str
    passed: bool
    margin: float
    details: str


@dataclass(frozen=True)
class VerificationReport:
    version: str
    suite: str
    seed: int
    mc_samples: int
    timestamp: str
    checks: tuple
    summary: dict

    @property
    def all_passed(self) -> bool:
        return self.summary["failed"] == 0


def _summary(checks) -> dict:
    passed = sum(1 for c in checks if c.passed)
    return {"total": len(checks), "passed": passed, "failed": len(checks) - passed}


# ---------------------------------------------------------------------------
# scalar suite
# ---------------------------------------------------------------------------


def run_scalar_suite() -> list[Check]:
    checks = []

    # quadratic majorant of -log(1-2x) on [-1/3, 1/3]
    xs = np.linspace(-1.0 / 3.0, 1.0 / 3.0, 100_000)
    gaps = 2.0 * xs + 4.0 * xs * xs + np.log1p(-2.0 * xs)
    min_gap = float(gaps.min())
    checks.append(Check(
        id="scalar/log_inequality", category="scalar",
        passed=min_gap >= -1e-12, margin=min_gap,
        details=f"min of (2x+4x^2)+log(1-2x) over 1e5 grid points, at x={xs[int(gaps.argmin())]:.6g}",
    ))

    # closed-form Chernoff optimizer dominated by the displayed tail exponent
    grid = np.geomspace(1e-3, 1e3, 10)
    worst = math.inf
    worst_at = (0.0, 0.0, 0.0)
    for a in grid:
        for b in grid:
            for t in grid:
                chern = bounds.chernoff_tail_from_mgf(a, b, t)
                stated = math.exp(-min(t * t / (4.0 * a), t * b / 2.0))
                slack = stated + 1e-9 - chern
                if slack < worst:
                    worst, worst_at = slack, (a, b, t)
    checks.append(Check(
        id="scalar/chernoff_dominance", category="scalar",
        passed=worst >= 0.0, margin=worst,
        details=f"1000 log-spaced (a,b,t) triples over 6 decades; tightest at (a,b,t)={worst_at}",
    ))

    families = (gaussian(1.0), gaussian(0.5), rademacher(), uniform(1.0), uniform(2.0))

    worst_rel = math.inf
    worst_id = ""
    for d in families:
        for j in range(1, 21):
            value = exact_even_moment(d, j)
            cap = 2.0 ** j * math.factorial(j) * d.proxy_sigma2 ** j
            rel = (cap * (1.0 + 1e-12) - value) / cap
            if rel < worst_rel:
                worst_rel, worst_id = rel, f"{d.label()} j={j}"
    checks.append(Check(
        id="scalar/even_moment_bound", category="scalar",
        passed=worst_rel >= 0.0, margin=worst_rel,
        details=f"E X^(2j) <= 2^j j! sigma^(2j), j<=20, all families; tightest at {worst_id}",
    ))

    worst_rel = math.inf
    worst_id = ""
    for d in families:
        for k in range(2, 21):
            value = exact_central_square_moment(d, k)
            cap = bounds.central_moment_bound(d.proxy_sigma2, k)
            rel = (cap * (1.0 + 1e-12) - value) / cap
            if rel < worst_rel:
                worst_rel, worst_id = rel, f"{d.label()} k={k}"
    checks.append(Check(
        id="scalar/central_moment_bound", category="scalar",
        passed=worst_rel >= 0.0, margin=worst_rel,
        details=f"E (X^2-EX^2)^k <= cosh(1/2)(2 sigma^2)^k k!, k<=20; tightest at {worst_id}",
    ))

    worst_abs = max(abs(exact_central_square_moment(d, 1)) for d in families)
    checks.append(Check(
        id="scalar/central_first_moment_zero", category="scalar",
        passed=worst_abs <= 1e-12, margin=1e-12 - worst_abs,
        details="k=1 central square moment vanishes for every family",
    ))
    return checks


# ---------------------------------------------------------------------------
# exact suite
# ---------------------------------------------------------------------------


def _random_square(gen, n):
    return 2.0 * gen.random((n, n)) - 1.0


def run_exact_suite(seed: int) -> list[Check]:
    root = RngStream(seed, 0).substream(_TAG_EXACT)
    checks = []

    # chi-square dominance: exact product form vs. the exponential-quadratic
    # bound, closed right endpoint included
    worst_rel = math.inf
    worst_id = ""
    for i in range(100):
        gen = root.substream(i).generator()
        n = 1 + i % 10
        mu = 2.0 * gen.random(n) - 1.0
        hi = 1.0 / (3.0 * float(np.abs(mu).max()))
        diag = np.diag(mu)
        for lam in np.linspace(0.0, hi, 50):
            exact = oracle.exact_gaussian_quadratic_mgf(diag, 1.0, float(lam))
            cap = bounds.chi2_mgf_bound(mu, float(lam))
            rel = (cap * (1.0 + 1e-12) - exact) / cap
            if rel < worst_rel:
                worst_rel, worst_id = rel, f"spectrum {i}, lambda={lam:.6g}"
    checks.append(Check(
        id="exact/chi2_mgf_dominance", category="exact",
        passed=worst_rel >= 0.0, margin=worst_rel,
        details=f"100 spectra x 50 lambdas incl. endpoint; tightest at {worst_id}",
    ))

    worst_rel = math.inf
    worst_id = ""
    for sigma2 in (0.25, 1.0, 4.0):
        for lam in np.linspace(0.0, 1.0 / (4.0 * sigma2), 50):
            exact = oracle.exact_gaussian_centered_square_mgf(sigma2, float(lam))
            cap = bounds.square_mgf_bound(sigma2, float(lam))
            rel = (cap * (1.0 + 1e-12) - exact) / cap
            if rel < worst_rel:
                worst_rel, worst_id = rel, f"sigma2={sigma2}, lambda={lam:.6g}"
    checks.append(Check(
        id="exact/square_mgf_dominance", category="exact",
        passed=worst_rel >= 0.0, margin=worst_rel,
        details=f"sigma2 in (0.25, 1, 4) x 50 lambdas incl. endpoint; tightest at {worst_id}",
    ))

    # norm facts, eigen invariants, and the tail bound's domain arithmetic
    # on 1000 seeded random matrices
    sizes = (2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 25, 30)
    m_hollow_op = math.inf
    m_frob = math.inf
    m_op = math.inf
    m_pyth = math.inf
    m_side = math.inf
    m_eig = math.inf
    for i in range(1000):
        gen = root.substream(10_000 + i).generator()
        n = sizes[i % len(sizes)]
        m = _random_square(gen, n)
        a = linalg.symmetrize(m)
        ring = linalg.hollow(a)
        op_m = linalg.operator_norm_general(m)
        op_a = linalg.operator_norm(a)
        op_ring = linalg.operator_norm(ring)
        f_m = linalg.frobenius_norm(m)
        f_a = linalg.frobenius_norm(a)
        f_ring = linalg.frobenius_norm(ring)
        f_diag = linalg.frobenius_norm(linalg.diagonal_part(a))

        m_hollow_op = min(m_hollow_op, 2.0 * op_a + 1e-10 - op_ring)
        m_frob = min(m_frob, f_m + 1e-10 - f_a)
        m_op = min(m_op, op_m + 1e-10 - op_a)
        m_pyth = min(m_pyth, 1e-10 - abs(f_a ** 2 - f_ring ** 2 - f_diag ** 2))

        # domain arithmetic: lambda just below 1/(12 sigma^2 ||M||_op) keeps
        # both per-part side conditions strict (sigma^2 = 1 wlog by scaling)
        lam = 0.999999 / (12.0 * op_m)
        cond_diag = 4.0 * (2.0 * lam) * float(np.abs(np.diag(a)).max())
        cond_op = 3.0 * (2.0 * lam) * op_ring
        m_side = min(m_side, 1.0 - max(cond_diag, cond_op))

        if i % 50 == 0:
            dec = linalg.eigen_decompose(a)
            recon = float(np.abs(dec.reconstruct() - a).max())
            ortho = float(np.abs(dec.rotation.T @ dec.rotation - np.eye(n)).max())
            m_eig = min(m_eig, 1e-10 - max(recon, ortho))

    checks.append(Check(
        id="exact/norm_hollow_op_factor2", category="exact", passed=m_hollow_op >= 0.0,
        margin=m_hollow_op, details="||hollow(A)||_op <= 2 ||A||_op on 1000 random matrices",
    ))
    checks.append(Check(
        id="exact/norm_frobenius_contraction", category="exact", passed=m_frob >= 0.0,
        margin=m_frob, details="||A||_F <= ||M||_F on 1000 random matrices",
    ))
    checks.append(Check(
        id="exact/norm_operator_contraction", category="exact", passed=m_op >= 0.0,
        margin=m_op, details="||A||_op <= ||M||_op on 1000 random matrices",
    ))
    checks.append(Check(
        id="exact/norm_pythagoras", category="exact", passed=m_pyth >= 0.0,
        margin=m_pyth, details="||A||_F^2 = ||hollow||_F^2 + ||diag||_F^2 within 1e-10",
    ))
    checks.append(Check(
        id="exact/general_domain_side_conditions", category="exact", passed=m_side > 0.0,
        margin=m_side,
        details="lambda < 1/(12 s^2 ||M||_op) implies 8 lambda max|a_ii| s^2 < 1 and 6 lambda ||hollow||_op s^2 < 1",
    ))
    checks.append(Check(
        id="exact/eigen_invariants", category="exact", passed=m_eig >= 0.0,
        margin=m_eig, details="reconstruction and orthogonality within 1e-10 (20 sampled matrices)",
    ))

    # hollow spectra sum to zero, so the chi-square bound loses its linear term
    worst_lin = 0.0
    worst_rel = math.inf
    for i in range(50):
        gen = root.substream(20_000 + i).generator()
        n = 2 + i % 19
        ring = linalg.hollow(linalg.symmetrize(_random_square(gen, n)))
        mu = linalg.eigen_decompose(ring).eigenvalues
        lam = 1.0 / (3.0 * float(np.abs(mu).max()))
        worst_lin = max(worst_lin, abs(lam * math.fsum(mu.tolist())))
        cap = bounds.chi2_mgf_bound(mu, lam)
        reduced = math.exp(2.0 * lam * lam * float(np.sum(mu * mu)))
        exact = oracle.exact_gaussian_quadratic_mgf(ring, 1.0, lam)
        worst_rel = min(worst_rel, (min(cap, reduced) * (1.0 + 1e-9) - exact) / exact)
    checks.append(Check(
        id="exact/trace_kill", category="exact",
        passed=worst_lin <= 1e-12 and worst_rel >= 0.0, margin=1e-12 - worst_lin,
        details="50 hollow matrices: |lambda sum(mu)| <= 1e-12 and oracle <= exp(2 lambda^2 sum mu^2)",
    ))
    return checks


# ---------------------------------------------------------------------------
# montecarlo suite
# ---------------------------------------------------------------------------


def tail_grid_for(spec: bounds.BoundSpec, points: int = 10) -> np.ndarray:
    """t grid spanning tail-bound values from 1.9 down to 1e-3 (fixed grid
    for the degenerate constant form)."""
    if spec.frob2 == 0.0:
        return np.linspace(0.0, 4.5, points)
    values = np.geomspace(1.9, 1e-3, points)
    return np.array([bounds.invert_tail_bound(spec, v) for v in values])


def lambda_grid_for(spec: bounds.BoundSpec, points: int = 8) -> np.ndarray:
    """lambda grid on [0, lambda_max/2]; exp(lambda Y) gets heavy-tailed near
    the domain boundary, where the exact oracle takes over instead."""
    hi = 1.0 if math.isinf(spec.lambda_max) else 0.5 * spec.lambda_max
    return np.linspace(0.0, hi, points)


def run_montecarlo_suite(seed: int, n_samples: int = DEFAULT_MC_SAMPLES, threads: int = 1) -> list[Check]:
    root = RngStream(seed, 0)
    matrices = ensembles.build(ensembles.ENSEMBLE_NAMES, _MC_SIZES, root.substream(_TAG_MATRICES))
    checks = []
    cell = 0
    for d in _MC_DISTS:
        for label, m in matrices:
            spec = bounds.make_bound_spec(m, d.proxy_sigma2)
            cell_rng = root.substream(_TAG_CELLS).substream(cell)
            samples = mc.sample_centered_forms(m, d, cell_rng, n_samples, threads=threads)

            tail = mc.run_tail_suite(m, d, tail_grid_for(spec), n_samples, CONFIDENCE,
                                     cell_rng, samples=samples)
            t_margin = min(c.bound - c.estimate.ci_low for c in tail.checks)
            checks.append(Check(
                id=f"mc/tail/{d.label()}/{label}", category="montecarlo",
                passed=all(c.passed for c in tail.checks), margin=t_margin,
                details=f"N={n_samples}, 10-point t grid, CP {CONFIDENCE:.1%} lower bound vs tail bound",
            ))

            mgf = mc.run_mgf_suite(m, d, lambda_grid_for(spec), n_samples, CONFIDENCE,
                                   cell_rng, samples=samples)
            m_margin = min(c.bound - c.estimate.ci_low for c in mgf.checks)
            checks.append(Check(
                id=f"mc/mgf/{d.label()}/{label}", category="montecarlo",
                passed=all(c.passed for c in mgf.checks), margin=m_margin,
                details=f"N={n_samples}, 8-point lambda grid, bootstrap {CONFIDENCE:.1%} lower bound vs MGF bound",
            ))

            checks.append(Check(
                id=f"mc/mean/{d.label()}/{label}", category="montecarlo",
                passed=tail.mean_ok, margin=tail.mean_tolerance - abs(tail.sample_mean),
                details=f"|centered sample mean| = {abs(tail.sample_mean):.3g} vs 5*sqrt(var/N) = {tail.mean_tolerance:.3g}",
            ))
            cell += 1

    # comparison endpoints: bounded-entry hollow forms vs. exact Gaussian MGF.
    # The four lambdas share one sample set and one bootstrap resample, which
    # is exact and four times cheaper than per-lambda comparisons.
    comp_root = root.substream(_TAG_COMPARE)
    comp_cell = 0
    for d in (rademacher(), uniform(1.0)):
        for i in range(20):
            gen = comp_root.substream(1000 + i).generator()
            n = 3 + i % 18
            ring = linalg.hollow(linalg.symmetrize(_random_square(gen, n)))
            divergence = 1.0 / (2.0 * d.proxy_sigma2 * linalg.operator_norm(ring))
            lams = divergence * np.array((0.125, 0.25, 0.375, 0.5))
            cell_rng = comp_root.substream(comp_cell)
            samples = mc.sample_centered_forms(ring, d, cell_rng, n_samples, threads=threads)
            ests = mc.estimate_mgf_grid(samples, lams, CONFIDENCE, rng=cell_rng.substream(mc._BOOT_TAG))
            margin = math.inf
            ok = True
            for lam, est in zip(lams, ests):
                exact = oracle.exact_gaussian_quadratic_mgf(ring, d.proxy_sigma2, float(lam))
                ok = ok and est.ci_low <= exact * (1.0 + mc.EXACT_SIDE_SLACK)
                margin = min(margin, exact * (1.0 + mc.EXACT_SIDE_SLACK) - est.ci_low)
            checks.append(Check(
                id=f"mc/compare/{d.label()}/hollow{i:02d}_n{n}", category="montecarlo",
                passed=ok, margin=margin,
                details=f"N={n_samples}, 4 lambdas up to half the oracle divergence point",
            ))
            comp_cell += 1
    return checks


# ---------------------------------------------------------------------------
# orchestration and serialization
# ---------------------------------------------------------------------------


def run_verification(suite: str, seed: int, *, threads: int = 1,
                     mc_samples: int = DEFAULT_MC_SAMPLES) -> VerificationReport:
    if suite not in SUITES:
        raise ValidationError(f"unknown suite {suite!r}, expected one of {SUITES}")
    checks = []
    if suite in ("scalar", "full"):
        checks.extend(run_scalar_suite())
    if suite in ("exact", "full"):
        checks.extend(run_exact_suite(seed))
    if suite in ("montecarlo", "full"):
        checks.extend(run_montecarlo_suite(seed, mc_samples, threads))
    return VerificationReport(
        version=__version__,
        suite=suite,
        seed=seed,
        mc_samples=mc_samples if suite in ("montecarlo", "full") else 0,
        timestamp=datetime.now(timezone.utc).isoformat(),
        checks=tuple(checks),
        summary=_summary(checks),
    )


def report_to_dict(report: VerificationReport) -> dict:
    return {
        "version": report.version,
        "suite": report.suite,
        "seed": report.seed,
        "mc_samples": report.mc_samples,
        "timestamp": report.timestamp,
        "checks": [
            {"id": c.id, "category": c.category, "pass": c.passed, "margin": c.margin, "details": c.details}
            for c in report.checks
        ],
        "summary": dict(report.summary),
    }


def report_to_json(report: VerificationReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def report_to_csv(report: VerificationReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "category", "pass", "margin", "details"])
    for c in report.checks:
        writer.writerow([c.id, c.category, str(c.passed).lower(), format(c.margin, ".17g"), c.details])
    return buf.getvalue()


def schema_text() -> str:
    return resources.files("hanson_wright").joinpath("schemas/verification_report.schema.json").read_text()


def render_report_table(payload: dict) -> str:
    """Plain-text table for `hw report`."""
    rows = [(c["id"], c["category"], "pass" if c["pass"] else "FAIL", f'{c["margin"]:.6g}')
            for c in payload.get("checks", [])]
    headers = ("check", "category", "result", "margin")
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)),
        "  ".join("-" * w for w in widths),
    ]
    lines.extend("  ".join(r[i].ljust(widths[i]) for i in range(4)) for r in rows)
    s = payload.get("summary", {})
    lines.append("")
    lines.append(f'total {s.get("total", 0)}  passed {s.get("passed", 0)}  failed {s.get("failed", 0)}')
    return "\n".join(lines) + "\n"
