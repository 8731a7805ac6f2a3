"""Monte Carlo engine for centered quadratic forms.

Sampling is chunked (``CHUNK_SIZE`` draws per work unit) and each chunk owns
a substream derived from the caller's stream by chunk index, with results
reduced in chunk order.  Estimates are therefore bitwise identical no matter
how many worker threads execute the chunks.

Tail estimates carry exact (Clopper-Pearson) binomial intervals.  MGF
estimates carry nonparametric bootstrap intervals (the summand exp(lambda Y)
is skewed, so CLT intervals undercover); resample indices are drawn from a
dedicated stream so they never perturb the sample streams.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.stats import beta as _beta

from . import bounds, linalg, oracle
from .exceptions import ValidationError
from .subgauss import RngStream, SubGaussianDist, sample

CHUNK_SIZE = 65_536
BOOTSTRAP_RESAMPLES = 200
#: soundness checks compare statistical lower bounds against exact values
#: with this much multiplicative slack on the exact side
EXACT_SIDE_SLACK = 1e-9
#: substream tag reserved for bootstrap index draws (chunk tags are 0..n_chunks-1)
_BOOT_TAG = 0x0B007

#: fixed fallback stream for :func:`estimate_mgf` when no stream is supplied;
#: resampling indices are independent of the data, so a fixed default keeps
#: repeated calls deterministic
_DEFAULT_BOOT_STREAM = RngStream(seed=0x48575F42, stream_id=0)


@dataclass(frozen=True)
class TailEstimate:
    """Exceedance proportion of |sample| >= t with an exact binomial interval."""

    t: float
    n_samples: int
    exceed_count: int
    point: float
    ci_low: float
    ci_high: float
    confidence: float


@dataclass(frozen=True)
class MgfEstimate:
    """Plug-in mean of exp(lambda * sample) with a bootstrap interval."""

    lam: float
    n_samples: int
    mean: float
    ci_low: float
    ci_high: float
    confidence: float


@dataclass(frozen=True)
class HollowComparison:
    """Empirical sub-Gaussian hollow-form MGF vs. the exact Gaussian value."""

    empirical: MgfEstimate
    gaussian_exact: float
    passed: bool


@dataclass(frozen=True)
class TailCheck:
    t: float
    estimate: TailEstimate
    bound: float
    passed: bool


@dataclass(frozen=True)
class MgfCheck:
    lam: float
    estimate: MgfEstimate
    bound: float
    passed: bool


@dataclass(frozen=True)
class TailSuiteResult:
    checks: tuple
    n_samples: int
    sample_mean: float
    mean_tolerance: float
    mean_ok: bool

    @property
    def all_passed(self) -> bool:
        return self.mean_ok and all(c.passed for c in self.checks)


@dataclass(frozen=True)
class MgfSuiteResult:
    checks: tuple
    n_samples: int

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def clopper_pearson(k: int, n: int, confidence: float):
    """Two-sided exact binomial interval for k successes in n trials."""
    if not 0 < confidence < 1:
        raise ValidationError(f"confidence must lie in (0, 1), got {confidence!r}")
    if not (n >= 1 and 0 <= k <= n):
        raise ValidationError(f"need 0 <= k <= n with n >= 1, got k={k}, n={n}")
    alpha = 1.0 - confidence
    lo = 0.0 if k == 0 else float(_beta.ppf(alpha / 2.0, k, n - k + 1))
    hi = 1.0 if k == n else float(_beta.ppf(1.0 - alpha / 2.0, k + 1, n - k))
    return lo, hi


def _chunk_layout(n_samples: int, chunk_size: int = CHUNK_SIZE):
    n_chunks = (n_samples + chunk_size - 1) // chunk_size
    return [(i, min(chunk_size, n_samples - i * chunk_size)) for i in range(n_chunks)]


def _map_in_order(fn, items, threads: int):
    if threads <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def sample_centered_forms(m, d: SubGaussianDist, rng: RngStream, n_samples: int, *, threads: int = 1) -> np.ndarray:
    """``n_samples`` iid draws of ``X^T M X - (E X^2) trace(M)``.

    Deterministic given the stream, independent of ``threads``.
    """
    m = linalg.as_matrix(m)
    if n_samples < 1:
        raise ValidationError("n_samples must be at least 1")
    n = m.shape[0]
    center = oracle.exact_quadratic_mean(m, d)

    def one_chunk(layout):
        index, count = layout
        x = sample(d, rng.substream(index), count * n).reshape(count, n)
        return (x @ m * x).sum(axis=1) - center

    chunks = _map_in_order(one_chunk, _chunk_layout(n_samples), threads)
    return np.concatenate(chunks) if len(chunks) > 1 else chunks[0]


def estimate_tail(samples, t: float, confidence: float) -> TailEstimate:
    """Two-sided exceedance estimate ``#{|sample| >= t} / N`` with CP interval."""
    samples = np.asarray(samples, dtype=np.float64)
    if samples.ndim != 1 or samples.size == 0:
        raise ValidationError("samples must be a non-empty 1-d vector")
    if not t >= 0:
        raise ValidationError(f"t must be nonnegative, got {t!r}")
    k = int(np.count_nonzero(np.abs(samples) >= t))
    return _tail_from_count(k, samples.size, t, confidence)


def _tail_from_count(k: int, n: int, t: float, confidence: float) -> TailEstimate:
    lo, hi = clopper_pearson(k, n, confidence)
    return TailEstimate(
        t=float(t), n_samples=n, exceed_count=k, point=k / n,
        ci_low=lo, ci_high=hi, confidence=confidence,
    )


def estimate_mgf(samples, lam: float, confidence: float, *, rng: RngStream | None = None,
                 n_boot: int = BOOTSTRAP_RESAMPLES) -> MgfEstimate:
    """Plug-in MGF estimate at one lambda; see :func:`estimate_mgf_grid`."""
    return estimate_mgf_grid(samples, [lam], confidence, rng=rng, n_boot=n_boot)[0]


def estimate_mgf_grid(samples, lams, confidence: float, *, rng: RngStream | None = None,
                      n_boot: int = BOOTSTRAP_RESAMPLES) -> list[MgfEstimate]:
    """MGF estimates on a lambda grid sharing one set of bootstrap resamples.

    The resample is of the underlying samples, so reusing it across the grid
    is exact, and much cheaper than resampling per lambda.
    """
    samples = np.asarray(samples, dtype=np.float64)
    if samples.ndim != 1 or samples.size == 0:
        raise ValidationError("samples must be a non-empty 1-d vector")
    if not 0 < confidence < 1:
        raise ValidationError(f"confidence must lie in (0, 1), got {confidence!r}")
    lams = np.atleast_1d(np.asarray(lams, dtype=np.float64))
    if lams.ndim != 1 or lams.size == 0 or not np.isfinite(lams).all():
        raise ValidationError("lambda grid must be a non-empty finite 1-d vector")
    n = samples.size
    peak = float(np.abs(samples).max())
    for lam in lams:
        if abs(lam) * peak > 700.0:
            raise OverflowError(
                f"exp(lambda * sample) overflows at lambda={lam:g} (max |sample| = {peak:g}); "
                "use a smaller lambda"
            )
    values = np.exp(np.outer(lams, samples))  # (n_lams, n)
    means = values.mean(axis=1)

    gen = (rng if rng is not None else _DEFAULT_BOOT_STREAM).generator()
    boot = np.empty((n_boot, lams.size))
    for b in range(n_boot):
        counts = np.bincount(gen.integers(0, n, n), minlength=n).astype(np.float64)
        boot[b] = values @ counts / n
    alpha = 1.0 - confidence
    lo = np.quantile(boot, alpha / 2.0, axis=0)
    hi = np.quantile(boot, 1.0 - alpha / 2.0, axis=0)

    out = []
    for i, lam in enumerate(lams):
        mean = float(means[i])
        out.append(MgfEstimate(
            lam=float(lam), n_samples=n, mean=mean,
            # quantile clamping: the invariant ci_low <= mean <= ci_high must
            # hold even in the rare replicate sets that miss the sample mean
            ci_low=min(float(lo[i]), mean), ci_high=max(float(hi[i]), mean),
            confidence=confidence,
        ))
    return out


def compare_hollow_mgf(a_hollow, d: SubGaussianDist, sigma2: float, lam: float,
                       rng: RngStream, n_samples: int, *, confidence: float = 0.999,
                       threads: int = 1) -> HollowComparison:
    """Check that the empirical sub-Gaussian hollow-form MGF is dominated by
    the exact Gaussian value ``prod_i (1 - 2 lambda mu_i)^(-1/2)``.

    Statistical slack sits entirely on the empirical side: the comparison
    passes iff the bootstrap lower bound is <= exact * (1 + 1e-9).
    """
    a = linalg.require_symmetric(a_hollow)
    if not (np.diag(a) == 0.0).all():
        raise ValidationError("matrix must have an exactly zero diagonal (apply hollow() first)")
    if d.proxy_sigma2 != sigma2:
        raise ValidationError(
            f"distribution proxy {d.proxy_sigma2!r} does not match sigma2={sigma2!r}"
        )
    exact = oracle.exact_gaussian_quadratic_mgf(a, sigma2, lam)
    samples = sample_centered_forms(a, d, rng, n_samples, threads=threads)
    est = estimate_mgf(samples, lam, confidence, rng=rng.substream(_BOOT_TAG))
    return HollowComparison(
        empirical=est, gaussian_exact=exact,
        passed=est.ci_low <= exact * (1.0 + EXACT_SIDE_SLACK),
    )


def run_tail_suite(m, d: SubGaussianDist, t_grid, n_samples: int, confidence: float,
                   rng: RngStream, *, threads: int = 1, samples=None) -> TailSuiteResult:
    """Empirical two-sided tails vs. the closed-form tail bound on a t grid.

    Streams chunkwise (exceedance counters only) unless ``samples`` is
    supplied, in which case those draws are reused.  A check passes iff the
    CP lower bound does not exceed the tail bound (bounds above 1 pass
    automatically since ci_low <= 1).
    """
    spec = bounds.make_bound_spec(m, d.proxy_sigma2)
    t_arr = np.asarray(t_grid, dtype=np.float64)
    if t_arr.ndim != 1 or t_arr.size == 0 or not (np.isfinite(t_arr).all() and (t_arr >= 0).all()):
        raise ValidationError("t_grid must be a non-empty vector of nonnegative reals")

    if samples is not None:
        samples = np.asarray(samples, dtype=np.float64)
        if samples.size != n_samples:
            raise ValidationError("supplied samples do not match n_samples")
        abs_s = np.abs(samples)
        counts = [int(np.count_nonzero(abs_s >= t)) for t in t_arr]
        chunk_stats = [(np.array(counts, dtype=np.int64), float(samples.sum()), float((samples * samples).sum()))]
    else:
        mat = linalg.as_matrix(m)
        n = mat.shape[0]
        center = oracle.exact_quadratic_mean(mat, d)

        def one_chunk(layout):
            index, count = layout
            x = sample(d, rng.substream(index), count * n).reshape(count, n)
            y = (x @ mat * x).sum(axis=1) - center
            abs_y = np.abs(y)
            return (
                np.array([np.count_nonzero(abs_y >= t) for t in t_arr], dtype=np.int64),
                float(y.sum()),
                float((y * y).sum()),
            )

        chunk_stats = _map_in_order(one_chunk, _chunk_layout(n_samples), threads)

    exceed = np.sum([cs[0] for cs in chunk_stats], axis=0)
    mean = math.fsum(cs[1] for cs in chunk_stats) / n_samples
    second = math.fsum(cs[2] for cs in chunk_stats) / n_samples
    variance = max(second - mean * mean, 0.0)
    # centering uses compensated summation while bulk sampling reduces
    # pairwise, so constant forms leave O(n eps max|m|) float dust; the
    # statistical tolerance gets a deterministic floor for that case
    mat = linalg.as_matrix(m)
    roundoff = 1e-13 * (1.0 + mat.shape[0] * float(np.abs(mat).max()))
    mean_tol = 5.0 * math.sqrt(variance / n_samples) + roundoff

    checks = []
    for t, k in zip(t_arr, exceed):
        est = _tail_from_count(int(k), n_samples, float(t), confidence)
        bound = bounds.hw_tail_bound(spec, float(t))
        checks.append(TailCheck(t=float(t), estimate=est, bound=bound, passed=est.ci_low <= bound))
    return TailSuiteResult(
        checks=tuple(checks), n_samples=n_samples,
        sample_mean=mean, mean_tolerance=mean_tol, mean_ok=abs(mean) <= mean_tol,
    )


def run_mgf_suite(m, d: SubGaussianDist, lambda_grid, n_samples: int, confidence: float,
                  rng: RngStream, *, threads: int = 1, samples=None) -> MgfSuiteResult:
    """Empirical MGF vs. ``exp(c1 lambda^2 sigma^4 ||M||_F^2)`` on a lambda grid.

    The per-sample values are held for the bootstrap, so this path retains
    one float per draw while it runs.
    """
    spec = bounds.make_bound_spec(m, d.proxy_sigma2)
    lam_arr = np.asarray(lambda_grid, dtype=np.float64)
    if lam_arr.ndim != 1 or lam_arr.size == 0:
        raise ValidationError("lambda_grid must be a non-empty vector")
    for lam in lam_arr:
        if not spec.lambda_domain().contains(float(lam)):
            raise ValidationError(f"lambda={lam:g} outside the MGF bound domain {spec.lambda_domain()}")
    if samples is None:
        samples = sample_centered_forms(m, d, rng, n_samples, threads=threads)
    else:
        samples = np.asarray(samples, dtype=np.float64)
        if samples.size != n_samples:
            raise ValidationError("supplied samples do not match n_samples")
    ests = estimate_mgf_grid(samples, lam_arr, confidence, rng=rng.substream(_BOOT_TAG))
    checks = []
    for lam, est in zip(lam_arr, ests):
        bound = bounds.hw_mgf_bound(spec, float(lam))
        checks.append(MgfCheck(lam=float(lam), estimate=est, bound=bound, passed=est.ci_low <= bound))
    return MgfSuiteResult(checks=tuple(checks), n_samples=n_samples)
