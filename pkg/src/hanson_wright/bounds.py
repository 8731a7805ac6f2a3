"""Closed-form concentration bounds for sub-Gaussian quadratic forms.

For a vector X of n iid mean-zero sigma^2-sub-Gaussian entries and a square
matrix M, the centered quadratic form ``Y = X^T M X - E[X^T M X]`` obeys

    MGF bound:   E exp(lambda Y) <= exp(c1 lambda^2 sigma^4 ||M||_F^2)
                 for lambda in [0, 1 / (3 c2 ||M||_op sigma^2)),
    tail bound:  P(|Y| >= t) <= 2 exp(-min(t^2 / (4 c1 sigma^4 ||M||_F^2),
                                           t / (6 c2 sigma^2 ||M||_op))),

with the sharp constants (c1, c2) = (2, 1) when M is diagonal-free (all
diagonal entries exactly zero) and (20, 4) otherwise.  The general-regime
constants come from splitting A = (M + M^T)/2 into its diagonal part and its
hollow part, bounding each MGF separately, and recombining by Cauchy-Schwarz;
the two scalar ingredients of those per-part bounds
(:func:`log_inequality_gap` and :func:`central_moment_bound`) and the
chi-square / squared-variable MGF bounds themselves
(:func:`chi2_mgf_bound`, :func:`square_mgf_bound`) are exposed so each link
of the chain can be verified on its own.

Norm bookkeeping: the per-part bounds are naturally stated in norms of A,
and ||A||_F <= ||M||_F, ||A||_op <= ||M||_op (triangle inequality for the
symmetrization), so quoting the final constants in M-norms is valid, merely
a little looser for asymmetric M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .exceptions import DomainError, ValidationError

#: relative margin by which the Chernoff optimizer stays inside an open
#: right endpoint instead of evaluating a limit there
CHERNOFF_ENDPOINT_MARGIN = 1e-9


@dataclass(frozen=True)
class LambdaDomain:
    """Admissible lambda interval ``[0, hi)`` or ``[0, hi]``."""

    lo: float
    hi: float
    hi_inclusive: bool

    def contains(self, lam: float) -> bool:
        if not (math.isfinite(lam) and lam >= self.lo):
            return False
        return lam <= self.hi if self.hi_inclusive else lam < self.hi

    def __str__(self) -> str:
        right = "]" if self.hi_inclusive else ")"
        return f"[{self.lo:g}, {self.hi:g}{right}"


def _require_in_domain(lam: float, domain: LambdaDomain, what: str) -> None:
    if not domain.contains(lam):
        raise DomainError(
            f"lambda={lam:g} outside the {what} domain {domain}"
            + ("" if domain.hi_inclusive else f" (right endpoint lambda_max={domain.hi:g} is excluded)"),
            limit=domain.hi,
        )


@dataclass(frozen=True)
class BoundSpec:
    """Resolved constants and norms for one (M, sigma^2) instance.

    ``lambda_max = 1 / (3 c2 opnorm sigma2)`` (infinite when opnorm == 0,
    i.e. the zero matrix, whose quadratic form is constant).
    """

    c1: float
    c2: float
    diagonal_free: bool
    sigma2: float
    frob2: float
    opnorm: float
    lambda_max: float

    def __post_init__(self):
        expect = (2.0, 1.0) if self.diagonal_free else (20.0, 4.0)
        if (self.c1, self.c2) != expect:
            raise ValidationError(f"constants {(self.c1, self.c2)} do not match diagonal_free={self.diagonal_free}")
        if self.opnorm > 0:
            want = 1.0 / (3.0 * self.c2 * self.opnorm * self.sigma2)
            if not math.isclose(self.lambda_max, want, rel_tol=1e-12):
                raise ValidationError("lambda_max inconsistent with the stored norms")
        elif not math.isinf(self.lambda_max):
            raise ValidationError("zero operator norm must give an unbounded lambda domain")

    def lambda_domain(self) -> LambdaDomain:
        return LambdaDomain(0.0, self.lambda_max, hi_inclusive=False)


def make_bound_spec(m, sigma2: float) -> BoundSpec:
    """Assemble the BoundSpec for a matrix and variance proxy.

    The constant regime is selected by an exact zero test on the diagonal:
    near-zero diagonals legitimately take the general constants.
    """
    m = linalg.as_matrix(m)
    if not (sigma2 > 0 and math.isfinite(sigma2)):
        raise ValidationError("sigma2 must be positive and finite")
    diagonal_free = bool((np.diag(m) == 0.0).all())
    c1, c2 = (2.0, 1.0) if diagonal_free else (20.0, 4.0)
    frob2 = linalg.frobenius_norm_squared(m)
    opnorm = linalg.operator_norm_general(m)
    lambda_max = math.inf if opnorm == 0.0 else 1.0 / (3.0 * c2 * opnorm * sigma2)
    return BoundSpec(
        c1=c1,
        c2=c2,
        diagonal_free=diagonal_free,
        sigma2=float(sigma2),
        frob2=frob2,
        opnorm=opnorm,
        lambda_max=lambda_max,
    )


def hw_mgf_bound(spec: BoundSpec, lam: float) -> float:
    """``exp(c1 lambda^2 sigma^4 ||M||_F^2)`` on ``[0, lambda_max)``."""
    _require_in_domain(lam, spec.lambda_domain(), "quadratic-form MGF bound")
    return math.exp(spec.c1 * lam * lam * spec.sigma2 ** 2 * spec.frob2)


def hw_tail_bound(spec: BoundSpec, t: float) -> float:
    """Two-sided tail bound ``2 exp(-(t^2/(4 c1 s^4 F^2)  ^  t/(6 c2 s^2 op)))``.

    Degenerate case: frob2 == 0 means the form is constant, so the bound is
    2 at t = 0 and 0 for t > 0 (by convention, not an error).
    """
    if not (t >= 0 and math.isfinite(t)):
        raise DomainError(f"t must be nonnegative and finite, got {t!r}", limit=0.0)
    if spec.frob2 == 0.0:
        return 2.0 if t == 0.0 else 0.0
    gauss_term = t * t / (4.0 * spec.c1 * spec.sigma2 ** 2 * spec.frob2)
    exp_term = t / (6.0 * spec.c2 * spec.sigma2 * spec.opnorm)
    return 2.0 * math.exp(-min(gauss_term, exp_term))


def invert_tail_bound(spec: BoundSpec, bound_value: float) -> float:
    """Smallest t with ``hw_tail_bound(spec, t) <= bound_value`` (0 < value <= 2).

    Both exponent branches are increasing in t, so t is the larger of the two
    single-branch inversions.  Requires frob2 > 0.
    """
    if not (0.0 < bound_value <= 2.0):
        raise DomainError(f"bound value must lie in (0, 2], got {bound_value!r}", limit=2.0)
    if spec.frob2 == 0.0:
        raise ValidationError("degenerate spec (frob2 == 0): tail bound is constant, nothing to invert")
    exponent = math.log(2.0 / bound_value)
    t_gauss = math.sqrt(4.0 * spec.c1 * spec.sigma2 ** 2 * spec.frob2 * exponent)
    t_exp = 6.0 * spec.c2 * spec.sigma2 * spec.opnorm * exponent
    return max(t_gauss, t_exp)


def chi2_mgf_bound(mu, lam: float) -> float:
    """Bound on ``E exp(lambda sum mu_i Z_i^2)`` for standard-normal Z:
    ``exp(sum_i lambda mu_i + 2 lambda^2 mu_i^2)`` on the closed interval
    ``[0, 1/(3 max|mu_i|)]``."""
    mu = np.asarray(mu, dtype=np.float64)
    if mu.ndim != 1 or mu.size == 0 or not np.isfinite(mu).all():
        raise ValidationError("mu must be a non-empty finite 1-d spectrum")
    max_abs = float(np.abs(mu).max())
    hi = math.inf if max_abs == 0.0 else 1.0 / (3.0 * max_abs)
    _require_in_domain(lam, LambdaDomain(0.0, hi, hi_inclusive=True), "chi-square MGF bound")
    return math.exp(math.fsum((lam * mu + 2.0 * lam * lam * mu * mu).tolist()))


def square_mgf_bound(sigma2: float, lam: float) -> float:
    """Bound on ``E exp(lambda (X^2 - E X^2))`` for sigma^2-sub-Gaussian X:
    ``exp(10 lambda^2 sigma^4)`` on the closed interval ``[0, 1/(4 sigma^2)]``."""
    if not (sigma2 > 0 and math.isfinite(sigma2)):
        raise ValidationError("sigma2 must be positive and finite")
    domain = LambdaDomain(0.0, 1.0 / (4.0 * sigma2), hi_inclusive=True)
    _require_in_domain(lam, domain, "centered-square MGF bound")
    return math.exp(10.0 * lam * lam * sigma2 * sigma2)


def log_inequality_gap(x: float) -> float:
    """``(2x + 4x^2) - (-log(1 - 2x))`` on ``|x| <= 1/3``; nonnegative up to
    rounding (contract: >= -1e-12) because the quadratic majorizes -log(1-2x)
    on that interval."""
    if not (abs(x) <= 1.0 / 3.0):
        raise DomainError(f"x={x!r} outside [-1/3, 1/3]", limit=1.0 / 3.0)
    return 2.0 * x + 4.0 * x * x + math.log1p(-2.0 * x)


def central_moment_bound(sigma2: float, k: int) -> float:
    """``cosh(1/2) (2 sigma^2)^k k!``, a bound on ``E (X^2 - E X^2)^k`` for
    sigma^2-sub-Gaussian X, k >= 2."""
    if not (sigma2 > 0 and math.isfinite(sigma2)):
        raise ValidationError("sigma2 must be positive and finite")
    if k < 2:
        raise ValidationError("k must be at least 2")
    value = math.cosh(0.5) * (2.0 * sigma2) ** k * math.factorial(k)
    if math.isinf(value):
        raise OverflowError(f"central moment bound overflows float range at k={k}")
    return value


def combine_cauchy_schwarz(diag_exponent: float, offdiag_exponent: float) -> float:
    """Exponent of the Cauchy-Schwarz combination of two MGF bounds.

    Given ``E exp(2 lambda Y_d) <= exp(e_d)`` and ``E exp(2 lambda Y_o) <=
    exp(e_o)``, Cauchy-Schwarz yields ``E exp(lambda (Y_d + Y_o)) <=
    exp((e_d + e_o) / 2)``.
    """
    for name, e in (("diag_exponent", diag_exponent), ("offdiag_exponent", offdiag_exponent)):
        if not (e >= 0 and math.isfinite(e)):
            raise ValidationError(f"{name} must be finite and nonnegative, got {e!r}")
    return (diag_exponent + offdiag_exponent) / 2.0


def chernoff_tail_from_mgf(a: float, b: float, t: float) -> float:
    """One-sided Chernoff bound ``inf_{lambda in [0, b)} exp(-lambda t + a lambda^2)``.

    ``a`` is the MGF-bound curvature (c1 sigma^4 ||M||_F^2) and ``b`` the open
    right endpoint of its validity interval.  Closed form: the optimizer is
    ``lambda* = min(t / (2a), b (1 - eps))`` with a relative margin eps that
    keeps lambda* strictly inside the open interval.  Always within 1e-9 of
    ``exp(-min(t^2/(4a), t b/2))``, which is the displayed tail exponent.
    """
    if not (a > 0 and math.isfinite(a)):
        raise ValidationError(f"a must be positive and finite, got {a!r}")
    if not b > 0:
        raise ValidationError(f"b must be positive, got {b!r}")
    if not (t >= 0 and math.isfinite(t)):
        raise DomainError(f"t must be nonnegative and finite, got {t!r}", limit=0.0)
    lam = t / (2.0 * a)
    if math.isfinite(b):
        lam = min(lam, b * (1.0 - CHERNOFF_ENDPOINT_MARGIN))
    return math.exp(-lam * t + a * lam * lam)
