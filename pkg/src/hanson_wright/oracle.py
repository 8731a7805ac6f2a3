"""Exact closed-form Gaussian reference values.

These are ground truths, not bounds: every inequality in :mod:`.bounds`
is checked against them.  A symmetric quadratic form in centered Gaussian
entries with variance sigma^2 diagonalizes to ``sum_i mu_i Z_i^2`` with
``mu_i = sigma^2 * eig_i`` and standard-normal Z by rotational invariance,
which gives the product formulas below.

Negative lambda is accepted wherever the closed form converges; the bounds
module stays on lambda >= 0 (negated forms are handled by negating M).
"""

from __future__ import annotations

import math

import numpy as np

from . import linalg
from .exceptions import DomainError
from .subgauss import SubGaussianDist


def exact_gaussian_quadratic_mgf(a, sigma2: float, lam: float) -> float:
    """``E exp(lambda G^T A G)`` for G ~ N(0, sigma2 I): the exact value
    ``prod_i (1 - 2 lambda mu_i)^(-1/2)`` over ``mu_i = sigma2 * eig_i(A)``.

    Raises DomainError when any factor ``1 - 2 lambda mu_i <= 0`` (the MGF
    diverges there).
    """
    decomp = linalg.eigen_decompose(a)
    mu = sigma2 * decomp.eigenvalues
    factors = 1.0 - 2.0 * lam * mu
    if not (factors > 0.0).all():
        worst = float(mu[np.argmin(factors)])
        raise DomainError(
            f"Gaussian quadratic MGF diverges: 2*lambda*mu >= 1 at mu={worst:g}, lambda={lam:g}",
            limit=1.0 / (2.0 * worst),
        )
    return float(np.exp(-0.5 * math.fsum(np.log(factors).tolist())))


def exact_gaussian_centered_square_mgf(sigma2: float, lam: float) -> float:
    """``E exp(lambda (Z^2 - sigma2))`` for Z ~ N(0, sigma2):
    ``exp(-lambda sigma2) (1 - 2 lambda sigma2)^(-1/2)``, finite iff
    ``2 lambda sigma2 < 1``."""
    u = 2.0 * lam * sigma2
    if u >= 1.0:
        raise DomainError(
            f"centered-square MGF diverges at lambda={lam:g} (needs 2*lambda*sigma2 < 1)",
            limit=1.0 / (2.0 * sigma2),
        )
    return math.exp(-lam * sigma2) / math.sqrt(1.0 - u)


def exact_quadratic_mean(m, d: SubGaussianDist) -> float:
    """``E[X^T M X] = (E X^2) * trace(M)`` for iid mean-zero entries.

    Uses the true second moment, never the variance proxy.
    """
    return d.second_moment * linalg.trace(m)
