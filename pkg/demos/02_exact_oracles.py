"""Exact Gaussian oracles vs. the closed-form bounds.

Every bound in the package is an inequality; for Gaussian objects the left
side has a closed form, so dominance can be checked exactly, endpoint
included.  Run:  python demos/02_exact_oracles.py
"""

import numpy as np

from hanson_wright import bounds, linalg, oracle
from hanson_wright.subgauss import RngStream

print("=" * 72)
print("Chi-square MGF bound vs. the exact product form")
print("=" * 72)
print("E exp(lambda sum mu_i Z_i^2) = prod (1 - 2 lambda mu_i)^(-1/2) exactly;")
print("the bound is exp(sum lambda mu_i + 2 lambda^2 mu_i^2) on [0, 1/(3 max|mu|)].\n")

mu = np.array([0.9, -0.6, 0.3, -0.2])
hi = 1.0 / (3.0 * np.abs(mu).max())
print(f"spectrum mu = {mu.tolist()},  lambda_max = {hi:.6f} (endpoint included)")
print(f"{'lambda':>10}  {'exact':>12}  {'bound':>12}  {'ratio':>8}")
for lam in np.linspace(0.0, hi, 8):
    exact = oracle.exact_gaussian_quadratic_mgf(np.diag(mu), 1.0, float(lam))
    cap = bounds.chi2_mgf_bound(mu, float(lam))
    print(f"{lam:10.6f}  {exact:12.8f}  {cap:12.8f}  {cap / exact:8.5f}")

print()
print("=" * 72)
print("Centered-square MGF bound vs. the exact value")
print("=" * 72)
print("E exp(lambda (Z^2 - s^2)) = e^(-lambda s^2) (1 - 2 lambda s^2)^(-1/2);")
print("the bound is exp(10 lambda^2 sigma^4) on [0, 1/(4 sigma^2)].\n")
for s2 in (0.25, 1.0, 4.0):
    lam = 1.0 / (4.0 * s2)  # closed right endpoint, the tightest spot
    exact = oracle.exact_gaussian_centered_square_mgf(s2, lam)
    cap = bounds.square_mgf_bound(s2, lam)
    print(f"  sigma^2 = {s2:4.2f}  endpoint lambda = {lam:6.3f}:"
          f"  exact = {exact:.7f}  <=  bound = {cap:.7f}")

print()
print("=" * 72)
print("Hollow matrices: trace zero kills the linear term")
print("=" * 72)
gen = RngStream(7, 0).generator()
ring = linalg.hollow(linalg.symmetrize(2.0 * gen.random((6, 6)) - 1.0))
mu = linalg.eigen_decompose(ring).eigenvalues
lam = 1.0 / (3.0 * np.abs(mu).max())
print(f"random hollow 6x6: spectrum sums to {mu.sum():.2e} (trace is exactly 0)")
print(f"  chi-square bound at lambda = {lam:.4f}: {bounds.chi2_mgf_bound(mu, lam):.8f}")
print(f"  reduced form exp(2 lambda^2 sum mu^2):  {np.exp(2 * lam * lam * np.sum(mu * mu)):.8f}")
print(f"  exact Gaussian MGF:                     "
      f"{oracle.exact_gaussian_quadratic_mgf(ring, 1.0, lam):.8f}")

print()
print("=" * 72)
print("Centering uses the true second moment, not the variance proxy")
print("=" * 72)
from hanson_wright.subgauss import gaussian, rademacher, uniform

m = np.diag([1.0, 2.0, 3.0])
for d in (gaussian(1.0), rademacher(), uniform(1.0)):
    print(f"  E[X^T diag(1,2,3) X] under {d.label():12s} = "
          f"{oracle.exact_quadratic_mean(m, d):.6f}   (E X^2 = {d.second_moment:g}, "
          f"proxy = {d.proxy_sigma2:g})")
