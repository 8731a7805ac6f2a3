"""Tour of the closed-form bounds: constants, domains, MGF and tail curves.

Run:  python demos/01_bounds_tour.py
"""

import math

import numpy as np

from hanson_wright import bounds

print("=" * 72)
print("Constant regimes")
print("=" * 72)

# A diagonal-free matrix earns the sharp constants (c1, c2) = (2, 1);
# anything with a nonzero diagonal entry takes the general (20, 4).
offdiag = [[0.0, 1.0], [1.0, 0.0]]
for name, m in (("off-diagonal 2x2", offdiag), ("identity 2x2", np.eye(2))):
    spec = bounds.make_bound_spec(m, sigma2=1.0)
    print(f"\n{name}:")
    print(f"  diagonal_free = {spec.diagonal_free}  ->  c1 = {spec.c1:g}, c2 = {spec.c2:g}")
    print(f"  ||M||_F^2 = {spec.frob2:g},  ||M||_op = {spec.opnorm:g}")
    print(f"  admissible lambda domain = {spec.lambda_domain()}")

print()
print("=" * 72)
print("MGF bound exp(c1 lambda^2 sigma^4 ||M||_F^2) on its lambda domain")
print("=" * 72)
spec = bounds.make_bound_spec(offdiag, sigma2=1.0)
for lam in np.linspace(0.0, 0.9 * spec.lambda_max, 6):
    print(f"  lambda = {lam:8.5f}   bound = {bounds.hw_mgf_bound(spec, float(lam)):10.6f}")

print()
print("=" * 72)
print("Two-sided tail bound 2 exp(-(t^2/(4 c1 s^4 F^2)  ^  t/(6 c2 s^2 op)))")
print("=" * 72)
print(f"{'t':>8}  {'bound':>12}  regime")
crossover = None
for t in np.linspace(0.0, 12.0, 13):
    gauss = t * t / (4 * spec.c1 * spec.sigma2 ** 2 * spec.frob2)
    expo = t / (6 * spec.c2 * spec.sigma2 * spec.opnorm)
    regime = "gaussian (t^2)" if gauss <= expo else "exponential (t)"
    if crossover is None and gauss > expo:
        crossover = t
    print(f"{t:8.2f}  {bounds.hw_tail_bound(spec, float(t)):12.6f}  {regime}")
print(f"\nThe rate switches from t^2 to t near t = {crossover:g}: small deviations")
print("behave like a Gaussian with variance ~ ||M||_F^2, large ones decay like")
print("a sub-exponential variable with scale ~ ||M||_op.")

print()
print("=" * 72)
print("From MGF bound to tail bound via the Chernoff method")
print("=" * 72)
a = spec.c1 * spec.sigma2 ** 2 * spec.frob2
for t in (1.0, 4.0, 8.0):
    opt = bounds.chernoff_tail_from_mgf(a, spec.lambda_max, t)
    displayed = bounds.hw_tail_bound(spec, t) / 2.0
    print(f"  t = {t:4.1f}   optimized exp(-lambda t + a lambda^2) = {opt:.6e}"
          f"   <= one-sided tail bound {displayed:.6e}")
print("\nThe optimized Chernoff value is always at least as sharp as the")
print("displayed tail bound, so the tail bound follows from the MGF bound.")

print()
print("=" * 72)
print("Scalar ingredients of the proof chain")
print("=" * 72)
print("quadratic majorant of -log(1-2x) on [-1/3, 1/3]:")
for x in (-1 / 3, -0.1, 0.0, 0.1, 1 / 3):
    print(f"  x = {x:8.4f}   (2x+4x^2) - (-log(1-2x)) = {bounds.log_inequality_gap(x):.7f}")
print("\nmoment cap cosh(1/2) (2 sigma^2)^k k! for E (X^2 - EX^2)^k, sigma^2 = 1:")
for k in (2, 3, 5):
    print(f"  k = {k}   cap = {bounds.central_moment_bound(1.0, k):12.4f}")
print("\nCauchy-Schwarz recombination of a diagonal and an off-diagonal bound,")
print("exponents evaluated at 2*lambda and averaged:")
e_d, e_o = 40 * 0.01 * 2, 8 * 0.01 * 1
print(f"  combine({e_d:g}, {e_o:g}) = {bounds.combine_cauchy_schwarz(e_d, e_o):g}"
      f"  <=  20 lambda^2 sigma^4 ||A||_F^2 = {20 * 0.01 * 3:g}")
