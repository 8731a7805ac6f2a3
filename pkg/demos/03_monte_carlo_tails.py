"""Monte Carlo soundness run: empirical tails and MGFs vs. the bounds.

Simulates centered quadratic forms for three entry distributions over a
random symmetric matrix, then checks the exact-binomial tail estimates and
bootstrap MGF estimates against the closed-form bounds.

Run:  python demos/03_monte_carlo_tails.py        (~15 s)
"""

import numpy as np

from hanson_wright import bounds, linalg, mc
from hanson_wright.subgauss import RngStream, gaussian, rademacher, uniform
from hanson_wright.verify import lambda_grid_for, tail_grid_for

SEED = 2024
N = 200_000

gen = RngStream(SEED, 99).generator()
m = linalg.symmetrize(2.0 * gen.random((12, 12)) - 1.0)
print(f"random symmetric 12x12, ||M||_F = {linalg.frobenius_norm(m):.4f}, "
      f"||M||_op = {linalg.operator_norm(m):.4f}\n")

for d in (gaussian(1.0), rademacher(), uniform(1.0)):
    spec = bounds.make_bound_spec(m, d.proxy_sigma2)
    rng = RngStream(SEED, 0).substream(hash(d.label()) & 0xFFFF)
    samples = mc.sample_centered_forms(m, d, rng, N)

    print("=" * 72)
    print(f"entries ~ {d.label()}   (proxy sigma^2 = {d.proxy_sigma2:g}, N = {N})")
    print("=" * 72)

    tail = mc.run_tail_suite(m, d, tail_grid_for(spec), N, 0.999, rng, samples=samples)
    print(f"centered sample mean {tail.sample_mean:+.2e} "
          f"(tolerance {tail.mean_tolerance:.2e})")
    print(f"{'t':>9}  {'empirical':>11}  {'CP 99.9% up':>12}  {'bound':>11}  ok")
    for c in tail.checks:
        print(f"{c.t:9.3f}  {c.estimate.point:11.6f}  {c.estimate.ci_high:12.6f}"
              f"  {c.bound:11.6f}  {'yes' if c.passed else 'NO'}")

    mgf = mc.run_mgf_suite(m, d, lambda_grid_for(spec), N, 0.999, rng, samples=samples)
    print(f"{'lambda':>9}  {'empirical':>11}  {'boot 99.9%':>12}  {'bound':>11}  ok")
    for c in mgf.checks:
        print(f"{c.lam:9.5f}  {c.estimate.mean:11.6f}  {c.estimate.ci_high:12.6f}"
              f"  {c.bound:11.6f}  {'yes' if c.passed else 'NO'}")
    print(f"all sound: {tail.all_passed and mgf.all_passed}\n")

print("The bounds hold with wide margins: the empirical tail typically sits")
print("one to two orders of magnitude below the bound, which is the price of")
print("fully explicit constants.")
