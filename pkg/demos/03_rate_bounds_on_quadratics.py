"""Deterministic-limit rate guarantees, checked iterate by iterate.

With a single-example objective the stochastic gradient equals the full
gradient and the relative-growth constant is exactly 1, so the accelerated
method must track the classical guarantees:

  strongly convex:  f(w_k) - f* <= (1 - sqrt(mu/L))^k [f(w_0) - f* + mu/2 ||w_0 - w*||^2]
  convex:           f(w_k) - f* <= 2 L ||w_0 - w*||^2 / k^2

The script reports the largest observed ratio of actual to bound, and fits
the empirical decay rates for comparison with the exponents.

Run:  python demos/03_rate_bounds_on_quadratics.py
"""

import math

import numpy as np

from interpsgd import QuadraticObjective, RunConfig, fit_rate, run

# strongly convex: condition number 100
obj = QuadraticObjective(np.diag([0.04, 4.0]), np.array([1.3, -0.7]))
w0 = np.array([3.0, 2.0])
cfg = RunConfig(
    eta=1.0 / obj.L, rho=1.0, mode="strongly_convex", mu=obj.mu, seed=0, w0=w0
)
record = run(obj, "accel", cfg, 300)
constant = obj.loss_full(w0) + 0.5 * obj.mu * float((w0 - obj.w_star) @ (w0 - obj.w_star))
rate = 1.0 - math.sqrt(obj.mu / obj.L)
worst = max(
    row.train_loss / (rate**row.iteration * constant)
    for row in record.rows
    if 1 <= row.iteration <= 300 and row.train_loss > 0
)
fit = fit_rate(record, "linear")
print("strongly convex quadratic (mu/L = 0.01):")
print(f"  worst actual/bound ratio  = {worst:.4f}   (<= 1)")
print(f"  fitted ln-rate per step   = {fit.slope:.5f}")
print(f"  theoretical exponent      = {math.log(rate):.5f}")
print()

# convex with a flat direction
obj = QuadraticObjective(np.diag([2.0, 0.5, 0.0]), np.array([0.4, -1.1, 0.0]))
w0 = np.array([3.0, 2.0, 2.0])
nearest = np.array([0.4, -1.1, 2.0])
d_sq = float((w0 - nearest) @ (w0 - nearest))
cfg = RunConfig(eta=1.0 / obj.L, rho=1.0, mode="convex", seed=0, w0=w0)
record = run(obj, "accel", cfg, 500)
worst = max(
    row.train_loss / (2.0 * obj.L * d_sq / row.iteration**2)
    for row in record.rows
    if row.iteration >= 10 and row.train_loss > 0
)
fit = fit_rate(record, "polynomial")
print("convex quadratic with a flat direction:")
print(f"  worst actual/bound ratio  = {worst:.5f}   (<= 1)")
print(f"  fitted power of k         = {fit.slope:.3f}   (theory: -2)")
