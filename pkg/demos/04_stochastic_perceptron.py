"""The stochastic perceptron through the squared-hinge surrogate.

On unit-norm separable data with margin tau, plain SGD with eta = 1/4 from
w_0 = 0 drives the surrogate loss like O(1/(tau^2 k)), and the mistake
rate never exceeds the surrogate (max(0, 1-m)^2 dominates the 0-1
indicator pointwise). The accelerated variant reaches the O(1/k^2) regime.

Run:  python demos/04_stochastic_perceptron.py
"""

from interpsgd import perceptron_check

report = perceptron_check(tau=0.1, n=100, d=10, passes=30, seed=3)

print("seed-averaged plain variant (eta = 1/4, running iterate mean):")
print(f"  {'pass':>4}  {'iteration':>9}  {'avg loss':>10}  {'bound 8/(tau^2 k)':>18}  {'mistakes':>8}")
for row in report.sgd_avg_record.rows[::5]:
    bound = 8.0 / (0.1**2 * row.iteration) if row.iteration else float("inf")
    print(
        f"  {row.pass_index:>4}  {row.iteration:>9}  {row.train_loss:>10.2e}"
        f"  {bound:>18.2e}  {row.mistake_rate:>8.4f}"
    )
print()
for line in report.summary_lines():
    print(line)
