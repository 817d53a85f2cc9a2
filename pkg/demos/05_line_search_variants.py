"""Line-search step sizes versus tuned constants.

Both methods come in a line-search flavor that doubles a smoothness
estimate whenever the sampled example fails a sufficient-decrease test:
SGD searches an estimate of L, the accelerated method an estimate of the
product rho * L (re-deriving the schedule's rho each iteration). The
estimates start at 1 and never decrease.

Run:  python demos/05_line_search_variants.py
"""

from interpsgd import Objective, RunConfig, generate_margin_data, run

data = generate_margin_data(n=1000, d=40, tau=0.1, seed=5)
obj = Objective("squared_hinge", data)
PASSES = 20

records = {
    "SGD(T)": run(obj, "sgd", RunConfig(eta=1.0 / obj.L_max, seed=1), PASSES),
    "SGD(LS)": run(obj, "sgd_ls", RunConfig(seed=2), PASSES),
    "Acc-SGD(T)": run(
        obj,
        "accel",
        RunConfig(eta=0.1 / obj.gram_lam_max, rho=10.0, seed=3),
        PASSES,
    ),
    "Acc-SGD(LS)": run(obj, "accel_ls", RunConfig(seed=4), PASSES),
}

print(f"squared hinge, n = 1000, d = 40, tau = 0.1   (log10 loss per pass)")
header = "  ".join(f"{label:>12}" for label in records)
print(f"{'pass':>4}  {header}")
for p in range(0, PASSES + 1, 2):
    row = "  ".join(f"{rec.rows[p].log10_loss:>12.2f}" for rec in records.values())
    print(f"{p:>4}  {row}")
