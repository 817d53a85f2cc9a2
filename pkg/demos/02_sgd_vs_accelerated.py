"""Constant step-size SGD against its accelerated variant on margin data.

A desk-scale version of the headline experiment: squared-hinge loss on a
separable sample at a few margins, plain SGD with eta = 1/L_max versus the
three-sequence accelerated method with rho = 1/tau and the experimental
step size tau / lam_max(X^T X). Loss columns are log10.

Run:  python demos/02_sgd_vs_accelerated.py
"""

from interpsgd import Objective, RunConfig, generate_margin_data, run

N, D, PASSES = 2000, 60, 30

for tau in (0.1, 0.05):
    data = generate_margin_data(N, D, tau, seed=11)
    obj = Objective("squared_hinge", data)
    sgd = run(obj, "sgd", RunConfig(eta=1.0 / obj.L_max, seed=1), PASSES)
    acc = run(
        obj,
        "accel",
        RunConfig(eta=tau / obj.gram_lam_max, rho=1.0 / tau, seed=2),
        PASSES,
    )
    print(f"tau = {tau}   (n = {N}, d = {D}, {PASSES} passes)")
    print(f"  {'pass':>4}  {'log10 SGD':>10}  {'log10 Acc-SGD':>13}")
    for p in range(0, PASSES + 1, 5):
        print(
            f"  {p:>4}  {sgd.rows[p].log10_loss:>10.2f}"
            f"  {acc.rows[p].log10_loss:>13.2f}"
        )
    print()
