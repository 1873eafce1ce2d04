"""Goodness of fit and model ranking on the two reference datasets.

Run: python3 demos/04_model_comparison.py
"""

import warnings

from egnh import datasets, gof

for name in ("aarset", "kevlar"):
    s = datasets.load(name)
    desc = gof.descriptive_stats(s)
    print(f"\n{name}: n={desc.n} mean={desc.mean:.3f} median={desc.median} skew={desc.skewness:.4f} kurt={desc.kurtosis:.4f}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rows = gof.compare(s)
    print(f"{'model':12s} {'loglik':>10s} {'W*':>7s} {'A*':>7s} {'KS':>7s} {'AIC':>8s}")
    for _, r in rows:
        print(f"{r.model:12s} {r.loglik:10.3f} {r.w_star:7.4f} {r.a_star:7.4f} {r.ks:7.4f} {r.aic:8.2f}")

    # The scaled TTT curve: concave for increasing hazards, S-shaped for bathtubs.
    ttt = gof.ttt_plot_data(s)
    mid = ttt[len(ttt) // 2]
    print(f"TTT at r/n={mid[0]:.2f}: G={mid[1]:.3f}")
