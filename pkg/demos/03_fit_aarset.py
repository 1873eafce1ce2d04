"""Maximum likelihood on the Aarset lifetimes.

The likelihood has no interior maximum on this sample.  It keeps rising
along a ridge with a -> 0 and b -> infinity (a * b roughly fixed), so the
optimiser stops on the b cap and says so.

Run: python3 demos/03_fit_aarset.py
"""

import warnings

from egnh import datasets, inference as inf
from egnh.errors import BoundaryWarning

s = datasets.aarset()
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    fit = inf.fit(s)
print("estimates:", {k: f"{v:.4g}" for k, v in fit.as_dict().items()})
print(f"loglik {fit.loglik:.4f}, at bound: {fit.at_bound}")
print("warnings:", sorted({type(w.message).__name__ for w in caught}))

# Moving the cap shows the ridge: the likelihood keeps creeping up.
for b_max in (1e2, 1e3, 1e4, 1e5):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BoundaryWarning)
        f = inf.fit(s, b_max=b_max)
    t = f.theta_hat
    print(f"b_max={b_max:8.0f}: loglik {f.loglik:.4f}, a*b = {t.a * t.b:.5f}")

# The published estimates are a point on the same ridge with lower likelihood.
print("loglik at the published estimates:", round(inf.loglik((1.8e-3, 2.83e-1, 1.75e-3, 47.066), s), 4))

# Profile and full likelihood land on the same point.
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    full = inf.fit(s, method="full")
print("full minus profile loglik:", full.loglik - fit.loglik)
