"""Series expansions for moments, entropy and inequality curves.

Every series value is cross-checked against adaptive quadrature.  Series
that diverge (non-integer shapes) raise NonConvergence instead of
returning a truncated number.

Run: python3 demos/02_series_moments.py
"""

import warnings

from egnh import series
from egnh.errors import NonConvergence

theta = (2, 2, 0.5, 2)
for r in range(1, 5):
    v = series.ordinary_moment(theta, r)
    print(f"E[X^{r}] = {v.value:.12f}  ({v.n_terms} terms, quadrature differs by {v.discrepancy:.1e})")

m = series.central_moments_cumulants(theta)
print(f"skewness {m.skewness:.5f}, kurtosis {m.kurtosis:.5f}")

dev = series.mean_deviations(theta)
print(f"mean deviation about the mean {dev.about_mean:.6f}, about the median {dev.about_median:.6f}")
for pi in (0.25, 0.5, 0.75):
    b, l = series.bonferroni_lorenz(theta, pi)
    print(f"pi={pi}: Bonferroni {b:.4f}, Lorenz {l:.4f}")

# Renyi entropy: finite sums for integer lambda (beta - 1), extrapolated tails otherwise.
for lam in (0.5, 2.0, 5.0):
    print(f"Renyi({lam}) = {series.renyi_entropy(theta, lam).value:.10f}")

# Large orders make the finite sum alternate and cancel; the default routes to quadrature.
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    v = series.renyi_entropy((7, 7, 0.5, 0.5), 5.0)
print(f"Renyi(5) for (7, 7, .5, .5) via {v.method}: {v.value:.8f} ({len(caught)} warning)")

try:
    series.ordinary_moment((2, 0.5, 1, 2), 1, method="series")
except NonConvergence as exc:
    print("non-integer beta:", exc)
