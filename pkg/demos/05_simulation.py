"""A small Monte Carlo study of the estimators.

Each (size, replication) pair draws from its own seed, so results do not
depend on how the work is scheduled.  The full study uses 1000
replications over sizes 10..250; this one is sized to run in seconds.

Run: python3 demos/05_simulation.py
"""

from egnh import simulation as sim

design = sim.SimDesign(sizes=(20, 80), replications=20, seed=3)
res = sim.run_sim(design, workers=1)
print("theta0 =", design.theta0.as_tuple())
for row in res.rows:
    print(f"n={row.size:4d} {row.parameter:6s} bias {row.bias:+.4g}  se {row.std_error:.4g}  b at cap {row.at_bound}/{row.converged}")
