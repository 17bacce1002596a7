"""Distributed regret matching on three interference regimes.

No coordinator: each user only sees its own realized and counterfactual
utilities, switches actions with probability proportional to its average
regret, and the joint play drifts into the correlated-equilibrium set.
Where it lands depends on the regime: lock onto simultaneous transmission
when interference is weak, hand the channel to one user when the auction
prices the other out, split the channel under symmetric strong
interference.
"""

import numpy as np

from crystalrates import (ChannelGains, LearningConfig, crystallized_rates,
                          enumerate_corners, run, theta_from_distribution)

SCENARIOS = {
    "weak interference  (a=2,  b=0.2, c=1, d=0.1)": ChannelGains.two_user(2, 0.2, 1, 0.1),
    "one-sided          (a=20, b=2,   c=1, d=1)":   ChannelGains.two_user(20, 2, 1, 1),
    "strong symmetric   (a=1,  b=10,  c=1, d=10)":  ChannelGains.two_user(1, 10, 1, 10),
}
T_MAX = 30_000
SEEDS = (0, 1, 2, 3, 4)

for name, gains in SCENARIOS.items():
    print("=" * 76)
    print(name.upper())
    print("=" * 76)
    corners = enumerate_corners(gains)
    thetas = []
    for seed in SEEDS:
        trajectory = run(gains, "vcg", LearningConfig(t_max=T_MAX, seed=seed))
        theta = theta_from_distribution(trajectory.empirical_pmf, eps=0.05)
        thetas.append(theta)
        point = crystallized_rates(corners, theta)
        print(f"  seed {seed}: theta={np.round(theta, 3).tolist()}  "
              f"rate point={np.round(point, 3).tolist()}  "
              f"max regret={trajectory.max_avg_regret:.2e}  "
              f"equilibrium check: {'holds' if trajectory.ce.holds else 'violated'}")
    mean_theta = np.mean(thetas, axis=0)
    print(f"  ensemble mean theta over {len(SEEDS)} seeds: {np.round(mean_theta, 3).tolist()}")
    print(f"  mean rate point: {np.round(crystallized_rates(corners, mean_theta / mean_theta.sum()), 3).tolist()}")
    print()

print("""Notes

* theta positions map to corners 1..3: (user 1 alone, user 2 alone, both on).
* The empirical distribution is taken over the trailing half of each run,
  so burn-in wandering is discarded.
* Under symmetric strong interference each individual run parks on one of
  the two alternation corners; fairness shows up across the ensemble, not
  within a single run.  Raise t_max and the regret bound tightens while the
  equilibrium check keeps holding.
""")
