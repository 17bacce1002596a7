"""Distributed regret-matching dynamics over the binary transmit actions.

Each user keeps, for each of its two actions, the cumulative utility
difference "what the other action would have paid minus what this action
paid", summed over the periods in which the action was actually played.
Dividing by the elapsed periods and clipping at zero gives the average
regret; the probability of switching away from the previously played action
is that regret divided by a normalization constant mu (which must be large
enough to keep the result a probability).  Zero regret means the user
repeats its last action.

Counterfactual utilities are read from the shared utility table given the
opponents' realized actions, so the per-period work per user is constant in
the size of its two-action set.  A run is sequential by nature (period t+1
depends on period t); independent runs can execute in parallel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .channel import ChannelGains
from .game import CEVerdict, UtilityTable, build_utility_table, is_correlated_equilibrium


@dataclass
class LearningConfig:
    """Knobs for one regret-matching run.

    Attributes:
        t_max: number of periods.
        seed: RNG seed; identical configs reproduce bit-identical runs.
        mu: normalization constant; None picks 2 * n * max |utility|.
        window: trailing-window length for the empirical distribution.
            None means the trailing half of the run (burn-in discarded),
            0 means the full history.
        initial_p: probability of transmitting in the very first period,
            scalar or one value per user.
    """

    t_max: int
    seed: int = 0
    mu: Optional[float] = None
    window: Optional[int] = None
    initial_p: Union[float, Sequence[float]] = 0.5

    def __post_init__(self):
        if self.t_max < 1:
            raise ValueError("t_max must be at least 1")
        if self.mu is not None and not self.mu > 0.0:
            raise ValueError("mu must be positive")
        if self.window is not None and not 0 <= self.window <= self.t_max:
            raise ValueError("window must lie in [0, t_max]")
        p = np.atleast_1d(np.asarray(self.initial_p, dtype=float))
        if np.any(p < 0.0) or np.any(p > 1.0):
            raise ValueError("initial_p must lie in [0, 1]")


def default_mu(table: UtilityTable) -> float:
    """2 * n * max |utility|: guarantees switch probabilities start below 1/2."""
    peak = float(np.max(np.abs(table.utilities)))
    return 2.0 * table.n * peak if peak > 0.0 else 1.0


class RegretState:
    """Per-user regret accumulators, play counts and current action."""

    def __init__(self, n: int, initial_p: Union[float, Sequence[float]] = 0.5):
        p = np.broadcast_to(np.asarray(initial_p, dtype=float), (n,))
        if np.any(p < 0.0) or np.any(p > 1.0):
            raise ValueError("initial_p must lie in [0, 1]")
        self.n = n
        self.t = 0
        self.diff_sum = [[0.0, 0.0] for _ in range(n)]  # [user][action]
        self.plays = [[0, 0] for _ in range(n)]
        self.last = [0] * n
        self.probs_on = [float(x) for x in p]

    def average_regret(self) -> np.ndarray:
        """(n, 2) matrix of clipped average regrets, action-indexed."""
        if self.t == 0:
            return np.zeros((self.n, 2))
        return np.maximum(np.asarray(self.diff_sum) / self.t, 0.0)


def step(state: RegretState, table: UtilityTable, mu: float, rng) -> int:
    """Advance one period for all users; returns the realized profile index.

    In the first period every user draws from its initial probability; from
    then on the switch probability is the average regret of the last action
    against the other one, divided by mu.
    """
    n = state.n
    u = table.utilities
    if state.t > 0:
        t = state.t
        for i in range(n):
            a = state.last[i]
            d = state.diff_sum[i][a] / t
            regret = d if d > 0.0 else 0.0
            p_switch = regret / mu
            if p_switch > 1.0:
                raise ValueError(
                    f"mu={mu} too small: switch probability {p_switch} exceeds 1; increase mu")
            state.probs_on[i] = 1.0 - p_switch if a == 1 else p_switch
    draws = rng.random(n)
    profile = 0
    for i in range(n):
        if draws[i] < state.probs_on[i]:
            profile |= 1 << i
    for i in range(n):
        a = (profile >> i) & 1
        realized = u.item(profile, i)
        counterfactual = u.item(profile ^ (1 << i), i)
        state.diff_sum[i][a] += counterfactual - realized
        state.plays[i][a] += 1
        state.last[i] = a
    state.t += 1
    return profile


def empirical_distribution(profiles, n: int, window: Optional[int] = None) -> np.ndarray:
    """Frequency of each profile index over the trailing ``window`` periods.

    Joint frequencies, never products of per-user marginals; the all-silent
    index 0 is included whenever it occurred.  ``window=None`` uses the full
    recorded history.
    """
    k = np.asarray(profiles, dtype=np.int64)
    total = k.shape[0]
    if window is None:
        window = total
    if not 1 <= window <= total:
        raise ValueError(f"window must lie in [1, {total}], got {window}")
    tail = k[total - window:]
    counts = np.bincount(tail, minlength=1 << n)
    return counts / float(window)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Full log of one regret-matching run plus its summary statistics."""

    profiles: np.ndarray       # (t_max,) realized profile indices
    actions: np.ndarray        # (t_max, n) realized bits
    utilities: np.ndarray      # (t_max, n) realized utilities
    probs_on: np.ndarray       # (t_max, n) transmit probabilities used
    empirical_pmf: np.ndarray  # (2**n,) over the reporting window
    avg_regret: np.ndarray     # (n, 2) final clipped average regrets
    ce: CEVerdict              # equilibrium check of empirical_pmf
    mu: float
    window: int
    config: LearningConfig

    @property
    def n(self) -> int:
        return self.actions.shape[1]

    @property
    def max_avg_regret(self) -> float:
        return float(self.avg_regret.max())


def run(gains: ChannelGains, mechanism: str, config: LearningConfig,
        ce_eps: float = 0.05) -> Trajectory:
    """Play ``config.t_max`` periods of regret matching on one channel.

    Deterministic given the full config including the seed.  The empirical
    distribution is taken over the trailing window and checked for
    correlated-equilibrium membership at tolerance ``ce_eps``.
    """
    table = build_utility_table(gains, mechanism)
    mu = config.mu if config.mu is not None else default_mu(table)
    n = table.n
    state = RegretState(n, config.initial_p)
    rng = np.random.default_rng(config.seed)
    t_max = config.t_max
    profiles = np.empty(t_max, dtype=np.int64)
    probs = np.empty((t_max, n))
    for t in range(t_max):
        profiles[t] = step(state, table, mu, rng)
        probs[t] = state.probs_on
    actions = ((profiles[:, None] >> np.arange(n)) & 1).astype(np.uint8)
    utilities = table.utilities[profiles]
    if config.window is None:
        window = max(t_max // 2, 1)
    elif config.window == 0:
        window = t_max
    else:
        window = config.window
    pmf = empirical_distribution(profiles, n, window)
    ce = is_correlated_equilibrium(table, pmf, eps=ce_eps)
    return Trajectory(profiles=profiles, actions=actions, utilities=utilities,
                      probs_on=probs, empirical_pmf=pmf,
                      avg_regret=state.average_regret(), ce=ce, mu=mu,
                      window=window, config=config)
