"""Binary-action transmission games and correlated-equilibrium checks.

Every user chooses silence (0) or full power (1).  Two utility mechanisms
are supported:

* ``raw_rates``: utility is the user's own achievable rate.
* ``vcg``: auction-style utility, the user's rate minus the rate loss its
  transmission inflicts on everyone else.  A silent user earns and pays
  nothing, and utilities can be negative; that negativity is what pushes
  strongly interfering users toward alternation.

Joint distributions over the 2**n profiles are plain probability vectors
indexed by profile index (user 1 = least significant bit).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channel import ChannelGains, rates_for_profile
from .region import MAX_USERS, CapacityError, profile_bits

MECHANISMS = ("raw_rates", "vcg")


@dataclass(frozen=True, eq=False)
class UtilityTable:
    """Complete per-profile utility vectors for one mechanism.

    ``utilities[k, i]`` is user i's utility in profile index k.
    """

    mechanism: str
    utilities: np.ndarray  # (2**n, n)

    @property
    def n(self) -> int:
        return self.utilities.shape[1]

    @property
    def num_profiles(self) -> int:
        return self.utilities.shape[0]

    def rows(self):
        """Yield (profile index, bits, utility vector) for serialization."""
        n = self.n
        for k in range(self.num_profiles):
            yield k, profile_bits(k, n), self.utilities[k]


def build_utility_table(gains: ChannelGains, mechanism: str) -> UtilityTable:
    """Tabulate utilities for every on/off profile.

    Under ``vcg`` the payment of an active user i equals the total rate the
    others would gain if user i fell silent; silent users have exactly zero
    utility.
    """
    if mechanism not in MECHANISMS:
        raise ValueError(f"unknown mechanism {mechanism!r}; expected one of {MECHANISMS}")
    n = gains.n
    if n > MAX_USERS:
        raise CapacityError(f"utility tables limited to {MAX_USERS} users, got {n}")
    count = 1 << n
    rate = np.vstack([rates_for_profile(gains, profile_bits(k, n)) for k in range(count)])
    if mechanism == "raw_rates":
        return UtilityTable(mechanism, rate.copy())
    util = np.zeros_like(rate)
    for k in range(1, count):
        for i in range(n):
            if not (k >> i) & 1:
                continue
            absent = k & ~(1 << i)
            others = np.arange(n) != i
            payment = float(rate[absent, others].sum() - rate[k, others].sum())
            util[k, i] = rate[k, i] - payment
    return UtilityTable(mechanism, util)


def pure_nash(table: UtilityTable) -> list[int]:
    """Profile indices where no user can gain by a unilateral flip.

    Ties count: a deviation that merely matches the current utility does not
    break the equilibrium.
    """
    u = table.utilities
    count, n = u.shape
    equilibria = []
    for k in range(count):
        if all(u[k, i] >= u[k ^ (1 << i), i] for i in range(n)):
            equilibria.append(k)
    return equilibria


def validate_pmf(pmf, num_profiles: int, tol: float = 1e-9) -> np.ndarray:
    """Check a joint distribution over profiles (simplex within ``tol``)."""
    p = np.asarray(pmf, dtype=float)
    if p.shape != (num_profiles,):
        raise ValueError(f"expected a distribution over {num_profiles} profiles, got shape {p.shape}")
    if np.any(p < -tol):
        raise ValueError("probabilities must be nonnegative")
    if abs(float(p.sum()) - 1.0) > tol:
        raise ValueError(f"probabilities must sum to 1, got {p.sum()!r}")
    return p


@dataclass(frozen=True)
class CEVerdict:
    """Outcome of a correlated-equilibrium membership check.

    ``witness`` is the first violated inequality as
    (user, recommended action, deviation action, residual); ``min_slack`` is
    the smallest left-hand side over all inequalities (negative means some
    deviation is profitable in expectation).
    """

    holds: bool
    witness: Optional[tuple[int, int, int, float]]
    min_slack: float


def is_correlated_equilibrium(table: UtilityTable, pmf, eps: float = 1e-9) -> CEVerdict:
    """Test whether a joint distribution is a correlated equilibrium.

    For every user, every recommended action and every deviation, the
    expected utility of following the recommendation must not fall short of
    deviating by more than ``eps``:

        sum_{others} p(rec, others) * [U_i(rec, others) - U_i(dev, others)] >= -eps
    """
    p = validate_pmf(pmf, table.num_profiles)
    u = table.utilities
    n = table.n
    idx = np.arange(table.num_profiles)
    witness = None
    min_slack = np.inf
    for i in range(n):
        flipped = idx ^ (1 << i)
        keep_gain = u[idx, i] - u[flipped, i]
        for recommended in (0, 1):
            mask = ((idx >> i) & 1) == recommended
            slack = float(np.sum(p[mask] * keep_gain[mask]))
            if slack < min_slack:
                min_slack = slack
            if slack < -eps and witness is None:
                witness = (i, recommended, 1 - recommended, slack)
    return CEVerdict(holds=witness is None, witness=witness, min_slack=min_slack)


def theta_from_distribution(pmf, eps: float = 1e-9) -> np.ndarray:
    """Strip the all-silent profile off a joint distribution.

    Valid only when the silence mass p[0] is at most ``eps``; the remaining
    2**n - 1 entries are the time-sharing coefficients of the corners and
    are renormalized to absorb the discarded dust.
    """
    p = np.asarray(pmf, dtype=float)
    validate_pmf(p, p.shape[0], tol=max(eps, 1e-9))
    if p[0] > eps:
        raise ValueError(f"all-silent profile carries mass {p[0]!r} > {eps}; cannot map to time shares")
    rest = p[1:]
    return rest / float(rest.sum())


def theta_to_distribution(theta) -> np.ndarray:
    """Embed time-sharing coefficients as a joint distribution with zero
    mass on the all-silent profile (inverse of :func:`theta_from_distribution`)."""
    t = np.asarray(theta, dtype=float)
    return np.concatenate([[0.0], t])
