"""Rate regions, equilibrium games and regret-matching learning for the
n-user interference channel with interference treated as noise."""

from .channel import ChannelGains, rates, rates_for_profile
from .game import (CEVerdict, MECHANISMS, UtilityTable, build_utility_table,
                   is_correlated_equilibrium, pure_nash, theta_from_distribution,
                   theta_to_distribution, validate_pmf)
from .learning import (LearningConfig, RegretState, Trajectory, default_mu,
                       empirical_distribution, run, step)
from .region import (MAX_USERS, CapacityError, CornerSet, FrontierSample,
                     area_power_control, area_timeshare_both_on,
                     area_timeshare_exclusive, classify_frontier, convex_hull,
                     crystallized_rates, enumerate_corners, profile_bits,
                     profile_index, sample_frontier, theta_support,
                     timeshare_gain_percent, validate_theta)

__version__ = "0.1.0"

__all__ = [
    "CEVerdict", "CapacityError", "ChannelGains", "CornerSet", "FrontierSample",
    "LearningConfig", "MAX_USERS", "MECHANISMS", "RegretState", "Trajectory",
    "UtilityTable", "area_power_control", "area_timeshare_both_on",
    "area_timeshare_exclusive", "build_utility_table", "classify_frontier",
    "convex_hull", "crystallized_rates", "default_mu", "empirical_distribution",
    "enumerate_corners", "is_correlated_equilibrium", "profile_bits",
    "profile_index", "pure_nash", "rates", "rates_for_profile", "run",
    "sample_frontier", "step", "theta_from_distribution", "theta_support",
    "theta_to_distribution", "timeshare_gain_percent", "validate_pmf",
    "validate_theta",
]
