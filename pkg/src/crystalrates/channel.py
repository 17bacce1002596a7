"""n-user interference channel with the interference treated as noise.

Gains are stored already normalized by the receiver noise variance, so no
separate noise power is carried around.  ``gains[i, j]`` is the power gain
from transmitter ``i`` into receiver ``j``; for a power vector ``p`` the
achievable rate of user ``i`` is

    R_i = log2(1 + gains[i, i] * p[i] / (1 + sum_{j != i} gains[j, i] * p[j]))

in bits per channel use.  All functions here are pure and safe to call
concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class ChannelGains:
    """Square matrix of noise-normalized power gains plus the power cap.

    Attributes:
        gains: (n, n) array, ``gains[i, j]`` = gain transmitter i -> receiver j.
        p_max: common maximum transmit power in linear units.
    """

    gains: np.ndarray
    p_max: float = 1.0

    def __post_init__(self):
        g = np.asarray(self.gains, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValueError("gain matrix must be square")
        if g.shape[0] < 2:
            raise ValueError("need at least 2 users")
        if np.any(g < 0.0):
            raise ValueError("gains must be nonnegative")
        if np.any(np.diag(g) <= 0.0):
            raise ValueError("every direct gain gains[i, i] must be positive")
        p_max = float(self.p_max)
        if not p_max > 0.0:
            raise ValueError("p_max must be positive")
        object.__setattr__(self, "gains", g)
        object.__setattr__(self, "p_max", p_max)

    @property
    def n(self) -> int:
        return self.gains.shape[0]

    @classmethod
    def two_user(cls, a: float, b: float, c: float, d: float,
                 p_max: float = 1.0) -> "ChannelGains":
        """Build a 2-user channel from the conventional scalar gain names.

        ``a`` and ``c`` are the direct gains of users 1 and 2; ``b`` is the
        cross gain from transmitter 2 into receiver 1 and ``d`` the cross
        gain from transmitter 1 into receiver 2.
        """
        return cls(np.array([[a, d], [b, c]], dtype=float), p_max)


def rates(gains: ChannelGains, powers) -> np.ndarray:
    """Per-user rates (bits/channel use) for an arbitrary power vector.

    Args:
        gains: the channel.
        powers: length-n vector with entries in [0, p_max].

    Returns:
        Length-n array of rates; entry i is zero exactly when powers[i] is 0.
    """
    p = np.asarray(powers, dtype=float)
    if p.shape != (gains.n,):
        raise ValueError(f"expected {gains.n} powers, got shape {p.shape}")
    if np.any(p < 0.0) or np.any(p > gains.p_max):
        raise ValueError(f"powers must lie in [0, {gains.p_max}]")
    g = gains.gains
    direct = np.diag(g) * p
    interference = g.T @ p - direct
    return np.log2(1.0 + direct / (1.0 + interference))


def rates_for_profile(gains: ChannelGains, bits) -> np.ndarray:
    """Rates when each user is either silent (bit 0) or at full power (bit 1)."""
    b = np.asarray(bits)
    if b.shape != (gains.n,):
        raise ValueError(f"expected {gains.n} bits, got shape {b.shape}")
    if not np.all((b == 0) | (b == 1)):
        raise ValueError("profile bits must be 0 or 1")
    return rates(gains, b.astype(float) * gains.p_max)
