"""Binary-power-control rate regions built from corner points.

A corner is the rate point of a nonzero on/off transmit profile; with n
users there are 2**n - 1 of them.  Time-sharing over the corners replaces
continuous power control, and the achievable set becomes the convex hull of
the corners together with the origin (silence is always feasible).  This
module enumerates corners, evaluates time-shared rate points, samples the
2-user power-control frontiers, compares region areas, and constructs the
hull in 2 or 3 dimensions.

Profile indexing convention used everywhere in the package: user 1 is the
least significant bit, so profile index k has bit i equal to (k >> i) & 1.
Index 0 is the all-silent profile and is excluded from corner enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelGains, rates, rates_for_profile

#: Enumeration guard: 2**n tables above this user count are refused.
MAX_USERS = 16


class CapacityError(ValueError):
    """Raised when an operation would enumerate 2**n profiles for too large n."""


def profile_bits(index: int, n: int) -> np.ndarray:
    """On/off bit vector of a profile index (user 1 = least significant bit)."""
    if not 0 <= index < (1 << n):
        raise ValueError(f"profile index {index} out of range for {n} users")
    return ((index >> np.arange(n)) & 1).astype(np.uint8)


def profile_index(bits) -> int:
    """Inverse of :func:`profile_bits`."""
    b = np.asarray(bits)
    if not np.all((b == 0) | (b == 1)):
        raise ValueError("profile bits must be 0 or 1")
    return int(np.sum(b.astype(np.int64) << np.arange(b.size)))


@dataclass(frozen=True, eq=False)
class CornerSet:
    """All 2**n - 1 nonzero binary-power corner points, in index order.

    Row k of both arrays describes profile index k + 1.
    """

    bits: np.ndarray   # (2**n - 1, n) uint8
    rates: np.ndarray  # (2**n - 1, n) float

    def __len__(self) -> int:
        return self.rates.shape[0]

    @property
    def n(self) -> int:
        return self.rates.shape[1]

    @property
    def indices(self) -> np.ndarray:
        return np.arange(1, len(self) + 1)


def enumerate_corners(gains: ChannelGains) -> CornerSet:
    """Compute every nonzero on/off corner point of the rate region."""
    n = gains.n
    if n > MAX_USERS:
        raise CapacityError(f"corner enumeration limited to {MAX_USERS} users, got {n}")
    count = (1 << n) - 1
    bits = np.vstack([profile_bits(k, n) for k in range(1, count + 1)])
    corner_rates = np.vstack([rates_for_profile(gains, row) for row in bits])
    return CornerSet(bits=bits, rates=corner_rates)


def validate_theta(theta, num_corners: int, tol: float = 1e-9) -> np.ndarray:
    """Check a time-sharing vector against the simplex within ``tol``."""
    t = np.asarray(theta, dtype=float)
    if t.shape != (num_corners,):
        raise ValueError(f"expected {num_corners} time-sharing coefficients, got shape {t.shape}")
    if np.any(t < -tol):
        raise ValueError("time-sharing coefficients must be nonnegative")
    if abs(float(t.sum()) - 1.0) > tol:
        raise ValueError(f"time-sharing coefficients must sum to 1, got {t.sum()!r}")
    return t


def crystallized_rates(corners: CornerSet, theta) -> np.ndarray:
    """Rate point achieved by time-sharing the corners with weights ``theta``.

    ``theta[k]`` is the fraction of time spent at corner index k + 1.
    """
    t = validate_theta(theta, len(corners))
    return t @ corners.rates


def theta_support(theta, tol: float = 1e-12) -> np.ndarray:
    """Indices (0-based positions) of the corners carrying nonzero time share.

    A point on the region frontier needs at most n active corners; this is a
    diagnostic, nothing is enforced.
    """
    return np.flatnonzero(np.asarray(theta, dtype=float) > tol)


@dataclass(frozen=True, eq=False)
class FrontierSample:
    """A sampled 2-user power-control frontier.

    One transmitter is pinned at p_max while the other sweeps a uniform
    power grid from 0 to p_max; rows are ordered by the swept power.
    """

    fixed_user: int
    powers: np.ndarray  # (grid, 2)
    rates: np.ndarray   # (grid, 2)

    @property
    def grid_size(self) -> int:
        return self.rates.shape[0]

    @property
    def swept_user(self) -> int:
        return 1 - self.fixed_user


def sample_frontier(gains: ChannelGains, fixed_user: int, grid: int) -> FrontierSample:
    """Sample the frontier obtained by pinning ``fixed_user`` at full power.

    Args:
        gains: 2-user channel.
        fixed_user: 0-based index of the transmitter held at p_max.
        grid: number of uniformly spaced sweep powers (>= 2).
    """
    if gains.n != 2:
        raise ValueError("frontier sampling is defined for 2 users only")
    if fixed_user not in (0, 1):
        raise ValueError("fixed_user must be 0 or 1")
    if grid < 2:
        raise ValueError("grid must be at least 2")
    swept = 1 - fixed_user
    powers = np.empty((grid, 2))
    powers[:, fixed_user] = gains.p_max
    powers[:, swept] = np.linspace(0.0, gains.p_max, grid)
    rate_rows = np.vstack([rates(gains, p) for p in powers])
    return FrontierSample(fixed_user=fixed_user, powers=powers, rates=rate_rows)


def classify_frontier(sample: FrontierSample, tol: float = 1e-9) -> str:
    """Label a sampled frontier ``concave``, ``convex`` or ``inflected``.

    The frontier is read as the curve R2(R1); the sign pattern of the
    discrete second differences (cross products of consecutive segment
    vectors) decides the label.  ``tol`` is relative to the largest second
    difference, so a straight line counts as concave.
    """
    if sample.grid_size < 5:
        raise ValueError("need a grid of at least 5 samples to classify curvature")
    pts = sample.rates
    span = pts.max(axis=0) - pts.min(axis=0)
    scale = max(1.0, float(np.max(np.abs(pts))))
    if np.any(span <= 1e-12 * scale):
        raise ValueError("degenerate frontier: one user's rate is constant")
    if pts[0, 0] > pts[-1, 0]:
        pts = pts[::-1]
    seg = np.diff(pts, axis=0)
    cross = seg[:-1, 0] * seg[1:, 1] - seg[:-1, 1] * seg[1:, 0]
    thr = tol * float(np.max(np.abs(cross)))
    if np.all(cross <= thr):
        return "concave"
    if np.all(cross >= -thr):
        return "convex"
    return "inflected"


def _shoelace(points: np.ndarray) -> float:
    """Signed polygon area; positive for counterclockwise vertex order."""
    x = points[:, 0]
    y = points[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def area_power_control(gains: ChannelGains, grid: int = 1024) -> float:
    """Area of the 2-user region reachable by continuous power control.

    The boundary runs from the origin along the R1 axis to the corner where
    user 1 transmits alone, up the frontier with user 1 pinned, then back
    along the frontier with user 2 pinned to the R2 axis.  The polygon area
    comes from the shoelace formula on a uniform power grid per frontier.
    """
    if gains.n != 2:
        raise ValueError("power-control area is defined for 2 users only")
    lower = sample_frontier(gains, fixed_user=0, grid=grid).rates   # user-1-alone corner -> both-on
    upper = sample_frontier(gains, fixed_user=1, grid=grid).rates   # user-2-alone corner -> both-on
    boundary = np.vstack([[0.0, 0.0], lower, upper[::-1]])
    return abs(_shoelace(boundary))


def area_timeshare_both_on(gains: ChannelGains) -> float:
    """Area of the quadrilateral time-sharing region routed through the
    both-transmit corner (origin, each exclusive corner, and both-on)."""
    if gains.n != 2:
        raise ValueError("time-sharing area is defined for 2 users only")
    user2_alone = rates_for_profile(gains, (0, 1))
    both_on = rates_for_profile(gains, (1, 1))
    user1_alone = rates_for_profile(gains, (1, 0))
    quad = np.vstack([[0.0, 0.0], user2_alone, both_on, user1_alone])
    return abs(_shoelace(quad))


def area_timeshare_exclusive(gains: ChannelGains) -> float:
    """Area of the triangle spanned by pure alternation between the two
    exclusive corners; independent of the cross gains."""
    if gains.n != 2:
        raise ValueError("time-sharing area is defined for 2 users only")
    g = gains.gains
    return 0.5 * math.log2(1.0 + g[0, 0] * gains.p_max) * math.log2(1.0 + g[1, 1] * gains.p_max)


def timeshare_gain_percent(gains: ChannelGains, grid: int = 1024) -> float:
    """Signed percentage gain of both-on time sharing over power control.

    Negative values mean time sharing loses area.
    """
    pc = area_power_control(gains, grid)
    if pc <= 0.0:
        raise ValueError("degenerate power-control region with zero area")
    return 100.0 * (area_timeshare_both_on(gains) - pc) / pc


# ---------------------------------------------------------------------------
# Convex hull of corner points (origin always seeded as index 0).
# ---------------------------------------------------------------------------

def convex_hull(points, tol: float = 1e-12):
    """Convex hull of rate points together with the origin.

    The origin is prepended as index 0, so when ``points`` are corner rates
    in index order the returned indices coincide with profile indices.

    Returns:
        2-D input: ordered list of point indices along the upper-right
        frontier (origin excluded), from the highest-R2 end to the
        highest-R1 end.  Collinear interior points are dropped.
        3-D input: list of (i, j, k) index triples, each an outward-oriented
        triangular facet of the hull.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 2:
        raise ValueError("need at least 2 points")
    dim = pts.shape[1]
    spread = float(np.max(pts.max(axis=0) - pts.min(axis=0)))
    if spread <= 0.0:
        raise ValueError("degenerate input: all points coincide")
    seeded = np.vstack([np.zeros(dim), pts])
    if dim == 2:
        return _frontier_chain_2d(seeded, tol)
    if dim == 3:
        return _hull_facets_3d(seeded, tol)
    raise ValueError("hull construction supports 2 or 3 rate coordinates only")


def _frontier_chain_2d(seeded: np.ndarray, tol: float) -> list[int]:
    """Upper hull of the seeded point set via the monotone chain scan."""
    scale = float(np.max(seeded.max(axis=0) - seeded.min(axis=0)))
    thr = tol * scale * scale
    order = np.lexsort((np.arange(len(seeded)), seeded[:, 1], seeded[:, 0]))
    chain: list[int] = []
    for idx in order:
        b = seeded[idx]
        while len(chain) >= 2:
            o = seeded[chain[-2]]
            a = seeded[chain[-1]]
            turn = (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
            if turn >= -thr:  # not a strict clockwise turn: middle point is no vertex
                chain.pop()
            else:
                break
        chain.append(int(idx))
    return [i for i in chain if i != 0]


def _orthonormal_basis(normal: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Right-handed in-plane basis (e1, e2) with e1 x e2 = normal."""
    helper = np.array([1.0, 0.0, 0.0])
    if abs(normal[0]) > 0.9:
        helper = np.array([0.0, 1.0, 0.0])
    e1 = helper - np.dot(helper, normal) * normal
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(normal, e1)
    return e1, e2


def _ring_2d(flat: np.ndarray, thr: float) -> list[int]:
    """Counterclockwise convex ring of planar points (positions into flat)."""
    order = np.lexsort((flat[:, 1], flat[:, 0]))

    def half(indices):
        h: list[int] = []
        for i in indices:
            b = flat[i]
            while len(h) >= 2:
                o = flat[h[-2]]
                a = flat[h[-1]]
                turn = (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
                if turn <= thr:
                    h.pop()
                else:
                    break
            h.append(int(i))
        return h

    lower = half(order)
    upper = half(order[::-1])
    return lower[:-1] + upper[:-1]


def _hull_facets_3d(seeded: np.ndarray, tol: float) -> list[tuple[int, int, int]]:
    """Brute-force supporting-plane enumeration; fine for small corner sets."""
    m = len(seeded)
    extent = float(np.max(seeded.max(axis=0) - seeded.min(axis=0)))
    centered = seeded - seeded.mean(axis=0)
    if np.linalg.matrix_rank(centered, tol=1e-9 * max(extent, 1.0)) < 3:
        raise ValueError("degenerate input: points span fewer than 3 dimensions")
    area_thr = tol * extent * extent
    on_thr = tol * extent

    planes: list[dict] = []
    for i in range(m):
        for j in range(i + 1, m):
            for k in range(j + 1, m):
                nrm = np.cross(seeded[j] - seeded[i], seeded[k] - seeded[i])
                norm = float(np.linalg.norm(nrm))
                if norm <= area_thr:
                    continue
                unit = nrm / norm
                offsets = (seeded - seeded[i]) @ unit
                if float(offsets.max()) <= on_thr:
                    outward = unit
                elif float(offsets.min()) >= -on_thr:
                    outward = -unit
                    offsets = -offsets
                else:
                    continue
                members = frozenset(int(x) for x in np.flatnonzero(np.abs(offsets) <= on_thr))
                level = float(outward @ seeded[i])
                for plane in planes:
                    if float(outward @ plane["normal"]) >= 1.0 - 1e-9 and abs(level - plane["level"]) <= 2 * on_thr:
                        plane["members"] |= members
                        break
                else:
                    planes.append({"normal": outward, "level": level, "members": set(members)})

    facets: list[tuple[int, int, int]] = []
    for plane in planes:
        ids = sorted(plane["members"])
        e1, e2 = _orthonormal_basis(plane["normal"])
        flat = np.column_stack([seeded[ids] @ e1, seeded[ids] @ e2])
        ring = _ring_2d(flat, tol * extent * extent)
        for t in range(1, len(ring) - 1):
            facets.append((ids[ring[0]], ids[ring[t]], ids[ring[t + 1]]))
    return facets
