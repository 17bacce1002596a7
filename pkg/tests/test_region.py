import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.spatial import ConvexHull as ScipyHull

from crystalrates import (CapacityError, ChannelGains, area_power_control,
                          area_timeshare_both_on, area_timeshare_exclusive,
                          classify_frontier, convex_hull, crystallized_rates,
                          enumerate_corners, profile_bits, profile_index,
                          rates_for_profile, sample_frontier, theta_support,
                          timeshare_gain_percent, validate_theta)

NOISE_LIMITED = ChannelGains.two_user(2, 0.2, 1, 0.1)
INTERFERENCE_LIMITED = ChannelGains.two_user(1, 10, 1, 10)
MIXED = ChannelGains.two_user(20, 2, 1, 1)

gain_values = st.floats(min_value=0.01, max_value=100.0,
                        allow_nan=False, allow_infinity=False)


def random_gains(rng, n=2):
    mat = rng.uniform(0.05, 5.0, size=(n, n))
    np.fill_diagonal(mat, rng.uniform(0.5, 10.0, size=n))
    return ChannelGains(mat, 1.0)


# ---------------------------------------------------------------------------
# profiles and corners
# ---------------------------------------------------------------------------

def test_profile_bits_uses_user1_as_lsb():
    assert profile_bits(1, 2).tolist() == [1, 0]
    assert profile_bits(2, 2).tolist() == [0, 1]
    assert profile_bits(3, 2).tolist() == [1, 1]
    assert profile_bits(5, 3).tolist() == [1, 0, 1]


@pytest.mark.parametrize("n", range(2, 11))
def test_corner_count_is_2n_minus_1(n):
    rng = np.random.default_rng(n)
    corners = enumerate_corners(random_gains(rng, n))
    assert len(corners) == 2 ** n - 1
    for k, bits in zip(corners.indices, corners.bits):
        assert profile_index(bits) == k
        assert np.array_equal(profile_bits(int(k), n), bits)


def test_corner_enumeration_guard():
    g = ChannelGains(np.eye(17) + 0.01, 1.0)
    with pytest.raises(CapacityError):
        enumerate_corners(g)


def test_two_user_corner_values():
    corners = enumerate_corners(NOISE_LIMITED)
    assert np.array_equal(corners.rates[0], rates_for_profile(NOISE_LIMITED, (1, 0)))
    assert np.array_equal(corners.rates[1], rates_for_profile(NOISE_LIMITED, (0, 1)))
    assert np.array_equal(corners.rates[2], rates_for_profile(NOISE_LIMITED, (1, 1)))
    assert np.allclose(corners.rates[0], [math.log2(3), 0.0], atol=1e-15)
    assert np.allclose(corners.rates[1], [0.0, 1.0], atol=1e-15)
    assert np.allclose(corners.rates[2],
                       [math.log2(1 + 2 / 1.2), math.log2(1 + 1 / 1.1)], atol=1e-15)


# ---------------------------------------------------------------------------
# time-shared rate points
# ---------------------------------------------------------------------------

def test_vertex_weight_reproduces_corner_exactly():
    corners = enumerate_corners(NOISE_LIMITED)
    assert np.array_equal(crystallized_rates(corners, [0, 0, 1]), corners.rates[2])


def test_uniform_weights_give_componentwise_mean():
    corners = enumerate_corners(NOISE_LIMITED)
    point = crystallized_rates(corners, np.full(3, 1 / 3))
    assert np.allclose(point, corners.rates.mean(axis=0), atol=1e-12)


def test_type_two_shares_give_hand_computed_point():
    corners = enumerate_corners(MIXED)
    point = crystallized_rates(corners, [0.0, 0.92, 0.08])
    expected = [0.08 * math.log2(1 + 20 / 3),
                0.92 * math.log2(2) + 0.08 * math.log2(1.5)]
    assert np.allclose(point, expected, atol=1e-12)
    assert round(point[1], 4) == 0.9668


def test_simplex_violations_rejected():
    corners = enumerate_corners(NOISE_LIMITED)
    with pytest.raises(ValueError):
        crystallized_rates(corners, [0.5, 0.5, 0.5])
    with pytest.raises(ValueError):
        crystallized_rates(corners, [-0.1, 0.6, 0.5])
    with pytest.raises(ValueError):
        crystallized_rates(corners, [0.5, 0.5])
    validate_theta([0.5, 0.5, 0.0], 3)


@given(lam=st.floats(min_value=0.0, max_value=1.0))
@settings(max_examples=40, deadline=None)
def test_crystallized_rates_affine_in_theta(lam):
    corners = enumerate_corners(MIXED)
    theta_a = np.array([0.2, 0.3, 0.5])
    theta_b = np.array([0.6, 0.1, 0.3])
    mixed = lam * theta_a + (1 - lam) * theta_b
    lhs = crystallized_rates(corners, mixed)
    rhs = lam * crystallized_rates(corners, theta_a) + (1 - lam) * crystallized_rates(corners, theta_b)
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_theta_support_reports_active_corners():
    assert theta_support([0.0, 0.92, 0.08]).tolist() == [1, 2]
    assert theta_support([1e-15, 1.0, 0.0]).tolist() == [1]


# ---------------------------------------------------------------------------
# frontier sampling and curvature
# ---------------------------------------------------------------------------

def test_frontier_sweep_grid_and_endpoints():
    sample = sample_frontier(NOISE_LIMITED, fixed_user=1, grid=3)
    assert np.array_equal(sample.powers[:, 0], [0.0, 0.5, 1.0])
    assert np.all(sample.powers[:, 1] == 1.0)
    corners = enumerate_corners(NOISE_LIMITED)
    assert np.array_equal(sample.rates[0], corners.rates[1])   # user 2 alone
    assert np.array_equal(sample.rates[-1], corners.rates[2])  # both on


def test_frontier_pinning_user1_runs_from_exclusive_to_both_on():
    sample = sample_frontier(NOISE_LIMITED, fixed_user=0, grid=5)
    corners = enumerate_corners(NOISE_LIMITED)
    assert np.array_equal(sample.rates[0], corners.rates[0])
    assert np.array_equal(sample.rates[-1], corners.rates[2])
    assert np.all(sample.rates >= 0.0)


def test_frontier_requires_two_users_and_grid():
    g3 = ChannelGains(np.eye(3) + 0.1, 1.0)
    with pytest.raises(ValueError):
        sample_frontier(g3, 0, 16)
    with pytest.raises(ValueError):
        sample_frontier(NOISE_LIMITED, 0, 1)
    with pytest.raises(ValueError):
        sample_frontier(NOISE_LIMITED, 2, 16)


def test_curvature_labels_across_regimes():
    for fixed in (0, 1):
        assert classify_frontier(sample_frontier(NOISE_LIMITED, fixed, 257)) == "concave"
        assert classify_frontier(sample_frontier(INTERFERENCE_LIMITED, fixed, 257)) == "convex"
    mixed_labels = {classify_frontier(sample_frontier(MIXED, fixed, 257)) for fixed in (0, 1)}
    assert mixed_labels == {"concave", "convex"}


def test_degenerate_frontier_rejected():
    flat = ChannelGains.two_user(1, 0, 1, 0)  # no interference, pinned rate constant
    sample = sample_frontier(flat, fixed_user=0, grid=9)
    with pytest.raises(ValueError):
        classify_frontier(sample)
    with pytest.raises(ValueError):
        classify_frontier(sample_frontier(NOISE_LIMITED, 0, 4))


# ---------------------------------------------------------------------------
# areas
# ---------------------------------------------------------------------------

def _area_by_quadrature(a, b, c, d, p_max=1.0):
    """Green's theorem oracle: area = -contour integral of R2 dR1."""
    ln2 = math.log(2.0)

    def r2_pinned1(p2):
        return math.log2(1 + c * p2 / (1 + d * p_max))

    def dr1_pinned1(p2):
        return -(a * p_max * b) / ((1 + b * p2) * (1 + b * p2 + a * p_max)) / ln2

    def r2_pinned2(p1):
        return math.log2(1 + c * p_max / (1 + d * p1))

    def dr1_pinned2(p1):
        return (a / (1 + b * p_max)) / (1 + a * p1 / (1 + b * p_max)) / ln2

    out_leg, _ = quad(lambda p2: r2_pinned1(p2) * dr1_pinned1(p2), 0, p_max, limit=200)
    back_leg, _ = quad(lambda p1: r2_pinned2(p1) * dr1_pinned2(p1), p_max, 0, limit=200)
    return -(out_leg + back_leg)


def test_interference_free_region_is_a_rectangle():
    g = ChannelGains.two_user(1, 0, 1, 0)
    assert math.isclose(area_power_control(g, 256), 1.0, abs_tol=1e-12)
    assert math.isclose(area_timeshare_both_on(g), 1.0, abs_tol=1e-12)


@pytest.mark.parametrize("abcd", [(2, 0.2, 1, 0.1), (1, 10, 1, 10), (20, 2, 1, 1),
                                  (1, 0.01, 1, 0.01), (1, 100, 1, 100)])
def test_power_control_area_matches_quadrature_oracle(abcd):
    g = ChannelGains.two_user(*abcd)
    assert math.isclose(area_power_control(g, 1024), _area_by_quadrature(*abcd),
                        rel_tol=5e-4)


def test_area_converges_under_grid_refinement():
    g = ChannelGains.two_user(1, 100, 1, 100)  # strongest-interference sweep point
    coarse = area_power_control(g, 1024)
    dense = area_power_control(g, 8192)
    assert abs(coarse - dense) <= 0.01 * dense


def test_weak_interference_region_beats_alternation_triangle():
    g = ChannelGains.two_user(1, 0.01, 1, 0.01)  # 20 dB signal-to-interference
    assert area_power_control(g, 1024) > area_timeshare_exclusive(g)


def test_thin_kite_area_matches_exact_vertices():
    b_coord = math.log2(12 / 11)
    assert math.isclose(area_timeshare_both_on(INTERFERENCE_LIMITED), b_coord, abs_tol=1e-12)


def test_both_on_quad_is_union_of_its_two_triangles():
    rng = np.random.default_rng(23)
    for _ in range(20):
        g = random_gains(rng)
        a_pt = rates_for_profile(g, (0, 1))
        b_pt = rates_for_profile(g, (1, 1))
        c_pt = rates_for_profile(g, (1, 0))
        tri = lambda p, q: 0.5 * abs(p[0] * q[1] - q[0] * p[1])
        total = tri(a_pt, b_pt) + tri(b_pt, c_pt)
        quad = area_timeshare_both_on(g)
        assert math.isclose(quad, total, rel_tol=1e-12)
        assert quad >= tri(a_pt, b_pt) and quad >= tri(b_pt, c_pt)


def test_exclusive_triangle_closed_form_and_cross_gain_invariance():
    assert area_timeshare_exclusive(ChannelGains.two_user(1, 5, 1, 9)) == 0.5
    assert area_timeshare_exclusive(ChannelGains.two_user(2, 0.2, 1, 0.1)) == 0.5 * math.log2(3)
    values = {area_timeshare_exclusive(ChannelGains.two_user(2, b, 1, d))
              for b in (0.0, 0.5, 80.0) for d in (0.0, 3.0)}
    assert len(values) == 1


def test_gain_percent_small_near_crossover():
    g = ChannelGains.two_user(1, 1, 1, 1)
    assert abs(timeshare_gain_percent(g, 1024)) < 6.0


def test_gain_percent_sign_flips_once_along_symmetric_sweep():
    cross_gains = np.logspace(-2, 2, 17)
    signs = []
    for b in cross_gains:
        gain = timeshare_gain_percent(ChannelGains.two_user(1, b, 1, b), 1024)
        if gain != 0.0:
            signs.append(math.copysign(1.0, gain))
    flips = sum(1 for s, t in zip(signs, signs[1:]) if s != t)
    assert flips == 1
    assert signs[0] < 0 < signs[-1]


def test_both_on_area_beats_alternation_iff_corner_above_chord():
    rng = np.random.default_rng(11)
    for _ in range(50):
        g = random_gains(rng)
        a_pt = rates_for_profile(g, (0, 1))
        b_pt = rates_for_profile(g, (1, 1))
        c_pt = rates_for_profile(g, (1, 0))
        orientation = ((c_pt[0] - a_pt[0]) * (b_pt[1] - a_pt[1])
                       - (c_pt[1] - a_pt[1]) * (b_pt[0] - a_pt[0]))
        if abs(orientation) < 1e-9:
            continue
        gap = area_timeshare_both_on(g) - area_timeshare_exclusive(g)
        assert (gap > 0) == (orientation > 0)


def test_area_requires_two_users():
    g3 = ChannelGains(np.eye(3) + 0.1, 1.0)
    with pytest.raises(ValueError):
        area_power_control(g3, 64)
    with pytest.raises(ValueError):
        area_timeshare_both_on(g3)


# ---------------------------------------------------------------------------
# convex hull
# ---------------------------------------------------------------------------

def test_hull_chain_keeps_extremal_both_on_corner():
    corners = enumerate_corners(NOISE_LIMITED)
    assert convex_hull(corners.rates) == [2, 3, 1]


def test_hull_chain_drops_dominated_both_on_corner():
    corners = enumerate_corners(INTERFERENCE_LIMITED)
    assert convex_hull(corners.rates) == [2, 1]


def test_hull_chain_drops_collinear_interior_point():
    pts = np.array([[0.0, 1.0], [0.5, 0.5], [1.0, 0.0]])
    assert convex_hull(pts) == [1, 3]


def test_hull_rejects_bad_inputs():
    with pytest.raises(ValueError):
        convex_hull(np.array([[1.0, 1.0], [1.0, 1.0]]))
    with pytest.raises(ValueError):
        convex_hull(np.ones((3, 4)))
    with pytest.raises(ValueError):
        convex_hull(np.array([[1.0, 1.0]]))


def test_hull_chain_matches_scipy_on_random_clouds():
    rng = np.random.default_rng(3)
    for _ in range(20):
        pts = rng.uniform(0.0, 3.0, size=(rng.integers(3, 9), 2))
        seeded = np.vstack([[0.0, 0.0], pts])
        chain = convex_hull(pts)
        sp_vertices = set(ScipyHull(seeded).vertices.tolist())
        assert set(chain) <= sp_vertices
        xs = seeded[chain][:, 0]
        assert np.all(np.diff(xs) >= 0)  # ordered toward the high-R1 end
        # every non-origin hull vertex that is not Pareto-dominated shows up
        for v in sp_vertices - {0}:
            dominated = np.any(np.all(seeded >= seeded[v] + 1e-12, axis=1))
            if not dominated:
                assert v in chain


def test_three_user_facets_match_scipy_vertices():
    rng = np.random.default_rng(7)
    for _ in range(5):
        mat = rng.uniform(0.05, 5.0, size=(3, 3))
        np.fill_diagonal(mat, rng.uniform(0.5, 10.0, size=3))
        corners = enumerate_corners(ChannelGains(mat, 1.0))
        facets = convex_hull(corners.rates)
        seeded = np.vstack([np.zeros(3), corners.rates])
        assert facets, "hull should produce facets"
        mine = sorted(set(i for f in facets for i in f))
        assert mine == sorted(ScipyHull(seeded).vertices.tolist())
        for (i, j, k) in facets:
            normal = np.cross(seeded[j] - seeded[i], seeded[k] - seeded[i])
            offsets = (seeded - seeded[i]) @ normal
            assert offsets.max() <= 1e-9 * max(1.0, np.abs(offsets).max())


def test_three_user_box_region_gets_outward_facets():
    g = ChannelGains(np.diag([1.0, 1.0, 1.0]) + 1e-12 * np.ones((3, 3)), 1.0)
    # nearly interference-free: region is a unit cube spanned by the corners
    corners = enumerate_corners(g)
    facets = convex_hull(corners.rates)
    seeded = np.vstack([np.zeros(3), corners.rates])
    total = 0.0
    centroid = seeded.mean(axis=0)
    for (i, j, k) in facets:
        normal = np.cross(seeded[j] - seeded[i], seeded[k] - seeded[i])
        assert normal @ (seeded[i] - centroid) > 0  # outward orientation
        total += np.linalg.norm(normal) / 2
    assert math.isclose(total, 6.0, rel_tol=1e-6)  # cube surface area
