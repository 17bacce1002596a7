"""Tour of the 2-user rate region: corners, frontiers, curvature, hull.

Walks the same channel through weak, one-sided and strong interference and
shows how the region's shape flips from convex (time-share through the
both-on corner) to non-convex (alternate instead).
"""

import numpy as np

from crystalrates import (ChannelGains, classify_frontier, convex_hull,
                          crystallized_rates, enumerate_corners, rates,
                          sample_frontier)

REGIMES = {
    "weak interference  (a=2,  b=0.2, c=1, d=0.1)": ChannelGains.two_user(2, 0.2, 1, 0.1),
    "one-sided          (a=20, b=2,   c=1, d=1)":   ChannelGains.two_user(20, 2, 1, 1),
    "strong symmetric   (a=1,  b=10,  c=1, d=10)":  ChannelGains.two_user(1, 10, 1, 10),
}

print("=" * 72)
print("RATE POINTS FOR ARBITRARY POWER VECTORS")
print("=" * 72)
g = ChannelGains.two_user(2, 0.2, 1, 0.1)
for p in ([1.0, 1.0], [1.0, 0.0], [0.3, 0.7]):
    print(f"  P = {p} -> R = {np.round(rates(g, p), 4)}")

print()
print("=" * 72)
print("CORNER POINTS (on/off power only; user 1 is the low bit of the index)")
print("=" * 72)
for name, gains in REGIMES.items():
    corners = enumerate_corners(gains)
    print(f"\n{name}")
    for k, bits, rate in zip(corners.indices, corners.bits, corners.rates):
        print(f"  corner {k}  bits={bits.tolist()}  R={np.round(rate, 4)}")

print()
print("=" * 72)
print("FRONTIER CURVATURE AND THE TIME-SHARING HULL")
print("=" * 72)
print("""
Each frontier pins one transmitter at full power while the other sweeps.
Concave frontiers mean the region is already convex (the both-on corner is
extremal); convex frontiers mean simultaneous transmission is wasteful and
the hull jumps straight between the two exclusive corners.
""")
for name, gains in REGIMES.items():
    labels = [classify_frontier(sample_frontier(gains, fixed, 513)) for fixed in (0, 1)]
    chain = convex_hull(enumerate_corners(gains).rates)
    both_on = "on the hull" if 3 in chain else "strictly inside"
    print(f"{name}")
    print(f"  frontier pinning user 1: {labels[0]:9s}  pinning user 2: {labels[1]:9s}")
    print(f"  hull chain (0 = origin): {chain}  -> both-on corner is {both_on}")

print()
print("=" * 72)
print("TIME-SHARED RATE POINTS")
print("=" * 72)
gains = REGIMES["one-sided          (a=20, b=2,   c=1, d=1)"]
corners = enumerate_corners(gains)
for theta in ([1.0, 0.0, 0.0], [0.0, 0.92, 0.08], [1 / 3, 1 / 3, 1 / 3]):
    point = crystallized_rates(corners, theta)
    print(f"  theta = {theta} -> R = {np.round(point, 4)}")
