"""How much region area does on/off time sharing give up against full
power control?

Sweeps symmetric cross interference from -20 dB to +20 dB on a unit-gain
channel and compares three areas: the power-control region, the
time-sharing quadrilateral through the both-on corner, and the alternation
triangle (which ignores the cross gains entirely).  The punchline: the loss
from dropping power control never reaches 1%, while in strong interference
time sharing wins by hundreds of percent.
"""

import numpy as np

from crystalrates import (ChannelGains, area_power_control,
                          area_timeshare_both_on, area_timeshare_exclusive,
                          timeshare_gain_percent)

GRID = 1024

print("=" * 76)
print("AREA COMPARISON, SYMMETRIC CHANNEL a = c = 1, CROSS GAIN b = d SWEPT")
print("=" * 76)
print(f"{'b [dB]':>7} {'b':>10} {'power ctrl':>12} {'via both-on':>12} "
      f"{'alternation':>12} {'gain %':>10}")

crossover = None
previous = None
for db in np.linspace(-20, 20, 21):
    b = 10.0 ** (db / 10.0)
    gains = ChannelGains.two_user(1.0, b, 1.0, b)
    pc = area_power_control(gains, GRID)
    ts = area_timeshare_both_on(gains)
    ex = area_timeshare_exclusive(gains)
    pct = timeshare_gain_percent(gains, GRID)
    if previous is not None and previous < 0 <= pct:
        crossover = db
    previous = pct
    print(f"{db:7.1f} {b:10.4f} {pc:12.6f} {ts:12.6f} {ex:12.6f} {pct:10.2f}")

print()
print(f"time sharing overtakes power control near b = {crossover:+.0f} dB")
print("""
Reading the table:
  * far left (weak interference) the region is nearly the unit square and
    the quadrilateral through the both-on corner loses well under 1%;
  * the alternation triangle stays at 0.5 no matter the interference;
  * far right (strong interference) both power control and the both-on
    corner collapse toward the origin, so even the thin quadrilateral
    beats power control by ~800%, and alternation beats everything.
""")
