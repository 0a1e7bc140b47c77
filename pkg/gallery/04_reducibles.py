"""
Counting the reducible cubics
=============================

Split family cubics are ``S3``-orbits of lattice points inside an ellipse.
Double-root cubics lie on three lines through the ellipse centre, so their
number grows linearly while the rest grow with the area.
"""

# %%
import math

from abelia.counting import reducible_asymptotic, reducible_census, stabilized_point_count

print(f"{'H':>5} {'disc 0':>7} {'2H/3':>7} {'disc != 0':>10} {'area term':>11} {'on lines':>9}")
for H in (10, 30, 100, 300, 1000):
    c = reducible_census(H)
    print(f"{H:>5} {c.count_disc_zero:>7} {2 * H / 3:>7.1f} {c.count_disc_nonzero:>10} "
          f"{reducible_asymptotic(H):>11.1f} {stabilized_point_count(H):>9}")

# %%
# The weighted total is a third of the region's lattice points, so the
# linear terms cancel out of the final count whatever the line count is.
# The region has area 2 pi H^2/(3 sqrt 3) up to O(1).
for H in (100, 1000):
    c = reducible_census(H)
    area = 2 * math.pi * H * H / (3 * math.sqrt(3))
    print(f"H = {H}: weighted total {c.count_disc_zero + 2 * c.count_disc_nonzero}, "
          f"area/3 = {area / 3:.1f}")
