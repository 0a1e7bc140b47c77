"""
Exact counts of cyclic cubics
=============================

For each ``a <= 0`` the number of cyclic cubics is ``d_n/2 - #E/6`` with
``n = 1 - 3a`` and ``#E`` the lattice points on an ellipse.  Summing over
``a`` and subtracting the reducible census gives the count by toric height.
"""

# %%
from abelia.counting import c3_count_for_a, on_ellipse_count
from abelia.dirichlet import coefficient, sieve_coefficients
from abelia.enumeration import brute_c3_count_for_a, count_c3_root_height, fast_c3_count_toric

for a in range(0, -20, -1):
    n = 1 - 3 * a
    print(f"a = {a:>3}  d_n = {coefficient(n):>2}  #E = {on_ellipse_count(n):>2}  "
          f"cyclic = {c3_count_for_a(a)}")
    assert c3_count_for_a(a) == brute_c3_count_for_a(a)

# %%
table = sieve_coefficients(100**2)
for H in (10, 30, 100):
    print(f"toric height <= {H}: {fast_c3_count_toric(H, table)} cyclic cubics")

# %%
# Root height ``max(|a|^(1/2), |b|^(1/3))`` needs a direct scan.
for H in (2, 5, 10, 20):
    print(f"root height <= {H}: {count_c3_root_height(H, workers=4)}")
