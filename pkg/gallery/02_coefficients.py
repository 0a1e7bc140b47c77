"""
Dirichlet coefficients by sieve
===============================

``d_n`` counts family cubics of squared toric height ``n``, with a double
root weighted 1 and everything else 2.  It has a closed form over the
factorization of ``n``, and a segmented sieve produces it in bulk.
"""

# %%
import math

from abelia.dirichlet import coefficient, sieve_coefficients, streaming_partial_sums
from abelia.enumeration import weighted_count_by_height

table = sieve_coefficients(10**5)
print([table[n] for n in range(1, 30)])

# %%
# Brute force over every ``(a, b)`` agrees with the formula.
brute = weighted_count_by_height(math.sqrt(2000))
assert all(brute.get(n, 0) == coefficient(n) for n in range(1, 2001))
print("brute force and formula agree for n <= 2000")

# %%
# Partial sums grow like ``X log X``; streaming keeps memory flat.
for X, S in streaming_partial_sums([10**4, 10**5, 10**6, 10**7]).items():
    print(f"X = {X:>9}  sum = {S:>10}  sum/(X log X) = {S / (X * math.log(X)):.4f}")
