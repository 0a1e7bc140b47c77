"""
Leading constants and the second-order term
===========================================

The height zeta function has a double pole at ``s = 2`` with Laurent
coefficients ``c2`` and ``c1``.  They are evaluated from truncated Euler
products with certified tails, then compared with the coefficient sum.
"""

# %%
import math

from abelia.constants import C_and_D
from abelia.dirichlet import streaming_partial_sums

rep = C_and_D()
for name in ("c2", "c1", "C", "D_standard", "D_printed"):
    v = getattr(rep, name)
    print(f"{name:<11} {float(v.value):.12f}  +- {v.tail_bound:.1e}")
print(rep.deltas)

# %%
# ``R(X) = (S(X) - (c2/4) X log X)/X`` settles near ``c1/2 - c2/4``, the
# standard residue term, rather than ``c1/2``.
c2, c1 = float(rep.c2.value), float(rep.c1.value)
for X, S in streaming_partial_sums([10**5, 10**6, 10**7, 10**8]).items():
    R = (S - c2 / 4 * X * math.log(X)) / X
    print(f"X = 1e{round(math.log10(X))}  R = {R:.5f}  leading ratio = "
          f"{S / (c2 / 4 * X * math.log(X)):.4f}")
print(f"c1/2 - c2/4 = {c1 / 2 - c2 / 4:.5f}   c1/2 = {c1 / 2:.5f}")
