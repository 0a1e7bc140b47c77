"""
Cubics and their quadratic partners
===================================

Every cyclic or split trace-one cubic ``t^3 - t^2 + a t + b`` comes from an
element ``u + v*zeta`` of Q(sqrt(-3)).  This walkthrough builds the
correspondence table for a few heights and round-trips each row.
"""

# %%
# The quadratic attached to a cubic has norm ``1 - 3a`` (the squared toric
# height) and a rational trace.  Discriminants are shown factored.
from abelia.cubic import TraceOneCubic
from abelia.cyclo import elements_of, rows_at_height

for n in (1, 4, 7, 13, 19):
    for row in rows_at_height(n):
        d = row.as_dict()
        print(f"{d['f']:<24} {d['g']:<22} {d['disc_f_factored']:<14} {d['disc_g_factored']}")

# %%
# A cyclic cubic has two parametrizing elements, a double-root cubic one.
for a, b in [(-2, 1), (-1, 1), (-190, -800)]:
    f = TraceOneCubic(a, b)
    els = elements_of(f)
    print(f, f.classify(), [str(e) for e in els])
    assert all(e.to_cubic() == (a, b) for e in els)

# %%
# Height 589 has eight family members; half of them are cyclic.
for row in rows_at_height(589):
    print(row.cubic, "|", row.cubic.classify())
