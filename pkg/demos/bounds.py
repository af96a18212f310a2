"""
Bounds from group orders and from representation splittings
===========================================================

Two purely arithmetic bounds: one from the prime factorization of |G|
(every p-group of order p^k has an abelian subgroup of order p^a with
a(a+1) >= 2k), the other from how a 7-dimensional representation splits.
"""

# %%
import numpy as np

from jordanlab import caselaw

n = np.arange(1, 79381)
bounds = np.array([caselaw.order_bound(int(k)) for k in n[:5000]])
print("order bound, |G| <= 5000: max", bounds.max(), "at", int(n[bounds.argmax()]))

# %%
mx, arg = caselaw.max_order_bound_upto(79380)
print("order bound, |G| <= 79380: max", mx, "at", arg, caselaw.factorize(arg))

# %%
best, cases = caselaw.isotypical_bound(7, 4)
for c in cases:
    print(f"{str(c):<20} {c.bound:>6}")
print("max", best)

# %%
rep = caselaw.ledger_check()
print(f"ledger: {sum(r.ok for r in rep.rows)}/{len(rep.rows)} entries reproduce")
for r in rep.rows[:6]:
    print(f"  {r.entry.id:<20} {caselaw.render(r.entry.expr):<28} = {r.value}")
