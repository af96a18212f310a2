"""
Symmetries of the marked points of a pencil of quadrics
=======================================================

A pencil of diagonal quadrics has n+1 singular members, i.e. n+1 marked
points on a line. Its automorphisms act on that line by Moebius maps that
permute the marked points.
"""

# %%
from jordanlab.cyclotomic import Cyclo, parse_scalar
from jordanlab.pencil import aut_w, cross_ratio, gamma_order

Q = lambda x: Cyclo(1, [x])

for lam in ([0, 1, 2], [0, 1, 2, 5], [0, 1, 3, 7, 12]):
    r = aut_w([Q(x) for x in lam])
    print(lam, "->", r.order, [str(p) for p in r.perms])

# %%
# four points: the cross-ratio decides the answer
print(cross_ratio(Q(0), Q(1), Q(2), Q(5)))
print(aut_w([parse_scalar(s) for s in ["1", "-1", "2", "1/2"]]).order)

# %%
roots = [Cyclo.zeta(6, k) for k in range(6)]
r = aut_w(roots)
print("sixth roots of unity:", r.order)
for M in r.maps[:4]:
    print("  ", M)

# %%
print([gamma_order(n) for n in range(4, 9)])
