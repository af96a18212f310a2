"""
Largest abelian subgroups of A5 wr S2 and A5 wr S3
==================================================

Both groups act imprimitively on blocks of five points. The search below
certifies that the largest abelian subgroups have orders 25 and 125, so the
weak Jordan constants are 7200/25 = 288 and 1296000/125 = 10368.
"""

# %%
import time

from jordanlab import atlas, jordan

W2 = atlas.get_group("A5wrS2")
W3 = atlas.get_group("A5wrS3")
print(W2.order(), W3.order())

# %%
# A5 alone: the largest abelian subgroup is a 5-cycle group
A5 = atlas.get_group("A5")
res = jordan.max_abelian(A5)
print("A5:", res.order, [str(g) for g in res.witness])

# %%
# one 5-cycle per block commutes with the others; nothing bigger exists
for G in (W2, W3):
    t = time.perf_counter()
    res = jordan.max_abelian(G)
    print(f"order {G.order():>8}: max abelian {res.order:>4}, "
          f"weak Jordan {G.order() // res.order:>6}, nodes {res.nodes}, {time.perf_counter() - t:.1f} s")
    print("   witness:", [str(g) for g in res.witness])
    print("   self-centralizing:", jordan.is_self_centralizing(G, res.witness))

# %%
# no nontrivial abelian normal subgroup in A5 wr S3: the two constants differ a lot
rep = jordan.jordan_report(W3, "A5wrS3")
print(rep.weak_jordan, rep.jordan, rep.weak_jordan ** 2)
