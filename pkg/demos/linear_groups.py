"""
Finite subgroups of GL_n attaining the weak Jordan constants
============================================================

Matrix groups over small finite fields stand in for the complex groups:
SL2(F5) is the binary icosahedral group, 3.A6 sits in SL3(F4) as the
stabilizer of a hyperoval, and Sp4(F3) is generated by transvections.
"""

# %%
from jordanlab import atlas, fields, jordan, suite

for name in ["A5", "2.A5", "A6", "3.A6", "PSp4F3", "Sp4F3"]:
    G = atlas.get_group(name)
    r = jordan.jordan_report(G, name)
    print(f"{name:<7} |G| = {r.order:>6}  max abelian {r.max_abelian.order:>3}  "
          f"Jbar {r.weak_jordan:>4}  J {r.jordan:>6}")

# %%
# the projective action kills scalars, so the orders differ by the centre
gens = fields.sl2_generators(5)
affine = fields.matrix_to_perm(5, 2, gens, fields.AFFINE)
proj = fields.matrix_to_perm(5, 2, gens, fields.PROJECTIVE)
print(affine.degree, affine.order(), "->", proj.degree, proj.order())

# %%
# the table rows, as the CLI prints them
for row in suite.table1():
    print(row)
