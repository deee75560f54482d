"""Cohomological rigidity of a few laws, then the 13-dimensional solvable law."""
from rigida.catalog import heisenberg_law, phi13_cochain, rigid13_law, sl2_law
from rigida.cohomology import cohomology_report, is_coboundary, is_cocycle
from rigida.liecore import LieLaw


def show(name, law):
    r = cohomology_report(law)
    print(f"{name:8s} dim {r.dim:2d}  Der {r.dim_der:3d}  H1 {r.dim_H1}  H2 {r.dim_H2}  {r.verdict}")


show("sl2", sl2_law())
show("heis3", heisenberg_law())
show("rigid13", LieLaw(rigid13_law()))

# H2 = 1 here, and phi spans it
phi = phi13_cochain()
print("phi cocycle:", is_cocycle(rigid13_law(), phi))
print("phi coboundary:", is_coboundary(rigid13_law(), phi) is not None)
print("note: H2 = 0 suffices for rigidity; H2 > 0 decides nothing")
