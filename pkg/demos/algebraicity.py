"""Jordan parts, saturation and replica lattices on small matrix algebras."""
from rigida.algebraicity import (
    ad_algebra,
    algebraicity_verdict,
    jordan_saturation,
    make_linear_algebra,
)
from rigida.catalog import epi_assignment, epi_shadow_law, g2_law, h_generators
from rigida.jordan import jordan_chevalley


def rows(M):
    return "\n".join("    " + "  ".join(f"{str(x):>5s}" for x in r) for r in M.tolist())


h = make_linear_algebra(h_generators(1, 0), ["X1", "X2", "X3"])
pair = jordan_chevalley(h.basis[0])
print("X1 semisimple part:\n" + rows(pair.S))
print("X1 nilpotent part:\n" + rows(pair.N))

v = algebraicity_verdict(h)
print("h_{1,0}:", v.status, "-", v.reason)

sat = jordan_saturation(h)
print(f"saturation: dim {sat.algebra.dim} after {sat.rounds} rounds, fixed point {sat.fixed_point}")
m = sat.algebra
print("m:", algebraicity_verdict(m).status)

print("Ad(g2):", algebraicity_verdict(ad_algebra(g2_law())).status)

# ad T has eigenvalues 0, e, pi; the rational shadow only fixes the zero pattern
L = ad_algebra(epi_shadow_law())
v = algebraicity_verdict(L, epi_assignment())
print("Ad with eigenvalues (0, e, pi):", v.status)
print("replica witness:\n" + rows(v.witness_matrix()))
