"""The rank condition on S(T0) for two solvable laws and one failure."""
from rigida.catalog import borel5_law, counter4_law, ex8_law
from rigida.structure import TorusSpec, rank_theorem_check, root_decomposition

for name, law, torus in (("borel5", borel5_law(), (0, 1)),
                         ("ex8", ex8_law(), (0, 1, 2)),
                         ("counter4", counter4_law(), (0,))):
    rep = rank_theorem_check(law, TorusSpec(torus))
    T0 = " + ".join(f"{law.labels[t]}" if rep.regular[t] == 1 else f"{rep.regular[t]}{law.labels[t]}"
                    for t in torus if rep.regular[t])
    print(f"{name}: regular T0 = {T0}, dim ker ad T0 = {rep.kernel_dim}")
    for eq in rep.system:
        print(f"    {eq}")
    verdict = "pass" if rep.passed else "fail"
    print(f"    rank {rep.rank}, expected {rep.expected}: {verdict}")

roots = root_decomposition(borel5_law(), TorusSpec((0, 1)))
print("borel5 roots:", ", ".join("(" + ", ".join(str(x) for x in w) + ")" for w in sorted(roots)))
