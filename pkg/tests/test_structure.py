import itertools
import random
from fractions import Fraction

import pytest

from rigida.catalog import borel5_law, counter4_law, ex8_law, heisenberg_law, sl2_law
from rigida.errors import HypothesisError, RigidaError
from rigida.exactlin import QMatrix, rank, solve_linear
from rigida.liecore import (
    LieLaw,
    StructureConstants,
    ad_matrix,
    center,
    jacobi_defect,
    transport,
    unit,
)
from rigida.structure import (
    TorusSpec,
    kernel_dim_combinatorial,
    minimal_kernel_dim,
    rank_theorem_check,
    regular_vector,
    root_decomposition,
    verify_decomposition,
)


def weights_by_label(law, wt):
    out = {}
    for v, w in zip(wt.eigenbasis, wt.weights):
        nz = [i for i, x in enumerate(v) if x]
        assert len(nz) == 1
        out[law.labels[nz[0]]] = w
    return out


def graded_law(rng, r, m):
    """Torus T1..Tr acting diagonally on X1..Xm, nil brackets respecting weights."""
    m = max(m, r)  # weights must span the torus dual for a trivial center
    while True:
        weights = [tuple(rng.randint(-1, 2) for _ in range(r)) for _ in range(m)]
        if any(not any(w) for w in weights):
            continue
        t = {}
        for a in range(m):
            for g in range(r):
                if weights[a][g]:
                    t[(g, r + a, r + a)] = weights[a][g]
        for a, b, c in itertools.combinations(range(m), 3):
            if tuple(x + y for x, y in zip(weights[a], weights[b])) == weights[c] and rng.random() < 0.7:
                t[(r + a, r + b, r + c)] = rng.choice([1, 2, -1])
        sc = StructureConstants(r + m, t, [f"T{g + 1}" for g in range(r)] + [f"X{a + 1}" for a in range(m)])
        if jacobi_defect(sc):
            continue
        law = LieLaw(sc)
        if center(law):
            continue
        ads = [ad_matrix(law, unit(r + m, g)).flatten() for g in range(r)]
        if rank(QMatrix(ads)) < r:
            continue
        return law


def permuted(law, torus, perm):
    n = law.dim
    P = QMatrix([[int(perm[c] == i) for c in range(n)] for i in range(n)])
    new = transport(law, P)
    inv = {perm[c]: c for c in range(n)}
    return new, TorusSpec(tuple(inv[t] for t in torus))


# --- TorusSpec --------------------------------------------------------------

def test_torus_spec():
    assert TorusSpec.parse("1,2").indices == (0, 1)
    assert TorusSpec.parse("").indices == ()
    with pytest.raises(RigidaError):
        TorusSpec.parse("1,x")
    with pytest.raises(RigidaError):
        TorusSpec((0, 0))
    with pytest.raises(RigidaError):
        TorusSpec((5,)).check(3)


# --- decomposition ---------------------------------------------------------

def test_decomposition_borel5():
    law = LieLaw(borel5_law())
    wt = verify_decomposition(law, TorusSpec((0, 1)))
    assert weights_by_label(law, wt) == {"X1": (1, 0), "X2": (0, 1), "X3": (1, 1)}


def test_decomposition_ex8():
    law = LieLaw(ex8_law())
    wt = verify_decomposition(law, TorusSpec((0, 1, 2)))
    assert weights_by_label(law, wt) == {
        "X1": (1, 0, 0), "X2": (1, 1, 0), "X3": (1, 1, 1), "X4": (1, 0, -1), "X5": (2, 1, 0)}


def test_decomposition_empty_torus():
    wt = verify_decomposition(heisenberg_law(), TorusSpec(()))
    assert len(wt.eigenbasis) == 3 and all(w == () for w in wt.weights)


def test_decomposition_errors():
    law = LieLaw(borel5_law())
    with pytest.raises(HypothesisError):
        verify_decomposition(law, TorusSpec((2,)))  # ad X1 is not semisimple
    with pytest.raises(HypothesisError):
        verify_decomposition(sl2_law(), TorusSpec((1,)))  # complement is not an ideal
    with pytest.raises(RigidaError):
        verify_decomposition(law, TorusSpec((7,)))


# --- regular vectors -----------------------------------------------------------

def test_regular_vector_examples():
    law = LieLaw(borel5_law())
    wt = verify_decomposition(law, TorusSpec((0, 1)))
    T0 = regular_vector(law, wt)
    assert T0 == (1, 1, 0, 0, 0)
    assert kernel_dim_combinatorial(wt, T0) == minimal_kernel_dim(wt) == 2
    law = LieLaw(ex8_law())
    wt = verify_decomposition(law, TorusSpec((0, 1, 2)))
    assert regular_vector(law, wt) == (1, 0, 0, 0, 0, 0, 0, 0)
    law = LieLaw(counter4_law())
    wt = verify_decomposition(law, TorusSpec((0,)))
    assert regular_vector(law, wt) == (1, 0, 0, 0)


def test_regular_vector_kernel_matches_ad_rank():
    rng = random.Random(601)
    for _ in range(60):
        r, m = rng.randint(1, 3), rng.randint(1, 4)
        law = graded_law(rng, r, m)
        wt = verify_decomposition(law, TorusSpec(tuple(range(r))))
        T0 = regular_vector(law, wt)
        k = kernel_dim_combinatorial(wt, T0)
        assert k == law.dim - rank(ad_matrix(law, T0))
        assert k == minimal_kernel_dim(wt)
        # no torus combination of small height does better
        for c in itertools.product(range(-2, 3), repeat=r):
            T = [Fraction(0)] * law.dim
            for g, x in enumerate(c):
                T[g] = Fraction(x)
            assert law.dim - rank(ad_matrix(law, T)) >= k


# --- rank system -------------------------------------------------------------------

def test_rank_system_borel5():
    law = LieLaw(borel5_law())
    rep = rank_theorem_check(law, TorusSpec((0, 1)))
    assert rep.variables == ("t2", "x1", "x2", "x3")
    assert [str(e) for e in rep.system] == ["t2 + x2 = x2", "t2 + x3 = x3", "x1 + x2 = x3"]
    assert (rep.rank, rep.expected, rep.passed) == (2, 2, True)


def test_rank_system_ex8():
    law = LieLaw(ex8_law())
    rep = rank_theorem_check(law, TorusSpec((0, 1, 2)))
    eqs = {str(e) for e in rep.system}
    assert {"x1 + x2 = x5", "x3 + x4 = x5"} <= eqs
    assert {"t2 + x2 = x2", "t2 + x3 = x3", "t2 + x5 = x5"} <= eqs
    assert {"t3 + x3 = x3", "t3 + x4 = x4"} <= eqs
    assert not any(e.startswith("T0") for e in eqs)
    assert (rep.rank, rep.expected, rep.passed) == (4, 4, True)


def test_rank_system_counterexample():
    rep = rank_theorem_check(LieLaw(counter4_law()), TorusSpec((0,)))
    assert rep.system == () and rep.rank == 0 and rep.expected == 2 and not rep.passed


def test_rank_hypotheses():
    with pytest.raises(HypothesisError):
        rank_theorem_check(sl2_law(), TorusSpec((1,)))
    with pytest.raises(HypothesisError):
        rank_theorem_check(heisenberg_law(), TorusSpec(()))


def test_rank_basis_order_invariant():
    rng = random.Random(602)
    for law, torus in ((LieLaw(borel5_law()), (0, 1)), (LieLaw(ex8_law()), (0, 1, 2))):
        base = rank_theorem_check(law, TorusSpec(torus)).rank
        for _ in range(10):
            perm = list(range(law.dim))
            rng.shuffle(perm)
            new, t = permuted(law, torus, perm)
            assert rank_theorem_check(new, t).rank == base


def test_rank_random_graded_permuted():
    rng = random.Random(603)
    for _ in range(30):
        r, m = rng.randint(1, 2), rng.randint(2, 4)
        law = graded_law(rng, r, m)
        torus = tuple(range(r))
        base = rank_theorem_check(law, TorusSpec(torus))
        assert base.passed == (base.rank == base.expected)
        perm = list(range(law.dim))
        rng.shuffle(perm)
        new, t = permuted(law, torus, perm)
        assert rank_theorem_check(new, t).rank == base.rank


# --- roots ------------------------------------------------------------------

def test_roots_borel5():
    roots = root_decomposition(borel5_law(), TorusSpec((0, 1)))
    assert set(roots) == {(1, 0), (0, 1), (1, 1)}
    assert all(len(v) == 1 for v in roots.values())


def test_roots_ex8():
    roots = root_decomposition(ex8_law(), TorusSpec((0, 1, 2)))
    assert len(roots) == 5
    assert roots[(1, 0, 0)] == [unit(8, 3)]


def test_roots_empty_torus():
    roots = root_decomposition(heisenberg_law(), TorusSpec(()))
    assert list(roots) == [()] and len(roots[()]) == 3


def test_roots_properties():
    rng = random.Random(604)
    for _ in range(60):
        r, m = rng.randint(1, 3), rng.randint(1, 4)
        law = graded_law(rng, r, m)
        torus = TorusSpec(tuple(range(r)))
        wt = verify_decomposition(law, torus)
        for v, w in zip(wt.eigenbasis, wt.weights):
            for g, lam in zip(torus.indices, w):
                assert law.bracket(unit(law.dim, g), v) == tuple(lam * x for x in v)
        roots = root_decomposition(law, torus)
        assert sum(len(v) for v in roots.values()) + r == law.dim
        # weight additivity on nonzero brackets
        for (a, va), (b, vb) in itertools.product(roots.items(), repeat=2):
            for x in va:
                for y in vb:
                    z = law.bracket(x, y)
                    if any(z):
                        gamma = tuple(p + q for p, q in zip(a, b))
                        assert gamma in roots
                        basis = QMatrix.from_columns(roots[gamma])
                        assert solve_linear(basis, z) is not None
