import random
from fractions import Fraction

import pytest

from rigida.algebraicity import (
    ALGEBRAIC,
    INCONCLUSIVE,
    NOT_ALGEBRAIC,
    EigenvalueAssignment,
    ReplicaWitness,
    SplitWitness,
    ad_algebra,
    algebraicity_verdict,
    jordan_saturation,
    make_linear_algebra,
    relation_lattice,
    split_closure_witness,
    torus_replica_defect,
    unipotent_certificate,
)
from rigida.catalog import (
    epi_assignment,
    epi_shadow_law,
    g2_law,
    h_generators,
    heisenberg_law,
    load_fixture,
    x4_matrix,
)
from rigida.errors import DimensionError, NotClosedError, RigidaError
from rigida.exactlin import QMatrix, commutator, independent_subset, inverse, solve_linear
from rigida.jordan import eigenvalue_tuple, jordan_chevalley
from rigida.liecore import abelian

from test_liecore import random_invertible, random_law


def E(n, i, j):
    return QMatrix([[int(r == i and c == j) for c in range(n)] for r in range(n)])


def algebra(name, *args):
    return load_fixture(name, *args).payload


def outside_span(L, M):
    """Independent re-check: solve the flattened span system."""
    if not L.basis:
        return not M.is_zero()
    return solve_linear(QMatrix.from_columns([b.flatten() for b in L.basis]), M.flatten()) is None


def random_linear_algebra(rng):
    """Conjugated ad algebras, diagonal tori over upper nilpotent parts, and sums."""
    kind = rng.randrange(3)
    if kind == 0:
        law = random_law(rng, rng.randint(3, 4))
        L = ad_algebra(law)
        P = random_invertible(rng, L.ambient)
        Pi = inverse(P)
        return make_linear_algebra([P @ b @ Pi for b in L.basis], ambient=L.ambient)
    m = rng.randint(2, 4)
    gens = [QMatrix.diag([rng.randint(-2, 2) for _ in range(m)]) for _ in range(rng.randint(1, 2))]
    if kind == 2:
        # a generic element of the torus plus a commuting nilpotent in the same algebra
        gens = [gens[0] + QMatrix([[int(c == r + 1 and r == 0) for c in range(m)] for r in range(m)])]
    keep = independent_subset([g.flatten() for g in gens])
    gens = [gens[i] for i in keep]
    return make_linear_algebra(gens, ambient=m) if gens else make_linear_algebra([], ambient=m)


# --- construction ---------------------------------------------------------

def test_make_linear_algebra_examples():
    n2 = algebra("n2_matrix")
    assert n2.induced == heisenberg_law()
    h = make_linear_algebra(h_generators(1, 0))
    assert h.induced == heisenberg_law()
    with pytest.raises(NotClosedError) as info:
        make_linear_algebra([E(2, 0, 0), E(2, 0, 1), E(2, 1, 0)])
    assert info.value.pair == (1, 2)
    with pytest.raises(DimensionError):
        make_linear_algebra([E(2, 0, 0), E(3, 0, 0)])


def test_linear_algebra_membership():
    L = make_linear_algebra(h_generators(1, 0))
    X = L.element((2, -1, 3))
    assert L.contains(X) and L.coordinates(X) == (2, -1, 3)
    assert not L.contains(x4_matrix(1, 0))
    assert L.coordinates(x4_matrix(1, 0)) is None


def test_ad_algebra_examples():
    assert ad_algebra(abelian(3)).dim == 0
    L = ad_algebra(g2_law())
    assert L.dim == 2
    # ad(xX + yY) = [[0, 0], [-y, x]]
    x, y = Fraction(3), Fraction(-5)
    assert L.contains(QMatrix([[0, 0], [-y, x]]))
    H = ad_algebra(heisenberg_law())
    assert H.dim == 2 and unipotent_certificate(H) is not None


# --- unipotent flags and split probes ----------------------------------------

def test_unipotent_certificate():
    n2 = algebra("n2_matrix")
    flag = unipotent_certificate(n2)
    assert flag is not None and flag.levels[-1] == 3
    assert unipotent_certificate(algebra("a1")) is None


def test_unipotent_flag_is_adapted():
    flag = unipotent_certificate(algebra("n2_matrix"))
    for A in algebra("n2_matrix").basis:
        for k in range(1, len(flag.levels)):
            lower = list(flag.basis[:flag.levels[k - 1]])
            for v in flag.basis[flag.levels[k - 1]:flag.levels[k]]:
                w = A.apply(v)
                assert not any(w) or (lower and solve_linear(QMatrix.from_columns(lower), w) is not None)


def test_split_witness_examples():
    w = split_closure_witness(algebra("a1"))
    assert isinstance(w, SplitWitness) and w.part == "S"
    S = w.matrix
    assert S[0, 0] == S[1, 1] and S[0, 1] == S[1, 0] == 0
    h = make_linear_algebra(h_generators(1, 0), ["X1", "X2", "X3"])
    w = split_closure_witness(h)
    assert w.probe_label == "X1" and w.part == "S" and w.matrix == x4_matrix(1, 0)
    assert split_closure_witness(algebra("n2_matrix")) is None


# --- saturation -----------------------------------------------------------------

def test_saturation_examples():
    n2 = algebra("n2_matrix")
    r = jordan_saturation(n2)
    assert r.algebra.dim == 3 and r.fixed_point
    r = jordan_saturation(algebra("a1"))
    assert r.algebra.dim == 2 and r.fixed_point
    assert r.algebra.contains(QMatrix.identity(2))
    h = make_linear_algebra(h_generators(1, 0))
    r = jordan_saturation(h)
    assert r.algebra.dim == 4 and r.fixed_point and r.rounds <= 2
    X4 = r.algebra.basis[3]
    assert X4 == x4_matrix(1, 0)
    for X in h.basis:
        assert commutator(X, X4).is_zero()


def test_saturation_round_limit():
    h = make_linear_algebra(h_generators(1, 0))
    r = jordan_saturation(h, max_rounds=1)
    assert not r.fixed_point and r.rounds == 1


def test_saturation_properties():
    rng = random.Random(501)
    for _ in range(40):
        L = random_linear_algebra(rng)
        r = jordan_saturation(L)
        A = r.algebra
        for b in L.basis:
            assert A.contains(b)
        for X in A.basis:
            for Y in A.basis:
                assert A.contains(commutator(X, Y))
        if r.fixed_point:
            again = jordan_saturation(A, max_rounds=1)
            assert again.algebra.dim == A.dim
            for X in A.basis:
                jp = jordan_chevalley(X)
                assert A.contains(jp.S) and A.contains(jp.N)


# --- lattices and defects ----------------------------------------------------

def test_relation_lattice_examples():
    lat = relation_lattice(EigenvalueAssignment.rational([(0, 0, 0, 2)]))
    assert lat.rank == 3
    assert all(v[3] == 0 for v in lat.basis)
    lat = relation_lattice(epi_assignment())
    assert lat.rank == 1 and lat.contains((1, 0, 0))
    assert relation_lattice(EigenvalueAssignment.rational([(0, 0, 0)])).rank == 3


def test_relation_lattice_orthogonality():
    rng = random.Random(502)
    for _ in range(100):
        n, s = rng.randint(1, 5), rng.randint(1, 3)
        tuples = [tuple(tuple(rng.randint(-2, 2) for _ in range(s)) for _ in range(n))
                  for _ in range(rng.randint(1, 2))]
        a = EigenvalueAssignment(tuple(f"s{k}" for k in range(s)), tuple(tuples))
        lat = relation_lattice(a)
        for p in lat.basis:
            for t in a.tuples:
                for k in range(s):
                    assert sum(p[i] * t[i][k] for i in range(n)) == 0


def test_replica_defect_examples():
    rd = torus_replica_defect(EigenvalueAssignment.rational([(0, 0, 0, 2)]), 1)
    assert tuple(rd) == (1, 0)
    assert rd.hull_basis == ((0, 0, 0, 1),)
    # Y = (m/2) X4 has eigenvalues m * (0, 0, 0, 1)
    for m in (1, 3, -2):
        assert sorted(eigenvalue_tuple(x4_matrix(1, 0) * Fraction(m, 2))) == sorted((0, 0, 0, m))
    rd = torus_replica_defect(epi_assignment(), 1)
    assert tuple(rd) == (2, 1)
    assert rd.witness == (0, 1, 1)
    rd = torus_replica_defect(EigenvalueAssignment.rational([(0, 1)]), 1)
    assert tuple(rd) == (1, 0)


def test_replica_defect_errors():
    with pytest.raises(RigidaError):
        torus_replica_defect(EigenvalueAssignment.rational([(0, 1)]), 2)
    with pytest.raises(RigidaError):
        EigenvalueAssignment(("e", "e"), ())
    with pytest.raises(DimensionError):
        EigenvalueAssignment(("e",), (((1,), (1, 2)),))


def test_replica_defect_monotone():
    rng = random.Random(503)
    for _ in range(100):
        n = rng.randint(2, 5)
        t1 = tuple(rng.randint(-3, 3) for _ in range(n))
        if not any(t1):
            continue
        a1 = EigenvalueAssignment.rational([t1])
        # a second generator inside the hull of the first: a rational multiple
        t2 = tuple(2 * x for x in t1)
        hull1, d1 = torus_replica_defect(a1, 1)
        rd = torus_replica_defect(a1, 1)
        for h in rd.hull_basis:
            if not any(h):
                continue
            a2 = EigenvalueAssignment.rational([t1, h])
            try:
                hull2, d2 = torus_replica_defect(a2, 2)
            except RigidaError:
                continue  # h dependent on t1
            if hull2 == hull1:
                assert d2 <= d1
        assert relation_lattice(EigenvalueAssignment.rational([t1, t2])).rank == relation_lattice(a1).rank


# --- verdicts ---------------------------------------------------------------------

def check_witness(L, v):
    assert v.witness is not None
    assert outside_span(L, v.witness_matrix())


def test_verdict_examples():
    v = algebraicity_verdict(algebra("n2_matrix"))
    assert v.status == ALGEBRAIC and v.certificate["kind"] == "unipotent"
    h = make_linear_algebra(h_generators(1, 0), ["X1", "X2", "X3"])
    v = algebraicity_verdict(h)
    assert v.status == NOT_ALGEBRAIC and v.witness.probe_label == "X1"
    check_witness(h, v)
    a1 = algebra("a1")
    v = algebraicity_verdict(a1)
    assert v.status == NOT_ALGEBRAIC
    check_witness(a1, v)
    m = algebra("m_alpha_beta")
    v = algebraicity_verdict(m)
    assert v.status == ALGEBRAIC and v.certificate["defect"] == 0
    assert v.certificate["hull_dim"] == 1
    v = algebraicity_verdict(ad_algebra(g2_law()))
    assert v.status == ALGEBRAIC and v.certificate is not None


def test_verdict_epi():
    L = ad_algebra(epi_shadow_law())
    assert algebraicity_verdict(L).status == ALGEBRAIC
    v = algebraicity_verdict(L, epi_assignment())
    assert v.status == NOT_ALGEBRAIC
    assert isinstance(v.witness, ReplicaWitness)
    assert v.witness.tuple == (0, 1, 1)
    assert v.witness_matrix() == QMatrix.diag([0, 1, 1])
    check_witness(L, v)


def test_verdict_assignment_mismatch():
    L = ad_algebra(epi_shadow_law())
    bad = EigenvalueAssignment(("e", "pi"), (((1, 0), (1, 0), (0, 1)),))
    assert algebraicity_verdict(L, bad).status == INCONCLUSIVE


def test_verdict_irrational_torus():
    L = make_linear_algebra([QMatrix([[0, 2], [1, 0]])])
    assert algebraicity_verdict(L).status == INCONCLUSIVE


def test_verdicts_have_evidence():
    rng = random.Random(504)
    for _ in range(60):
        L = random_linear_algebra(rng)
        v = algebraicity_verdict(L)
        if v.status == NOT_ALGEBRAIC:
            check_witness(L, v)
        elif v.status == ALGEBRAIC:
            assert v.certificate is not None
        if unipotent_certificate(L) is not None:
            assert split_closure_witness(L) is None
            assert v.status == ALGEBRAIC


def test_rational_diagonal_tori_are_algebraic():
    # with rational eigenvalues the hull is the Q-span of the tuples, so the defect vanishes
    rng = random.Random(505)
    for _ in range(60):
        m = rng.randint(1, 4)
        gens = [QMatrix.diag([rng.randint(-3, 3) for _ in range(m)]) for _ in range(rng.randint(1, 3))]
        keep = independent_subset([g.flatten() for g in gens])
        L = make_linear_algebra([gens[i] for i in keep], ambient=m)
        v = algebraicity_verdict(L)
        assert v.status == ALGEBRAIC
