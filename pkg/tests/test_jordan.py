import math
import random
from fractions import Fraction

import pytest
import sympy

import oracles
from rigida.catalog import h_generators, x4_matrix
from rigida.errors import DimensionError, IrrationalSpectrumError, RigidaError
from rigida.exactlin import QMatrix, QPoly, det, inverse, squarefree_part
from rigida.jordan import (
    check_pair,
    eigenvalue_tuple,
    is_nilpotent_matrix,
    is_semisimple,
    jordan_chevalley,
    minimal_polynomial,
    simultaneous_eigenbasis,
)

H = Fraction(1, 2)
Q = Fraction(1, 4)


def random_matrix(rng, n, lo=-2, hi=2):
    return QMatrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])


def random_invertible(rng, n):
    while True:
        P = random_matrix(rng, n)
        if det(P):
            return P


def nil_index(N):
    k, P = 0, QMatrix.identity(N.rows)
    while not P.is_zero():
        P = P @ N
        k += 1
    return k


def blocks_matrix(rng, n):
    """Upper-triangular D + J with rational D; returns (D + J, D)."""
    eig = [rng.randint(-2, 2) for _ in range(n)]
    eig.sort()
    D = QMatrix.diag(eig)
    J = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        if eig[i] == eig[i + 1] and rng.random() < 0.6:
            J[i][i + 1] = 1
    return D + QMatrix(J), D


# --- minimal polynomial -----------------------------------------------------

def test_minimal_polynomial_examples():
    x = QPoly.x()
    assert minimal_polynomial(QMatrix.identity(3)) == x - 1
    assert minimal_polynomial(QMatrix([[0, 1], [0, 0]])) == x * x
    assert minimal_polynomial(QMatrix.diag([1, 1, 2])) == (x - 1) * (x - 2)
    with pytest.raises(DimensionError):
        minimal_polynomial(QMatrix([[1, 2]]))


def test_minimal_polynomial_against_sympy():
    rng = random.Random(401)
    lam = sympy.Symbol("lam")
    for _ in range(60):
        n = rng.randint(1, 4)
        M = random_matrix(rng, n)
        m = minimal_polynomial(M)
        assert m.eval_matrix(M).is_zero()
        A = oracles.to_sympy(M)
        mp = sum(oracles.to_sympy([[c]])[0] * lam**k for k, c in enumerate(m.coeffs))
        assert sympy.rem(A.charpoly(lam).as_expr(), mp, lam) == 0
        # minimality: I, M, ..., M^(d-1) are independent
        powers = [list(A**k) for k in range(m.degree)]
        assert sympy.Matrix(powers).rank() == m.degree


# --- decomposition ------------------------------------------------------------

def test_jc_examples():
    N = QMatrix([[0, 1, 2], [0, 0, 3], [0, 0, 0]])
    p = jordan_chevalley(N)
    assert p.S.is_zero() and p.N == N
    p = jordan_chevalley(QMatrix([[1, 1], [0, 1]]))
    assert p.S == QMatrix.identity(2) and p.N == QMatrix([[0, 1], [0, 0]])
    with pytest.raises(DimensionError):
        jordan_chevalley(QMatrix([[1, 2]]))


@pytest.mark.parametrize("alpha,beta", [(1, 0), (2, 3), (Fraction(1, 3), 1)])
def test_jc_h_alpha_beta(alpha, beta):
    a, b = Fraction(alpha), Fraction(beta)
    X1 = h_generators(a, b)[0]
    s = a + b
    d = a - b
    S = QMatrix([[1, 1, 0, H], [1, 1, 0, H], [s / 2, s / 2, 0, s / 4], [0, 0, 0, 0]])
    N = QMatrix([[0, 0, 0, H], [0, 0, 0, -H], [d / 2, -d / 2, 0, -s / 4], [0, 0, 0, 0]])
    pair = jordan_chevalley(X1)
    assert pair.S == S and pair.N == N
    assert pair.S == x4_matrix(a, b)


def test_jc_invariants_random():
    rng = random.Random(402)
    for _ in range(200):
        n = rng.randint(1, 5)
        M = random_matrix(rng, n)
        pair = jordan_chevalley(M)
        assert check_pair(M, pair) == []
        m = minimal_polynomial(pair.S)
        assert squarefree_part(m) == m


def test_jc_idempotent():
    rng = random.Random(403)
    for _ in range(60):
        M = random_matrix(rng, rng.randint(1, 4))
        pair = jordan_chevalley(M)
        again = jordan_chevalley(pair.S)
        assert again.S == pair.S and again.N.is_zero()
        nil = jordan_chevalley(pair.N)
        assert nil.S.is_zero() and nil.N == pair.N


def test_jc_similarity_oracle():
    rng = random.Random(404)
    for _ in range(100):
        n = rng.randint(1, 5)
        B, D = blocks_matrix(rng, n)
        P = random_invertible(rng, n)
        Pi = inverse(P)
        M = P @ B @ Pi
        pair = jordan_chevalley(M)
        assert pair.S == P @ D @ Pi


def test_jc_sympy_jordan_form_oracle():
    rng = random.Random(405)
    for _ in range(30):
        n = rng.randint(2, 4)
        B, _ = blocks_matrix(rng, n)
        P = random_invertible(rng, n)
        M = P @ B @ inverse(P)
        Ps, J = oracles.to_sympy(M).jordan_form()
        Ds = sympy.diag(*[J[i, i] for i in range(n)])
        S = Ps * Ds * Ps.inv()
        assert jordan_chevalley(M).S == QMatrix([[oracles.from_sympy(S[i, j]) for j in range(n)]
                                                 for i in range(n)])


def test_newton_step_bound():
    rng = random.Random(406)
    for _ in range(200):
        n = rng.randint(1, 5)
        if rng.random() < 0.5:
            B, _ = blocks_matrix(rng, n)
            P = random_invertible(rng, n)
            M = P @ B @ inverse(P)
        else:
            M = random_matrix(rng, n)
        pair = jordan_chevalley(M)
        mult = max(nil_index(pair.N), 1)
        assert pair.steps <= math.ceil(math.log2(mult)) + 1


# --- predicates ---------------------------------------------------------------

def test_predicates():
    assert is_semisimple(QMatrix.diag([0, 2]))
    assert not is_semisimple(QMatrix([[0, 1], [0, 0]]))
    assert is_nilpotent_matrix(QMatrix([[0, 1], [0, 0]]))
    assert is_semisimple(QMatrix([[0, -1], [1, 0]]))  # irreducible over Q, still semisimple
    with pytest.raises(DimensionError):
        is_semisimple(QMatrix([[1, 2]]))


def test_h_alpha_beta_nilpotent_locus():
    X1, X2, X3 = h_generators(1, 0)
    rng = random.Random(407)
    for _ in range(30):
        x1, x3 = Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5))
        if not x1:
            continue
        X = X1 * x1 + X2 * (-x1) + X3 * x3
        assert is_nilpotent_matrix(X)
        x2 = Fraction(rng.randint(-5, 5))
        if x1 + x2:
            assert not is_nilpotent_matrix(X1 * x1 + X2 * x2 + X3 * x3)
            ev = eigenvalue_tuple(X1 * x1 + X2 * x2 + X3 * x3)
            assert set(ev) == {0, 2 * (x1 + x2)}


def test_eigenvalue_tuple():
    assert sorted(eigenvalue_tuple(QMatrix.diag([3, 3, 0]))) == [0, 3, 3]
    assert sorted(eigenvalue_tuple(x4_matrix(1, 0))) == [0, 0, 0, 2]
    assert eigenvalue_tuple(QMatrix([[0, 2], [1, 0]])) is None


# --- simultaneous diagonalization --------------------------------------------

def test_simultaneous_eigenbasis():
    A = QMatrix.diag([1, 2, 2])
    B = QMatrix.diag([0, 1, -1])
    vecs, weights = simultaneous_eigenbasis([A, B])
    assert len(vecs) == 3
    for v, w in zip(vecs, weights):
        assert A.apply(v) == tuple(w[0] * x for x in v)
        assert B.apply(v) == tuple(w[1] * x for x in v)
    with pytest.raises(IrrationalSpectrumError):
        simultaneous_eigenbasis([QMatrix([[0, 2], [1, 0]])])
    with pytest.raises(RigidaError):
        simultaneous_eigenbasis([QMatrix([[0, 1], [0, 0]])])


def test_simultaneous_eigenbasis_conjugated():
    rng = random.Random(408)
    for _ in range(40):
        n = rng.randint(1, 4)
        P = random_invertible(rng, n)
        Pi = inverse(P)
        mats = [P @ QMatrix.diag([rng.randint(-2, 2) for _ in range(n)]) @ Pi for _ in range(2)]
        vecs, weights = simultaneous_eigenbasis(mats)
        assert len(vecs) == n and det(QMatrix.from_columns(vecs))
        for v, w in zip(vecs, weights):
            for M, lam in zip(mats, w):
                assert M.apply(v) == tuple(lam * x for x in v)
