"""Jordan-Chevalley decomposition over Q and related predicates."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionError, IrrationalSpectrumError, RigidaError
from .exactlin import (
    QMatrix,
    QPoly,
    char_poly,
    poly_gcd,
    poly_xgcd,
    rational_roots,
    solve_linear,
    squarefree_part,
)


def _square(M: QMatrix):
    if not M.is_square:
        raise DimensionError(f"square matrix required, got {M.rows}x{M.cols}")


def minimal_polynomial(M: QMatrix) -> QPoly:
    """Monic generator of the annihilator of M.

    Krylov iteration on the powers I, M, M^2, ... (flattened) until the
    first power that depends linearly on the previous ones.
    """
    _square(M)
    n = M.rows
    if n == 0:
        return QPoly([1])
    powers = [QMatrix.identity(n).flatten()]
    P = QMatrix.identity(n)
    while True:
        P = P @ M
        target = P.flatten()
        coeffs = solve_linear(QMatrix.from_columns(powers), target)
        if coeffs is not None:
            return QPoly([-c for c in coeffs] + [1])
        powers.append(target)


@dataclass(frozen=True)
class JordanPair:
    """``M = S + N`` with S semisimple, N nilpotent, SN = NS, S = conductor(M)."""

    S: QMatrix
    N: QMatrix
    conductor: QPoly
    steps: int = 0


def jordan_chevalley(M: QMatrix) -> JordanPair:
    """Newton iteration on the squarefree part f of the minimal polynomial.

    All polynomial arithmetic is done modulo the minimal polynomial m; the
    conductor p satisfies S = p(M).
    """
    _square(M)
    n = M.rows
    m = minimal_polynomial(M)
    f = squarefree_part(m)
    g, s, _t = poly_xgcd(f.derivative(), f)
    if g.degree != 0:
        raise RigidaError("squarefree part has repeated roots")  # pragma: no cover
    inv_fprime = s % f  # (f')^{-1} mod f
    p = QPoly.x() % m
    steps = 0
    while True:
        fp = f.compose(p) % m
        if fp.is_zero():
            break
        p = (p - fp * inv_fprime.compose(p)) % m
        steps += 1
        if steps > 2 * n + 2:  # pragma: no cover - quadratic convergence makes this unreachable
            raise RigidaError("Newton iteration did not converge")
    S = p.eval_matrix(M) if n else M
    N = M - S
    return JordanPair(S, N, p, steps)


def is_semisimple(M: QMatrix) -> bool:
    _square(M)
    m = minimal_polynomial(M)
    return poly_gcd(m, m.derivative()).degree == 0


def is_nilpotent_matrix(M: QMatrix) -> bool:
    _square(M)
    return (M ** M.rows).is_zero() if M.rows else True


def eigenvalue_tuple(M: QMatrix) -> list[Fraction] | None:
    """Eigenvalues with multiplicity (increasing) when the spectrum is rational."""
    _square(M)
    if M.rows == 0:
        return []
    return rational_roots(char_poly(M))


def check_pair(M: QMatrix, pair: JordanPair) -> list[str]:
    """List the JordanPair invariants that fail (empty when all hold)."""
    problems = []
    if pair.S + pair.N != M:
        problems.append("S + N != M")
    if pair.S @ pair.N != pair.N @ pair.S:
        problems.append("S and N do not commute")
    if not is_nilpotent_matrix(pair.N):
        problems.append("N is not nilpotent")
    if not is_semisimple(pair.S):
        problems.append("S is not semisimple")
    if pair.conductor.eval_matrix(M) != pair.S:
        problems.append("S != conductor(M)")
    return problems


def simultaneous_eigenbasis(mats: list[QMatrix], space: list[tuple] | None = None
                            ) -> tuple[list[tuple], list[tuple]]:
    """Common eigenvectors of commuting semisimple matrices with rational spectra.

    ``space`` spans an invariant subspace (default: everything).  Returns
    ``(vectors, weights)`` where ``weights[v][g]`` is the eigenvalue of
    ``mats[g]`` on ``vectors[v]``.  Vectors are sorted by the position of
    their first nonzero coordinate.
    """
    from .exactlin import kernel_basis

    if space is None:
        n = mats[0].rows if mats else 0
        space = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    pieces: list[tuple[list[tuple], tuple]] = [(list(space), ())]
    for A in mats:
        refined = []
        for vecs, weight in pieces:
            d = len(vecs)
            W = QMatrix.from_columns(vecs)
            cols = []
            for v in vecs:
                c = solve_linear(W, A.apply(v))
                if c is None:
                    raise RigidaError("subspace is not invariant")
                cols.append(c)
            R = QMatrix.from_columns(cols)
            roots = rational_roots(char_poly(R))
            if roots is None:
                raise IrrationalSpectrumError("spectrum is not rational")
            found = 0
            for lam in sorted(set(roots)):
                ker = kernel_basis(R - QMatrix.identity(d) * lam)
                found += len(ker)
                sub = [W.apply(k) for k in ker]
                refined.append((sub, weight + (lam,)))
            if found != d:
                raise RigidaError("matrix is not diagonalizable")
        pieces = refined
    vectors, weights = [], []
    for vecs, weight in pieces:
        for v in vecs:
            vectors.append(v)
            weights.append(weight)
    order = sorted(range(len(vectors)),
                   key=lambda i: (next(k for k, x in enumerate(vectors[i]) if x), i))
    return [vectors[i] for i in order], [weights[i] for i in order]
