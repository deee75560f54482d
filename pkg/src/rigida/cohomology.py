"""Derivations, 2-cocycles, 2-coboundaries and rigidity certificates.

Unknowns of the cochain systems are indexed like
:meth:`StructureConstants.vector`: ``pair_index(i, j) * n + k``.
Endomorphisms ``f`` are flattened row-major, ``f[a][b]`` at ``a * n + b``
(so ``f(e_b) = sum_a f[a][b] e_a``).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionError, RigidaError
from .exactlin import (
    QMatrix,
    sparse_independent_subset,
    sparse_kernel,
    sparse_rank,
    sparse_solve,
)
from .liecore import (
    LieLaw,
    StructureConstants,
    as_sc,
    center,
    jacobi_defect,
    num_skew_coordinates,
    pair_index,
)

CERTIFIED = "Certified"
INCONCLUSIVE = "Inconclusive"

NR_NOTE = ("dim H2 = 0 is sufficient for rigidity, not necessary: "
           "Inconclusive never means non-rigid")


class Cochain2(StructureConstants):
    """Skew bilinear map with values in the algebra (a 2-cochain)."""

    __slots__ = ()


def _cochain(sc: StructureConstants) -> Cochain2:
    return Cochain2(sc.dim, sc.table, sc.labels)


# ---------------------------------------------------------------------------
# linear systems
# ---------------------------------------------------------------------------

def _right_brackets(sc: StructureConstants) -> list[list[tuple[int, dict]]]:
    """For each j, the nonzero ``mu(e_a, e_j)`` as (a, image)."""
    n = sc.dim
    out = [[] for _ in range(n)]
    for j in range(n):
        for a in range(n):
            img = sc.bracket_basis(a, j)
            if img:
                out[j].append((a, img))
    return out


def delta_system(sc) -> list[dict[int, Fraction]]:
    """Rows of f -> delta f, one per coordinate (i<j, s) of a 2-cochain.

    ``delta f(X, Y) = mu(f X, Y) + mu(X, f Y) - f(mu(X, Y))``.
    """
    sc = as_sc(sc)
    n = sc.dim
    right = _right_brackets(sc)
    rows = []
    for i, j in itertools.combinations(range(n), 2):
        block = [dict() for _ in range(n)]
        # mu(f e_i, e_j) = sum_a f[a][i] mu(e_a, e_j)
        for a, img in right[j]:
            for s, v in img.items():
                key = a * n + i
                block[s][key] = block[s].get(key, 0) + v
        # mu(e_i, f e_j) = -sum_a f[a][j] mu(e_a, e_i)
        for a, img in right[i]:
            for s, v in img.items():
                key = a * n + j
                block[s][key] = block[s].get(key, 0) - v
        # -f(mu(e_i, e_j)) = -sum_l X_ij^l f[s][l]
        for l, v in sc.bracket_basis(i, j).items():
            for s in range(n):
                key = s * n + l
                block[s][key] = block[s].get(key, 0) - v
        rows.extend(block)
    return rows


def delta(law, f: QMatrix) -> Cochain2:
    sc = as_sc(law)
    n = sc.dim
    if f.shape != (n, n):
        raise DimensionError(f"endomorphism must be {n}x{n}")
    flat = f.flatten()
    vec = []
    for row in delta_system(sc):
        vec.append(sum((c * flat[k] for k, c in row.items() if flat[k]), Fraction(0)))
    return _cochain(StructureConstants.from_vector(n, vec, sc.labels))


def cocycle_system(sc) -> list[dict[int, Fraction]]:
    """Rows of the Jacobi identity linearized at mu, one per (i<j<k, s)."""
    sc = as_sc(sc)
    n = sc.dim
    rows = []

    def var(a, b, c):
        if a < b:
            return pair_index(a, b, n) * n + c, 1
        return pair_index(b, a, n) * n + c, -1

    for i, j, k in itertools.combinations(range(n), 3):
        block = [dict() for _ in range(n)]
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            # mu(phi(a, b), c) = sum_l phi_ab^l mu(e_l, e_c)
            for l in range(n):
                img = sc.bracket_basis(l, c)
                if not img:
                    continue
                key, sign = var(a, b, l)
                for s, v in img.items():
                    block[s][key] = block[s].get(key, 0) + sign * v
            # phi(mu(a, b), c) = sum_l X_ab^l phi(e_l, e_c)
            for l, v in sc.bracket_basis(a, b).items():
                if l == c:
                    continue
                for s in range(n):
                    key, sign = var(l, c, s)
                    block[s][key] = block[s].get(key, 0) + sign * v
        rows.extend(block)
    return rows


def linearized_jacobi(law, phi: StructureConstants) -> list[tuple[int, int, int, int, Fraction]]:
    """Nonzero components of L(phi) on basis triples, evaluated directly."""
    sc = as_sc(law)
    n = sc.dim
    if phi.dim != n:
        raise DimensionError("cochain dimension does not match the law")
    out = []
    for i, j, k in itertools.combinations(range(n), 3):
        acc = [Fraction(0)] * n
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for l, x in phi.bracket_basis(a, b).items():
                for s, y in sc.bracket_basis(l, c).items():
                    acc[s] += x * y
            for l, x in sc.bracket_basis(a, b).items():
                for s, y in phi.bracket_basis(l, c).items():
                    acc[s] += x * y
        out.extend((i, j, k, s, v) for s, v in enumerate(acc) if v)
    return out


# ---------------------------------------------------------------------------
# spaces
# ---------------------------------------------------------------------------

def _as_matrix(vec: Sequence, n: int) -> QMatrix:
    return QMatrix.from_flat(list(vec), n, n)


def derivation_dim(sc) -> int:
    """dim {f : delta f = 0}; meaningful for any skew map, not only Lie laws."""
    sc = as_sc(sc)
    n = sc.dim
    return n * n - sparse_rank(delta_system(sc), n * n)


def derivations(law) -> list[QMatrix]:
    sc = as_sc(law)
    n = sc.dim
    return [_as_matrix(v, n) for v in sparse_kernel(delta_system(sc), n * n)]


def inner_derivations(law) -> list[QMatrix]:
    """Independent subset of ``ad e_1, ..., ad e_n``."""
    from .liecore import ad_basis

    ads = ad_basis(law)
    chosen = sparse_independent_subset(
        {k: x for k, x in enumerate(a.flatten()) if x} for a in ads)
    return [ads[i] for i in chosen]


def two_cocycles(law, with_basis: bool = True) -> tuple[int, list[Cochain2]]:
    """Kernel of the linearized Jacobi operator.

    With ``with_basis=False`` only the dimension is computed (the basis of a
    large kernel is the expensive part).
    """
    sc = as_sc(law)
    n = sc.dim
    N = num_skew_coordinates(n)
    rows = cocycle_system(sc)
    if not with_basis:
        return N - sparse_rank(rows, N), []
    kernel = sparse_kernel(rows, N)
    return len(kernel), [_cochain(StructureConstants.from_vector(n, v, sc.labels))
                         for v in kernel]


def coboundaries2(law, with_basis: bool = True) -> tuple[int, list[Cochain2]]:
    """Span of delta(E_ab) over the elementary matrices, reduced in order."""
    sc = as_sc(law)
    n = sc.dim
    rows = delta_system(sc)
    # column (a, b) of the delta system is delta(E_ab)
    images: list[dict[int, Fraction]] = [dict() for _ in range(n * n)]
    for r, row in enumerate(rows):
        for key, v in row.items():
            if v:
                images[key][r] = v
    chosen = sparse_independent_subset(images)
    if not with_basis:
        return len(chosen), []
    N = num_skew_coordinates(n)
    basis = []
    for idx in chosen:
        vec = [Fraction(0)] * N
        for r, v in images[idx].items():
            vec[r] = Fraction(v)
        basis.append(_cochain(StructureConstants.from_vector(n, vec, sc.labels)))
    return len(chosen), basis


def is_cocycle(law, phi: StructureConstants) -> bool:
    return not linearized_jacobi(law, phi)


def is_coboundary(law, phi: StructureConstants) -> QMatrix | None:
    """A witness f with delta f = phi, or None."""
    sc = as_sc(law)
    n = sc.dim
    if phi.dim != n:
        raise DimensionError("cochain dimension does not match the law")
    sol = sparse_solve(delta_system(sc), n * n, phi.vector())
    return None if sol is None else _as_matrix(sol, n)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CohomReport:
    dim: int
    dim_der: int
    dim_inner: int
    dim_Z2: int
    dim_B2: int

    @property
    def dim_H1(self) -> int:
        return self.dim_der - self.dim_inner

    @property
    def dim_H2(self) -> int:
        return self.dim_Z2 - self.dim_B2

    @property
    def verdict(self) -> str:
        return CERTIFIED if self.dim_H2 == 0 else INCONCLUSIVE

    @property
    def orbit_dimension(self) -> int:
        return self.dim * self.dim - self.dim_der

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "dim_der": self.dim_der,
            "dim_inner": self.dim_inner,
            "dim_Z2": self.dim_Z2,
            "dim_B2": self.dim_B2,
            "dim_H1": self.dim_H1,
            "dim_H2": self.dim_H2,
            "orbit_dimension": self.orbit_dimension,
            "verdict": self.verdict,
            "note": NR_NOTE,
        }


def cohomology_report(law) -> CohomReport:
    sc = as_sc(law)
    if not isinstance(law, LieLaw):
        law = LieLaw(sc)
    n = sc.dim
    dim_der = derivation_dim(sc)
    dim_inner = n - len(center(law))
    dim_z2, _ = two_cocycles(law, with_basis=False)
    report = CohomReport(n, dim_der, dim_inner, dim_z2, n * n - dim_der)
    if report.dim_H1 < 0 or report.dim_H2 < 0:
        raise RigidaError("inconsistent cohomology dimensions")  # pragma: no cover
    return report


def orbit_dimension(law) -> int:
    n = as_sc(law).dim
    return n * n - derivation_dim(law)


def vn_rigidity_check(sc) -> bool:
    """True iff the GL-orbit of the skew map is open in the space of all skew maps."""
    sc = as_sc(sc)
    n = sc.dim
    return n * n - derivation_dim(sc) == num_skew_coordinates(n)


def semisimple_derivation_deformation(law, D: QMatrix, x0: int, eps
                                      ) -> tuple[StructureConstants, list]:
    """Perturb brackets with e_{x0}: mu_eps(e_x0, e_i) = mu(e_x0, e_i) + eps D(e_i).

    Returns the new table and its Jacobi defect; nothing is claimed about
    whether the perturbed law is isomorphic to the original.
    """
    sc = as_sc(law)
    n = sc.dim
    if not 0 <= x0 < n:
        raise RigidaError(f"basis index {x0} out of range")
    if not delta(sc, D).is_zero():
        raise RigidaError("D is not a derivation of the law")
    eps = Fraction(eps)
    table = sc.table
    for i in range(n):
        if i == x0:
            continue
        img = D.column(i)
        for k, v in enumerate(img):
            if not v:
                continue
            if x0 < i:
                key, add = (x0, i, k), eps * v
            else:
                key, add = (i, x0, k), -eps * v
            table[key] = table.get(key, 0) + add
    new = StructureConstants(n, table, sc.labels)
    return new, jacobi_defect(new)
