"""Linear Lie algebras, Jordan-part closure, replica lattices and algebraicity.

The verdict is a semi-decision: ``Algebraic`` comes with a certificate,
``NotAlgebraic`` with a witness matrix that can be re-checked by span
membership, and everything else is ``Inconclusive``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    DimensionError,
    IrrationalSpectrumError,
    NotClosedError,
    RigidaError,
)
from .exactlin import (
    IntLattice,
    QMatrix,
    commutator,
    coordinates,
    in_span,
    independent_subset,
    integer_kernel,
    inverse,
    kernel_basis,
    span_rank,
)
from .jordan import jordan_chevalley, simultaneous_eigenbasis
from .liecore import (
    StructureConstants,
    ad_basis,
    as_sc,
    first_unclosed_pair,
    structure_from_matrices,
)

ALGEBRAIC = "Algebraic"
NOT_ALGEBRAIC = "NotAlgebraic"
INCONCLUSIVE = "Inconclusive"


# ---------------------------------------------------------------------------
# linear Lie algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearLieAlgebra:
    ambient: int
    basis: tuple
    induced: StructureConstants
    labels: tuple = ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _flats(self):
        return [b.flatten() for b in self.basis]

    def contains(self, M: QMatrix) -> bool:
        if M.shape != (self.ambient, self.ambient):
            raise DimensionError(f"expected a {self.ambient}x{self.ambient} matrix")
        return M.is_zero() or in_span(self._flats(), M.flatten())

    def coordinates(self, M: QMatrix) -> tuple | None:
        if M.is_zero():
            return tuple(Fraction(0) for _ in self.basis)
        if not self.basis:
            return None
        return coordinates(self._flats(), M.flatten())

    def element(self, coeffs: Sequence) -> QMatrix:
        out = QMatrix.zeros(self.ambient)
        for c, b in zip(coeffs, self.basis):
            if c:
                out = out + b * c
        return out


def make_linear_algebra(generators: Sequence[QMatrix], labels=None,
                        ambient: int | None = None) -> LinearLieAlgebra:
    """Wrap independent matrices whose span is closed under the commutator."""
    gens = list(generators)
    if gens:
        m = gens[0].rows
        if any(not g.is_square or g.rows != m for g in gens):
            raise DimensionError("generators must be square of a common size")
        if ambient is not None and ambient != m:
            raise DimensionError(f"generators are {m}x{m}, ambient says {ambient}")
    elif ambient is None:
        raise DimensionError("ambient dimension needed for an empty generator list")
    else:
        m = ambient
    labels = tuple(labels) if labels else tuple(f"X{i + 1}" for i in range(len(gens)))
    if len(labels) != len(gens):
        raise DimensionError("one label per generator required")
    sc, closed = structure_from_matrices(gens, list(labels))
    if not closed:
        i, j = first_unclosed_pair(gens)
        raise NotClosedError(
            f"[{labels[i]}, {labels[j]}] is not in the span of the generators", (i, j))
    return LinearLieAlgebra(m, tuple(gens), sc, labels)


def ad_algebra(law) -> LinearLieAlgebra:
    """Span of ad e_1, ..., ad e_n (an independent subset is kept)."""
    sc = as_sc(law)
    ads = ad_basis(sc)
    keep = independent_subset([a.flatten() for a in ads])
    return make_linear_algebra([ads[i] for i in keep],
                               [f"ad {sc.labels[i]}" for i in keep], ambient=sc.dim)


# ---------------------------------------------------------------------------
# unipotent flag
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UnipotentFlag:
    """Adapted basis: every matrix maps ``basis[:levels[k]]`` into ``basis[:levels[k-1]]``."""

    levels: tuple
    basis: tuple


def _identity_vectors(m: int) -> list[tuple]:
    return [tuple(Fraction(int(i == j)) for j in range(m)) for i in range(m)]


def nil_flag(mats: Sequence[QMatrix], m: int) -> UnipotentFlag | None:
    """Chain V_0 = 0, V_{k+1} = {v : A v in V_k for all A}; None if it stalls."""
    basis: list[tuple] = []
    levels = [0]
    while len(basis) < m:
        if basis:
            annihilator = kernel_basis(QMatrix(basis))
        else:
            annihilator = _identity_vectors(m)
        rows = []
        for A in mats:
            for w in annihilator:
                rows.append(tuple(sum(w[i] * A[i, j] for i in range(m)) for j in range(m)))
        nxt = kernel_basis(QMatrix(rows)) if rows else _identity_vectors(m)
        if len(nxt) == len(basis):
            return None
        for v in nxt:
            if not basis or not in_span(basis, v):
                basis.append(v)
        levels.append(len(basis))
    return UnipotentFlag(tuple(levels), tuple(basis))


def unipotent_certificate(L: LinearLieAlgebra) -> UnipotentFlag | None:
    return nil_flag(L.basis, L.ambient)


# ---------------------------------------------------------------------------
# Jordan parts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SplitWitness:
    """An element whose semisimple or nilpotent part leaves the span."""

    probe_label: str
    probe: QMatrix
    part: str  # "S" or "N"
    matrix: QMatrix


def split_probes(L: LinearLieAlgebra) -> list[tuple[str, QMatrix]]:
    """Basis elements, then all pairwise sums."""
    probes = list(zip(L.labels, L.basis))
    for i, j in itertools.combinations(range(L.dim), 2):
        probes.append((f"{L.labels[i]}+{L.labels[j]}", L.basis[i] + L.basis[j]))
    return probes


def split_closure_witness(L: LinearLieAlgebra) -> SplitWitness | None:
    for label, X in split_probes(L):
        jp = jordan_chevalley(X)
        for part, M in (("S", jp.S), ("N", jp.N)):
            if not L.contains(M):
                return SplitWitness(label, X, part, M)
    return None


@dataclass(frozen=True)
class SaturationResult:
    algebra: LinearLieAlgebra
    rounds: int
    fixed_point: bool


def _add_if_new(mats: list, labels: list, M: QMatrix) -> bool:
    if M.is_zero() or in_span([x.flatten() for x in mats], M.flatten()):
        return False
    mats.append(M)
    labels.append(f"X{len(mats)}")
    return True


def _bracket_close(mats: list, labels: list) -> None:
    i = 0
    while i < len(mats):
        for j in range(i):
            _add_if_new(mats, labels, commutator(mats[j], mats[i]))
        i += 1


def jordan_saturation(L: LinearLieAlgebra, max_rounds: int = 8) -> SaturationResult:
    """Adjoin Jordan parts of basis elements and re-close until nothing changes.

    New basis elements are appended after the original ones.  When
    ``max_rounds`` is exhausted the result is returned with
    ``fixed_point=False``.
    """
    mats, labels = list(L.basis), list(L.labels)
    for rnd in range(1, max_rounds + 1):
        grew = False
        for X in list(mats):
            jp = jordan_chevalley(X)
            grew |= _add_if_new(mats, labels, jp.S)
            grew |= _add_if_new(mats, labels, jp.N)
        n_before = len(mats)
        _bracket_close(mats, labels)
        grew |= len(mats) > n_before
        if not grew:
            return SaturationResult(make_linear_algebra(mats, labels, L.ambient), rnd, True)
    return SaturationResult(make_linear_algebra(mats, labels, L.ambient), max_rounds, False)


# ---------------------------------------------------------------------------
# eigenvalue lattices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EigenvalueAssignment:
    """Eigenvalue tuples of torus generators over declared Q-independent symbols.

    ``tuples[g][i]`` is the coordinate vector of the i-th eigenvalue of
    generator g in the basis ``symbols``.
    """

    symbols: tuple
    tuples: tuple

    def __post_init__(self):
        s = len(self.symbols)
        if s == 0:
            raise RigidaError("at least one symbol required")
        if len(set(self.symbols)) != s:
            raise RigidaError("symbols must be distinct")
        sizes = {len(t) for t in self.tuples}
        if len(sizes) > 1:
            raise DimensionError("all tuples must have the same length")
        tuples = []
        for t in self.tuples:
            row = []
            for coords in t:
                if len(coords) != s:
                    raise DimensionError(
                        f"coordinate vectors must have length {s}, got {len(coords)}")
                row.append(tuple(Fraction(c) for c in coords))
            tuples.append(tuple(row))
        object.__setattr__(self, "symbols", tuple(self.symbols))
        object.__setattr__(self, "tuples", tuple(tuples))

    @classmethod
    def rational(cls, tuples: Sequence[Sequence]) -> "EigenvalueAssignment":
        return cls(("1",), tuple(tuple((Fraction(x),) for x in t) for t in tuples))

    @property
    def size(self) -> int:
        return len(self.tuples[0]) if self.tuples else 0

    def _with_unit(self) -> tuple[int, tuple]:
        """Index of the symbol "1", adding it when absent."""
        if "1" in self.symbols:
            return self.symbols.index("1"), self.tuples
        s = len(self.symbols)
        return s, tuple(tuple(c + (Fraction(0),) for c in t) for t in self.tuples)

    def formal_vectors(self) -> tuple[list[tuple], int]:
        """Each generator tuple flattened to Q^(n*s'), plus the unit coordinate."""
        unit, tuples = self._with_unit()
        return [tuple(x for c in t for x in c) for t in tuples], unit


def relation_lattice(a: EigenvalueAssignment, size: int | None = None) -> IntLattice:
    """Integer vectors p with sum_i p_i lambda_i^(g) = 0 for every generator g."""
    n = a.size if a.tuples else size
    if n is None:
        raise DimensionError("size required for an assignment without generators")
    rows = [[t[i][k] for i in range(n)]
            for t in a.tuples for k in range(len(a.symbols))]
    rows = [r for r in rows if any(r)] or [[0] * n]
    return integer_kernel(QMatrix(rows))


@dataclass(frozen=True)
class ReplicaDefect:
    hull_dim: int
    defect: int
    lattice: IntLattice
    hull_basis: tuple
    witness: tuple | None = None
    candidates: tuple = field(default=(), repr=False)

    def __iter__(self):
        yield self.hull_dim
        yield self.defect


def _formal_candidate(r: Sequence, n: int, s: int, unit: int) -> tuple:
    out = []
    for i in range(n):
        out.extend(r[i] if k == unit else Fraction(0) for k in range(s))
    return tuple(out)


def torus_replica_defect(a: EigenvalueAssignment, torus_dim: int | None = None
                         ) -> ReplicaDefect:
    """hull_dim = n - rank(lattice), defect = hull_dim - torus_dim.

    When the defect is positive a witness is picked among the sum of the
    hull basis and the hull basis vectors themselves: a rational tuple
    orthogonal to the lattice and outside the Q-span of the generator tuples.
    """
    n = a.size
    lattice = relation_lattice(a)
    hull_dim = n - lattice.rank
    if torus_dim is None:
        torus_dim = len(a.tuples)
    if torus_dim > hull_dim:
        raise RigidaError(f"torus dimension {torus_dim} exceeds hull dimension {hull_dim}")
    gens, unit = a.formal_vectors()
    if span_rank(gens) != len(gens):
        raise RigidaError("generator tuples are not linearly independent")
    if lattice.rank:
        hull = kernel_basis(QMatrix(lattice.basis))
    else:
        hull = _identity_vectors(n)
    defect = hull_dim - torus_dim
    cands = []
    if hull:
        cands.append(tuple(sum(c) for c in zip(*hull)))
    cands.extend(hull)
    s = len(gens[0]) // n if gens else 1
    outside = [r for r in cands
               if any(r) and span_rank(gens + [_formal_candidate(r, n, s, unit)]) == len(gens) + 1]
    witness = outside[0] if defect and outside else None
    return ReplicaDefect(hull_dim, defect, lattice, tuple(hull), witness, tuple(outside))


# ---------------------------------------------------------------------------
# verdict
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReplicaWitness:
    """A replica of the torus realized as a matrix outside the algebra."""

    tuple: tuple
    matrix: QMatrix


@dataclass(frozen=True)
class AlgebraicityVerdict:
    status: str
    witness: object = None
    certificate: dict | None = None
    reason: str = ""
    probes: tuple = ()

    def witness_matrix(self) -> QMatrix | None:
        return getattr(self.witness, "matrix", None)


def _split_torus(L: LinearLieAlgebra):
    """Nilpotent ideal and commuting semisimple complement, or a reason string."""
    parts = [jordan_chevalley(b) for b in L.basis]
    m = L.ambient
    nil: list[QMatrix] = []
    for jp in parts:
        _add_if_new(nil, [], jp.N)
    for A, B in itertools.combinations(L.basis, 2):
        _add_if_new(nil, [], commutator(A, B))
    nil_flats = [x.flatten() for x in nil]
    for b in L.basis:
        for x in nil:
            c = commutator(b, x)
            if not c.is_zero() and not in_span(nil_flats, c.flatten()):
                return "nilpotent parts do not span an ideal"
    if nil and nil_flag(nil, m) is None:
        return "nilpotent parts do not act unipotently"
    tor: list[QMatrix] = []
    for jp in parts:
        _add_if_new(tor, [], jp.S)
    for A, B in itertools.combinations(tor, 2):
        if not commutator(A, B).is_zero():
            return "semisimple parts do not commute"
    if len(nil) + len(tor) != L.dim or span_rank([x.flatten() for x in nil + tor]) != L.dim:
        return "nilpotent ideal and torus do not add up to the algebra"
    return nil, tor


def algebraicity_verdict(L: LinearLieAlgebra,
                         assignment: EigenvalueAssignment | None = None
                         ) -> AlgebraicityVerdict:
    """Unipotent flag, then split probes, then the torus lattice test."""
    probes = tuple(label for label, _ in split_probes(L))
    flag = unipotent_certificate(L)
    if flag is not None:
        return AlgebraicityVerdict(
            ALGEBRAIC, certificate={"kind": "unipotent", "levels": list(flag.levels),
                                    "basis": [list(v) for v in flag.basis]},
            reason="every element is nilpotent", probes=())
    w = split_closure_witness(L)
    if w is not None:
        return AlgebraicityVerdict(
            NOT_ALGEBRAIC, witness=w,
            reason=f"the {w.part} part of {w.probe_label} is not in the algebra", probes=probes)
    split = _split_torus(L)
    if isinstance(split, str):
        return AlgebraicityVerdict(INCONCLUSIVE, reason=split, probes=probes)
    nil, tor = split
    try:
        vectors, weights = simultaneous_eigenbasis(tor, _identity_vectors(L.ambient))
    except IrrationalSpectrumError:
        return AlgebraicityVerdict(INCONCLUSIVE, reason="torus spectrum is not rational",
                                   probes=probes)
    shadow = tuple(tuple(w[g] for w in weights) for g in range(len(tor)))
    if assignment is None:
        assignment = EigenvalueAssignment.rational(shadow)
    else:
        problem = _match_assignment(assignment, shadow)
        if problem:
            return AlgebraicityVerdict(INCONCLUSIVE, reason=problem, probes=probes)
    rd = torus_replica_defect(assignment, len(tor))
    cert = {
        "kind": "split-torus",
        "nil_dim": len(nil),
        "torus_dim": len(tor),
        "symbols": list(assignment.symbols),
        "lattice": [list(v) for v in rd.lattice.basis],
        "hull_dim": rd.hull_dim,
        "defect": rd.defect,
    }
    if rd.defect == 0:
        return AlgebraicityVerdict(ALGEBRAIC, certificate=cert,
                                   reason="torus is closed under replicas", probes=probes)
    P = QMatrix.from_columns(vectors)
    Pinv = inverse(P)
    for r in rd.candidates:
        R = P @ QMatrix.diag(r) @ Pinv
        if not L.contains(R):
            return AlgebraicityVerdict(
                NOT_ALGEBRAIC, witness=ReplicaWitness(tuple(r), R), certificate=cert,
                reason=f"replica with eigenvalues {tuple(str(x) for x in r)} is not in the algebra",
                probes=probes)
    return AlgebraicityVerdict(INCONCLUSIVE, certificate=cert,
                               reason="positive defect but no checkable replica found",
                               probes=probes)


def _match_assignment(a: EigenvalueAssignment, shadow: tuple) -> str:
    """Formal tuples must follow the torus eigenbasis order (same zero pattern)."""
    if len(a.tuples) != len(shadow):
        return f"assignment has {len(a.tuples)} generators, torus has {len(shadow)}"
    for g, (formal, rat) in enumerate(zip(a.tuples, shadow)):
        if len(formal) != len(rat):
            return f"assignment tuple {g} has length {len(formal)}, expected {len(rat)}"
        for i, (c, x) in enumerate(zip(formal, rat)):
            if (not any(c)) != (x == 0):
                return f"assignment tuple {g} entry {i} does not match the torus zero pattern"
    return ""
