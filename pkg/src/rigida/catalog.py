"""Named example algebras with expected properties.

Each fixture carries a list of expectations; :func:`run_manifest` evaluates
them through the public operations of the other modules.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebraicity import (
    EigenvalueAssignment,
    LinearLieAlgebra,
    ad_algebra,
    algebraicity_verdict,
    jordan_saturation,
    make_linear_algebra,
    split_closure_witness,
    torus_replica_defect,
)
from .cohomology import (
    Cochain2,
    cohomology_report,
    is_coboundary,
    is_cocycle,
    vn_rigidity_check,
)
from .errors import RigidaError
from .exactlin import QMatrix, parse_rational
from .liecore import (
    LieLaw,
    StructureConstants,
    center,
    char_seq,
    is_nilpotent,
    is_solvable,
    is_two_step,
    jacobi_defect,
    restrict,
    series_dims,
)
from .structure import TorusSpec, rank_theorem_check

WORKED = "worked example"
DERIVED = "derived"
ELEMENTARY = "elementary"


@dataclass(frozen=True)
class Expectation:
    prop: str
    expected: object
    provenance: str


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str  # "law", "linear", "assignment" or "cochain"
    payload: object
    expectations: tuple
    extras: dict = field(default_factory=dict)
    description: str = ""

    @property
    def law(self) -> StructureConstants | None:
        if self.kind == "law":
            return self.payload
        return self.extras.get("law")


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def _E(n: int, i: int, j: int) -> QMatrix:
    """Elementary matrix with a 1 at (i, j), 1-based."""
    return QMatrix([[int(r == i - 1 and c == j - 1) for c in range(n)] for r in range(n)])


def _sc(n, entries, labels=None) -> StructureConstants:
    """From 1-based triples (i, j, k) -> coefficient."""
    return StructureConstants(n, {(i - 1, j - 1, k - 1): v for (i, j, k), v in entries.items()},
                              labels)


def heisenberg_law() -> StructureConstants:
    return _sc(3, {(1, 2, 3): 1})


def sl2_law() -> StructureConstants:
    # [e,h] = -2e, [h,f] = -2f, [e,f] = h
    return _sc(3, {(1, 2, 1): -2, (2, 3, 3): -2, (1, 3, 2): 1}, ["e", "h", "f"])


def g2_law() -> StructureConstants:
    return _sc(2, {(1, 2, 2): 1}, ["X", "Y"])


def rigid13_law() -> StructureConstants:
    """Nilradical X1..X12 (indices 1..12) graded by T (index 13)."""
    t = {}
    for i in range(2, 12):
        t[(1, i, i + 1)] = 1
    for i in range(3, 11):
        t[(2, i, i + 2)] = 1
    for i in range(1, 13):
        t[(i, 13, i)] = -i  # [T, X_i] = i X_i
    return _sc(13, t, [f"X{i}" for i in range(1, 13)] + ["T"])


def phi13_cochain() -> Cochain2:
    """phi(X2, Xi) = (4 - i) X_{2+i}, phi(X3, Xi) = X_{3+i}, targets inside X1..X12."""
    t = {}
    for i in range(5, 11):
        t[(2, i, 2 + i)] = 4 - i
    for i in range(4, 10):
        t[(3, i, 3 + i)] = 1
    sc = _sc(13, t, rigid13_law().labels)
    return Cochain2(sc.dim, sc.table, sc.labels)


def borel5_law() -> StructureConstants:
    # basis T1, T2, X1, X2, X3
    return _sc(5, {(1, 3, 3): 1, (1, 5, 5): 1, (2, 4, 4): 1, (2, 5, 5): 1, (3, 4, 5): 1},
               ["T1", "T2", "X1", "X2", "X3"])


def ex8_law() -> StructureConstants:
    # basis T1, T2, T3, X1..X5
    X = {i: 3 + i for i in range(1, 6)}
    t = {}
    for i in range(1, 5):
        t[(1, X[i], X[i])] = 1
    t[(1, X[5], X[5])] = 2
    for i in (2, 3, 5):
        t[(2, X[i], X[i])] = 1
    t[(3, X[3], X[3])] = 1
    t[(3, X[4], X[4])] = -1
    t[(X[1], X[2], X[5])] = 1
    t[(X[3], X[4], X[5])] = 1
    return _sc(8, t, ["T1", "T2", "T3"] + [f"X{i}" for i in range(1, 6)])


def counter4_law() -> StructureConstants:
    return _sc(4, {(1, 2, 2): 1, (1, 3, 3): 1, (1, 4, 4): 1}, ["T", "X1", "X2", "X3"])


def h_generators(alpha=1, beta=0) -> list[QMatrix]:
    a, b = Fraction(alpha), Fraction(beta)
    X1 = QMatrix([[1, 1, 0, 1], [1, 1, 0, 0], [a, b, 0, 0], [0, 0, 0, 0]])
    X2 = QMatrix([[1, 1, 0, 0], [1, 1, 0, 1], [b - 1, a + 1, 0, 0], [0, 0, 0, 0]])
    return [X1, X2, _E(4, 3, 4)]


def x4_matrix(alpha=1, beta=0) -> QMatrix:
    s = Fraction(alpha) + Fraction(beta)
    h = Fraction(1, 2)
    return QMatrix([[1, 1, 0, h], [1, 1, 0, h], [s / 2, s / 2, 0, s / 4], [0, 0, 0, 0]])


def epi_shadow_law() -> StructureConstants:
    """Rational stand-in for [T,X1] = e X1, [T,X2] = pi X2 (same zero pattern)."""
    return _sc(3, {(1, 2, 2): 2, (1, 3, 3): 3}, ["T", "X1", "X2"])


def epi_assignment() -> EigenvalueAssignment:
    # eigenvalues 0, e, pi of ad T over the symbols e, pi
    return EigenvalueAssignment(("e", "pi"), (((0, 0), (1, 0), (0, 1)),))


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

def _x(prop, expected, prov=WORKED):
    return Expectation(prop, expected, prov)


def _abelian(n=3) -> Fixture:
    n = int(n)
    if n < 1:
        raise RigidaError("abelian dimension must be positive")
    return Fixture(f"abelian({n})", "law", StructureConstants(n, {}), (
        _x("jacobi_ok", True, ELEMENTARY),
        _x("nilpotent", True, ELEMENTARY),
        _x("center_dim", n, ELEMENTARY),
        _x("dim_der", n * n, ELEMENTARY),
        _x("vn_rigid", False, WORKED),
    ), description="abelian law")


def _heis3() -> Fixture:
    return Fixture("heis3", "law", heisenberg_law(), (
        _x("jacobi_ok", True, ELEMENTARY),
        _x("nilpotent", True, DERIVED),
        _x("two_step", True, DERIVED),
        _x("center_dim", 1, DERIVED),
        _x("char_seq", (2, 1), DERIVED),
        _x("dim_der", 6, DERIVED),
        _x("dim_H2", 5, DERIVED),
        _x("nr_verdict", "Inconclusive", DERIVED),
    ), description="3-dimensional Heisenberg law")


def _sl2() -> Fixture:
    return Fixture("sl2", "law", sl2_law(), (
        _x("jacobi_ok", True, ELEMENTARY),
        _x("solvable", False, ELEMENTARY),
        _x("dim_der", 3, DERIVED),
        _x("dim_H1", 0, DERIVED),
        _x("dim_H2", 0, DERIVED),
        _x("nr_verdict", "Certified", DERIVED),
    ), description="sl(2) in the basis e, h, f")


def _g1() -> Fixture:
    L = make_linear_algebra([_E(2, 1, 1), _E(2, 1, 2)], ["X", "Y"])
    return Fixture("g1", "linear", L, (
        _x("algebraicity", "Algebraic"),
        _x("induced_law", g2_law(), DERIVED),
    ), extras={"law": g2_law()}, description="upper 2x2 matrices with zero second row")


def _g2() -> Fixture:
    X = QMatrix([[1, 1, 0], [0, 1, 0], [0, 0, 0]])
    L = make_linear_algebra([X, _E(3, 1, 3)], ["X", "Y"])
    return Fixture("g2", "law", g2_law(), (
        _x("jacobi_ok", True, ELEMENTARY),
        _x("nr_verdict", "Certified", DERIVED),
        _x("linear_algebraicity", "NotAlgebraic"),
        _x("ad_algebraicity", "Algebraic"),
    ), extras={"linear": L}, description="mu(X, Y) = Y with a non-algebraic realization")


def _ad_g2() -> Fixture:
    return Fixture("ad_g2", "linear", ad_algebra(g2_law()), (
        _x("algebraicity", "Algebraic"),
        _x("dim", 2, ELEMENTARY),
    ), extras={"law": g2_law()}, description="adjoint algebra of mu(X, Y) = Y")


def _v2_point() -> Fixture:
    return Fixture("v2_point", "law", _sc(2, {(1, 2, 1): 1}), (
        _x("jacobi_ok", True, ELEMENTARY),
        _x("orbit_dimension", 2),
        _x("vn_rigid", True),
    ), description="mu(e1, e2) = e1 in the space of skew maps on a plane")


def _n1() -> Fixture:
    f = _h(1, 1)
    return Fixture("n1_matrix", "linear", f.payload, f.expectations, f.extras,
                   "Heisenberg realized as h_{1,1}")


def _n2() -> Fixture:
    L = make_linear_algebra([_E(3, 1, 2), _E(3, 2, 3), _E(3, 1, 3)])
    return Fixture("n2_matrix", "linear", L, (
        _x("algebraicity", "Algebraic"),
        _x("induced_law", heisenberg_law(), ELEMENTARY),
        _x("split_witness", None, ELEMENTARY),
        _x("saturation_dim", 3, ELEMENTARY),
    ), description="strictly upper triangular 3x3 matrices")


def _a1() -> Fixture:
    L = make_linear_algebra([QMatrix([[1, 1], [0, 1]])])
    return Fixture("a1", "linear", L, (
        _x("algebraicity", "NotAlgebraic"),
        _x("split_witness", "X1"),
        _x("saturation_dim", 2, DERIVED),
    ), description="line spanned by a unipotent Jordan block")


def _h(alpha=1, beta=0) -> Fixture:
    a, b = parse_rational(alpha), parse_rational(beta)
    L = make_linear_algebra(h_generators(a, b))
    exp = [_x("induced_law", heisenberg_law())]
    if a + b:
        exp += [_x("algebraicity", "NotAlgebraic"), _x("split_witness", "X1"),
                _x("saturation_dim", 4)]
    return Fixture(f"h_alpha_beta({a},{b})", "linear", L, tuple(exp),
                   extras={"alpha": a, "beta": b}, description="two-parameter family of Heisenberg realizations in gl(4)")


def _m(alpha=1, beta=0) -> Fixture:
    a, b = parse_rational(alpha), parse_rational(beta)
    L = make_linear_algebra(h_generators(a, b) + [x4_matrix(a, b)])
    exp = [_x("dim", 4, ELEMENTARY)]
    if a + b:
        exp.append(_x("algebraicity", "Algebraic"))
    return Fixture(f"m_alpha_beta({a},{b})", "linear", L, tuple(exp),
                   extras={"alpha": a, "beta": b}, description="h_{alpha,beta} with its semisimple part")


def _rigid13() -> Fixture:
    return Fixture("rigid13", "law", rigid13_law(), (
        _x("jacobi_ok", True, ELEMENTARY),
        _x("solvable", True, ELEMENTARY),
        _x("dim_H2", 1),
        _x("nilradical_char_seq_max", 11, DERIVED),
    ), extras={"nilradical": tuple(range(12))}, description="13-dimensional graded filiform extension")


def _phi13() -> Fixture:
    return Fixture("phi13", "cochain", phi13_cochain(), (
        _x("is_cocycle", True),
        _x("is_coboundary", False),
    ), extras={"law": rigid13_law()}, description="non-trivial 2-cocycle of rigid13")


def _borel5() -> Fixture:
    return Fixture("borel5", "law", borel5_law(), (
        _x("jacobi_ok", True, ELEMENTARY),
        _x("solvable", True, ELEMENTARY),
        _x("center_dim", 0, ELEMENTARY),
        _x("regular_vector", (1, 1)),
        _x("rank_theorem_rank", 2),
        _x("rank_theorem_pass", True),
    ), extras={"torus": (0, 1)}, description="Borel subalgebra of sl(3)")


def _ex8() -> Fixture:
    return Fixture("ex8", "law", ex8_law(), (
        _x("jacobi_ok", True, ELEMENTARY),
        _x("center_dim", 0, ELEMENTARY),
        _x("regular_vector", (1, 0, 0)),
        _x("rank_theorem_rank", 4),
        _x("rank_theorem_pass", True),
    ), extras={"torus": (0, 1, 2)}, description="8-dimensional solvable law with a rank-3 torus")


def _counter4() -> Fixture:
    return Fixture("counter4", "law", counter4_law(), (
        _x("jacobi_ok", True, ELEMENTARY),
        _x("rank_theorem_rank", 0, DERIVED),
        _x("rank_theorem_pass", False, DERIVED),
    ), extras={"torus": (0,)}, description="[T, Xi] = Xi, failing the rank condition")


def _epi_ad() -> Fixture:
    return Fixture("epi_ad", "assignment", epi_assignment(), (
        _x("algebraicity", "NotAlgebraic"),
        _x("hull_dim", 2),
        _x("defect", 1),
        _x("lattice_rank", 1),
        _x("shadow_algebraicity", "Algebraic", DERIVED),
    ), extras={"law": epi_shadow_law(), "algebra": ad_algebra(epi_shadow_law())},
        description="adjoint algebra of [T,X1] = e X1, [T,X2] = pi X2")


REGISTRY: dict[str, Callable[..., Fixture]] = {
    "abelian": _abelian,
    "heis3": _heis3,
    "sl2": _sl2,
    "g1": _g1,
    "g2": _g2,
    "ad_g2": _ad_g2,
    "v2_point": _v2_point,
    "n1_matrix": _n1,
    "n2_matrix": _n2,
    "a1": _a1,
    "h_alpha_beta": _h,
    "m_alpha_beta": _m,
    "rigid13": _rigid13,
    "phi13": _phi13,
    "borel5": _borel5,
    "ex8": _ex8,
    "counter4": _counter4,
    "epi_ad": _epi_ad,
}

_CALL = re.compile(r"^([a-z_0-9]+)(?:\((.*)\))?$")


def list_fixtures() -> list[str]:
    return list(REGISTRY)


def load_fixture(name: str, *args) -> Fixture:
    """``load_fixture("abelian", 4)`` or ``load_fixture("h_alpha_beta(1/2,3)")``."""
    m = _CALL.match(name.strip())
    if not m or m.group(1) not in REGISTRY:
        raise RigidaError(f"unknown fixture {name!r}")
    if m.group(2) is not None:
        if args:
            raise RigidaError("parameters given twice")
        args = tuple(p.strip() for p in m.group(2).split(",") if p.strip())
    try:
        return REGISTRY[m.group(1)](*args)
    except TypeError:
        raise RigidaError(f"bad parameters for fixture {m.group(1)!r}") from None


# ---------------------------------------------------------------------------
# manifest evaluation
# ---------------------------------------------------------------------------

def _is_heisenberg(sc: StructureConstants) -> bool:
    """3-dim nilpotent, 1-dim derived algebra, 1-dim center."""
    law = LieLaw(sc)
    return sc.dim == 3 and is_nilpotent(law) and series_dims(law).derived[:2] == (3, 1) \
        and len(center(law)) == 1


def _linear(f: Fixture) -> LinearLieAlgebra:
    if f.kind == "linear":
        return f.payload
    if "algebra" in f.extras:
        return f.extras["algebra"]
    raise RigidaError(f"fixture {f.name} has no linear algebra")


def _rank_report(f: Fixture):
    return rank_theorem_check(f.payload, TorusSpec(f.extras["torus"]))


def _torus_coeffs(f: Fixture) -> tuple:
    T0 = _rank_report(f).regular
    return tuple(int(T0[t]) for t in f.extras["torus"])


def _algebraicity(f: Fixture) -> str:
    if f.kind == "assignment":
        return algebraicity_verdict(_linear(f), f.payload).status
    return algebraicity_verdict(_linear(f)).status


def _split(f: Fixture):
    w = split_closure_witness(_linear(f))
    return None if w is None else w.probe_label


def _induced(f: Fixture, expected):
    sc = _linear(f).induced
    if expected == heisenberg_law():
        return heisenberg_law() if _is_heisenberg(sc) else sc
    return sc


PROPERTIES: dict[str, Callable] = {
    "jacobi_ok": lambda f: not jacobi_defect(f.law),
    "dim": lambda f: (f.law.dim if f.kind == "law" else _linear(f).dim),
    "nilpotent": lambda f: is_nilpotent(f.law),
    "solvable": lambda f: is_solvable(f.law),
    "two_step": lambda f: is_two_step(f.law),
    "center_dim": lambda f: len(center(LieLaw(f.law))),
    "char_seq": lambda f: tuple(char_seq(LieLaw(f.law))),
    "dim_der": lambda f: cohomology_report(f.law).dim_der,
    "dim_H1": lambda f: cohomology_report(f.law).dim_H1,
    "dim_H2": lambda f: cohomology_report(f.law).dim_H2,
    "nr_verdict": lambda f: cohomology_report(f.law).verdict,
    "orbit_dimension": lambda f: cohomology_report(f.law).orbit_dimension,
    "vn_rigid": lambda f: vn_rigidity_check(f.law),
    "nilradical_char_seq_max": lambda f: char_seq(
        LieLaw(restrict(f.law, f.extras["nilradical"])))[0],
    "rank_theorem_rank": lambda f: _rank_report(f).rank,
    "rank_theorem_pass": lambda f: _rank_report(f).passed,
    "regular_vector": _torus_coeffs,
    "linear_algebraicity": lambda f: algebraicity_verdict(f.extras["linear"]).status,
    "ad_algebraicity": lambda f: algebraicity_verdict(ad_algebra(f.law)).status,
    "algebraicity": _algebraicity,
    "shadow_algebraicity": lambda f: algebraicity_verdict(_linear(f)).status,
    "split_witness": _split,
    "saturation_dim": lambda f: jordan_saturation(_linear(f)).algebra.dim,
    "hull_dim": lambda f: torus_replica_defect(f.payload).hull_dim,
    "defect": lambda f: torus_replica_defect(f.payload).defect,
    "lattice_rank": lambda f: torus_replica_defect(f.payload).lattice.rank,
    "is_cocycle": lambda f: is_cocycle(f.extras["law"], f.payload),
    "is_coboundary": lambda f: is_coboundary(f.extras["law"], f.payload) is not None,
}


@dataclass(frozen=True)
class ManifestRow:
    prop: str
    expected: object
    actual: object
    passed: bool
    provenance: str
    error: str = ""


@dataclass(frozen=True)
class ManifestReport:
    name: str
    rows: tuple

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)


def run_manifest(fixture: Fixture) -> ManifestReport:
    rows = []
    for e in fixture.expectations:
        try:
            if e.prop == "induced_law":
                actual = _induced(fixture, e.expected)
            else:
                actual = PROPERTIES[e.prop](fixture)
            rows.append(ManifestRow(e.prop, e.expected, actual, actual == e.expected,
                                    e.provenance))
        except RigidaError as exc:
            rows.append(ManifestRow(e.prop, e.expected, None, False, e.provenance, str(exc)))
    return ManifestReport(fixture.name, tuple(rows))
