import random
from fractions import Fraction

import pytest

import oracles
from rigida.catalog import g2_law, heisenberg_law, sl2_law
from rigida.cohomology import (
    CERTIFIED,
    INCONCLUSIVE,
    Cochain2,
    coboundaries2,
    cohomology_report,
    delta,
    derivation_dim,
    derivations,
    inner_derivations,
    is_coboundary,
    is_cocycle,
    orbit_dimension,
    semisimple_derivation_deformation,
    two_cocycles,
    vn_rigidity_check,
)
from rigida.errors import DimensionError, RigidaError
from rigida.exactlin import QMatrix, det
from rigida.liecore import StructureConstants, abelian, ad_matrix, transport, unit

from test_liecore import random_law, random_skew


def random_matrix(rng, n, lo=-3, hi=3):
    return QMatrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])


# --- derivations ----------------------------------------------------------

def test_derivation_examples():
    assert len(derivations(abelian(3))) == 9
    assert len(derivations(g2_law())) == 2
    assert len(derivations(sl2_law())) == 3
    assert len(derivations(heisenberg_law())) == 6


def test_derivations_are_derivations():
    for law in (g2_law(), sl2_law(), heisenberg_law()):
        for D in derivations(law):
            assert delta(law, D).is_zero()


def test_derivation_dim_against_oracle():
    rng = random.Random(301)
    for _ in range(60):
        n = rng.randint(2, 4)
        sc = random_skew(rng, n, 0.3)
        assert derivation_dim(sc) == oracles.derivation_dim(sc.table, n)


def test_inner_derivations():
    assert len(inner_derivations(heisenberg_law())) == 2
    assert len(inner_derivations(abelian(3))) == 0
    assert len(inner_derivations(sl2_law())) == 3


# --- cocycles and coboundaries ----------------------------------------------

def test_two_cocycle_examples():
    assert two_cocycles(g2_law())[0] == 2
    assert two_cocycles(sl2_law())[0] == 6
    dim, basis = two_cocycles(heisenberg_law())
    assert dim == len(basis)
    assert all(is_cocycle(heisenberg_law(), phi) for phi in basis)


def test_two_cocycles_against_oracle():
    rng = random.Random(302)
    for _ in range(40):
        n = rng.randint(3, 4)
        law = random_law(rng, n)
        assert two_cocycles(law, with_basis=False)[0] == oracles.cocycle_dim(law.sc.table, n)


def test_coboundary_examples():
    assert coboundaries2(abelian(3))[0] == 0
    assert coboundaries2(sl2_law())[0] == 6
    assert coboundaries2(g2_law())[0] == 2


def test_coboundaries_are_cocycles():
    rng = random.Random(303)
    for _ in range(200):
        n = rng.randint(2, 4)
        law = random_law(rng, max(n, 3))
        f = random_matrix(rng, law.dim)
        phi = delta(law, f)
        assert is_cocycle(law, phi)
        w = is_coboundary(law, phi)
        assert w is not None and delta(law, w) == phi


def test_zero_cochain_is_coboundary():
    w = is_coboundary(sl2_law(), Cochain2(3, {}))
    assert w is not None and delta(sl2_law(), w).is_zero()


def test_coboundary_dimension_mismatch():
    with pytest.raises(DimensionError):
        is_coboundary(sl2_law(), Cochain2(2, {}))
    with pytest.raises(DimensionError):
        delta(sl2_law(), QMatrix.identity(2))


def test_non_cocycle_detected():
    # phi(e, f) = e on sl2 violates the linearized Jacobi identity
    phi = Cochain2(3, {(0, 2, 0): 1})
    assert not is_cocycle(sl2_law(), phi)


# --- reports ------------------------------------------------------------------

def test_report_sl2():
    r = cohomology_report(sl2_law())
    assert (r.dim_der, r.dim_H1, r.dim_H2, r.verdict) == (3, 0, 0, CERTIFIED)


def test_report_heisenberg():
    r = cohomology_report(heisenberg_law())
    assert (r.dim_der, r.dim_inner, r.dim_H1) == (6, 2, 4)
    assert r.verdict == INCONCLUSIVE
    assert r.as_dict()["note"]


def test_report_identities():
    rng = random.Random(304)
    for _ in range(40):
        law = random_law(rng, rng.randint(3, 4))
        r = cohomology_report(law)
        n = law.dim
        assert r.dim_B2 == n * n - r.dim_der
        assert r.dim_B2 <= r.dim_Z2
        assert r.dim_inner <= r.dim_der


def test_orbit_dimension():
    assert orbit_dimension(g2_law()) == 2
    assert orbit_dimension(abelian(3)) == 0
    assert orbit_dimension(sl2_law()) == 6


def test_orbit_dimension_transport_invariant():
    rng = random.Random(305)
    for _ in range(30):
        law = random_law(rng, 3)
        f = random_matrix(rng, 3)
        if det(f):
            assert orbit_dimension(transport(law, f)) == orbit_dimension(law)


# --- open orbits in the space of skew maps ---------------------------------

def test_vn_plane():
    assert vn_rigidity_check(StructureConstants(2, {(0, 1, 0): 1}))
    assert not vn_rigidity_check(StructureConstants(2, {}))


def test_vn_dim3_never_open():
    rng = random.Random(306)
    for _ in range(100):
        sc = random_skew(rng, 3, 0.6)
        assert not vn_rigidity_check(sc)
        assert derivation_dim(sc) >= 1


# --- deformation along a derivation -------------------------------------------

def test_deformation_zero():
    law = sl2_law()
    D = ad_matrix(law, unit(3, 1))
    new, defect = semisimple_derivation_deformation(law, D, 1, 0)
    assert new == law and defect == []


def test_deformation_g2_in_orbit():
    law = g2_law()
    D = ad_matrix(law, unit(2, 0))
    for eps in (Fraction(1), Fraction(1, 2), Fraction(-1, 3)):
        new, defect = semisimple_derivation_deformation(law, D, 0, eps)
        assert defect == []
        assert new.coeff(0, 1, 1) == 1 + eps
        assert transport(law, QMatrix.diag([1 + eps, 1])) == new


def test_deformation_heisenberg():
    law = heisenberg_law()
    new, defect = semisimple_derivation_deformation(law, QMatrix.diag([1, 1, 2]), 0, 1)
    assert new.bracket_basis(0, 1) == {1: 1, 2: 1}
    assert new.bracket_basis(0, 2) == {2: 2}
    assert defect == []


def test_deformation_rejects_non_derivation():
    with pytest.raises(RigidaError):
        semisimple_derivation_deformation(heisenberg_law(), QMatrix.diag([1, 0, 0]), 0, 1)
    with pytest.raises(RigidaError):
        semisimple_derivation_deformation(heisenberg_law(), QMatrix.diag([1, 1, 2]), 5, 1)
