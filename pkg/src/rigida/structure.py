"""Torus decompositions, weights, regular vectors and the rank-theorem system."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import HypothesisError, RigidaError
from .exactlin import QMatrix, rank, sparse_rank
from .jordan import is_semisimple, simultaneous_eigenbasis
from .liecore import (
    LieLaw,
    ad_matrix,
    as_sc,
    center,
    is_solvable,
    transport,
    unit,
)


@dataclass(frozen=True)
class TorusSpec:
    """0-based basis indices whose ad-operators span the candidate torus."""

    indices: tuple

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if len(set(idx)) != len(idx):
            raise RigidaError("torus indices must be distinct")
        if any(i < 0 for i in idx):
            raise RigidaError("torus indices must be nonnegative")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def parse(cls, text: str) -> "TorusSpec":
        """From a comma-separated 1-based list such as ``"1,2"``."""
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(tuple(int(p) - 1 for p in text.split(",")))
        except ValueError:
            raise RigidaError(f"bad torus index list {text!r}") from None

    def check(self, dim: int):
        for i in self.indices:
            if i >= dim:
                raise RigidaError(f"torus index {i + 1} exceeds dimension {dim}")


@dataclass(frozen=True)
class WeightTable:
    torus: tuple
    eigenbasis: tuple
    weights: tuple

    @property
    def rank(self) -> int:
        return len(self.torus)


def _law(law) -> LieLaw:
    return law if isinstance(law, LieLaw) else LieLaw(as_sc(law))


def verify_decomposition(law, torus: TorusSpec) -> WeightTable:
    """Check g = g_n + span(torus) and diagonalize the torus action on g_n."""
    law = _law(law)
    n = law.dim
    torus.check(n)
    tset = set(torus.indices)
    rest = [i for i in range(n) if i not in tset]
    ads = [ad_matrix(law, unit(n, t)) for t in torus.indices]
    for a, b in itertools.combinations(range(len(ads)), 2):
        if any(law.bracket(unit(n, torus.indices[a]), unit(n, torus.indices[b]))):
            raise HypothesisError("torus elements do not commute")
    for t, A in zip(torus.indices, ads):
        if not is_semisimple(A):
            raise HypothesisError(f"ad {law.labels[t]} is not semisimple")
    for x in range(n):
        for c in rest:
            img = law.sc.bracket_basis(x, c)
            if any(k in tset for k in img):
                raise HypothesisError("the complement of the torus is not an ideal")
    from .algebraicity import nil_flag

    if rest and nil_flag([ad_matrix(law, unit(n, c)) for c in rest], n) is None:
        raise HypothesisError("the complement of the torus is not nilpotent")
    vectors, weights = simultaneous_eigenbasis(ads, [unit(n, c) for c in rest])
    return WeightTable(torus.indices, tuple(vectors), tuple(tuple(w) for w in weights))


def _values(h: int):
    out = [0]
    for k in range(1, h + 1):
        out += [k, -k]
    return out


def _zero_count(wt: WeightTable, c: Sequence) -> int:
    return sum(1 for w in wt.weights if sum(a * b for a, b in zip(w, c)) == 0)


def minimal_kernel_dim(wt: WeightTable) -> int:
    """Torus dimension plus the number of identically vanishing weights."""
    return wt.rank + sum(1 for w in wt.weights if not any(w))


def regular_vector(law, wt: WeightTable, max_height: int | None = None) -> tuple:
    """First integer combination of torus generators (by max-norm) with minimal kernel.

    Coefficients of height h are scanned in the order 0, 1, -1, ..., h, -h
    with the first generator varying slowest.
    """
    n = as_sc(law).dim
    r = wt.rank
    if r == 0:
        return tuple(Fraction(0) for _ in range(n))
    target = len(wt.weights) - (minimal_kernel_dim(wt) - r)
    # at most len(weights) hyperplanes to avoid, so this height always suffices
    limit = max_height if max_height is not None else len(wt.weights) + 1
    for h in range(1, limit + 1):
        vals = _values(h)
        for c in itertools.product(vals, repeat=r):
            if max(abs(x) for x in c) != h:
                continue
            if len(wt.weights) - _zero_count(wt, c) == target:
                T0 = [Fraction(0)] * n
                for t, x in zip(wt.torus, c):
                    T0[t] = Fraction(x)
                return tuple(T0)
    raise RigidaError("no regular vector found within the height bound")  # pragma: no cover


def kernel_dim_combinatorial(wt: WeightTable, T0: Sequence) -> int:
    c = [T0[t] for t in wt.torus]
    return wt.rank + _zero_count(wt, c)


@dataclass(frozen=True)
class Equation:
    """x_a + x_b - x_c = 0 from a nonzero structure constant C_ab^c."""

    a: str
    b: str
    c: str
    source: tuple

    def row(self, index: dict) -> dict:
        out: dict = {}
        for name, s in ((self.a, 1), (self.b, 1), (self.c, -1)):
            if name in index:
                k = index[name]
                out[k] = out.get(k, 0) + s
        return {k: v for k, v in out.items() if v}

    def __str__(self):
        return f"{self.a} + {self.b} = {self.c}"


@dataclass(frozen=True)
class RankReport:
    regular: tuple
    kernel_dim: int
    variables: tuple
    system: tuple
    rank: int
    expected: int
    weights: WeightTable

    @property
    def passed(self) -> bool:
        return self.rank == self.expected


def _working_basis(law, wt: WeightTable, T0: Sequence):
    n = as_sc(law).dim
    labels = as_sc(law).labels
    first = next((t for t in wt.torus if T0[t]), None)
    others = [t for t in wt.torus if t != first]
    vectors = [tuple(T0)] + [unit(n, t) for t in others] + list(wt.eigenbasis)
    names = ["T0"] + [labels[t].lower() for t in others]
    for k, v in enumerate(wt.eigenbasis):
        nz = [i for i, x in enumerate(v) if x]
        if len(nz) == 1 and v[nz[0]] == 1:
            names.append(labels[nz[0]].lower())
        else:
            names.append(f"y{k + 1}")
    if len(set(names)) != len(names):
        names = ["T0"] + [f"w{k}" for k in range(1, len(vectors))]
    return vectors, names


def build_rank_system(law, wt: WeightTable, T0: Sequence) -> tuple[tuple, tuple]:
    """Variables and equations of S(T0); brackets with T0 as a factor are skipped.

    The T0 variable is normalized to zero, so a bracket landing on T0
    contributes no term for it.
    """
    sc = as_sc(law)
    vectors, names = _working_basis(sc, wt, T0)
    P = QMatrix.from_columns(vectors)
    if rank(P) != sc.dim:
        raise HypothesisError("torus and eigenbasis do not form a basis")
    w = transport(sc, P)
    eqs = []
    for (i, j, k), v in sorted(w.items()):
        if i == 0 or j == 0:
            continue
        eqs.append(Equation(names[i], names[j], names[k], (i, j, k)))
    return tuple(names[1:]), tuple(eqs)


def rank_theorem_check(law, torus: TorusSpec) -> RankReport:
    """verify_decomposition, regular vector, S(T0) and its rank against dim n - 1."""
    law = _law(law)
    if not is_solvable(law):
        raise HypothesisError("the law is not solvable")
    if center(law):
        raise HypothesisError("the center is not trivial")
    wt = verify_decomposition(law, torus)
    T0 = regular_vector(law, wt)
    variables, system = build_rank_system(law, wt, T0)
    index = {name: k for k, name in enumerate(variables)}
    r = sparse_rank([e.row(index) for e in system], len(variables)) if system else 0
    return RankReport(T0, kernel_dim_combinatorial(wt, T0), variables, system, r,
                      len(wt.eigenbasis) - 1, wt)


def root_decomposition(law, torus: TorusSpec) -> dict[tuple, list[tuple]]:
    """Eigenbasis of g_n grouped by weight.

    Roots are the nonzero keys; a zero weight (always the case for an empty
    torus) keeps the remaining part of g_n so that dimensions add up.
    """
    wt = verify_decomposition(law, torus)
    out: dict[tuple, list[tuple]] = {}
    for v, w in zip(wt.eigenbasis, wt.weights):
        out.setdefault(w, []).append(v)
    return out
