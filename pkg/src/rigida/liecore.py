"""Skew bilinear maps by structure constants, Lie laws and their basic invariants.

Indices are 0-based in Python; the JSON formats and labels are 1-based.
A table stores ``(i, j, k) -> X_ij^k`` only for ``i < j`` and nonzero values.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError, NotALieLawError, RigidaError
from .exactlin import (
    QMatrix,
    commutator,
    in_span,
    independent_subset,
    inverse,
    kernel_basis,
    rank,
    solve_linear,
)

DEFAULT_SEED = 0x5EED
DEFAULT_SAMPLES = 20


class StructureConstants:
    """Skew-symmetric bilinear map on an n-dimensional space.

    ``table`` maps ``(i, j, k)`` with ``i < j`` to the coefficient of
    ``e_k`` in ``mu(e_i, e_j)``.  Zero coefficients are dropped.
    """

    __slots__ = ("dim", "labels", "_table", "_brackets")

    def __init__(self, dim: int, table: Mapping[tuple[int, int, int], object] = (),
                 labels: Sequence[str] | None = None):
        if dim < 0:
            raise DimensionError("dimension must be nonnegative")
        self.dim = dim
        if labels is None:
            labels = [f"e{i + 1}" for i in range(dim)]
        if len(labels) != dim:
            raise DimensionError(f"{len(labels)} labels for dimension {dim}")
        self.labels = tuple(labels)
        clean = {}
        items = table.items() if isinstance(table, Mapping) else table
        for (i, j, k), v in items:
            if not (0 <= i < j < dim and 0 <= k < dim):
                raise RigidaError(f"bad key ({i}, {j}, {k}) for dimension {dim}")
            v = Fraction(v)
            if v:
                clean[(i, j, k)] = v
        self._table = dict(sorted(clean.items()))
        self._brackets = None

    @property
    def table(self) -> dict:
        return dict(self._table)

    def items(self):
        return self._table.items()

    def coeff(self, i: int, j: int, k: int) -> Fraction:
        if i == j:
            return Fraction(0)
        if i < j:
            return self._table.get((i, j, k), Fraction(0))
        return -self._table.get((j, i, k), Fraction(0))

    def _basis_brackets(self) -> dict:
        if self._brackets is None:
            br: dict[tuple[int, int], dict[int, Fraction]] = {}
            for (i, j, k), v in self._table.items():
                br.setdefault((i, j), {})[k] = v
            self._brackets = br
        return self._brackets

    def bracket_basis(self, i: int, j: int) -> dict[int, Fraction]:
        """Sparse image ``mu(e_i, e_j)`` as ``{k: coefficient}``."""
        if i == j:
            return {}
        if i < j:
            return dict(self._basis_brackets().get((i, j), {}))
        return {k: -v for k, v in self._basis_brackets().get((j, i), {}).items()}

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        out = [Fraction(0)] * self.dim
        for (i, j), img in self._basis_brackets().items():
            c = x[i] * y[j] - x[j] * y[i]
            if c:
                for k, v in img.items():
                    out[k] += c * v
        return tuple(out)

    def scaled(self, c) -> "StructureConstants":
        c = Fraction(c)
        return type(self)(self.dim, {key: c * v for key, v in self._table.items()}, self.labels)

    def __add__(self, other: "StructureConstants") -> "StructureConstants":
        if self.dim != other.dim:
            raise DimensionError("dimension mismatch")
        t = dict(self._table)
        for key, v in other._table.items():
            t[key] = t.get(key, 0) + v
        return type(self)(self.dim, t, self.labels)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def is_zero(self) -> bool:
        return not self._table

    def vector(self) -> tuple:
        """Coordinates in the space of skew maps, ordered by (i<j, k)."""
        v = [Fraction(0)] * (self.dim * self.dim * (self.dim - 1) // 2)
        for (i, j, k), c in self._table.items():
            v[pair_index(i, j, self.dim) * self.dim + k] = c
        return tuple(v)

    @classmethod
    def from_vector(cls, dim: int, vec: Sequence, labels=None):
        table = {}
        for (i, j) in itertools.combinations(range(dim), 2):
            base = pair_index(i, j, dim) * dim
            for k in range(dim):
                if vec[base + k]:
                    table[(i, j, k)] = vec[base + k]
        return cls(dim, table, labels)

    def __eq__(self, other):
        if not isinstance(other, StructureConstants):
            return NotImplemented
        return self.dim == other.dim and self._table == other._table

    def __hash__(self):
        return hash((self.dim, tuple(self._table.items())))

    def __repr__(self):
        parts = []
        for (i, j), img in self._basis_brackets().items():
            rhs = " + ".join(f"{v}*{self.labels[k]}" for k, v in sorted(img.items()))
            parts.append(f"[{self.labels[i]},{self.labels[j]}]={rhs}")
        return f"{type(self).__name__}(dim={self.dim}; " + "; ".join(parts) + ")"


def pair_index(i: int, j: int, n: int) -> int:
    """Position of the pair i<j in lexicographic order."""
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def num_skew_coordinates(n: int) -> int:
    return n * n * (n - 1) // 2


def validate_skew(raw: Iterable[tuple[tuple[int, int, int], object]] | Mapping, dim: int,
                  labels: Sequence[str] | None = None) -> StructureConstants:
    """Canonicalize a raw 0-based table that may list (i,j,k) and/or (j,i,k).

    Entries given for both orders must be negatives of each other; diagonal
    entries must vanish.
    """
    items = raw.items() if isinstance(raw, Mapping) else raw
    seen: dict[tuple[int, int, int], Fraction] = {}
    for (i, j, k), v in items:
        if not all(isinstance(t, int) for t in (i, j, k)):
            raise RigidaError(f"indices must be integers: {(i, j, k)}")
        if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
            raise RigidaError(f"index out of range in ({i + 1}, {j + 1}, {k + 1}) for dim {dim}")
        v = Fraction(v)
        if i == j:
            if v:
                raise RigidaError(f"nonzero diagonal entry at ({i + 1}, {i + 1}, {k + 1})")
            continue
        key, val = ((i, j, k), v) if i < j else ((j, i, k), -v)
        if key in seen and seen[key] != val:
            raise RigidaError(
                f"inconsistent antisymmetry at ({key[0] + 1}, {key[1] + 1}, {key[2] + 1})")
        seen[key] = val
    return StructureConstants(dim, seen, labels)


def jacobi_defect(sc: StructureConstants) -> list[tuple[int, int, int, int, Fraction]]:
    """Nonzero components of the cyclic Jacobi sum over basis triples i<j<k."""
    n = sc.dim
    out = []
    for i, j, k in itertools.combinations(range(n), 3):
        acc = [Fraction(0)] * n
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for l, x in sc.bracket_basis(a, b).items():
                for s, y in sc.bracket_basis(l, c).items():
                    acc[s] += x * y
        for s, v in enumerate(acc):
            if v:
                out.append((i, j, k, s, v))
    return out


class LieLaw:
    """Structure constants certified to satisfy the Jacobi identity."""

    __slots__ = ("sc",)

    def __init__(self, sc: StructureConstants):
        defect = jacobi_defect(sc)
        if defect:
            i, j, k, s, v = defect[0]
            raise NotALieLawError(
                f"Jacobi identity fails at ({i + 1}, {j + 1}, {k + 1}), coordinate {s + 1}: {v}",
                defect)
        self.sc = sc

    @property
    def dim(self) -> int:
        return self.sc.dim

    @property
    def labels(self):
        return self.sc.labels

    def bracket(self, x, y):
        return self.sc.bracket(x, y)

    def __eq__(self, other):
        return isinstance(other, LieLaw) and self.sc == other.sc

    def __hash__(self):
        return hash(self.sc)

    def __repr__(self):
        return f"LieLaw({self.sc!r})"


def as_sc(obj) -> StructureConstants:
    return obj.sc if isinstance(obj, LieLaw) else obj


def unit(n: int, i: int) -> tuple:
    return tuple(Fraction(1 if t == i else 0) for t in range(n))


def abelian(n: int) -> LieLaw:
    return LieLaw(StructureConstants(n, {}))


def ad_matrix(law, x: Sequence) -> QMatrix:
    """Matrix of ``y -> mu(x, y)``; column j is ``mu(x, e_j)``."""
    sc = as_sc(law)
    n = sc.dim
    if len(x) != n:
        raise DimensionError(f"vector of length {len(x)} for dimension {n}")
    cols = [[Fraction(0)] * n for _ in range(n)]
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j in range(n):
            for k, v in sc.bracket_basis(i, j).items():
                cols[j][k] += xi * v
    return QMatrix.from_columns(cols) if n else QMatrix.zeros(0)


def ad_basis(law) -> list[QMatrix]:
    n = as_sc(law).dim
    return [ad_matrix(law, unit(n, i)) for i in range(n)]


def transport(sc, f: QMatrix) -> StructureConstants:
    """Structure constants of ``mu_f(X, Y) = f^{-1} mu(f X, f Y)``."""
    sc = as_sc(sc)
    n = sc.dim
    if f.shape != (n, n):
        raise DimensionError(f"transport matrix must be {n}x{n}")
    finv = inverse(f)
    cols = [f.column(j) for j in range(n)]
    table = {}
    for i, j in itertools.combinations(range(n), 2):
        img = finv.apply(sc.bracket(cols[i], cols[j]))
        for k, v in enumerate(img):
            if v:
                table[(i, j, k)] = v
    return type(sc)(n, table, sc.labels)


def diagonal_transport(sc, lam: Sequence) -> StructureConstants:
    """Entrywise ``Y_ij^k = lam_i lam_j / lam_k X_ij^k``."""
    sc = as_sc(sc)
    if len(lam) != sc.dim:
        raise DimensionError("one scaling factor per basis vector required")
    lam = [Fraction(x) for x in lam]
    if any(x == 0 for x in lam):
        raise RigidaError("diagonal transport needs nonzero factors")
    table = {(i, j, k): lam[i] * lam[j] / lam[k] * v for (i, j, k), v in sc.items()}
    return type(sc)(sc.dim, table, sc.labels)


# ---------------------------------------------------------------------------
# subspaces, series and predicates
# ---------------------------------------------------------------------------

def _span_basis(vectors: list[tuple]) -> list[tuple]:
    return [vectors[i] for i in independent_subset(vectors)]


def bracket_span(sc: StructureConstants, a: list[tuple], b: list[tuple]) -> list[tuple]:
    vecs = [sc.bracket(x, y) for x in a for y in b]
    return _span_basis([v for v in vecs if any(v)])


@dataclass(frozen=True)
class SeriesDims:
    derived: tuple[int, ...]
    lower_central: tuple[int, ...]

    @property
    def is_solvable(self) -> bool:
        return self.derived[-1] == 0

    @property
    def is_nilpotent(self) -> bool:
        return self.lower_central[-1] == 0

    @property
    def nilindex(self) -> int | None:
        """Nilpotency class (length of the lower central series), None if not nilpotent."""
        if not self.is_nilpotent:
            return None
        return len(self.lower_central) - 1


def series_dims(law) -> SeriesDims:
    sc = as_sc(law)
    n = sc.dim
    full = [unit(n, i) for i in range(n)]

    def run(step):
        dims = [n]
        cur = full
        while True:
            nxt = step(cur)
            if len(nxt) == len(cur):
                break
            dims.append(len(nxt))
            cur = nxt
            if not cur:
                break
        return tuple(dims)

    derived = run(lambda cur: bracket_span(sc, cur, cur))
    lower = run(lambda cur: bracket_span(sc, full, cur))
    return SeriesDims(derived, lower)


def is_nilpotent(law) -> bool:
    return series_dims(law).is_nilpotent


def is_solvable(law) -> bool:
    return series_dims(law).is_solvable


def is_two_step(sc) -> bool:
    """True iff mu(mu(e_i, e_j), e_k) = 0 for every basis triple."""
    sc = as_sc(sc)
    n = sc.dim
    for (i, j, _), _v in sc.items():
        img = sc.bracket_basis(i, j)
        for k in range(n):
            acc: dict[int, Fraction] = {}
            for l, x in img.items():
                for s, y in sc.bracket_basis(l, k).items():
                    acc[s] = acc.get(s, 0) + x * y
            if any(acc.values()):
                return False
    return True


def is_skew_associative(sc) -> bool:
    """True iff mu(mu(X, Y), Z) = mu(X, mu(Y, Z)) on every basis triple."""
    sc = as_sc(sc)
    n = sc.dim
    for i, j, k in itertools.product(range(n), repeat=3):
        acc: dict[int, Fraction] = {}
        for l, x in sc.bracket_basis(i, j).items():
            for s, y in sc.bracket_basis(l, k).items():
                acc[s] = acc.get(s, 0) + x * y
        for l, x in sc.bracket_basis(j, k).items():
            for s, y in sc.bracket_basis(i, l).items():
                acc[s] = acc.get(s, 0) - x * y
        if any(acc.values()):
            return False
    return True


def center(law) -> list[tuple]:
    """Basis of {X : ad X = 0}."""
    sc = as_sc(law)
    n = sc.dim
    if n == 0:
        return []
    # ad X (e_j) = sum_i x_i mu(e_i, e_j): one equation per (j, k)
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append([sc.coeff(i, j, k) for i in range(n)])
    return kernel_basis(QMatrix(rows))


# ---------------------------------------------------------------------------
# characteristic sequence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharSeq:
    """Jordan block sizes in decreasing order."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if list(self.parts) != sorted(self.parts, reverse=True) or any(p <= 0 for p in self.parts):
            raise RigidaError(f"not a decreasing sequence of positive parts: {self.parts}")

    def __lt__(self, other: "CharSeq") -> bool:
        return self.parts < other.parts

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self):
        return "(" + ", ".join(map(str, self.parts)) + ")"


def jordan_block_sizes(N: QMatrix) -> tuple[int, ...]:
    """Block sizes of a nilpotent matrix from the ranks of its powers."""
    n = N.rows
    ranks = [n]
    P = QMatrix.identity(n)
    while ranks[-1] > 0:
        P = P @ N
        r = rank(P)
        if r == ranks[-1]:
            raise RigidaError("matrix is not nilpotent")
        ranks.append(r)
    # at_least[k] = number of blocks of size >= k
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    parts = []
    for k in range(len(at_least), 0, -1):
        exactly = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        parts.extend([k] * exactly)
    return tuple(parts)


def _require_nilpotent(law):
    if not is_nilpotent(law):
        raise RigidaError("characteristic sequences are defined for nilpotent laws only")


def char_seq_at(law, x: Sequence) -> CharSeq:
    _require_nilpotent(law)
    return CharSeq(jordan_block_sizes(ad_matrix(law, x)))


def char_seq(law, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> CharSeq:
    """Lexicographic max of ``char_seq_at`` over basis vectors and random samples.

    This is a lower bound for the characteristic sequence; since the maximum
    is attained on a Zariski-open set, it is exact with probability one.
    """
    _require_nilpotent(law)
    n = as_sc(law).dim
    rng = random.Random(seed)
    probes = [unit(n, i) for i in range(n)]
    for _ in range(samples):
        probes.append(tuple(Fraction(rng.randint(-9, 9)) for _ in range(n)))
    best = CharSeq((1,) * n)
    for x in probes:
        c = CharSeq(jordan_block_sizes(ad_matrix(law, x)))
        if c.parts > best.parts:
            best = c
    return best


def restrict(law, indices: Sequence[int]) -> StructureConstants:
    """Structure constants of the subalgebra spanned by the given basis vectors."""
    sc = as_sc(law)
    pos = {old: new for new, old in enumerate(indices)}
    table = {}
    for (i, j, k), v in sc.items():
        if i in pos and j in pos:
            if k not in pos:
                raise RigidaError("basis vectors do not span a subalgebra")
            table[(pos[i], pos[j], pos[k])] = v
    return StructureConstants(len(indices), table, [sc.labels[i] for i in indices])


# ---------------------------------------------------------------------------
# matrices -> structure constants
# ---------------------------------------------------------------------------

def structure_from_matrices(generators: Sequence[QMatrix], labels=None
                            ) -> tuple[StructureConstants | None, bool]:
    """Express pairwise commutators in the generator basis.

    Returns ``(sc, True)`` when the span is closed under the commutator,
    ``(None, False)`` otherwise.
    """
    gens = list(generators)
    d = len(gens)
    if d:
        m = gens[0].rows
        if any(g.shape != (m, m) for g in gens):
            raise DimensionError("generators must be square of a common size")
    flats = [g.flatten() for g in gens]
    if len(independent_subset(flats)) != d:
        raise RigidaError("generators are linearly dependent")
    table = {}
    if d:
        basis = QMatrix.from_columns(flats)
    for i, j in itertools.combinations(range(d), 2):
        c = commutator(gens[i], gens[j]).flatten()
        if not any(c):
            continue
        coords = solve_linear(basis, c)
        if coords is None:
            return None, False
        for k, v in enumerate(coords):
            if v:
                table[(i, j, k)] = v
    return StructureConstants(d, table, labels or [f"X{i + 1}" for i in range(d)]), True


def first_unclosed_pair(generators: Sequence[QMatrix]) -> tuple[int, int] | None:
    flats = [g.flatten() for g in generators]
    for i, j in itertools.combinations(range(len(generators)), 2):
        c = commutator(generators[i], generators[j]).flatten()
        if any(c) and not in_span(flats, c):
            return (i, j)
    return None
