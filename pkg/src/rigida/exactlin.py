"""Exact rational and integer linear algebra.

Everything here works over ``fractions.Fraction``.  Dense matrices go
through fraction-free (Bareiss) elimination on integer-scaled rows; the
large sparse systems produced by the cohomology code use
:func:`sparse_echelon`, which keeps rows primitive instead of dividing by
the previous pivot.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .errors import DimensionError, RigidaError, SingularMatrixError

Rational = Fraction
QVector = tuple  # tuple of Fraction

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``.  Integers are accepted as-is."""
    if isinstance(text, bool):
        raise RigidaError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise RigidaError(f"not a rational string: {text!r}")
    value = Fraction(text)
    return value


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def qvec(values: Iterable) -> tuple:
    return tuple(Fraction(v) for v in values)


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def _lcm(values: Iterable[int]) -> int:
    return reduce(math.lcm, values, 1)


def _to_int_row(row: Sequence[Fraction]) -> list[int]:
    den = _lcm(Fraction(x).denominator for x in row)
    return [int(Fraction(x) * den) for x in row]


class QMatrix:
    """Immutable dense matrix of Fractions, row-major."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        data = tuple(tuple(Fraction(x) for x in row) for row in entries)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionError("ragged matrix rows")
        else:
            width = cols or 0
        if cols is not None and data and cols != width:
            raise DimensionError("column count mismatch")
        self.rows = len(data)
        self.cols = width
        self._data = data
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "QMatrix":
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def diag(cls, values: Sequence) -> "QMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "QMatrix":
        if not columns:
            return cls.zeros(rows or 0, 0)
        return cls([[c[i] for c in columns] for i in range(len(columns[0]))])

    @classmethod
    def from_flat(cls, flat: Sequence, rows: int, cols: int) -> "QMatrix":
        if len(flat) != rows * cols:
            raise DimensionError("flat length does not match shape")
        return cls([flat[i * cols:(i + 1) * cols] for i in range(rows)], cols=cols)

    # -- access -----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key):
        i, j = key
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def flatten(self) -> tuple:
        return tuple(x for r in self._data for x in r)

    def is_zero(self) -> bool:
        return not any(x for r in self._data for x in r)

    @property
    def T(self) -> "QMatrix":
        return QMatrix([[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)],
                       cols=self.rows)

    def trace(self) -> Fraction:
        self._need_square()
        return sum((self._data[i][i] for i in range(self.rows)), Fraction(0))

    def _need_square(self):
        if not self.is_square:
            raise DimensionError(f"square matrix required, got {self.rows}x{self.cols}")

    # -- arithmetic -------------------------------------------------------
    def _same_shape(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return True

    def __add__(self, other):
        if self._same_shape(other) is NotImplemented:
            return NotImplemented
        return QMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
                       cols=self.cols)

    def __sub__(self, other):
        if self._same_shape(other) is NotImplemented:
            return NotImplemented
        return QMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
                       cols=self.cols)

    def __neg__(self):
        return QMatrix([[-a for a in r] for r in self._data], cols=self.cols)

    def __mul__(self, scalar):
        if isinstance(scalar, QMatrix):
            return NotImplemented
        c = Fraction(scalar)
        return QMatrix([[c * a for a in r] for r in self._data], cols=self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            ocols = [other.column(j) for j in range(other.cols)]
            return QMatrix([[dot(r, c) for c in ocols] for r in self._data], cols=other.cols)
        return self.apply(other)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        return tuple(dot(r, v) for r in self._data)

    def __pow__(self, k: int):
        self._need_square()
        if k < 0:
            return inverse(self) ** (-k)
        result = QMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_rational(x) for x in r) + "]" for r in self._data)
        return f"QMatrix([{body}])"


def commutator(a: QMatrix, b: QMatrix) -> QMatrix:
    return a @ b - b @ a


# ---------------------------------------------------------------------------
# dense fraction-free elimination
# ---------------------------------------------------------------------------

def bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of an integer matrix.

    Pivot choice: leftmost column with a nonzero entry, first such row.
    Returns the echelon rows (rank rows, zero rows dropped) and the pivot
    columns.  Works on a copy.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        prow = m[r]
        for i in range(r + 1, nrows):
            row = m[i]
            a = row[c]
            for j in range(c + 1, ncols):
                row[j] = (piv * row[j] - a * prow[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _int_rows(M: QMatrix) -> list[list[int]]:
    return [_to_int_row(M.row(i)) for i in range(M.rows)]


def rank(M: QMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    _, pivots = bareiss_echelon(_int_rows(M))
    return len(pivots)


def _back_substitute(ech: list[list[int]], pivots: list[int], ncols: int,
                     fixed: dict[int, Fraction]) -> list[Fraction]:
    x = [Fraction(0)] * ncols
    for j, v in fixed.items():
        x[j] = Fraction(v)
    for row, p in zip(reversed(ech), reversed(pivots)):
        s = Fraction(0)
        for j in range(p + 1, ncols):
            if row[j] and x[j]:
                s += row[j] * x[j]
        x[p] = -s / row[p]
    return x


def kernel_basis(M: QMatrix) -> list[tuple]:
    """Basis of the right null space, one vector per free column.

    The vector attached to free column f has a 1 in position f and 0 in the
    other free positions, so the result is the kernel basis read off the
    reduced row echelon form.
    """
    ncols = M.cols
    if M.rows == 0:
        ech, pivots = [], []
    else:
        ech, pivots = bareiss_echelon(_int_rows(M))
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    for f in free:
        fixed = {g: (1 if g == f else 0) for g in free}
        basis.append(tuple(_back_substitute(ech, pivots, ncols, fixed)))
    return basis


def solve_linear(M: QMatrix, b: Sequence) -> tuple | None:
    """Some solution of ``M x = b`` (free variables set to 0) or ``None``."""
    if len(b) != M.rows:
        raise DimensionError(f"right-hand side has length {len(b)}, matrix has {M.rows} rows")
    ncols = M.cols
    if M.rows == 0:
        return tuple(Fraction(0) for _ in range(ncols))
    aug = [_to_int_row(list(M.row(i)) + [b[i]]) for i in range(M.rows)]
    ech, pivots = bareiss_echelon(aug)
    if pivots and pivots[-1] == ncols:
        return None
    # free variables stay 0; the augmented column is the right-hand side
    x = [Fraction(0)] * ncols
    for row, p in zip(reversed(ech), reversed(pivots)):
        s = Fraction(row[ncols])
        for j in range(p + 1, ncols):
            if row[j] and x[j]:
                s -= row[j] * x[j]
        x[p] = s / row[p]
    return tuple(x)


def inverse(M: QMatrix) -> QMatrix:
    """Exact inverse through one fraction-free elimination of ``[M | I]``."""
    M._need_square()
    n = M.rows
    if n == 0:
        return M
    aug = [_to_int_row(list(M.row(i)) + [1 if i == j else 0 for j in range(n)]) for i in range(n)]
    ech, pivots = bareiss_echelon(aug)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise SingularMatrixError("matrix is singular")
    cols = []
    for k in range(n):
        x = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            row = ech[i]
            s = Fraction(row[n + k])
            for j in range(i + 1, n):
                if row[j] and x[j]:
                    s -= row[j] * x[j]
            x[i] = s / row[i]
        cols.append(x)
    return QMatrix.from_columns(cols)


def det(M: QMatrix) -> Fraction:
    M._need_square()
    n = M.rows
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    rows = []
    for i in range(n):
        den = _lcm(x.denominator for x in M.row(i))
        scale *= den
        rows.append([int(x * den) for x in M.row(i)])
    # track the sign of row swaps by rerunning the pivot search
    m = [list(r) for r in rows]
    prev = 1
    sign = 1
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        piv = m[c][c]
        for i in range(c + 1, n):
            a = m[i][c]
            for j in range(c + 1, n):
                m[i][j] = (piv * m[i][j] - a * m[c][j]) // prev
            m[i][c] = 0
        prev = piv
    return Fraction(sign * m[n - 1][n - 1]) / scale


def independent_subset(vectors: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal independent subset, chosen greedily in order."""
    chosen: list[int] = []
    basis: dict[int, list[int]] = {}
    for idx, v in enumerate(vectors):
        row = _to_int_row(v)
        if _reduce_dense(row, basis):
            chosen.append(idx)
    return chosen


def _reduce_dense(row: list[int], basis: dict[int, list[int]]) -> bool:
    """Reduce ``row`` against pivot rows; insert it if independent."""
    while True:
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None:
            return False
        prow = basis.get(lead)
        if prow is None:
            g = reduce(math.gcd, row)
            basis[lead] = [x // g for x in row]
            return True
        a, p = row[lead], prow[lead]
        row[:] = [p * x - a * y for x, y in zip(row, prow)]
        g = reduce(math.gcd, row)
        if g > 1:
            row[:] = [x // g for x in row]


def span_rank(vectors: Sequence[Sequence]) -> int:
    return len(independent_subset(vectors))


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    if not vectors:
        return not any(v)
    return span_rank(list(vectors) + [v]) == span_rank(vectors)


def coordinates(vectors: Sequence[Sequence], v: Sequence) -> tuple | None:
    """Coefficients c with sum c_i vectors[i] = v, or None."""
    if not vectors:
        return () if not any(v) else None
    return solve_linear(QMatrix.from_columns([list(x) for x in vectors]), list(v))


# ---------------------------------------------------------------------------
# sparse elimination for large structured systems
# ---------------------------------------------------------------------------

def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = reduce(math.gcd, row.values(), 0)
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {j: x // g for j, x in row.items()}
    return row


def _int_sparse(row: dict) -> dict[int, int]:
    den = _lcm(Fraction(x).denominator for x in row.values())
    out = {}
    for j, x in row.items():
        x = Fraction(x)
        if x:
            out[j] = int(x * den)
    return out


def sparse_echelon(rows: Iterable[dict], ncols: int | None = None) -> dict[int, dict[int, int]]:
    """Echelon form of sparse rows, keyed by leading column.

    Rows are dicts ``{column: value}``.  Each incoming row is reduced
    against the pivot rows found so far; the pivot row for column c always
    has leading column c.  Rows are kept primitive (content 1, positive
    leading coefficient).  Stops early once the rank reaches ``ncols``.
    """
    pivots: dict[int, dict[int, int]] = {}
    for raw in rows:
        if ncols is not None and len(pivots) == ncols:
            break
        row = _int_sparse(raw)
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                pivots[lead] = _primitive(row)
                break
            row = _eliminate(row, prow, lead)
    return pivots


def _eliminate(row: dict[int, int], prow: dict[int, int], lead: int) -> dict[int, int]:
    a = row[lead]
    p = prow[lead]
    g = math.gcd(a, p)
    a //= g
    p //= g
    new = {j: p * x for j, x in row.items()} if p != 1 else dict(row)
    for j, y in prow.items():
        v = new.get(j, 0) - a * y
        if v:
            new[j] = v
        else:
            new.pop(j, None)
    return _primitive(new) if new else new


def _components(rows: list[dict], ncols: int) -> list[list[int]]:
    """Group row indices into blocks that share no columns."""
    parent = list(range(ncols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in rows:
        cols = [j for j, v in row.items() if v]
        for j in cols[1:]:
            a, b = find(cols[0]), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    blocks: dict[int, list[int]] = {}
    for idx, row in enumerate(rows):
        cols = [j for j, v in row.items() if v]
        if cols:
            blocks.setdefault(find(cols[0]), []).append(idx)
    return [blocks[k] for k in sorted(blocks)]


def sparse_block_echelon(rows: list[dict], ncols: int) -> dict[int, dict[int, int]]:
    """Echelon form computed independently on each connected block."""
    pivots: dict[int, dict[int, int]] = {}
    for block in _components(rows, ncols):
        block_cols = set()
        for i in block:
            block_cols.update(j for j, v in rows[i].items() if v)
        pivots.update(sparse_echelon((rows[i] for i in block), len(block_cols)))
    return pivots


def sparse_rank(rows: list[dict], ncols: int) -> int:
    return len(sparse_block_echelon(rows, ncols))


def _sparse_back_substitute(pivots: dict[int, dict[int, int]], order: list[int],
                            x: dict[int, Fraction]) -> dict[int, Fraction]:
    for p in order:
        row = pivots[p]
        s = Fraction(0)
        for j, a in row.items():
            if j != p:
                xj = x.get(j)
                if xj:
                    s += a * xj
        if s:
            x[p] = -s / row[p]
    return x


def sparse_kernel(rows: list[dict], ncols: int) -> list[tuple]:
    """Same basis as :func:`kernel_basis`, for sparse input."""
    pivots = sparse_block_echelon(rows, ncols)
    order = sorted(pivots, reverse=True)
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        x = _sparse_back_substitute(pivots, order, {f: Fraction(1)})
        vec = [Fraction(0)] * ncols
        for j, v in x.items():
            vec[j] = v
        basis.append(tuple(vec))
    return basis


def sparse_solve(rows: list[dict], ncols: int, rhs: Sequence) -> tuple | None:
    """Solve a sparse system; the right-hand side is carried as column ``ncols``."""
    if len(rhs) != len(rows):
        raise DimensionError("right-hand side length does not match row count")
    aug = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b:
            r[ncols] = Fraction(b)
        aug.append(r)
    pivots = sparse_block_echelon(aug, ncols + 1)
    if ncols in pivots:
        return None
    order = sorted(pivots, reverse=True)
    x: dict[int, Fraction] = {ncols: Fraction(-1)}
    _sparse_back_substitute(pivots, order, x)
    return tuple(x.get(j, Fraction(0)) for j in range(ncols))


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class QPoly:
    """Univariate polynomial with Fraction coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls) -> "QPoly":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "QPoly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "QPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> "QPoly":
        if self.is_zero():
            return self
        lc = self.lc
        return QPoly(c / lc for c in self.coeffs)

    def derivative(self) -> "QPoly":
        return QPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return QPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return QPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return QPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.lc
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c:
                f = c / lc
                quot[k - dq] = f
                for i, b in enumerate(other.coeffs):
                    rem[k - dq + i] -= f * b
        return QPoly(quot), QPoly(rem[:dq] if dq > 0 else [])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __pow__(self, k: int):
        result = QPoly([1])
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, x):
        """Evaluate at a scalar or a square QMatrix (Horner)."""
        if isinstance(x, QMatrix):
            return self.eval_matrix(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, M: QMatrix) -> QMatrix:
        M._need_square()
        n = M.rows
        acc = QMatrix.zeros(n)
        ident = QMatrix.identity(n)
        for c in reversed(self.coeffs):
            acc = acc @ M + ident * c
        return acc

    def compose(self, inner: "QPoly") -> "QPoly":
        acc = QPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly([other])
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = abs(c)
            coef = "" if (mag == 1 and k) else format_rational(mag)
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            body = coef + mono if coef and mono and "/" not in coef else (
                f"({coef})*{mono}" if coef and mono else coef + mono)
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _as_poly(p) -> QPoly:
    return p if isinstance(p, QPoly) else QPoly([p])


def poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: QPoly, b: QPoly) -> tuple[QPoly, QPoly, QPoly]:
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = QPoly([1]), QPoly()
    t0, t1 = QPoly(), QPoly([1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lc = r0.lc
    if lc == 0:
        return r0, s0, t0
    return r0.monic(), s0 * (1 / lc), t0 * (1 / lc)


def squarefree_part(p: QPoly) -> QPoly:
    """``p / gcd(p, p')`` made monic."""
    if p.is_zero():
        raise RigidaError("squarefree part of the zero polynomial")
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def char_poly(M: QMatrix) -> QPoly:
    """Monic characteristic polynomial by the Faddeev-LeVerrier recursion."""
    M._need_square()
    n = M.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    ident = QMatrix.identity(n)
    Mk = QMatrix.zeros(n)
    for k in range(1, n + 1):
        Mk = M @ Mk + ident * coeffs[n - k + 1]
        coeffs[n - k] = -(M @ Mk).trace() / k
    return QPoly(coeffs)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: QPoly) -> list[Fraction] | None:
    """All roots with multiplicity if ``p`` splits over Q, else ``None``.

    Roots are returned in increasing order.
    """
    if p.is_zero():
        raise RigidaError("roots of the zero polynomial")
    roots: list[Fraction] = []
    rest = p.monic()
    while rest.degree > 0 and rest.coeffs[0] == 0:
        roots.append(Fraction(0))
        rest = QPoly(rest.coeffs[1:])
    if rest.degree > 0:
        ints = _to_int_row(rest.coeffs)
        candidates = set()
        for a in _divisors(ints[0]):
            for b in _divisors(ints[-1]):
                candidates.add(Fraction(a, b))
                candidates.add(Fraction(-a, b))
        for r in sorted(candidates):
            lin = QPoly([-r, 1])
            while rest.degree > 0:
                q, rem = divmod(rest, lin)
                if not rem.is_zero():
                    break
                roots.append(r)
                rest = q
    if rest.degree > 0:
        return None
    return sorted(roots)


# ---------------------------------------------------------------------------
# integer lattices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntLattice:
    """Saturated integer lattice given by a row basis in Hermite normal form."""

    n: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.n:
            raise DimensionError("vector length does not match lattice dimension")
        if not self.basis:
            return not any(v)
        c = coordinates([list(b) for b in self.basis], list(v))
        return c is not None and all(x.denominator == 1 for x in c)


def _column_hnf_with_inverse(K: list[list[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Column-reduce K (k x n, full row rank) to lower-triangular form.

    Returns (H, Uinv) with K = H @ Uinv and Uinv unimodular, where H has
    its nonzero part in the first k columns.
    """
    k = len(K)
    n = len(K[0]) if K else 0
    H = [list(r) for r in K]
    Uinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_add(dst, src, c):  # col_dst += c * col_src ; row_src -= c * row_dst
        for r in H:
            r[dst] += c * r[src]
        Uinv[src] = [a - c * b for a, b in zip(Uinv[src], Uinv[dst])]

    def col_swap(a, b):
        for r in H:
            r[a], r[b] = r[b], r[a]
        Uinv[a], Uinv[b] = Uinv[b], Uinv[a]

    def col_neg(a):
        for r in H:
            r[a] = -r[a]
        Uinv[a] = [-x for x in Uinv[a]]

    for r in range(k):
        row = H[r]
        while True:
            nz = [j for j in range(r, n) if row[j]]
            if not nz:
                raise RigidaError("matrix is not of full row rank")
            p = min(nz, key=lambda j: (abs(row[j]), j))
            others = [j for j in nz if j != p]
            if not others:
                break
            for j in others:
                q = row[j] // row[p]
                if q:
                    col_add(j, p, -q)
        if p != r:
            col_swap(p, r)
        if row[r] < 0:
            col_neg(r)
    return H, Uinv


def hermite_rows(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form (positive pivots, reduced above)."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return []
    n = len(m[0])
    out: list[list[int]] = []
    r = 0
    for c in range(n):
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(m[i][c]), i))
            m[r], m[p] = m[p], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if r < len(m) and m[r][c]:
            if m[r][c] < 0:
                m[r] = [-a for a in m[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
    out = [tuple(row) for row in m[:r]]
    return out


def saturate(vectors: Sequence[Sequence]) -> list[tuple[int, ...]]:
    """Primitive basis of (Q-span of vectors) ∩ Z^n, vectors independent."""
    if not vectors:
        return []
    K = [_to_int_row(v) for v in vectors]
    k = len(K)
    _, Uinv = _column_hnf_with_inverse(K)
    return hermite_rows(Uinv[:k])


def integer_kernel(A: QMatrix) -> IntLattice:
    """Saturated basis of {p in Z^n : A p = 0}, n = A.cols."""
    basis = kernel_basis(A)
    return IntLattice(A.cols, tuple(saturate(basis)))


def sparse_independent_subset(rows: Iterable[dict]) -> list[int]:
    """Indices of rows that raise the rank when fed in order."""
    pivots: dict[int, dict[int, int]] = {}
    chosen = []
    for idx, raw in enumerate(rows):
        row = _int_sparse(raw)
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                pivots[lead] = _primitive(row)
                chosen.append(idx)
                break
            row = _eliminate(row, prow, lead)
    return chosen
