"""JSON formats for laws, cochains, matrices, linear algebras and assignments.

Indices in files are 1-based and rationals are strings ("3", "-1/2").
Malformed input raises :class:`InputError` with a location such as
``brackets[2].coeffs["5"]`` or ``line 4 column 7``.
"""
from __future__ import annotations

import dataclasses
import json
from fractions import Fraction

from .algebraicity import EigenvalueAssignment, LinearLieAlgebra, make_linear_algebra
from .cohomology import Cochain2
from .errors import RigidaError
from .exactlin import IntLattice, QMatrix, QPoly, format_rational, parse_rational
from .liecore import StructureConstants, validate_skew


class InputError(RigidaError):
    """Malformed input file, with the offending location in the message."""


def parse_json(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _need(obj, key, path, kind=None):
    if not isinstance(obj, dict):
        raise InputError(f"{path or 'top level'}: expected an object")
    if key not in obj:
        raise InputError(f"{path or 'top level'}: missing key {key!r}")
    value = obj[key]
    if kind is not None and not (isinstance(value, kind) and not isinstance(value, bool)):
        raise InputError(f"{_join(path, key)}: expected {kind.__name__}")
    return value


def _join(path, key):
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else key


def _rational(value, path) -> Fraction:
    if isinstance(value, float):
        raise InputError(f"{path}: floats are not accepted, write rationals as strings")
    try:
        return parse_rational(value)
    except (RigidaError, ValueError, TypeError):
        raise InputError(f"{path}: not a rational: {value!r}") from None


def _index(value, dim, path) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{path}: expected an integer index")
    if not 1 <= value <= dim:
        raise InputError(f"{path}: index {value} outside 1..{dim}")
    return value - 1


# ---------------------------------------------------------------------------
# laws and cochains
# ---------------------------------------------------------------------------

def law_from_obj(obj, key: str = "brackets", cls=StructureConstants):
    dim = _need(obj, "dim", "", int)
    if dim < 0:
        raise InputError("dim: must be nonnegative")
    labels = obj.get("basis")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
            raise InputError("basis: expected a list of strings")
        if len(labels) != dim:
            raise InputError(f"basis: {len(labels)} labels for dimension {dim}")
    entries = _need(obj, key, "", list)
    table = {}
    seen = set()
    for n, entry in enumerate(entries):
        path = f"{key}[{n}]"
        i = _index(_need(entry, "i", path), dim, _join(path, "i"))
        j = _index(_need(entry, "j", path), dim, _join(path, "j"))
        if i >= j:
            raise InputError(f"{path}: i < j required, got i={i + 1}, j={j + 1}")
        if (i, j) in seen:
            raise InputError(f"{path}: pair ({i + 1}, {j + 1}) listed twice")
        seen.add((i, j))
        coeffs = _need(entry, "coeffs", path, dict)
        for k, v in coeffs.items():
            cpath = f'{path}.coeffs["{k}"]'
            try:
                kk = int(k)
            except ValueError:
                raise InputError(f"{cpath}: key must be an integer index") from None
            kk = _index(kk, dim, cpath)
            q = _rational(v, cpath)
            if q:
                table[(i, j, kk)] = q
    try:
        sc = validate_skew(table, dim, labels)
    except RigidaError as exc:
        raise InputError(str(exc)) from None
    return cls(sc.dim, sc.table, sc.labels)


def law_to_obj(sc: StructureConstants, key: str = "brackets") -> dict:
    groups: dict = {}
    for (i, j, k), v in sorted(sc.items()):
        groups.setdefault((i, j), {})[str(k + 1)] = format_rational(v)
    return {
        "dim": sc.dim,
        "basis": list(sc.labels),
        key: [{"i": i + 1, "j": j + 1, "coeffs": c} for (i, j), c in sorted(groups.items())],
    }


def cochain_from_obj(obj) -> Cochain2:
    return law_from_obj(obj, "cochain", Cochain2)


def cochain_to_obj(phi: StructureConstants) -> dict:
    return law_to_obj(phi, "cochain")


# ---------------------------------------------------------------------------
# matrices and linear algebras
# ---------------------------------------------------------------------------

def matrix_from_obj(obj, path: str = "") -> QMatrix:
    rows = _need(obj, "rows", path, int)
    cols = _need(obj, "cols", path, int)
    entries = _need(obj, "entries", path, list)
    if len(entries) != rows:
        raise InputError(f"{_join(path, 'entries')}: {len(entries)} rows, expected {rows}")
    data = []
    for r, row in enumerate(entries):
        rpath = f"{_join(path, 'entries')}[{r}]"
        if not isinstance(row, list) or len(row) != cols:
            raise InputError(f"{rpath}: expected a list of {cols} entries")
        data.append([_rational(x, f"{rpath}[{c}]") for c, x in enumerate(row)])
    return QMatrix(data, cols)


def matrix_to_obj(M: QMatrix) -> dict:
    return {"rows": M.rows, "cols": M.cols,
            "entries": [[format_rational(x) for x in row] for row in M.tolist()]}


def linear_from_obj(obj) -> LinearLieAlgebra:
    m = _need(obj, "ambient", "", int)
    gens = _need(obj, "generators", "", list)
    mats = []
    for n, g in enumerate(gens):
        M = matrix_from_obj(g, f"generators[{n}]")
        if M.shape != (m, m):
            raise InputError(f"generators[{n}]: expected {m}x{m}, got {M.rows}x{M.cols}")
        mats.append(M)
    labels = obj.get("labels")
    return make_linear_algebra(mats, labels, ambient=m)


def linear_generators_from_obj(obj) -> tuple[int, list[QMatrix]]:
    """Like :func:`linear_from_obj` without the closure check."""
    m = _need(obj, "ambient", "", int)
    gens = _need(obj, "generators", "", list)
    mats = [matrix_from_obj(g, f"generators[{n}]") for n, g in enumerate(gens)]
    for n, M in enumerate(mats):
        if M.shape != (m, m):
            raise InputError(f"generators[{n}]: expected {m}x{m}, got {M.rows}x{M.cols}")
    return m, mats


def linear_to_obj(L: LinearLieAlgebra) -> dict:
    return {"ambient": L.ambient, "labels": list(L.labels),
            "generators": [matrix_to_obj(b) for b in L.basis]}


def assignment_from_obj(obj) -> EigenvalueAssignment:
    symbols = _need(obj, "symbols", "", list)
    if not all(isinstance(s, str) for s in symbols):
        raise InputError("symbols: expected a list of strings")
    tuples = _need(obj, "tuples", "", list)
    out = []
    for g, t in enumerate(tuples):
        if not isinstance(t, list):
            raise InputError(f"tuples[{g}]: expected a list")
        row = []
        for i, coords in enumerate(t):
            cpath = f"tuples[{g}][{i}]"
            if not isinstance(coords, list) or len(coords) != len(symbols):
                raise InputError(f"{cpath}: expected {len(symbols)} coordinates")
            row.append(tuple(_rational(c, f"{cpath}[{k}]") for k, c in enumerate(coords)))
        out.append(tuple(row))
    try:
        return EigenvalueAssignment(tuple(symbols), tuple(out))
    except RigidaError as exc:
        raise InputError(str(exc)) from None


def assignment_to_obj(a: EigenvalueAssignment) -> dict:
    return {"symbols": list(a.symbols),
            "tuples": [[[format_rational(c) for c in coords] for coords in t] for t in a.tuples]}


# ---------------------------------------------------------------------------
# generic conversion for reports
# ---------------------------------------------------------------------------

def to_jsonable(value):
    """Fractions become strings, matrices and laws use the file formats."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, QMatrix):
        return matrix_to_obj(value)
    if isinstance(value, Cochain2):
        return cochain_to_obj(value)
    if isinstance(value, StructureConstants):
        return law_to_obj(value)
    if isinstance(value, LinearLieAlgebra):
        return linear_to_obj(value)
    if isinstance(value, EigenvalueAssignment):
        return assignment_to_obj(value)
    if isinstance(value, QPoly):
        return [format_rational(c) for c in value.coeffs]
    if isinstance(value, IntLattice):
        return {"n": value.n, "basis": [list(v) for v in value.basis]}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if dataclasses.is_dataclass(value):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    return str(value)
