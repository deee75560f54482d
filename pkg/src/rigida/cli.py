"""``rigida`` command line.

Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

from . import io as rio
from .algebraicity import algebraicity_verdict, jordan_saturation
from .catalog import list_fixtures, load_fixture, run_manifest
from .cohomology import (
    NR_NOTE,
    coboundaries2,
    derivation_dim,
    inner_derivations,
    orbit_dimension,
    two_cocycles,
    vn_rigidity_check,
)
from .errors import NotALieLawError, RigidaError
from .exactlin import format_rational
from .jordan import check_pair, jordan_chevalley
from .liecore import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    LieLaw,
    center,
    char_seq,
    first_unclosed_pair,
    jacobi_defect,
    series_dims,
    structure_from_matrices,
    transport,
)
from .structure import TorusSpec, rank_theorem_check, root_decomposition

OK, CHECK_FAILED, INPUT_ERROR = 0, 1, 2


class _Inputs:
    """Reads FILE arguments ("-" is stdin) and keeps a digest of the bytes."""

    def __init__(self):
        self._hash = hashlib.sha256()
        self._stdin = None

    def read(self, path: str):
        if path == "-":
            if self._stdin is None:
                self._stdin = sys.stdin.read()
            text, source = self._stdin, "<stdin>"
        else:
            try:
                with open(path, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise rio.InputError(f"{path}: {exc.strerror}") from None
            source = path
        self._hash.update(text.encode())
        self._hash.update(b"\0")
        return rio.parse_json(text, source), source

    @property
    def digest(self) -> str:
        return self._hash.hexdigest()


def _located(source, fn, obj):
    try:
        return fn(obj)
    except rio.InputError as exc:
        raise rio.InputError(f"{source}: {exc}") from None


def _law(inputs, path, key="brackets"):
    obj, source = inputs.read(path)
    return _located(source, lambda o: rio.law_from_obj(o, key), obj)


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("RIGIDA_SEED")
    if env:
        try:
            return int(env, 0)
        except ValueError:
            raise rio.InputError(f"RIGIDA_SEED: not an integer: {env!r}") from None
    return DEFAULT_SEED


# ---------------------------------------------------------------------------
# commands: each returns (exit code, results dict, text notes)
# ---------------------------------------------------------------------------

def cmd_lie_check(args, inputs):
    sc = _law(inputs, args.file)
    defect = jacobi_defect(sc)
    res = {"dim": sc.dim, "jacobi_ok": not defect,
           "defect": [{"i": i + 1, "j": j + 1, "k": k + 1, "component": s + 1, "value": v}
                      for i, j, k, s, v in defect]}
    return (OK if not defect else CHECK_FAILED), res, []


def cmd_lie_invariants(args, inputs):
    law = LieLaw(_law(inputs, args.file))
    sd = series_dims(law)
    res = {
        "dim": law.dim,
        "derived_series": list(sd.derived),
        "lower_central_series": list(sd.lower_central),
        "solvable": sd.is_solvable,
        "nilpotent": sd.is_nilpotent,
        "nilindex": sd.nilindex,
        "center_dim": len(center(law)),
        "center": [list(v) for v in center(law)],
    }
    if sd.is_nilpotent:
        samples = DEFAULT_SAMPLES if args.samples is None else args.samples
        res["char_seq"] = list(char_seq(law, samples, _seed(args)))
    else:
        res["char_seq"] = None
    return OK, res, []


def cmd_lie_cohomology(args, inputs):
    law = LieLaw(_law(inputs, args.file))
    n = law.dim
    res = {"dim": n}
    if args.degree in (None, 1):
        der = derivation_dim(law)
        inner = len(inner_derivations(law))
        res.update({"dim_der": der, "dim_inner": inner, "dim_H1": der - inner})
    if args.degree in (None, 2):
        z2, _ = two_cocycles(law, with_basis=False)
        b2, _ = coboundaries2(law, with_basis=False)
        res.update({"dim_Z2": z2, "dim_B2": b2, "dim_H2": z2 - b2,
                    "verdict": "Certified" if z2 == b2 else "Inconclusive", "note": NR_NOTE})
    return OK, res, ([NR_NOTE] if args.degree in (None, 2) else [])


def cmd_lie_rigidity(args, inputs):
    sc = _law(inputs, args.file)
    law = LieLaw(sc)
    n = sc.dim
    der = derivation_dim(law)
    z2, _ = two_cocycles(law, with_basis=False)
    b2 = n * n - der
    res = {
        "dim": n,
        "dim_der": der,
        "dim_Z2": z2,
        "dim_B2": b2,
        "dim_H2": z2 - b2,
        "verdict": "Certified" if z2 == b2 else "Inconclusive",
        "orbit_dimension": orbit_dimension(law),
        "vn_rigid": vn_rigidity_check(sc),
        "note": NR_NOTE,
    }
    return OK, res, [NR_NOTE]


def cmd_lie_transport(args, inputs):
    sc = _law(inputs, args.file)
    obj, source = inputs.read(args.map)
    f = _located(source, rio.matrix_from_obj, obj)
    if f.shape != (sc.dim, sc.dim):
        raise rio.InputError(f"{source}: map must be {sc.dim}x{sc.dim}")
    return OK, {"law": transport(sc, f)}, []


def cmd_lie_rank_theorem(args, inputs):
    sc = _law(inputs, args.file)
    rep = rank_theorem_check(LieLaw(sc), TorusSpec.parse(args.torus))
    res = {
        "regular": list(rep.regular),
        "kernel_dim": rep.kernel_dim,
        "variables": list(rep.variables),
        "system": [str(e) for e in rep.system],
        "rank": rep.rank,
        "expected": rep.expected,
        "pass": rep.passed,
    }
    notes = [] if rep.passed else ["the necessary rank condition for rigidity fails"]
    return (OK if rep.passed else CHECK_FAILED), res, notes


def cmd_lie_roots(args, inputs):
    sc = _law(inputs, args.file)
    roots = root_decomposition(LieLaw(sc), TorusSpec.parse(args.torus))
    res = {"roots": [{"weight": list(w), "dim": len(vs), "vectors": [list(v) for v in vs]}
                     for w, vs in roots.items()]}
    return OK, res, []


def cmd_matrix_jordan(args, inputs):
    obj, source = inputs.read(args.file)
    M = _located(source, rio.matrix_from_obj, obj)
    if not M.is_square:
        raise rio.InputError(f"{source}: square matrix required")
    jp = jordan_chevalley(M)
    problems = check_pair(M, jp)
    res = {"S": jp.S, "N": jp.N, "conductor": jp.conductor, "steps": jp.steps,
           "checks_ok": not problems, "problems": problems}
    return (OK if not problems else CHECK_FAILED), res, []


def cmd_linalg_check(args, inputs):
    obj, source = inputs.read(args.file)
    m, mats = _located(source, rio.linear_generators_from_obj, obj)
    sc, closed = structure_from_matrices(mats)
    res = {"ambient": m, "dim": len(mats), "closed": closed}
    if closed:
        res["induced"] = sc
    else:
        i, j = first_unclosed_pair(mats)
        res["unclosed_pair"] = [i + 1, j + 1]
    return (OK if closed else CHECK_FAILED), res, []


def _linear(inputs, path):
    obj, source = inputs.read(path)
    return _located(source, rio.linear_from_obj, obj)


def cmd_linalg_algebraicity(args, inputs):
    L = _linear(inputs, args.file)
    assignment = None
    if args.eigenvalues:
        obj, source = inputs.read(args.eigenvalues)
        assignment = _located(source, rio.assignment_from_obj, obj)
    v = algebraicity_verdict(L, assignment)
    witness = None
    if v.witness is not None:
        witness = {"kind": type(v.witness).__name__, **rio.to_jsonable(v.witness)}
    res = {"status": v.status, "reason": v.reason, "witness": witness,
           "certificate": v.certificate, "probes": list(v.probes)}
    return OK, res, []


def cmd_linalg_saturate(args, inputs):
    L = _linear(inputs, args.file)
    sat = jordan_saturation(L, args.max_rounds)
    res = {"dim": sat.algebra.dim, "rounds": sat.rounds, "fixed_point": sat.fixed_point,
           "algebra": sat.algebra}
    notes = [] if sat.fixed_point else [f"no fixed point after {sat.rounds} rounds"]
    return (OK if sat.fixed_point else CHECK_FAILED), res, notes


def cmd_catalog_list(args, inputs):
    return OK, {"fixtures": list_fixtures()}, []


def _emit_obj(fx):
    if fx.kind == "assignment":
        obj = rio.assignment_to_obj(fx.payload)
        if "algebra" in fx.extras:
            obj["algebra"] = rio.linear_to_obj(fx.extras["algebra"])
        return obj
    return rio.to_jsonable(fx.payload)


def cmd_catalog_show(args, inputs):
    fx = load_fixture(args.name)
    res = {"name": fx.name, "kind": fx.kind, "description": fx.description,
           "payload": _emit_obj(fx),
           "expectations": [{"property": e.prop, "expected": e.expected,
                             "provenance": e.provenance} for e in fx.expectations]}
    return OK, res, []


def cmd_catalog_verify(args, inputs):
    if args.all == bool(args.name):
        raise rio.InputError("give either a fixture name or --all")
    names = list_fixtures() if args.all else [args.name]
    reports = [run_manifest(load_fixture(n)) for n in names]
    res = {"fixtures": [{"name": r.name, "pass": r.passed,
                         "rows": [{"property": x.prop, "expected": x.expected,
                                   "actual": x.actual, "pass": x.passed,
                                   "provenance": x.provenance, "error": x.error}
                                  for x in r.rows]} for r in reports],
           "pass": all(r.passed for r in reports)}
    return (OK if res["pass"] else CHECK_FAILED), res, []


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _text_value(v) -> str:
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, bool) or v is None:
        return str(v).lower() if isinstance(v, bool) else "-"
    if isinstance(v, list) and v and all(isinstance(x, list) for x in v) and len(v) > 0:
        return "\n" + "\n".join("    " + " ".join(str(y) for y in row) for row in v)
    if isinstance(v, list):
        return ", ".join(_text_value(x) if not isinstance(x, (dict, list)) else json.dumps(x)
                         for x in v) or "-"
    if isinstance(v, dict):
        if "entries" in v:
            return _text_value(v["entries"])
        return json.dumps(v, sort_keys=True)
    return str(v)


def _print_text(command, results, notes):
    print(command)
    for key, value in results.items():
        if key == "note":
            continue
        if key == "fixtures" and isinstance(value, list) and value and isinstance(value[0], dict):
            for fx in value:
                print(f"  {fx['name']}: {'pass' if fx['pass'] else 'FAIL'}")
                for row in fx["rows"]:
                    mark = "ok " if row["pass"] else "BAD"
                    extra = f" ({row['error']})" if row["error"] else ""
                    print(f"    {mark} {row['property']} = {_text_value(row['actual'])}"
                          f" [expected {_text_value(row['expected'])}; {row['provenance']}]{extra}")
            continue
        print(f"  {key}: {_text_value(value)}")
    for note in notes:
        print(f"  note: {note}")


def _common(parser, root=False):
    default = (lambda v: v) if root else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--format", choices=("text", "json"), default=default("text"))
    parser.add_argument("--quiet", action="store_true", default=default(False))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rigida", description="Exact computations on Lie laws.")
    _common(p, root=True)
    groups = p.add_subparsers(dest="group", required=True)

    def leaf(sub, name, fn, help_):
        q = sub.add_parser(name, help=help_)
        _common(q)
        q.set_defaults(fn=fn)
        return q

    lie = groups.add_parser("lie", help="structure-constant laws").add_subparsers(
        dest="command", required=True)
    leaf(lie, "check", cmd_lie_check, "Jacobi identity").add_argument("file")
    q = leaf(lie, "invariants", cmd_lie_invariants, "series, center, characteristic sequence")
    q.add_argument("file")
    q.add_argument("--samples", type=int)
    q.add_argument("--seed", type=lambda s: int(s, 0))
    q = leaf(lie, "cohomology", cmd_lie_cohomology, "H1 and H2 dimensions")
    q.add_argument("file")
    q.add_argument("--degree", type=int, choices=(1, 2))
    leaf(lie, "rigidity", cmd_lie_rigidity, "cohomological rigidity certificate").add_argument("file")
    q = leaf(lie, "transport", cmd_lie_transport, "transport a law by an invertible matrix")
    q.add_argument("file")
    q.add_argument("--map", required=True)
    q = leaf(lie, "rank-theorem", cmd_lie_rank_theorem, "rank condition on S(T0)")
    q.add_argument("file")
    q.add_argument("--torus", required=True)
    q = leaf(lie, "roots", cmd_lie_roots, "root decomposition")
    q.add_argument("file")
    q.add_argument("--torus", required=True)

    matrix = groups.add_parser("matrix", help="single matrices").add_subparsers(
        dest="command", required=True)
    leaf(matrix, "jordan", cmd_matrix_jordan, "Jordan-Chevalley decomposition").add_argument("file")

    linalg = groups.add_parser("linalg", help="linear Lie algebras").add_subparsers(
        dest="command", required=True)
    leaf(linalg, "check", cmd_linalg_check, "closure under the commutator").add_argument("file")
    q = leaf(linalg, "algebraicity", cmd_linalg_algebraicity, "algebraicity verdict")
    q.add_argument("file")
    q.add_argument("--eigenvalues")
    q = leaf(linalg, "saturate", cmd_linalg_saturate, "adjoin Jordan parts until stable")
    q.add_argument("file")
    q.add_argument("--max-rounds", type=int, default=8)

    catalog = groups.add_parser("catalog", help="built-in examples").add_subparsers(
        dest="command", required=True)
    leaf(catalog, "list", cmd_catalog_list, "fixture names")
    q = leaf(catalog, "show", cmd_catalog_show, "show a fixture")
    q.add_argument("name")
    q.add_argument("--emit", action="store_true", help="print only the payload JSON")
    q = leaf(catalog, "verify", cmd_catalog_verify, "evaluate fixture expectations")
    q.add_argument("name", nargs="?")
    q.add_argument("--all", action="store_true")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = f"{args.group} {args.command}"
    inputs = _Inputs()
    start = time.perf_counter()
    try:
        if command == "catalog show" and args.emit:
            fx = load_fixture(args.name)
            print(json.dumps(_emit_obj(fx), indent=2, sort_keys=True))
            return OK
        code, results, notes = args.fn(args, inputs)
    except NotALieLawError as exc:
        code = CHECK_FAILED
        results = {"error": str(exc),
                   "defect": [{"i": i + 1, "j": j + 1, "k": k + 1, "component": s + 1,
                               "value": v} for i, j, k, s, v in exc.defect]}
        notes = []
    except RigidaError as exc:
        print(f"rigida: error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    elapsed = time.perf_counter() - start
    if args.quiet:
        return code
    if args.format == "json":
        report = {"command": command, "input_digest": inputs.digest,
                  "results": rio.to_jsonable(results), "exit_code": code,
                  "timing": {"seconds": round(elapsed, 6)}}
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        _print_text(command, rio.to_jsonable(results), notes)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
