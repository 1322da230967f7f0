"""Command-line front end.

    congrua check|orthogonalize|radical|evolution|ideal <problem.json> [--json]
    congrua verify <problem.json> <result.json>

Exit codes: 0 yes / success, 1 no, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .errors import CongruaError, ParseError
from .evolution import AlgebraStructure, detect_evolution, emit_test_ideal, forms_from_algebra
from .field import FieldSpec
from .forms import DEFAULT_BUDGET, FormFamily, radical_of_family
from .linalg import Matrix
from .orthogonalizer import (OrthoResult, certificate_from_dict, check_certificate,
                             orthogonalize, verify)

EXIT_YES, EXIT_NO, EXIT_INPUT = 0, 1, 2


class Problem:
    """A parsed problem file: a form family, optionally backed by an algebra."""

    def __init__(self, spec: FieldSpec, dim: int, family: FormFamily,
                 algebra: Optional[AlgebraStructure]):
        self.spec = spec
        self.dim = dim
        self.family = family
        self.algebra = algebra

    def require_algebra(self) -> AlgebraStructure:
        if self.algebra is not None:
            return self.algebra
        if len(self.family) != self.dim:
            raise ParseError(f"need exactly dim={self.dim} matrices to read them as an "
                             f"algebra, got {len(self.family)}", "matrices")
        return AlgebraStructure.from_grams(self.spec, self.family.grams)


def _scalar(spec, value, where):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ParseError(f"scalars must be strings or integers, got {value!r}", where)
    try:
        return spec.convert(value)
    except CongruaError as exc:
        raise ParseError(str(exc), where) from None


def _square(spec, rows, n, where):
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f"expected {n} rows", where)
    out = []
    for i, r in enumerate(rows):
        if not isinstance(r, list) or len(r) != n:
            raise ParseError(f"expected {n} entries", f"{where}[{i}]")
        out.append([_scalar(spec, x, f"{where}[{i}][{j}]") for j, x in enumerate(r)])
    return Matrix._raw(spec, out, n)


def parse_problem(data, field_override: Optional[str] = None) -> Problem:
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    spec = None
    if "field" in data:
        if not isinstance(data["field"], str):
            raise ParseError("must be a string such as 'Q' or 'prime:2'", "field")
        try:
            spec = FieldSpec.parse(data["field"])
        except ParseError as exc:
            raise ParseError(str(exc), "field") from None
    if field_override is not None:
        other = FieldSpec.parse(field_override)
        if spec is not None and other != spec:
            raise ParseError(f"--field {other} conflicts with the file's field {spec}", "field")
        spec = other
    if spec is None:
        raise ParseError("missing (give it in the file or with --field)", "field")
    dim = data.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise ParseError("must be a nonnegative integer", "dim")
    has_m, has_a = "matrices" in data, "algebra" in data
    if has_m == has_a:
        raise ParseError("exactly one of 'matrices' or 'algebra' is required")
    if has_m:
        mats = data["matrices"]
        if not isinstance(mats, list):
            raise ParseError("must be a list of matrices", "matrices")
        grams = [_square(spec, m, dim, f"matrices[{k}]") for k, m in enumerate(mats)]
        for k, g in enumerate(grams):
            if not g.is_symmetric():
                raise ParseError("matrix is not symmetric", f"matrices[{k}]")
        return Problem(spec, dim, FormFamily(spec, dim, grams), None)
    table = data["algebra"]
    if not isinstance(table, list) or len(table) != dim:
        raise ParseError(f"expected a {dim}x{dim}x{dim} table", "algebra")
    c = []
    for i, row in enumerate(table):
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"expected {dim} entries", f"algebra[{i}]")
        crow = []
        for j, cell in enumerate(row):
            where = f"algebra[{i}][{j}]"
            if not isinstance(cell, list) or len(cell) != dim:
                raise ParseError(f"expected {dim} coordinates", where)
            crow.append([_scalar(spec, x, f"{where}[{k}]") for k, x in enumerate(cell)])
        c.append(crow)
    try:
        algebra = AlgebraStructure(spec, c)
    except CongruaError as exc:
        raise ParseError(str(exc), "algebra") from None
    return Problem(spec, dim, forms_from_algebra(algebra), algebra)


def _load_json(path):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise ParseError(exc.strerror or str(exc), path) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}", path) from None


def load_problem(path, field_override=None) -> Problem:
    data = _load_json(path)
    try:
        return parse_problem(data, field_override)
    except ParseError as exc:
        raise ParseError(str(exc), path) from None


def _vec(v):
    return "(" + ", ".join(str(x) for x in v) + ")"


def _render_result(res: OrthoResult) -> str:
    lines = [f"verdict: {res.verdict.value}"]
    if res.is_yes:
        lines.append("basis:")
        lines += ["  " + _vec(r) for r in res.basis.rows]
        lines.append("diagonals:")
        lines += [f"  form {k}: {_vec(d)}" for k, d in enumerate(res.diagonals)]
        lines.append("decomposition:")
        for node in res.decomposition:
            lines += ["  " + s for s in node.render()]
    else:
        lines.append(f"certificate: {res.certificate.describe()}")
        lines.append(json.dumps(res.certificate.to_dict()))
    return "\n".join(lines)


def _emit(obj, as_json, text):
    if as_json:
        print(json.dumps(obj, indent=2))
    else:
        print(text)


def cmd_check(args) -> int:
    p = load_problem(args.file, args.field)
    res = orthogonalize(p.family, budget=args.budget)
    if args.json:
        _emit(res.to_dict(), True, "")
    else:
        print(res.verdict.value)
    return EXIT_YES if res.is_yes else EXIT_NO


def cmd_orthogonalize(args) -> int:
    p = load_problem(args.file, args.field)
    res = orthogonalize(p.family, budget=args.budget)
    out = {"field": str(p.spec), "dim": p.dim, **res.to_dict()}
    _emit(out, args.json, _render_result(res))
    return EXIT_YES if res.is_yes else EXIT_NO


def cmd_radical(args) -> int:
    p = load_problem(args.file, args.field)
    rad = radical_of_family(p.family)
    out = {"field": str(p.spec), "dim": p.dim, "radical_dim": rad.dim,
           "radical": rad.basis.to_strings()}
    text = [f"radical dimension: {rad.dim}"] + ["  " + _vec(v) for v in rad.vectors]
    _emit(out, args.json, "\n".join(text))
    return EXIT_YES


def cmd_evolution(args) -> int:
    p = load_problem(args.file, args.field)
    rep = detect_evolution(p.require_algebra())
    out = {"field": str(p.spec), "dim": p.dim, **rep.to_dict()}
    if rep.is_evolution:
        text = ["evolution algebra: yes", "natural basis:"]
        text += ["  " + _vec(r) for r in rep.natural_basis.rows]
        text += ["structure matrix (column q = u_q^2 in the natural basis):"]
        text += ["  " + _vec(r) for r in rep.structure_matrix.rows]
    else:
        text = ["evolution algebra: no", f"certificate: {rep.certificate.describe()}"]
    _emit(out, args.json, "\n".join(text))
    return EXIT_YES if rep.is_evolution else EXIT_NO


def cmd_ideal(args) -> int:
    p = load_problem(args.file, args.field)
    text = emit_test_ideal(p.require_algebra())
    if args.json:
        _emit({"field": str(p.spec), "dim": p.dim, "generators": text.splitlines()}, True, "")
    else:
        sys.stdout.write(text)
    return EXIT_YES


def cmd_verify(args) -> int:
    p = load_problem(args.file, args.field)
    data = _load_json(args.result)
    if not isinstance(data, dict):
        raise ParseError("result must be an object", args.result)
    n = p.dim
    try:
        if "certificate" in data:
            cert = certificate_from_dict(p.spec, data["certificate"])
            ok = check_certificate(p.family, cert)
        else:
            rows = data.get("basis", data.get("natural_basis"))
            if rows is None:
                raise ParseError("no 'basis' or 'certificate' key", args.result)
            P = Matrix._raw(p.spec, [[_scalar(p.spec, x, f"basis[{i}][{j}]")
                                      for j, x in enumerate(r)] for i, r in enumerate(rows)], n)
            ok = verify(p.family, P)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed result: {exc}", args.result) from None
    print("valid" if ok else "invalid")
    return EXIT_YES if ok else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="congrua",
        description="Simultaneous orthogonalization of symmetric bilinear forms.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="problem file (JSON), or - for stdin")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--field", help="field descriptor; must agree with the file")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help="max determinant evaluations in the combination search")

    for name, fn, text in [
        ("check", cmd_check, "exit 0 if simultaneously orthogonalizable, 1 if not"),
        ("orthogonalize", cmd_orthogonalize, "basis, diagonals and decomposition, or a certificate"),
        ("radical", cmd_radical, "joint radical of the family"),
        ("evolution", cmd_evolution, "decide whether the algebra is an evolution algebra"),
        ("ideal", cmd_ideal, "print the evolution test ideal generators"),
    ]:
        p = sub.add_parser(name, help=text)
        common(p)
        p.set_defaults(func=fn)
    p = sub.add_parser("verify", help="re-check a basis or certificate from --json output")
    common(p)
    p.add_argument("result", help="JSON output of orthogonalize/evolution/check --json")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CongruaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
