"""Command-line front end.

Exit codes:
    0  success / relation is monotone
    1  relation not monotone (or minty input outside ran(Id + G), or failed audit)
    2  input error (parse, shape, rank, numerical inconsistency)
    3  bad witness matrix for ``extend --method n-matrix|m-matrix``

Reports are JSON on standard output; diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import linrel, minty, oracle
from .extend import extend, extend_domain_preserving, extend_range_preserving, extend_vg
from .errors import BadWitness, MonoextError, NotMonotone
from .monotone import is_monotone
from .numerics import Tolerance, as_vec
from .relfile import (
    FIXTURES,
    FileFormatError,
    dump_relation,
    fixture_path,
    load_json,
    matrix_entry,
    parse_relation,
    parse_witness,
    vector_entry,
)

EXIT_OK, EXIT_NOT_MONOTONE, EXIT_INPUT, EXIT_WITNESS = 0, 1, 2, 3

METHOD_NAMES = {"vg": "vg", "hat": "hat", "e1": "e1", "e2": "e2",
                "n-matrix": "n_matrix", "m-matrix": "m_matrix"}


class _InputError(Exception):
    pass


def _tol(args) -> Tolerance:
    return Tolerance(rel=args.tol_rel, abs=args.tol_abs)


def _load(args, tol: Tolerance):
    try:
        doc = load_json(args.file)
    except (OSError, json.JSONDecodeError) as exc:
        raise _InputError(f"cannot read {args.file}: {exc}") from exc
    return parse_relation(doc, tol, reduce=getattr(args, "reduce", False))


def verdict_entry(rep) -> dict:
    return {"monotone": rep.monotone, "maximal": rep.maximal, "k": rep.k,
            "p": rep.p, "n": rep.n, "marginal": rep.marginal}


def relation_entry(G, tol: Tolerance, matrix=None) -> dict:
    out = {"kernel": dump_relation(G, "kernel", tol),
           "range": dump_relation(G, "range", tol),
           "dim": G.dim}
    if matrix is None:
        matrix = linrel.single_valued_matrix(G, tol)
    out["matrix"] = None if matrix is None else matrix_entry(matrix)
    return out


def _base_report(G, tol: Tolerance) -> dict:
    rep = is_monotone(G, tol)
    return {
        "verdict": verdict_entry(rep),
        "eigenvalues": vector_entry(rep.eigenvalues),
        "criterion": rep.criterion_detail,
        "tolerance": {"rel": tol.rel, "abs": tol.abs},
    }, rep


def cmd_check(args, tol):
    G = _load(args, tol)
    report, rep = _base_report(G, tol)
    _emit(report)
    return EXIT_OK if rep.monotone else EXIT_NOT_MONOTONE


def cmd_extend(args, tol):
    G = _load(args, tol)
    method = METHOD_NAMES[args.method]
    witness, basis = None, None
    if method in ("n_matrix", "m_matrix"):
        if not args.witness:
            raise _InputError(f"--method {args.method} needs --witness")
        try:
            kind, witness, basis = parse_witness(load_json(args.witness))
        except (OSError, json.JSONDecodeError) as exc:
            raise _InputError(f"cannot read {args.witness}: {exc}") from exc
        if method == "m_matrix" and kind == "N":
            if basis is None:
                raise _InputError("m-matrix with an N witness needs a 'basis' (M = V N)")
            witness = basis[1] @ witness
            basis = None
        elif method == "n_matrix" and kind == "M":
            raise _InputError("n-matrix needs an 'N' witness")
    report, _ = _base_report(G, tol)
    res = extend(G, method, witness=witness, tol=tol, basis=basis)
    report["extension"] = {
        "method": res.method,
        "witness": None if res.witness is None else matrix_entry(res.witness),
        "certificate": verdict_entry(res.certificate),
        "result": relation_entry(res.relation, tol, res.matrix),
    }
    _emit(report)
    return EXIT_OK


def cmd_adjoint(args, tol):
    G = _load(args, tol)
    _emit(dump_relation(linrel.adjoint(G, tol), args.to, tol))
    return EXIT_OK


def cmd_convert(args, tol):
    G = _load(args, tol)
    _emit(dump_relation(G, args.to, tol))
    return EXIT_OK


def cmd_minty(args, tol):
    G = _load(args, tol)
    try:
        y = as_vec([float(t) for t in args.y.replace(",", " ").split()])
    except ValueError as exc:
        raise _InputError(f"bad --y vector: {args.y}") from exc
    if y.shape[0] != G.n:
        raise _InputError(f"--y must have {G.n} entries")
    mm = minty.minty_map(G, tol)
    out = {"P_x": matrix_entry(mm.P_x), "P_xs": matrix_entry(mm.P_xs),
           "param_domain_dim": mm.param_domain.dim}
    if not mm.accepts(y, tol):
        if not args.project:
            print("y outside ran(Id+G); rerun with --project to project it first",
                  file=sys.stderr)
            return EXIT_NOT_MONOTONE
        proj = mm.param_domain.project(y)
        out["residual_norm"] = float(np.linalg.norm(y - proj))
        y = proj
    x, xs = mm(y)
    out.update({"y": vector_entry(y), "x": vector_entry(x), "x_star": vector_entry(xs)})
    _emit(out)
    return EXIT_OK


def cmd_audit(args, tol):
    G = _load(args, tol)
    report, rep = _base_report(G, tol)
    sampled = oracle.sample_monotonicity(G, args.samples, args.seed, tol)
    report["sampling"] = _verdict_dict(sampled)
    ok = sampled.passed == rep.monotone
    if rep.monotone:
        audits = {}
        for name, fn in (("vg", extend_vg), ("e1", extend_domain_preserving),
                         ("e2", extend_range_preserving)):
            v = oracle.exhaustive_extension_check(G, fn(G, tol).relation, tol,
                                                  args.samples, args.seed)
            audits[name] = _verdict_dict(v)
            ok = ok and v.passed
        report["extensions"] = audits
    report["consistent"] = ok
    _emit(report)
    return EXIT_OK if (ok and rep.monotone) else EXIT_NOT_MONOTONE


def cmd_fixtures(args, tol):
    if args.name is None:
        for name in FIXTURES:
            print(name)
        return EXIT_OK
    if args.name not in FIXTURES:
        raise _InputError(f"unknown fixture {args.name!r}")
    sys.stdout.write(fixture_path(args.name).read_text(encoding="utf-8"))
    return EXIT_OK


def _verdict_dict(v) -> dict:
    return {"passed": v.passed, "samples": v.samples,
            "worst_violation": v.worst_violation, "reason": v.reason}


def _emit(obj):
    print(json.dumps(obj, indent=2))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-rel", type=float, default=1e-10)
    common.add_argument("--tol-abs", type=float, default=1e-12)

    parser = argparse.ArgumentParser(
        prog="monoext",
        description="Monotonicity tests and maximal monotone extensions of linear relations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="decide monotone / maximal")
    p.add_argument("file")
    p.add_argument("--reduce", action="store_true",
                   help="drop redundant rows of (A B) before the rank check")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("extend", parents=[common], help="build a maximal monotone extension")
    p.add_argument("file")
    p.add_argument("--method", choices=list(METHOD_NAMES), default="vg")
    p.add_argument("--witness", help="JSON file holding N (optionally with basis) or M")
    p.add_argument("--reduce", action="store_true")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("adjoint", parents=[common], help="print the adjoint relation")
    p.add_argument("file")
    p.add_argument("--to", choices=["kernel", "range"], default="kernel")
    p.set_defaults(func=cmd_adjoint)

    p = sub.add_parser("convert", parents=[common], help="rewrite in kernel or range form")
    p.add_argument("file")
    p.add_argument("--to", choices=["kernel", "range"], required=True)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("minty", parents=[common], help="evaluate the Minty parametrization")
    p.add_argument("file")
    p.add_argument("--y", required=True, help="comma-separated vector")
    p.add_argument("--project", action="store_true",
                   help="project y onto ran(Id+G) first and report the residual")
    p.set_defaults(func=cmd_minty)

    p = sub.add_parser("audit", parents=[common], help="sampling and brute-force cross-checks")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("fixtures", parents=[common], help="list or print bundled fixtures")
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = _tol(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, tol)
    except NotMonotone as exc:
        print(f"not monotone: {exc}", file=sys.stderr)
        return EXIT_NOT_MONOTONE
    except BadWitness as exc:
        print(f"bad witness: {exc}", file=sys.stderr)
        return EXIT_WITNESS
    except (_InputError, FileFormatError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MonoextError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
