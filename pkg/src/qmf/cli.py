"""Command-line entry point: ``qmf <subcommand> ...``.

Exit codes: 0 success, 1 a check failed or a library error was raised
(the error or first counterexample is printed as JSON), 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import NvhViolation, QmfError, UnsupportedBackend, UsageError
from .fields import GF, RatFunc, get_field
from .serialize import from_doc, nvh_doc, parse_expr, parse_poly, to_doc

SUBCOMMANDS = ("nvh", "e-expand", "from-e", "dslash", "check-wqmp", "hyperderive", "decompose",
               "hecke", "series", "render", "verify")


# ---------------------------------------------------------------------------
# input helpers


def _field(args, doc: dict | None = None) -> GF:
    if doc is not None and "field" in doc:
        from .serialize import field_of
        return field_of(doc)
    q = args.q if args.q is not None else 3
    mod = [int(x) for x in args.modulus.split(",")] if args.modulus else None
    return get_field(q, mod)


def _doc(args) -> dict | None:
    if getattr(args, "expr", None):
        return None
    if not args.input:
        raise UsageError("--input (or --expr) is required")
    try:
        if args.input == "-":
            return json.load(sys.stdin)
        with open(args.input) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read {args.input}: {e}") from None


def _bigrade(f, args) -> tuple[int, int]:
    k, m = getattr(args, "k", None), getattr(args, "m", None)
    if k is not None and m is not None:
        return k, m
    bg = f.bigrades() - {(0, 0)} if len(f.bigrades()) > 1 else f.bigrades()
    if len(bg) != 1:
        raise UsageError("cannot infer (k, m) from an inhomogeneous expression; pass --k and --m")
    bk, bm = bg.pop()
    return (k if k is not None else bk), (m if m is not None else bm)


def _load(args):
    """Input as a library object; bare expressions become Expr."""
    doc = _doc(args)
    if doc is None:
        F = _field(args)
        return parse_expr(F, args.expr)
    if "kind" not in doc:
        raise UsageError("input document has no kind")
    doc.setdefault("version", 1)
    if "field" not in doc:
        doc["field"] = {"q": args.q or 3, "modulus": None}
    return from_doc(doc)


def _as_assoc(x, args):
    from .eexp import EExpansion, from_e
    from .qmod import AssocPoly
    from .symbolic import Expr
    if isinstance(x, AssocPoly):
        return x
    if isinstance(x, EExpansion):
        return from_e(x)
    if isinstance(x, Expr):
        k, m = _bigrade(x, args)
        return AssocPoly.of_expr(x, k, m)
    raise UsageError(f"expected a function or associated polynomial, got {type(x).__name__}")


def _as_e(x, args):
    from .eexp import EExpansion, e_expansion_of
    from .symbolic import Expr
    if isinstance(x, EExpansion):
        return x
    if isinstance(x, Expr):
        k, m = _bigrade(x, args)
        return e_expansion_of(x, k, m)
    from .eexp import to_e
    return to_e(_as_assoc(x, args))


def _k_elem(F: GF, text: str) -> RatFunc:
    e = parse_expr(F, text)
    if not e.is_scalar() or not e.is_z_free() or any(m for m in e.t):
        raise UsageError(f"{text!r} is not an element of F_q(T)")
    return e.t[()].const_value() if e.t else RatFunc.const(F, 0)


def _emit(args, obj) -> None:
    doc = obj if isinstance(obj, dict) else to_doc(obj)
    s = json.dumps(doc, sort_keys=True, indent=1) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(s)
    else:
        sys.stdout.write(s)


# ---------------------------------------------------------------------------
# subcommands


def cmd_nvh(args) -> int:
    from .binomial import nvh_check
    F = _field(args)
    for name in ("k", "l", "m"):
        if getattr(args, name) is None:
            raise UsageError(f"nvh needs --{name}")
    rep = nvh_check(args.k, args.l, args.m, F.q)
    _emit(args, nvh_doc(rep, F))
    return 0


def cmd_e_expand(args) -> int:
    from .eexp import to_e
    _emit(args, to_e(_as_assoc(_load(args), args)))
    return 0


def cmd_from_e(args) -> int:
    from .eexp import from_e
    _emit(args, from_e(_as_e(_load(args), args)))
    return 0


def cmd_dslash(args) -> int:
    from .matrix import Matrix2
    from .qmod import dslash_poly
    x = _load(args)
    P = _as_assoc(x, args)
    if not args.matrix:
        raise UsageError('dslash needs --matrix "a,b,c,d"')
    parts = args.matrix.split(",")
    if len(parts) != 4:
        raise UsageError("--matrix takes four comma-separated entries")
    g = Matrix2(P.F, *(_k_elem(P.F, s) for s in parts))
    _emit(args, dslash_poly(P, g))
    return 0


def cmd_check_wqmp(args) -> int:
    from .qmod import check_bigrade, default_generators, is_weak_qmod, reconstruct
    P = _as_assoc(_load(args), args)
    if args.gens != "default":
        raise UsageError("only --gens default is available")
    gens = default_generators(P.F)
    check_bigrade(P)
    weak = is_weak_qmod(P, gens)
    rec = reconstruct(P)
    _emit(args, {"kind": "Check", "version": 1, "field": {"q": P.F.q, "modulus": None},
                 "check": "weak-quasi-modular", "generators": len(gens),
                 "invariant": weak, "reconstructs": rec, "holds": weak and rec})
    return 0 if weak and rec else 1


def cmd_hyperderive(args) -> int:
    from .carlitz import render
    from .hyper import hyper_assoc, hyper_series, hyper_series_normalized
    from .qmod import AssocPoly
    from .series import USeries
    from .symbolic import Expr, hyper, hyper_normalized
    x = _load(args)
    n = args.n
    if args.backend == "series":
        S = x if isinstance(x, USeries) else render(x.coeff(0) if isinstance(x, AssocPoly) else x, args.prec or 26)
        _emit(args, hyper_series(S, n) if args.plain else hyper_series_normalized(S, n))
    elif args.backend == "symbolic":
        if isinstance(x, AssocPoly):
            _emit(args, hyper_assoc(x, n))
        elif isinstance(x, Expr):
            _emit(args, hyper(x, n) if args.plain else hyper_normalized(x, n))
        else:
            raise UsageError("symbolic backend needs an expression or associated polynomial")
    else:
        raise UnsupportedBackend(f"unknown backend {args.backend!r}")
    return 0


def cmd_decompose(args) -> int:
    from .structure import decompose, resolve_parts
    e = _as_e(_load(args), args)
    try:
        dec = decompose(e)
    except NvhViolation as err:
        _emit(args, {"kind": "Error", "version": 1, "field": {"q": e.F.q, "modulus": None},
                     "error": "NvhViolation", "message": str(err), "index": err.index,
                     "report": nvh_doc(err.report, e.F)})
        return 1
    if args.resolve:
        dec = resolve_parts(dec, args.prec or 26)
    _emit(args, dec)
    return 0


def cmd_hecke(args) -> int:
    from . import hecke as hk
    if args.action == "counterexample":
        _emit(args, hk.naive_counterexample())
        return 0
    if not args.p:
        raise UsageError('hecke needs --p, e.g. --p "t+2"')
    x = _load(args)
    F = x.F
    p = parse_poly(F, args.p)
    level = parse_poly(F, args.level) if args.level else (1,)
    if args.op == "generic":
        P = _as_assoc(x, args)
        R = hk.reps_gamma0(F, p, level)
        _emit(args, hk.hecke_generic(P, hk.eta_p(F, p), R))
        return 0
    if args.op == "reps":
        _emit(args, hk.reps_gamma0(F, p, level))
        return 0
    from .formal import FormalHecke
    from .qmod import AssocPoly
    from .eexp import EExpansion
    B = FormalHecke(F, p, level)
    if isinstance(x, EExpansion):
        fn = {"up": B.up_e, "delta": B.delta_e, "tp": B.tp_e}[args.op]
        _emit(args, fn(x))
        return 0
    if isinstance(x, AssocPoly):
        x = x.coeff(0)
    if args.op == "up":
        _emit(args, B.U(x))
    elif args.op == "delta":
        _emit(args, B.delta(x))
    else:
        _emit(args, B.T(x, args.k))
    return 0


def cmd_series(args) -> int:
    from .carlitz import base_series, render
    F = _field(args)
    N = args.prec or 26
    if args.name in ("E", "g", "h", "Delta"):
        _emit(args, base_series(F, args.name, N))
    else:
        _emit(args, render(parse_expr(F, args.name), N))
    return 0


def cmd_render(args) -> int:
    from .carlitz import render
    from .qmod import AssocPoly
    from .eexp import EExpansion
    x = _load(args)
    if isinstance(x, EExpansion):
        x = x.to_expr()
    if isinstance(x, AssocPoly):
        x = x.coeff(0)
    _emit(args, render(x, args.prec or 26))
    return 0


def cmd_verify(args) -> int:
    from .suite import SuiteConfig, dumps_report, human, mutated_binomial, run_suite, select
    select([args.suite])  # UsageError before any work
    cfg = SuiteConfig(q=args.q, seed=args.seed, cases=args.cases, prec=args.prec, suites=(args.suite,))
    mutate = os.environ.get("QMF_MUTATE", "")
    if mutate and mutate != "binomial":
        raise UsageError(f"unknown mutation {mutate!r}")
    if mutate:
        with mutated_binomial():
            report, results = run_suite(cfg)
    else:
        report, results = run_suite(cfg)
    s = dumps_report(report) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(s)
    else:
        sys.stdout.write(s)
    if not args.quiet:
        sys.stderr.write(human(results) + "\n")
    if not report["passed"]:
        sys.stderr.write("first counterexample: " + json.dumps(report["first_counterexample"], sort_keys=True) + "\n")
        return 1
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=None, help="field size (default 3)")
    common.add_argument("--modulus", default=None, help="F_p-coefficients of the F_q modulus, comma separated")
    common.add_argument("--prec", type=int, default=None, help="u-series precision")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--input", default=None, help="JSON document, or - for stdin")
    common.add_argument("--expr", default=None, help="inline expression instead of --input")
    common.add_argument("--output", default=None)
    common.add_argument("--k", type=int, default=None)
    common.add_argument("--m", type=int, default=None)

    ap = argparse.ArgumentParser(prog="qmf", description="Drinfeld quasi-modular forms, exactly.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("nvh", parents=[common], help="non-vanishing hypothesis report")
    s.add_argument("--l", type=int, default=None)
    s.set_defaults(fn=cmd_nvh)

    sub.add_parser("e-expand", parents=[common], help="associated polynomial -> E-expansion").set_defaults(fn=cmd_e_expand)
    sub.add_parser("from-e", parents=[common], help="E-expansion -> associated polynomial").set_defaults(fn=cmd_from_e)

    s = sub.add_parser("dslash", parents=[common], help="P || gamma")
    s.add_argument("--matrix", default=None)
    s.set_defaults(fn=cmd_dslash)

    s = sub.add_parser("check-wqmp", parents=[common], help="invariance under the test generators")
    s.add_argument("--gens", default="default")
    s.set_defaults(fn=cmd_check_wqmp)

    s = sub.add_parser("hyperderive", parents=[common], help="normalized hyperderivative D_n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--backend", default="symbolic")
    s.add_argument("--plain", action="store_true", help="un-normalized derivative instead of D_n")
    s.set_defaults(fn=cmd_hyperderive)

    s = sub.add_parser("decompose", parents=[common], help="sum of hyperderivatives of modular forms")
    s.add_argument("--resolve", action="store_true", help="rewrite parts in g, h via the series oracle")
    s.set_defaults(fn=cmd_decompose)

    s = sub.add_parser("hecke", parents=[common], help="Hecke operators")
    s.add_argument("action", nargs="?", default="apply", choices=["apply", "counterexample"])
    s.add_argument("--op", default="up", choices=["up", "tp", "delta", "generic", "reps"])
    s.add_argument("--p", default=None)
    s.add_argument("--level", default=None)
    s.set_defaults(fn=cmd_hecke)

    s = sub.add_parser("series", parents=[common], help="u-expansion of E, g, h, Delta or an expression")
    s.add_argument("name")
    s.set_defaults(fn=cmd_series)

    sub.add_parser("render", parents=[common], help="u-expansion of an input expression").set_defaults(fn=cmd_render)

    s = sub.add_parser("verify", parents=[common], help="acceptance suites")
    s.add_argument("--suite", default="all")
    s.add_argument("--cases", type=int, default=None)
    s.add_argument("--quiet", action="store_true")
    s.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as e:
        sys.stderr.write(f"qmf: {e}\n")
        return 2
    except QmfError as e:
        sys.stderr.write(json.dumps({"kind": "Error", "error": type(e).__name__, "message": str(e)}, sort_keys=True) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
