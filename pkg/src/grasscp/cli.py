"""Command line entry point: ``grasscp <command> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import verify as verify_mod
from .canonical import NormalForm, SSElement, nf_t3, venkova_compare, venkova_condition
from .catalog import GeneratorSet, cp_generators, t_ideal_generators
from .coefficients import FieldSpec, OutOfScopeError, format_scalar
from .decide import classify, tspace_member_bounded
from .free_algebra import ContextError, NCPoly, evaluate, format_poly
from .grassmann import AlgebraSpec, GrassmannElement, format_grassmann, parse_grassmann
from .parser import ParseError, parse_expr

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_OUT_OF_SCOPE = 3


class UsageError(Exception):
    pass


def _common(suppress: bool) -> argparse.ArgumentParser:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--char", type=int, default=d(None), help="0 (default) or an odd prime")
    p.add_argument("--m", type=int, default=d(None), help="number of Grassmann generators")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--unital", dest="unital", action="store_true", default=d(True))
    g.add_argument("--nonunital", dest="unital", action="store_false", default=d(True))
    p.add_argument("--format", choices=("text", "machine"), default=d("text"))
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grasscp",
        description="Identities and central polynomials of finite Grassmann algebras.",
        parents=[_common(False)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a polynomial at Grassmann elements")
    p.add_argument("expr")
    p.add_argument("assign", nargs="*", metavar="xi=ELEMENT", help="e.g. x1='1 + e{1}'")

    p = sub.add_parser("nf", parents=[common], help="normal form modulo T^(3)")
    p.add_argument("expr")

    p = sub.add_parser("classify", parents=[common], help="identity / central / noncentral")
    p.add_argument("expr")
    p.add_argument("--strategy", choices=("auto", "multilinear", "generic"), default="auto")
    p.add_argument("--engine", choices=("profile", "expand"), default="profile")

    p = sub.add_parser("compare", parents=[common], help="compare two SS elements in the total order")
    p.add_argument("u")
    p.add_argument("v")

    p = sub.add_parser("catalog", parents=[common], help="print a generating set")
    p.add_argument("which", choices=("t-ideal", "cp"))
    p.add_argument("--verbatim", action="store_true", help="circle chains of length floor(m/2) for G0(m)")

    p = sub.add_parser("member", parents=[common], help="bounded T-space membership")
    p.add_argument("expr")
    p.add_argument("--gens", default="cp", help="'cp', 't-ideal', or ';'-separated expressions")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--budget", type=int, default=64)

    p = sub.add_parser("verify", parents=[common], help="run the registered checks")
    p.add_argument("suite", nargs="?", default="all", help="all or one of: " + ", ".join(verify_mod.REGISTRY))
    p.add_argument("--n", type=int, default=None)
    return parser


def _field(args) -> FieldSpec:
    return FieldSpec(args.char or 0)


def _spec(args) -> AlgebraSpec:
    if args.m is None:
        raise UsageError("--m is required for this command")
    if args.m < 1:
        raise UsageError("--m must be >= 1")
    return AlgebraSpec(args.m, args.unital, _field(args))


def _parse(text: str, args) -> NCPoly:
    return parse_expr(text, _field(args), args.unital)


def _emit(args, text: str, record) -> None:
    if args.format == "machine":
        if isinstance(record, list):
            for r in record:
                print(json.dumps(r, sort_keys=True, default=str))
        else:
            print(json.dumps(record, sort_keys=True, default=str))
    else:
        print(text)


def _single_ss(text: str, args) -> SSElement:
    nf = nf_t3(_parse(text, args))
    if nf.constant or len(nf.terms) != 1 or next(iter(nf.terms.values())) != 1:
        raise UsageError(f"{text!r} is not a single SS element")
    return next(iter(nf.terms))


def _nf_record(nf: NormalForm) -> dict:
    terms = [{"element": str(u), "coefficient": format_scalar(c)} for u, c in nf.ordered()]
    out = {"normal_form": str(nf), "terms": terms}
    if nf.constant:
        out["constant"] = format_scalar(nf.constant)
    return out


def _gens_from(args, spec: AlgebraSpec) -> GeneratorSet:
    if args.gens == "cp":
        return cp_generators(spec)
    if args.gens == "t-ideal":
        return t_ideal_generators(spec)
    elems = [_parse(t, args) for t in args.gens.split(";") if t.strip()]
    return GeneratorSet("given", "T-space", elems, {"m": spec.m, "p": spec.p, "unital": spec.unital})


def cmd_eval(args) -> int:
    spec = _spec(args)
    f = _parse(args.expr, args)
    s = {}
    for item in args.assign:
        if "=" not in item:
            raise UsageError(f"assignment {item!r} is not of the form xi=ELEMENT")
        name, value = item.split("=", 1)
        name = name.strip()
        if not (name.startswith("x") and name[1:].isdigit()):
            raise UsageError(f"bad variable name {name!r}")
        try:
            s[int(name[1:])] = parse_grassmann(value, spec)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    missing = [v for v in f.variables() if v not in s]
    if missing:
        raise UsageError("unassigned variables: " + ", ".join(f"x{v}" for v in missing))
    val = evaluate(f, s) if s else _constant_value(f, spec)
    _emit(args, format_grassmann(val), {"value": format_grassmann(val)})
    return EXIT_OK


def _constant_value(f: NCPoly, spec: AlgebraSpec) -> GrassmannElement:
    return GrassmannElement.scalar(spec, f.constant_term()) if f.constant_term() else GrassmannElement.zero(spec)


def cmd_nf(args) -> int:
    nf = nf_t3(_parse(args.expr, args))
    _emit(args, str(nf), _nf_record(nf))
    return EXIT_OK


def cmd_classify(args) -> int:
    spec = _spec(args)
    c = classify(_parse(args.expr, args), spec, args.strategy, args.engine)
    _emit(args, c.to_text(), c.record())
    return EXIT_OK


def cmd_compare(args) -> int:
    u, v = _single_ss(args.u, args), _single_ss(args.v, args)
    r = venkova_compare(u, v)
    word = {1: "greater", -1: "less", 0: "equal"}[r]
    cond = venkova_condition(u, v)
    text = f"{u} is {word} than {v}" if r else f"{u} equals {v}"
    if cond:
        text += f" (condition {cond})"
    _emit(args, text, {"u": str(u), "v": str(v), "result": word, "condition": cond})
    return EXIT_OK


def cmd_catalog(args) -> int:
    spec = _spec(args)
    gens = t_ideal_generators(spec) if args.which == "t-ideal" else cp_generators(spec, args.verbatim)
    source = {
        ("t-ideal", True): "basis of the identities of the unitary algebra",
        ("t-ideal", False): "T-ideal generators of the identities of the nonunitary algebra",
        ("cp", True): "T-space generators of the central polynomials, unitary case",
        ("cp", False): "T-space generators of the central polynomials, nonunitary case",
    }[(args.which, spec.unital)]
    lines = [f"# {gens.name}: {source}"]
    lines.append("# " + ", ".join(f"{k}={v}" for k, v in gens.params.items()))
    records = []
    for label, g in gens.labelled():
        lines.append(f"{format_poly(g)}    # {label}")
        records.append({"label": label, "element": format_poly(g)})
    _emit(args, "\n".join(lines), {"name": gens.name, "kind": gens.kind, "params": gens.params, "elements": records})
    return EXIT_OK


def cmd_member(args) -> int:
    spec = _spec(args)
    f = _parse(args.expr, args)
    rep = tspace_member_bounded(f, _gens_from(args, spec), args.max_degree, args.budget, spec)
    _emit(args, rep.to_text(), rep.record())
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite != "all" and args.suite not in verify_mod.REGISTRY:
        raise UsageError(f"unknown check {args.suite!r}; known: {', '.join(verify_mod.REGISTRY)}")
    opts = {"m": args.m, "char": args.char, "n": args.n}
    results = verify_mod.run(args.suite, **opts)
    failed = 0
    for r in results:
        failed += not r.ok
        if args.format == "machine":
            print(json.dumps({"check": r.name, "params": r.params, "ok": r.ok, "detail": r.detail}))
        else:
            print(r.line())
    if args.format == "text":
        print(f"{len(results) - failed} passed, {failed} failed")
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


COMMANDS = {
    "eval": cmd_eval,
    "nf": cmd_nf,
    "classify": cmd_classify,
    "compare": cmd_compare,
    "catalog": cmd_catalog,
    "member": cmd_member,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.char == 2:
            raise OutOfScopeError("characteristic 2 is out of scope")
        return COMMANDS[args.command](args)
    except OutOfScopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OUT_OF_SCOPE
    except (ParseError, UsageError, ContextError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
