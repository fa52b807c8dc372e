"""Command line entry point.

Exit codes: 0 pass, 1 fail, 2 unknown (unless --allow-unknown), 3 input error.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import cstar, germs, lcm
from .builders import BUILDERS, build
from .errors import InputError, ParseError, PreconditionError, TightIsoError
from .isotropy import s_iso, z_region
from .report import analysis_report
from .semigroup import from_json
from .subshift import clopen as co
from .subshift import elements as sx
from .subshift.finite import finite_shift_operators
from .subshift.sft import BUILTIN_SHIFTS, builtin_shift, parse_point, sft_from_json
from .suites import Context, run_suites
from .verdict import Unknown

EXIT_PASS, EXIT_FAIL, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3


def load_json_text(text, what="input"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise ParseError(f"malformed {what} JSON: {exc.msg}", offset) from None


def read_file(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_semigroup(args):
    if getattr(args, "builder", None):
        return build(args.builder), f"builder:{args.builder}"
    if getattr(args, "input", None):
        data = load_json_text(read_file(args.input), "semigroup")
        try:
            return from_json(data), f"file:{args.input}"
        except (KeyError, TypeError) as exc:
            raise InputError(f"semigroup JSON lacks a field: {exc}") from None
    raise InputError("give --builder NAME or --input FILE")


def load_shift_arg(text):
    if text in BUILTIN_SHIFTS:
        return builtin_shift(text)
    return sft_from_json(load_json_text(read_file(text), "shift"), name=Path(text).stem)


def load_monoid_arg(text):
    if text in lcm.BUILTIN_MONOIDS:
        return lcm.builtin_monoid(text)
    return lcm.monoid_from_json(load_json_text(read_file(text), "monoid"))


def emit(obj, out=None):
    text = json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if out:
        write_file(out, text)
    else:
        sys.stdout.write(text)


def write_file(path, text):
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def status_code(rows, allow_unknown):
    statuses = {r["status"] if isinstance(r, dict) else r.status for r in rows}
    if "fail" in statuses:
        return EXIT_FAIL
    if "unknown" in statuses and not allow_unknown:
        return EXIT_UNKNOWN
    return EXIT_PASS


# -- commands ---------------------------------------------------------------

def cmd_analyze(args):
    S, desc = load_semigroup(args)
    rep = analysis_report(S, desc, seed=args.seed, depth=args.depth)
    emit(rep, args.json)
    return status_code(rep["suites"], args.allow_unknown)


def _context(args):
    chosen = [k for k in ("builder", "input", "shift", "monoid") if getattr(args, k, None)]
    if len(chosen) != 1:
        raise InputError("give exactly one of --builder, --input, --shift, --monoid")
    if args.shift:
        return Context("shift", load_shift_arg(args.shift), args.seed, args.depth)
    if args.monoid:
        return Context("monoid", load_monoid_arg(args.monoid), args.seed, args.depth)
    return Context("semigroup", load_semigroup(args)[0], args.seed, args.depth)


def cmd_check(args):
    ctx = _context(args)
    rows = run_suites(ctx, args.suite or ["all"])
    for r in rows:
        line = f"{r.status.upper():7s} {r.suite}"
        if r.detail:
            line += f"  {r.detail}"
        if r.witness and r.status != "pass":
            line += f"  witness={r.witness}"
        print(line)
    return status_code(rows, args.allow_unknown)


def cmd_export(args):
    S, _ = load_semigroup(args)
    G = germs.tight_groupoid(S)
    if not args.dot and not args.json:
        raise InputError("give --dot FILE and/or --json FILE")
    if args.dot:
        write_file(args.dot, germs.to_dot(G, S.name))
    if args.json:
        write_file(args.json, json.dumps(G.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    return EXIT_PASS


def cmd_expectation(args):
    S, _ = load_semigroup(args)
    try:
        s = S.index(args.element)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    G = germs.tight_groupoid(S)
    dec = germs.isotropy_decomposition(S, G)
    T = cstar.generator(G, s) if s != S.zero else np.zeros(len(G), dtype=np.int64)
    E = cstar.expectation(G, dec.siso_part, T)
    Z = z_region(S, s, G.spectrum)
    rhs = cstar.convolve(G, T, cstar.unit_indicator(G, Z))
    ok = bool(np.array_equal(E, rhs))
    emit({
        "element": S.elements[s],
        "in_s_iso": s in s_iso(S),
        "T": {G.labels[g] + f"@{G.src[g]}": int(T[g]) for g in range(len(G))},
        "expectation": {G.labels[g] + f"@{G.src[g]}": int(E[g]) for g in range(len(G))},
        "z_region": [G.spectrum.names(u) for u in sorted(Z)],
        "formula_holds": ok,
    })
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_uniqueness(args):
    S, _ = load_semigroup(args)
    G = germs.tight_groupoid(S)
    rep = cstar.ideal_meets_subalgebra(G, S, seed=args.seed)
    emit(rep.to_json())
    return EXIT_PASS if rep.ok else EXIT_FAIL


def _verdict_json(v):
    if isinstance(v, Unknown):
        return {"status": "unknown", "depth": v.depth}
    return {"status": "pass" if v else "fail", "witness": None if v.witness is None else str(v.witness)}


def cmd_lcm(args):
    M = load_monoid_arg(args.monoid)
    if args.action == "mul":
        x, y = (lcm.parse_pair(M, t) for t in args.pairs)
        emit({"product": lcm.format_pair(M, lcm.pair_mul(M, x, y))})
        return EXIT_PASS
    if args.action == "foundation":
        F = [M.parse(t) for t in args.set.split(";")]
        v = lcm.is_foundation_set(M, F, args.depth)
        emit({"foundation": _verdict_json(v)})
        return _code(v, args.allow_unknown)
    if args.action == "core":
        p = M.parse(args.element)
        emit({"element": M.format(p), "core": lcm.core_membership(M, p)})
        return EXIT_PASS
    # check
    x = lcm.parse_pair(M, args.pair)
    out = {"pair": lcm.format_pair(M, x)}
    v = lcm.in_s_iso(M, x, args.depth)
    out["s_iso"] = _verdict_json(v)
    code = _code(v, args.allow_unknown)
    if not x.zero:
        r = M.right_lcm(x.p, x.q)
        out["right_lcm"] = None if r is None else M.format(r)
        out["core"] = [M.is_core(x.p), M.is_core(x.q)]
        if not isinstance(v, Unknown) and v and r is not None:
            res, v1 = lcm.lemma_lcm1_check(M, x, r, args.depth)
            out["lcm1"] = {"conjugate": lcm.format_pair(M, res), **_verdict_json(v1)}
            v2 = lcm.lemma_lcm2_check(M, x, np.random.default_rng(args.seed), 100, args.depth)
            out["lcm2"] = _verdict_json(v2)
            if not (v1 and v2):
                code = EXIT_FAIL
    emit(out)
    return code


def _code(v, allow_unknown):
    if isinstance(v, Unknown):
        return EXIT_PASS if allow_unknown else EXIT_UNKNOWN
    return EXIT_PASS if v else EXIT_FAIL


def cmd_shift(args):
    X = load_shift_arg(args.shift)
    if args.action == "eq":
        e1, e2 = sx.parse_element(X, args.e1), sx.parse_element(X, args.e2)
        eq = sx.sx_eq(X, e1, e2)
        emit({"e1": str(e1), "e2": str(e2), "equal": eq})
        return EXIT_PASS if eq else EXIT_FAIL
    if args.action == "show":
        e = sx.parse_element(X, args.e1)
        fps = sx.fixed_points(X, e)
        emit({
            "element": str(e),
            "idempotent": sx.is_idempotent(X, e),
            "fixed_points": str(fps) if isinstance(fps, co.ClopenSet) else [str(p) for p in fps],
        })
        return EXIT_PASS
    if args.action == "apply":
        e = sx.parse_element(X, args.e1)
        x = parse_point(args.point)
        emit({"image": str(sx.theta_on_point(X, e, x))})
        return EXIT_PASS
    if args.action == "operators":
        ops, pts = finite_shift_operators(X)
        emit({"points": [str(p) for p in pts], "operators": {a: M.astype(int).tolist() for a, M in ops.items()}})
        return EXIT_PASS
    # check
    rows = run_suites(Context("shift", X, args.seed, args.depth), args.suite or ["lemmas"])
    for r in rows:
        print(f"{r.status.upper():7s} {r.suite}  {r.detail}".rstrip())
    return status_code(rows, args.allow_unknown)


# -- parser -----------------------------------------------------------------

def _globals(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=d(0), help="RNG seed (default 0)")
    parser.add_argument("--depth", type=int, default=d(3), help="search depth (default 3)")
    parser.add_argument("--allow-unknown", action="store_true", default=d(False),
                        help="treat bounded-search Unknown verdicts as passing")


def _semigroup_target(p):
    p.add_argument("--builder", choices=sorted(BUILDERS))
    p.add_argument("--input", help="semigroup JSON file {name, elements, mul, star, zero}")


def build_parser():
    parser = argparse.ArgumentParser(prog="tightiso", description="Isotropy of tight groupoids at desk scale.")
    _globals(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _globals(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full report for a finite inverse semigroup")
    _semigroup_target(p)
    p.add_argument("--json", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check", parents=[common], help="run named verification suites")
    _semigroup_target(p)
    p.add_argument("--shift", help="built-in shift name or shift JSON file")
    p.add_argument("--monoid", help="built-in monoid name or monoid JSON file")
    p.add_argument("--suite", action="append", help="suite name (repeatable; default all)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("export", parents=[common], help="write the tight groupoid as DOT and/or JSON")
    _semigroup_target(p)
    p.add_argument("--dot")
    p.add_argument("--json")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("expectation", parents=[common], help="E(T_s) against T_s 1_Zs")
    _semigroup_target(p)
    p.add_argument("--element", required=True)
    p.set_defaults(func=cmd_expectation)

    p = sub.add_parser("uniqueness-check", parents=[common], help="block decomposition report")
    _semigroup_target(p)
    p.set_defaults(func=cmd_uniqueness)

    p = sub.add_parser("lcm", parents=[common], help="right-LCM monoid pair semigroup")
    p.add_argument("action", choices=["check", "mul", "foundation", "core"])
    p.add_argument("--monoid", default="free2", help="built-in name or monoid JSON file (default free2)")
    p.add_argument("--pair", default="", help="pair p,q for check")
    p.add_argument("--pairs", nargs=2, metavar="PAIR", help="two pairs for mul")
    p.add_argument("--set", default="", help="';'-separated elements for foundation")
    p.add_argument("--element", default="", help="element for core")
    p.set_defaults(func=cmd_lcm)

    p = sub.add_parser("shift", parents=[common], help="shift of finite type backend")
    p.add_argument("action", choices=["eq", "show", "apply", "operators", "check"])
    p.add_argument("--shift", default="golden-mean", help="built-in name or shift JSON file")
    p.add_argument("--e1", default="1")
    p.add_argument("--e2", default="1")
    p.add_argument("--point", default="(0)")
    p.add_argument("--suite", action="append")
    p.set_defaults(func=cmd_shift)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    try:
        if args.command == "lcm" and args.action == "mul" and not args.pairs:
            raise InputError("lcm mul needs --pairs P Q")
        return args.func(args)
    except (InputError, PreconditionError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TightIsoError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
