"""Command-line interface: curve queries, pair invariants, zeta functions.

Results go to stdout as a single JSON document with the shape
{"query": {...}, "result": {"kind": ..., "value": ...}, "checks": {...}};
progress and diagnostics go to stderr.  Exit codes: 0 success, 2 invalid
input, 3 non-generic tau with the explicit method, 4 cross-route mismatch
or failed verification check.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .curve import CurveDatum, b_r, functional_equation_ok, jacobian_class
from .motivic import ChernClass, beta
from .nazeta import compute_zeta_result
from .ratfun import RationalFunc, TPoly
from .scalar import ScalarValue, scalar_parse, scalar_text
from .verify import run_suites
from .wallcross import (NonGenericTauError, f_tau_convolution, f_tau_lemma,
                        f_tau_product, is_generic, pairs_moduli_motive)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NON_GENERIC = 3
EXIT_MISMATCH = 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _bool_flag(value: str) -> bool:
    if value.lower() in ("1", "true", "yes", "on"):
        return True
    if value.lower() in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {value!r}")


def _add_curve_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--genus", type=int, required=True, help="genus g >= 0")
    p.add_argument(
        "--symbolic", nargs="?", const="true", default="false", type=str,
        help="symbolic numerator coefficients c1..cg (flag or true/false)",
    )
    p.add_argument(
        "--numerator", type=str, default=None,
        help="comma-separated a_1..a_g in the scalar grammar (numeric mode)",
    )


def _parse_curve(args) -> CurveDatum:
    if args.genus < 0:
        raise CliError("genus must be non-negative")
    symbolic = _bool_flag(args.symbolic)
    if args.numerator is not None:
        if symbolic:
            raise CliError("--numerator conflicts with --symbolic")
        parts = [p for p in args.numerator.split(",") if p.strip()]
        if len(parts) != args.genus:
            raise CliError(
                f"expected {args.genus} numerator coefficients, got {len(parts)}"
            )
        try:
            coeffs = [scalar_parse(p) for p in parts]
        except ValueError as exc:
            raise CliError(f"bad numerator coefficient: {exc}") from exc
        return CurveDatum.make_numeric(args.genus, coeffs)
    if symbolic or args.genus == 0:
        return CurveDatum.make_symbolic(args.genus)
    raise CliError("genus > 0 needs --symbolic or --numerator")


def _parse_tau(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"tau must be an exact fraction p/q: {exc}") from exc


def _scalar_json(v: ScalarValue) -> dict:
    return {"kind": "scalar", "value": scalar_text(v)}


def _ratfun_json(f: RationalFunc) -> dict:
    return {
        "kind": "rational_function",
        "value": {
            "numerator_t": [scalar_text(c) for c in f.num.coeffs],
            "denominator_t": [scalar_text(c) for c in f.den.coeffs],
        },
    }


def _series_json(coeffs: list) -> dict:
    return {
        "kind": "series",
        "value": {
            "coefficients": [scalar_text(c) for c in coeffs],
            "order": len(coeffs) - 1,
        },
    }


def _emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _cmd_curve_info(args) -> int:
    c = _parse_curve(args)
    checks = {
        "functional_equation": functional_equation_ok(c),
        "numerator_constant_term_one": c.numerator[0].is_one(),
    }
    payload = {
        "query": {"command": "curve-info", "genus": c.genus, "symbolic": c.symbolic},
        "result": {
            "kind": "curve",
            "value": {
                "numerator_t": [scalar_text(x) for x in c.numerator.coeffs],
                "jacobian_class": scalar_text(jacobian_class(c)),
                "b_r": {str(r): scalar_text(b_r(c, r)) for r in (1, 2, 3)},
            },
        },
        "checks": checks,
    }
    _emit(payload)
    return EXIT_OK if all(checks.values()) else EXIT_MISMATCH


def _cmd_betti(args) -> int:
    c = _parse_curve(args)
    if args.rank < 1:
        raise CliError("rank must be >= 1")
    value = beta(c, ChernClass(args.rank, args.degree))
    payload = {
        "query": {
            "command": "betti", "genus": c.genus, "symbolic": c.symbolic,
            "rank": args.rank, "degree": args.degree,
        },
        "result": _scalar_json(value),
        "checks": {"q_integral": value.is_q_integral()},
    }
    _emit(payload)
    return EXIT_OK if value.is_q_integral() else EXIT_MISMATCH


def _cmd_pairs(args) -> int:
    c = _parse_curve(args)
    if args.rank < 1:
        raise CliError("rank must be >= 1")
    tau = _parse_tau(args.tau)
    r, d = args.rank, args.degree
    methods = {}
    checks = {}

    def run(method: str) -> ScalarValue:
        if method == "product":
            return f_tau_product(c, r, d, tau)
        if method == "convolution":
            return f_tau_convolution(c, r, d, tau)
        if method == "lemma":
            return f_tau_lemma(c, r, d, tau)
        if method == "explicit":
            return pairs_moduli_motive(c, r, d, tau)
        raise CliError(f"unknown method {method!r}")

    if args.all_methods:
        wanted = ["product"]
        if r >= 2:
            wanted += ["convolution", "lemma"]
            if is_generic(tau, r, d):
                wanted.append("explicit")
        for m in wanted:
            methods[m] = run(m)
        f_values = {m: v for m, v in methods.items() if m != "explicit"}
        agree = len({scalar_text(v) for v in f_values.values()}) == 1
        if "explicit" in methods:
            scale = ScalarValue.q_pow((c.genus - 1) * (r * (r - 1) // 2))
            agree &= methods["explicit"] == scale * methods["lemma"]
        checks["all_methods_agree"] = agree
        value = methods[args.method if args.method in methods else "product"]
        payload = {
            "query": {
                "command": "pairs", "genus": c.genus, "symbolic": c.symbolic,
                "rank": r, "degree": d, "tau": str(tau), "method": "all",
            },
            "result": _scalar_json(value),
            "methods": {m: scalar_text(v) for m, v in methods.items()},
            "checks": checks,
        }
        _emit(payload)
        return EXIT_OK if agree else EXIT_MISMATCH
    try:
        value = run(args.method)
    except NonGenericTauError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NON_GENERIC
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    checks["q_integral"] = value.is_q_integral()
    payload = {
        "query": {
            "command": "pairs", "genus": c.genus, "symbolic": c.symbolic,
            "rank": r, "degree": d, "tau": str(tau), "method": args.method,
        },
        "result": _scalar_json(value),
        "checks": checks,
    }
    _emit(payload)
    return EXIT_OK


def _cmd_zeta_r(args) -> int:
    c = _parse_curve(args)
    if args.rank < 1:
        raise CliError("rank must be >= 1")
    run_checks = args.check == "all"
    res = compute_zeta_result(
        c, args.rank, terms=args.terms,
        closed_form=args.closed_form or run_checks, run_checks=run_checks,
    )
    result = _series_json(res.coefficients)
    value = result["value"]
    if res.rational is not None:
        value["rational_function"] = _ratfun_json(res.rational)["value"]
        value["numerator_P"] = [scalar_text(x) for x in res.numerator.coeffs]
    payload = {
        "query": {
            "command": "zeta-r", "genus": c.genus, "symbolic": c.symbolic,
            "rank": args.rank, "terms": args.terms,
        },
        "result": result,
        "checks": res.checks,
    }
    _emit(payload)
    return EXIT_OK if all(res.checks.values()) else EXIT_MISMATCH


def _cmd_verify(args) -> int:
    try:
        report = run_suites(args.suite, args.seed)
    except KeyError as exc:
        raise CliError(str(exc)) from exc
    ok = all(all(res.values()) for res in report.values())
    payload = {
        "query": {"command": "verify", "suite": args.suite, "seed": args.seed},
        "result": {"kind": "report", "value": report},
        "checks": {"all_passed": ok},
    }
    _emit(payload)
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairzeta",
        description="Exact pair-moduli motives and non-abelian zeta functions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curve-info", help="zeta numerator and bundle classes")
    _add_curve_args(p)
    p.set_defaults(fn=_cmd_curve_info)

    p = sub.add_parser("betti", help="semistable-stack class beta(r, d)")
    _add_curve_args(p)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(fn=_cmd_betti)

    p = sub.add_parser("pairs", help="pair invariant f_tau(r, d) / [M_tau(r, d)]")
    _add_curve_args(p)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--tau", type=str, required=True, help="exact fraction p/q")
    p.add_argument(
        "--method", choices=("product", "convolution", "lemma", "explicit"),
        default="product",
    )
    p.add_argument("--all-methods", action="store_true",
                   help="run every applicable route; exit 4 on mismatch")
    p.set_defaults(fn=_cmd_pairs)

    p = sub.add_parser("zeta-r", help="rank-r non-abelian zeta function")
    _add_curve_args(p)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--terms", type=int, default=3)
    p.add_argument("--closed-form", action="store_true")
    p.add_argument("--check", choices=("all", "none"), default="none")
    p.set_defaults(fn=_cmd_zeta_r)

    p = sub.add_parser("verify", help="run the named invariant suites")
    p.add_argument("--suite", type=str, default="all")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
