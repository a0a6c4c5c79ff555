"""Command-line entry point.

Exit codes: 0 CERTIFIED (or pass), 1 REFUTED (or fail), 2 INCONCLUSIVE,
3 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from ._guards import GuardError
from .arrays import (BUILTIN_NAME, CodeFormatError, builtin, code_to_ca_params, corollary_gate,
                     critical_strength, format_code, is_critical_array, load_code, min_distance,
                     search_code)
from .certifier import (Outcome, PreconditionError, WitnessError, certify_code_resistant,
                        certify_dicke_strong, emit_certificate, replay, revalidate)
from .core import format_fraction, to_fraction
from .dicke import KMixtureError
from .families import (Family, FamilyError, a2_relation_n5, c2_lower_bound, exact_boundary_n3,
                       psi_n_minus_3, psi_n_minus_4, psi_n_minus_5, threshold_ratio_n3)
from .tables import reproduce_tables

EXIT = {Outcome.CERTIFIED: 0, Outcome.REFUTED: 1, Outcome.INCONCLUSIVE: 2}
USAGE_ERROR = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _rational(text: str):
    try:
        return to_fraction(text)
    except (TypeError, ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational (use p/q or an integer): {text!r}")


def _emit(args, document: str, summary: str) -> None:
    if args.out:
        Path(args.out).write_text(document)
        print(summary)
    else:
        sys.stdout.write(document)
        print(summary, file=sys.stderr)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _load_array(args):
    if args.builtin:
        return builtin(args.builtin)
    if not args.file or args.q is None:
        raise ValueError("give --builtin, or --file together with --q")
    return load_code(args.file, args.q)


def cmd_certify_dicke(args) -> int:
    family = Family(args.family)
    if family is Family.N_MINUS_3:
        spec = psi_n_minus_3(args.N, args.a2, args.b2)
    elif family is Family.N_MINUS_4:
        spec = psi_n_minus_4(args.N, args.a2, args.b2)
    else:
        spec = psi_n_minus_5(args.N, args.b2, margin=args.margin, c2=args.c2)
    m = spec.m if args.m is None else args.m
    subject = {"family": family.value, "a2": spec.a2, "b2": spec.b2}
    if spec.c2 is not None:
        subject["c2"] = spec.c2
    cert = certify_dicke_strong(spec.combo(), m, subject=subject)
    _emit(args, emit_certificate(cert),
          f"{cert.outcome.value}: family {family.value}, N={spec.n}, strong m={m}")
    return EXIT[cert.outcome]


def cmd_certify_code(args) -> int:
    code = _load_array(args)
    coeffs = None
    if args.coeffs:
        coeffs = [_rational(c) for c in args.coeffs.split(",")]
    strict = args.m is None
    m = args.m
    if m is None:
        m = corollary_gate(code)
        if m is None:
            k = critical_strength(code)
            if k is None:
                raise PreconditionError("array is not a critical array for any k; pass --m")
            m = k - 1
    cert = certify_code_resistant(code, coeffs, m, strict=strict, workers=args.workers)
    _emit(args, emit_certificate(cert),
          f"{cert.outcome.value}: N={code.n}, q={code.q}, r={code.r}, m={m}")
    return EXIT[cert.outcome]


def cmd_verify_array(args) -> int:
    code = _load_array(args)
    report = is_critical_array(code, args.k)
    ca = code_to_ca_params(code)
    doc = {"n": code.n, "q": code.q, "r": code.r, "k": args.k, "critical_array": report.ok,
           "reason": report.reason, "columns": list(report.columns),
           "min_distance": min_distance(code), "corollary_m": corollary_gate(code),
           "code_ca_params": None if ca is None else [ca.r, ca.n, ca.q, ca.k]}
    verdict = "pass" if report else f"fail ({report.reason} in columns {list(report.columns)})"
    _emit(args, _dump(doc), f"CA({code.r},{code.n},{code.q},{args.k}): {verdict}")
    return 0 if report else 1


def cmd_param_range(args) -> int:
    family = Family(args.family)
    f = format_fraction
    if family is Family.N_MINUS_3:
        gate, exact = threshold_ratio_n3(args.N), exact_boundary_n3(args.N)
        doc = {"family": family.value, "N": args.N, "closed_form_bound_a2_over_b2": f(gate),
               "exact_psd_boundary_a2_over_b2": f(exact)}
        summary = (f"closed-form bound a2/b2 >= {gate} "
                   f"(exact 2-qubit PSD boundary {exact}, diagnostic)")
    elif family is Family.N_MINUS_4:
        psi_n_minus_4(args.N, 1, 1)
        doc = {"family": family.value, "N": args.N, "condition": "a2 > 0 and b2 > 0"}
        summary = "any a2 > 0, b2 > 0"
    else:
        ratio = a2_relation_n5(args.N)
        root = c2_lower_bound(args.N, ratio, 1)
        doc = {"family": family.value, "N": args.N, "a2_over_b2": f(ratio),
               "c2_over_b2_root": f(root)}
        summary = f"a2/b2 = {ratio}, c2/b2 > {root}"
    _emit(args, _dump(doc), summary)
    return 0


def cmd_search_code(args) -> int:
    code = search_code(args.N, args.q, args.d, args.r, args.budget)
    if code is None:
        doc = {"found": False, "params": [args.N, args.r, args.d, args.q]}
        _emit(args, _dump(doc), f"not found within {args.budget} nodes")
        return 1
    if args.out:
        Path(args.out).write_text(format_code(code))
        print(f"found ({args.N},{code.r},{min_distance(code)})_{args.q}")
    else:
        sys.stdout.write(format_code(code))
        print(f"found ({args.N},{code.r},{min_distance(code)})_{args.q}", file=sys.stderr)
    return 0


def cmd_tables(args) -> int:
    report = reproduce_tables(args.which, code_dir=args.code_dir, budget=args.budget,
                              workers=args.workers)
    bad = {k: v for k, v in report["summary"].items() if k not in ("CERTIFIED", "SKIPPED")}
    _emit(args, _dump(report), f"table {report['table']}: {report['summary']}")
    return 1 if bad else 0


def cmd_replay(args) -> int:
    text = Path(args.certificate).read_text()
    same = replay(text)
    problems = revalidate(json.loads(text))
    for p in problems:
        print(p, file=sys.stderr)
    ok = same and not problems
    print(f"replay {'ok' if ok else 'MISMATCH'}: byte-identical={same}, "
          f"evidence problems={len(problems)}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="resist-cert", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    certify = sub.add_parser("certify", help="certify a state")
    csub = certify.add_subparsers(dest="pipeline", required=True, parser_class=_Parser)

    d = csub.add_parser("dicke", help="strong resistance of a Dicke-family state")
    d.add_argument("--family", required=True, choices=[f.value for f in Family])
    d.add_argument("--N", type=int, required=True)
    d.add_argument("--a2", type=_rational, default=None)
    d.add_argument("--b2", type=_rational, required=True)
    d.add_argument("--c2", type=_rational, default=None, help="n-5 only; overrides --margin")
    d.add_argument("--margin", type=_rational, default=2, help="n-5 only")
    d.add_argument("--m", type=int, default=None, help="resistance to claim (default: family's)")
    d.add_argument("--out")
    d.set_defaults(func=cmd_certify_dicke)

    c = csub.add_parser("code", help="resistance of an array state")
    _array_source(c)
    c.add_argument("--coeffs", help="comma-separated nonzero rationals, one per row")
    c.add_argument("--m", type=int, default=None,
                   help="resistance to claim; runs even if preconditions fail")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--out")
    c.set_defaults(func=cmd_certify_code)

    v = sub.add_parser("verify-array", help="check the critical-array conditions")
    _array_source(v)
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify_array)

    pr = sub.add_parser("param-range", help="coefficient conditions of a family")
    pr.add_argument("--family", required=True, choices=[f.value for f in Family])
    pr.add_argument("--N", type=int, required=True)
    pr.add_argument("--out")
    pr.set_defaults(func=cmd_param_range)

    s = sub.add_parser("search-code", help="bounded backtracking search for a code")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--budget", type=int, default=200_000)
    s.add_argument("--out")
    s.set_defaults(func=cmd_search_code)

    t = sub.add_parser("tables", help="reproduce an existence table")
    t.add_argument("--which", required=True, choices=["I", "II", "III"])
    t.add_argument("--code-dir", default=None, help="directory of N-r-d-q.txt code files")
    t.add_argument("--budget", type=int, default=50_000)
    t.add_argument("--workers", type=int, default=1)
    t.add_argument("--out")
    t.set_defaults(func=cmd_tables)

    r = sub.add_parser("replay", help="recompute a certificate and compare byte for byte")
    r.add_argument("certificate")
    r.set_defaults(func=cmd_replay)
    return p


def _array_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--file")
    p.add_argument("--q", type=int)
    p.add_argument("--builtin", choices=[BUILTIN_NAME])


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "family", None) in ("n-3", "n-4") and getattr(args, "a2", 0) is None:
        print("error: --a2 is required for this family", file=sys.stderr)
        return USAGE_ERROR
    try:
        return args.func(args)
    except (FamilyError, PreconditionError, KMixtureError, WitnessError, CodeFormatError,
            GuardError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
