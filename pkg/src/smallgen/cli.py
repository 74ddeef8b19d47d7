"""Command-line front door; the only module that performs I/O.

Commands: analyze, places, generator, verify, oracle.  Reports are JSON on
standard output; --out writes the same bytes to a file.  Exit codes:
0 ok, 1 verification failure, 2 input error, 3 search exhaustion,
4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .divisor import Divisor
from .errors import (
    EnumerationCapError,
    InputError,
    SearchExhaustedError,
)
from .oracle import (
    compare_min_generator,
    compare_place_counts,
    compare_rr_dim,
    count_places_exhaustive,
)
from .pipeline import (
    CERTIFICATE_SCHEMA,
    certificate_from_json,
    curve_from_input,
    place_count_lower_bound,
    small_generator,
    verify_certificate,
    weil_total_lower_bound,
)
from .poly import irreducibles

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_INPUT = 2
EXIT_EXHAUSTED = 3
EXIT_CAP = 4


def build_parser():
    parser = argparse.ArgumentParser(
        prog="smallgen",
        description="Construct and certify small generators of superelliptic "
        "function-field extensions of F_q(x).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_curve_args(p):
        p.add_argument("--q", type=int, required=True, help="base field order (prime power)")
        p.add_argument("--m", type=int, required=True, help="exponent of y")
        p.add_argument("--f", type=str, required=True, help="squarefree polynomial in x")
        p.add_argument("--out", type=str, default=None, help="also write the JSON to this path")
        p.add_argument("--workers", type=int, default=1,
                       help="scan fan-out; results are independent of this value")

    p_analyze = sub.add_parser("analyze", help="validate the model and report its invariants")
    add_curve_args(p_analyze)

    p_places = sub.add_parser("places", help="place counts and bounds per degree")
    add_curve_args(p_places)
    p_places.add_argument("--l", type=int, required=True, help="largest degree in the table")

    p_gen = sub.add_parser("generator", help="produce a generator certificate")
    add_curve_args(p_gen)
    p_gen.add_argument("--delta", type=int, default=8,
                       help="extra single-place degrees before the multi-place fallback")

    p_verify = sub.add_parser("verify", help="re-derive and check a certificate file")
    p_verify.add_argument("certificate", type=str, help="path to a certificate JSON file")
    p_verify.add_argument("--out", type=str, default=None)

    p_oracle = sub.add_parser("oracle", help="run a brute-force oracle against the kernel")
    add_curve_args(p_oracle)
    p_oracle.add_argument("--kind", choices=["places", "rr", "mingen"], required=True)
    p_oracle.add_argument("--l", type=int, default=None, help="degree for --kind places")
    p_oracle.add_argument("--divisor", type=str, default=None,
                          help="JSON divisor rows for --kind rr")
    p_oracle.add_argument("--cap", type=str, default=None,
                          help="height cap (exact rational) for --kind mingen")
    return parser


def _emit(doc, out_path):
    data = json.dumps(doc, indent=2) + "\n"
    sys.stdout.write(data)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(data)


def _load_curve(args):
    if args.workers is not None and args.workers < 1:
        raise InputError("--workers must be at least 1")
    return curve_from_input(args.q, args.m, args.f)


def cmd_analyze(args):
    curve = _load_curve(args)
    ef_checks = []
    all_ok = True
    for d in (1, 2):
        for prime in irreducibles(curve.base_field, d):
            total = sum(p.e * p.f_res for p in curve.places_above(prime))
            ok = total == curve.m
            all_ok &= ok
            ef_checks.append({"base": str(prime), "sum_ef": total, "ok": ok})
    inf_total = sum(p.e * p.f_res for p in curve.infinite_places)
    ef_checks.append({"base": "inf", "sum_ef": inf_total, "ok": inf_total == curve.m})
    all_ok &= inf_total == curve.m
    doc = {
        "schema": CERTIFICATE_SCHEMA,
        "input": {"q": args.q, "m": args.m, "f": str(curve.f)},
        "genus": curve.genus,
        "d_inf": curve.d_inf,
        "ext_degree": curve.ext_degree,
        "constant_field": curve.constant_field_certificate,
        "infinite_places": [
            {"branch": p.branch, "e": p.e, "f_res": p.f_res, "degree": p.degree}
            for p in curve.infinite_places
        ],
        "ramification_sum_checks": {"all_ok": bool(all_ok), "rows": ef_checks},
    }
    _emit(doc, args.out)
    return EXIT_OK


def cmd_places(args):
    if args.l < 1:
        raise InputError("--l must be at least 1")
    curve = _load_curve(args)
    q = curve.base_field.order
    from .oracle import ENUM_CAP

    if q**args.l > ENUM_CAP:
        raise EnumerationCapError(
            "q^l = %d^%d exceeds the enumeration cap %d" % (q, args.l, ENUM_CAP)
        )
    rows = []
    for l in range(1, args.l + 1):
        total, fres1 = count_places_exhaustive(curve, l)
        bound = place_count_lower_bound(
            q, l, curve.genus, 0, 1, curve.ext_degree
        )
        weil = weil_total_lower_bound(q, l, curve.genus)
        rows.append({
            "l": l,
            "total_places": total,
            "residue_degree_one_places": fres1,
            "count_bound": bound.describe(),
            "count_bound_satisfied": (bound.sign() <= 0) or bound.compare(fres1) <= 0,
            "weil_total_bound_satisfied": weil.compare(total) <= 0,
        })
    doc = {
        "schema": CERTIFICATE_SCHEMA,
        "input": {"q": args.q, "m": args.m, "f": str(curve.f)},
        "genus": curve.genus,
        "rows": rows,
    }
    _emit(doc, args.out)
    return EXIT_OK


def cmd_generator(args):
    curve = _load_curve(args)
    cert = small_generator(curve, extra_degrees=args.delta)
    ok, report = verify_certificate(curve, cert)
    doc = cert.to_json(curve)
    doc["verification"] = {"pass": ok, "report": report}
    _emit(doc, args.out)
    return EXIT_OK if ok else EXIT_VERIFY_FAIL


def cmd_verify(args):
    try:
        with open(args.certificate, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print("cannot read certificate: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    try:
        curve, cert = certificate_from_json(doc)
    except (KeyError, TypeError, ValueError) as exc:
        print("malformed certificate: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    ok, report = verify_certificate(curve, cert)
    _emit({"pass": ok, "report": report}, args.out)
    return EXIT_OK if ok else EXIT_VERIFY_FAIL


def cmd_oracle(args):
    curve = _load_curve(args)
    if args.kind == "places":
        if args.l is None or args.l < 1:
            raise InputError("--kind places needs --l >= 1")
        report = compare_place_counts(curve, args.l)
    elif args.kind == "rr":
        if not args.divisor:
            raise InputError("--kind rr needs --divisor")
        rows = json.loads(args.divisor)
        divisor = Divisor.from_json(curve, rows)
        report = compare_rr_dim(curve, divisor)
    else:
        if not args.cap:
            raise InputError("--kind mingen needs --cap")
        cap = Fraction(args.cap)
        cert = small_generator(curve)
        report = compare_min_generator(curve, cap, cert.height)
    doc = report.to_json()
    _emit(doc, args.out)
    return EXIT_OK if report.match else EXIT_VERIFY_FAIL


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    handlers = {
        "analyze": cmd_analyze,
        "places": cmd_places,
        "generator": cmd_generator,
        "verify": cmd_verify,
        "oracle": cmd_oracle,
    }
    try:
        return handlers[args.command](args)
    except InputError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except EnumerationCapError as exc:
        print("resource cap: %s" % exc, file=sys.stderr)
        return EXIT_CAP
    except SearchExhaustedError as exc:
        print("search exhausted: %s" % exc, file=sys.stderr)
        print(json.dumps({"search_log": exc.search_log}), file=sys.stderr)
        return EXIT_EXHAUSTED


def entry():
    sys.exit(main())
