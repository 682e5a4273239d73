"""Command line interface.

Exit codes: 0 success, 1 failed verification (or an empty search when
``--assert-exists`` is given), 2 usage or input error, 3 internal invariant
violation.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time

from . import formats
from .errors import BinorderError, DomainError, InternalInvariantViolation, ParseError, ValidationError
from .identity import InequalitySpec, SearchProfile, is_exhaustive, search, sequence_of_levels
from .matching import available_backends, inject, order
from .nonexistence import verdict
from .verifier import hall_test, lym_failures, lym_test, verify_file

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

# results reported by a search past the exhaustive bound when --limit is absent
NON_EXHAUSTIVE_LIMIT = 100


def _levels_arg(text: str) -> tuple[int, ...]:
    try:
        return sequence_of_levels(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_search(args) -> int:
    exhaustive = is_exhaustive(args.n, args.profile)
    limit = args.limit
    if limit is None and not exhaustive:
        limit = NON_EXHAUSTIVE_LIMIT
    found = search(args.n, args.profile, limit=limit)
    if exhaustive:
        scope = "exhaustive" if args.limit is None else f"exhaustive, first {args.limit} shown"
    else:
        scope = "NON-EXHAUSTIVE"
    print(f"# search n={args.n} profile={args.profile}: {scope}")
    for spec in found:
        print(f"A={','.join(map(str, spec.A))} B={','.join(map(str, spec.B))}")
    print(f"{len(found)} identities")
    if args.out:
        formats.write_text(args.out, formats.write_identities(found))
    if args.assert_exists and not found:
        return EXIT_FAIL
    return EXIT_OK


def cmd_check(args) -> int:
    v = verdict(args.n, args.profile)
    print(f"n={args.n} profile={args.profile}: {v}")
    return EXIT_OK


def _write_cert(cert, path) -> None:
    formats.write_text(path, formats.write_certificate(cert))
    print(f"wrote {len(cert.pairs)} pairs (type={cert.kind}) to {path}")


def cmd_order(args) -> int:
    spec = formats.parse_identity(formats.read_text(args.identity))
    start = time.perf_counter()
    cert = order(spec, pin_wsb=args.pin_wsb, backend=args.backend)
    logging.getLogger(__name__).info("matching took %.3fs", time.perf_counter() - start)
    _write_cert(cert, args.out)
    return EXIT_OK


def cmd_inject(args) -> int:
    cert = inject(InequalitySpec(args.n, args.A, args.B), backend=args.backend)
    _write_cert(cert, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    failures = verify_file(args.cert)
    for f in failures:
        print(f)
    if failures:
        print(f"RESULT: FAIL failures={len(failures)}")
        return EXIT_FAIL
    print("RESULT: PASS")
    return EXIT_OK


def cmd_lym(args) -> int:
    reports = lym_test(args.n, args.a, args.b, args.trials, args.seed)
    for r in reports[:3]:
        print(
            f"{r.label:>9}: |S|={r.family_size} |Sh|={r.shadow_size} "
            f"F={r.fraction} holds={r.bound_holds} strict={r.strict}"
        )
    random = reports[3:]
    print(
        f"   random: {len(random)} families, bound held in {sum(r.bound_holds for r in random)}, "
        f"strict in {sum(r.strict for r in random)}"
    )
    problems = lym_failures(reports)
    for p in problems:
        print(p)
    print(f"RESULT: {'FAIL' if problems else 'PASS'} checked={len(reports)}")
    return EXIT_FAIL if problems else EXIT_OK


def cmd_hall(args) -> int:
    spec = formats.parse_identity(formats.read_text(args.identity))
    if args.exhaustive:
        report = hall_test(spec, "exhaustive")
    else:
        report = hall_test(spec, "sampled", args.trials, args.seed, backend=args.backend)
    print(f"identity {spec}: mode={report.mode}")
    print(f"proper nonempty Z checked: {report.samples_checked}")
    print(f"minimum surplus |N(Z)| - |Z|: {report.min_surplus}")
    print(f"Z = whole family: |N(Z)| = {report.full_shadow_size}, |Z| = {report.left_size}")
    for z, surplus in report.violations:
        print(f"violation: surplus {surplus} for Z = {' '.join(f'{m:#x}' for m in z)}")
    print(report.result_line())
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="binorder", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    profiles = [p.value for p in SearchProfile]
    backends = available_backends()

    p = sub.add_parser("search", help="enumerate binomial identities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--profile", choices=profiles, default="any")
    p.add_argument("--limit", type=int)
    p.add_argument("--out")
    p.add_argument("--assert-exists", action="store_true", help="exit 1 when nothing is found")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("check", help="number-theoretic nonexistence criteria")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--profile", choices=["wsb", "fundamental"], required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("order", help="perfect containment matching for an identity")
    p.add_argument("--identity", required=True)
    p.add_argument("--pin-wsb", action="store_true", help="force the empty set onto {n}")
    p.add_argument("--out", required=True)
    p.add_argument("--backend", choices=backends)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("inject", help="saturating containment matching for an inequality")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--A", type=_levels_arg, required=True)
    p.add_argument("--B", type=_levels_arg, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--backend", choices=backends)
    p.set_defaults(func=cmd_inject)

    p = sub.add_parser("verify", help="check a certificate file")
    p.add_argument("--cert", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lym", help="local LYM inequality on random families")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_lym)

    p = sub.add_parser("hall", help="Hall condition and surplus for an identity")
    p.add_argument("--identity", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--exhaustive", action="store_true")
    group.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--backend", choices=backends)
    p.set_defaults(func=cmd_hall)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except InternalInvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ParseError, ValidationError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BinorderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
