# fourap/cli.py
import argparse
import logging
import os
import sys
from datetime import datetime, timezone
from typing import List, Optional

from dotenv import load_dotenv

from . import __version__
from .arith_helper import format_rational, parse_rational
from .congruent_helper import certify_congruent, equation_pair_holds
from .curve_helper import (
    QUARTIC_EQUATION,
    WEIERSTRASS_EQUATION,
    EPoint,
    QuarticPoint,
    e_to_quartic,
    naive_point_search,
    quartic_to_e,
    torsion_points,
)
from .descent_helper import (
    AdPair,
    Audit,
    Refutation,
    clear_denominators,
    descent_chain,
    forward_to_ad,
    normalize_window,
)
from .documents import (
    CertificateDocument,
    ad_pair_document,
    certificate_document,
    check_document,
    curve_document,
    negative_certify_document,
    parse_document,
    refutation_document,
    search_document,
    witness_document,
)
from .errors import DomainError, InternalConsistencyError, PreconditionRefuted
from .search_helper import (
    THREE_SQUARE_AP,
    SearchReport,
    search_double_square_pairs,
    search_euler_pairs,
    search_four_square_ap,
    search_three_square_ap,
)

load_dotenv()

LOG_LEVEL = os.getenv("FOURAP_LOG_LEVEL", "WARNING")

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_COUNTEREXAMPLE = 3

logger = logging.getLogger(__name__)


def _env_int(name: str, default: Optional[int]) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"environment variable {name}={raw!r} is not an integer") from None


def _emit(document: CertificateDocument, args: argparse.Namespace) -> None:
    if args.metadata:
        document.metadata = {
            "tool": "fourap",
            "version": __version__,
            "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        }
    print(document.to_line())


def _trace(audit: Audit, args: argparse.Namespace):
    return audit.entries if args.trace else None


# ---------------------- Subcommands ----------------------

def cmd_verify_ap(args: argparse.Namespace) -> int:
    values = list(args.values)
    inputs = {"terms": [format_rational(v) for v in values], "roots": args.roots}
    squares = values
    if args.roots:
        squares = [v * v for v in values]

    audit = Audit()
    result = clear_denominators(squares, audit)
    # with roots given, only the AP check can refute
    if args.roots and equation_pair_holds(*values) == isinstance(result, Refutation):
        raise InternalConsistencyError(
            f"a^2 + c^2 = 2b^2 and b^2 + d^2 = 2c^2 disagrees with the AP check for roots {inputs['terms']}")
    if not isinstance(result, Refutation):
        result = normalize_window(result, audit)
    if not isinstance(result, Refutation):
        result = forward_to_ad(result, audit)
    if isinstance(result, Refutation):
        _emit(refutation_document(inputs, result, _trace(audit, args)), args)
        return EXIT_NEGATIVE

    _emit(witness_document(inputs, result.candidate, result.witness, _trace(audit, args)), args)
    if result.candidate.is_degenerate:
        return EXIT_OK
    logger.warning("🚨 four nonconstant squares in arithmetic progression: %s", inputs["terms"])
    return EXIT_COUNTEREXAMPLE


def cmd_certify(args: argparse.Namespace) -> int:
    inputs = {"k": str(args.k), "hyp_bound": str(args.hyp_bound)}
    search = certify_congruent(args.k, args.hyp_bound)
    if search.found:
        _emit(certificate_document(inputs, search.certificate), args)
        return EXIT_OK
    _emit(negative_certify_document(inputs, args.k, args.hyp_bound), args)
    return EXIT_NEGATIVE


def _search_exit(report: SearchReport) -> int:
    if report.kind == THREE_SQUARE_AP or report.relaxed:
        return EXIT_OK if report.hits else EXIT_NEGATIVE
    if report.hits:
        logger.warning("🚨 %s search found %d hit(s)", report.kind, len(report.hits))
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def _run_search(args: argparse.Namespace, inputs: dict, report: SearchReport) -> int:
    inputs["partitions"] = str(args.partitions)
    _emit(search_document(inputs, report), args)
    return _search_exit(report)


def cmd_search4(args: argparse.Namespace) -> int:
    report = search_four_square_ap(args.root_bound, terms=3 if args.three_term else 4,
                                   partitions=args.partitions, workers=args.workers)
    inputs = {"root_bound": str(args.root_bound), "three_term": args.three_term}
    return _run_search(args, inputs, report)


def cmd_search_ad(args: argparse.Namespace) -> int:
    report = search_double_square_pairs(args.a_bound, args.d_bound, require_both=not args.single_form,
                                        partitions=args.partitions, workers=args.workers)
    inputs = {"a_bound": str(args.a_bound), "d_bound": str(args.d_bound), "single_form": args.single_form}
    return _run_search(args, inputs, report)


def cmd_euler_search(args: argparse.Namespace) -> int:
    report = search_euler_pairs(args.x_bound, args.y_bound, strict_parity=not args.relaxed_parity,
                                require_both=not args.single_form, partitions=args.partitions,
                                workers=args.workers)
    inputs = {
        "x_bound": str(args.x_bound),
        "y_bound": str(args.y_bound),
        "relaxed_parity": args.relaxed_parity,
        "single_form": args.single_form,
    }
    return _run_search(args, inputs, report)


def cmd_search3(args: argparse.Namespace) -> int:
    report = search_three_square_ap(args.k, args.root_bound, partitions=args.partitions, workers=args.workers)
    inputs = {"k": str(args.k), "root_bound": str(args.root_bound)}
    return _run_search(args, inputs, report)


def cmd_curve_torsion(args: argparse.Namespace) -> int:
    _emit(curve_document({}, "torsion", "weierstrass", WEIERSTRASS_EQUATION, torsion_points()), args)
    return EXIT_OK


def cmd_curve_map(args: argparse.Namespace) -> int:
    if args.from_quartic is not None:
        source = QuarticPoint(*args.from_quartic)
        inputs = {"from": "quartic", "point": [format_rational(c) for c in args.from_quartic]}
        document = curve_document(inputs, "map", "weierstrass", WEIERSTRASS_EQUATION,
                                  [quartic_to_e(source)], source=source)
    else:
        source = EPoint(*args.from_weierstrass)
        inputs = {"from": "weierstrass", "point": [format_rational(c) for c in args.from_weierstrass]}
        document = curve_document(inputs, "map", "quartic", QUARTIC_EQUATION,
                                  [e_to_quartic(source)], source=source)
    _emit(document, args)
    return EXIT_OK


def cmd_curve_search(args: argparse.Namespace) -> int:
    points = naive_point_search(args.height)
    logger.info("✅ %d affine points with height at most %d", len(points), args.height)
    document = curve_document({"height": str(args.height)}, "search", "weierstrass", WEIERSTRASS_EQUATION,
                              points, height_bound=args.height)
    _emit(document, args)
    return EXIT_OK


def cmd_descend(args: argparse.Namespace) -> int:
    inputs = {"A": str(args.A), "D": str(args.D)}
    audit = Audit()
    try:
        chain = descent_chain(AdPair(args.A, args.D), audit=audit)
    except PreconditionRefuted as exc:
        _emit(refutation_document(inputs, exc.refutation, _trace(audit, args)), args)
        return EXIT_NEGATIVE
    _emit(ad_pair_document(inputs, chain, _trace(audit, args)), args)
    return EXIT_OK if len(chain) == 1 else EXIT_COUNTEREXAMPLE


def cmd_check(args: argparse.Namespace) -> int:
    handle = args.file
    try:
        lines = handle.read().splitlines()
    finally:
        if handle is not sys.stdin:
            handle.close()

    malformed = invalid = 0
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            document = parse_document(line)
        except DomainError as exc:
            malformed += 1
            print(f"line {number}: ❌ {exc}")
            continue
        problems = check_document(document)
        if problems:
            invalid += 1
            print(f"line {number}: ❌ {document.kind}: {'; '.join(problems)}")
        else:
            print(f"line {number}: ✅ {document.kind}")
    if malformed:
        return EXIT_USAGE
    return EXIT_NEGATIVE if invalid else EXIT_OK


# ---------------------- Parser ----------------------

def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise ValueError(f"{value} is not positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trace", action="store_true", help="Include every square test in the payload")
    common.add_argument("--metadata", action="store_true", help="Add a metadata header with version and timestamp")
    common.add_argument("--log-level", default=LOG_LEVEL, choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        type=str.upper)

    searches = argparse.ArgumentParser(add_help=False)
    searches.add_argument("--partitions", type=_positive_int, default=_env_int("FOURAP_PARTITIONS", 1))
    searches.set_defaults(workers=_env_int("FOURAP_WORKERS", None))

    parser = argparse.ArgumentParser(prog="fourap",
                                     description="Certificates for four squares in arithmetic progression")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    verify = subparsers.add_parser("verify-ap", parents=[common], help="Run four squares through the descent pipeline")
    verify.add_argument("values", nargs=4, type=parse_rational, metavar="VALUE")
    verify.add_argument("--roots", action="store_true", help="Treat the values as square roots a, b, c, d")
    verify.set_defaults(handler=cmd_verify_ap)

    certify = subparsers.add_parser("certify", parents=[common], help="Certify k as a congruent number")
    certify.add_argument("k", type=int)
    certify.add_argument("--hyp-bound", type=_positive_int, default=_env_int("FOURAP_HYP_BOUND", 10000))
    certify.set_defaults(handler=cmd_certify)

    search4 = subparsers.add_parser("search4", parents=[common, searches], help="Search four squares in AP")
    search4.add_argument("--root-bound", type=int, default=_env_int("FOURAP_ROOT_BOUND", 10000))
    search4.add_argument("--three-term", action="store_true", help="Report three-term progressions instead")
    search4.set_defaults(handler=cmd_search4)

    search_ad = subparsers.add_parser("search-ad", parents=[common, searches],
                                      help="Search coprime (A, D) with 16A^2+D^2 and 4A^2+D^2 square")
    search_ad.add_argument("--a-bound", type=int, default=_env_int("FOURAP_A_BOUND", 2000))
    search_ad.add_argument("--d-bound", type=int, default=_env_int("FOURAP_D_BOUND", 20000))
    search_ad.add_argument("--single-form", action="store_true", help="Only require 16A^2+D^2 to be square")
    search_ad.set_defaults(handler=cmd_search_ad)

    euler = subparsers.add_parser("euler-search", parents=[common, searches],
                                  help="Search (x, y) with x^2+y^2 and x^2+4y^2 square")
    euler.add_argument("--x-bound", type=int, default=_env_int("FOURAP_X_BOUND", 10000))
    euler.add_argument("--y-bound", type=int, default=_env_int("FOURAP_Y_BOUND", 10000))
    euler.add_argument("--relaxed-parity", action="store_true", help="Allow any parity of x and y")
    euler.add_argument("--single-form", action="store_true", help="Only require x^2+y^2 to be square")
    euler.set_defaults(handler=cmd_euler_search)

    search3 = subparsers.add_parser("search3", parents=[common, searches],
                                    help="Search three integer squares in AP with difference class k")
    search3.add_argument("--k", type=int, required=True)
    search3.add_argument("--root-bound", type=int, default=_env_int("FOURAP_ROOT_BOUND", 10000))
    search3.set_defaults(handler=cmd_search3)

    curve = subparsers.add_parser("curve", help="The quartic and the curve 24A1")
    curve_commands = curve.add_subparsers(dest="curve_command", required=True)
    torsion = curve_commands.add_parser("torsion", parents=[common])
    torsion.set_defaults(handler=cmd_curve_torsion)
    mapping = curve_commands.add_parser("map", parents=[common])
    source = mapping.add_mutually_exclusive_group(required=True)
    source.add_argument("--from-quartic", nargs=2, type=parse_rational, metavar=("X", "Y"))
    source.add_argument("--from-weierstrass", nargs=2, type=parse_rational, metavar=("x", "y"))
    mapping.set_defaults(handler=cmd_curve_map)
    point_search = curve_commands.add_parser("search", parents=[common])
    point_search.add_argument("--height", type=int, default=_env_int("FOURAP_HEIGHT_BOUND", 1000))
    point_search.set_defaults(handler=cmd_curve_search)

    descend = subparsers.add_parser("descend", parents=[common], help="Run the descent from (A, D)")
    descend.add_argument("A", type=int)
    descend.add_argument("D", type=int)
    descend.set_defaults(handler=cmd_descend)

    check = subparsers.add_parser("check", parents=[common], help="Re-verify documents from FILE or stdin")
    check.add_argument("file", nargs="?", type=argparse.FileType("r"), default="-")
    check.set_defaults(handler=cmd_check)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    try:
        parser = build_parser()
    except DomainError as exc:
        print(f"fourap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    logging.basicConfig(level=args.log_level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("fourap").setLevel(args.log_level)

    try:
        return args.handler(args)
    except DomainError as exc:
        print(f"fourap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
