"""Command-line front end: ``hkq <subcommand> ...``."""

import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import NoReturn

from pydantic import BaseModel

from hkq import __version__
from hkq.algebra import parse_rational
from hkq.arrangement import Arrangement, fixture, load_arrangement
from hkq.cogen import (
    char_decompose,
    decomposition_volume_identity,
    verify_char_decomposition,
    verify_theorem_int,
    verify_toric,
    volume_polynomial,
)
from hkq.config import settings
from hkq.core import extended_core, flow_graph
from hkq.exceptions import (
    InconsistencyError,
    InputError,
    ParseError,
    PreconditionError,
)
from hkq.groebner import PresentedRing
from hkq.hyperpolygon import (
    PolygonSpec,
    abelian_matches_hypertoric,
    abelian_presentation,
    core_fixed_report,
    core_presentation,
    fixed_report,
    hp_low_degree_check,
    hp_matches_konno,
    hp_membership,
    hp_presentation,
    intersection_form_n5,
    konno_presentation,
    load_polygon,
    polygon_fixture,
    upsilon_check,
    validate_alpha,
    verify_hp_colon,
    verify_lemma_jt,
    w_action_preserves,
)
from hkq.hypertoric import FLAVORS, kirwan_presentation
from hkq.os2 import (
    annihilator_fingerprint,
    is_free_over_x,
    os2_presentation,
    os_specialize,
)
from hkq.report import (
    cogen_report,
    emit_report,
    flow_dot,
    hypertoric_report,
    os2_report,
    polygon_report,
    render_text,
)
from hkq.verify import SuiteResult, run_suite, select_checks

logger = logging.getLogger(__name__)

EXIT_INPUT = 1
EXIT_PRECONDITION = 2
EXIT_INCONSISTENCY = 3
EXIT_UNEXPECTED = 4


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit 1 with a single ``Error:`` line."""

    def error(self, message: str) -> NoReturn:
        print(f"Error: usage: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


# ── Input helpers ──────────────────────────────────────────────────────────────


def parse_subset(text: str) -> frozenset[int]:
    """Parse a 1-based index set such as ``1,4`` or ``{1,4}`` into 0-based indices.

    Raises:
        ParseError: On anything other than positive integers.
    """
    body = text.strip().removeprefix("{").removesuffix("}").strip()
    if not body:
        return frozenset()
    indices = []
    for token in body.split(","):
        token = token.strip()
        if not token.isdigit() or int(token) < 1:
            raise ParseError(f"Bad index {token!r} in {text!r}")
        indices.append(int(token) - 1)
    return frozenset(indices)


def _in_range(S: frozenset[int], n: int, text: str) -> frozenset[int]:
    if any(i >= n for i in S):
        raise ParseError(f"Index set {text!r} exceeds n = {n}")
    return S


def _load_arrangement(source: str) -> Arrangement:
    """A JSON file path, or the name of a bundled fixture."""
    if Path(source).expanduser().is_file():
        return load_arrangement(source)
    return fixture(source)


def _load_polygon(source: str) -> PolygonSpec:
    if Path(source).expanduser().is_file():
        return load_polygon(source)
    return polygon_fixture(source)


# ── Subcommands ────────────────────────────────────────────────────────────────


def run_hypertoric(args: argparse.Namespace) -> tuple[BaseModel, str | None]:
    arr = _load_arrangement(args.arrangement)
    flavors = args.flavor or ["HTdS1"]
    presentations = [kirwan_presentation(arr, f, field=args.field) for f in flavors]
    core = flow = None
    dot = None
    if args.core:
        core = extended_core(arr)
        flow = flow_graph(arr, core)
        dot = flow_dot(flow, arr.name or "flow")
    return hypertoric_report(arr, presentations, core, flow), dot


def run_cogen(args: argparse.Namespace) -> tuple[BaseModel, str | None]:
    arr = _load_arrangement(args.arrangement)
    A = _in_range(parse_subset(args.A), arr.n, args.A)
    r = None
    if args.offsets is not None:
        r = [parse_rational(v.strip()) for v in args.offsets.split(",")]
    volumes = [volume_polynomial(arr, A, r, seed=args.seed)]
    decomposition = None
    checks: dict[str, bool] = {}
    if args.decompose or "char" in args.verify or "identity" in args.verify:
        decomposition = char_decompose(arr, r, A)
    for name in args.verify:
        if name == "char":
            assert decomposition is not None
            verify_char_decomposition(arr, decomposition, seed=args.seed)
            checks["char"] = True
        elif name == "identity":
            assert decomposition is not None
            checks["identity"] = decomposition_volume_identity(arr, decomposition)[0]
        elif name == "toric":
            checks["toric"] = verify_toric(arr, r)
        elif name == "int":
            result = verify_theorem_int(arr)
            checks["int"] = result.holds
            checks["int_presentation"] = result.matches_presentation
    return cogen_report(arr, volumes, decomposition, checks), None


def run_os2(args: argparse.Namespace) -> tuple[BaseModel, str | None]:
    source = args.arrangement_option or args.arrangement
    if source is None:
        raise ParseError("os2 needs an arrangement file or fixture name")
    arr = _load_arrangement(source)
    R = os2_presentation(arr)
    specialization = None
    if args.specialize != "none":
        specialization = os_specialize(R, int(args.specialize))
    fingerprint = None
    if args.fingerprint_degree is not None:
        target = specialization or R
        fingerprint = annihilator_fingerprint(target, args.fingerprint_degree)
    report = os2_report(
        arr,
        R,
        is_free_over_x(R),
        specialization,
        fingerprint,
        args.fingerprint_degree,
    )
    return report, None


def _polygon_ring(spec: PolygonSpec, choice: str) -> PresentedRing:
    if choice == "hp":
        return hp_presentation(spec)
    if choice == "konno":
        return konno_presentation(spec)
    if choice == "abelian":
        return abelian_presentation(spec)
    kind, _, subset = choice.partition(":")
    if kind in ("core", "core0") and subset:
        S = _in_range(parse_subset(subset), spec.n, subset)
        return core_presentation(spec, S, equivariant=kind == "core").presentation
    raise ParseError(f"Unknown ring {choice!r}; expected hp, konno, abelian or core:S")


def _polygon_check(spec: PolygonSpec, choice: str) -> dict[str, bool]:
    kind, _, subset = choice.partition(":")
    if kind == "hp":
        return {"hp": hp_membership(spec), "hp_low_degree": hp_low_degree_check(spec)}
    if kind == "colon":
        return {"colon": verify_hp_colon(spec)}
    if kind == "konno":
        return {"konno": hp_matches_konno(spec)}
    if kind == "abelian":
        return {
            "abelian": abelian_matches_hypertoric(spec),
            "weyl": w_action_preserves(spec),
        }
    if kind == "jt":
        S = _in_range(parse_subset(subset or "1,2"), spec.n, subset)
        check = verify_lemma_jt(spec, S)
        return {
            "jt_intersection": check.intersection_equal,
            "jt_contained": check.contained,
            "jt_kernel": check.kernel_equal,
        }
    raise ParseError(
        f"Unknown check {choice!r}; expected hp, colon, konno, abelian or jt:S"
    )


def run_polygon(args: argparse.Namespace) -> tuple[BaseModel, str | None]:
    spec, family = validate_alpha(_load_polygon(args.polygon))
    rings = [_polygon_ring(spec, choice) for choice in args.ring]
    checks: dict[str, bool] = {}
    upsilon = None
    for choice in args.verify:
        if choice == "upsilon":
            upsilon = upsilon_check(spec)
            checks["upsilon"] = upsilon.holds
            continue
        checks.update(_polygon_check(spec, choice))
    fixed = None
    if args.fixed is not None:
        if args.fixed:
            S = _in_range(parse_subset(args.fixed), spec.n, args.fixed)
            fixed = core_fixed_report(spec, S)
        else:
            fixed = fixed_report(spec)
    form = None
    if args.intersection_form is not None:
        text = args.intersection_form
        S = _in_range(parse_subset(text), spec.n, text)
        form = intersection_form_n5(spec, S)
    report = polygon_report(
        spec,
        family if args.short_sets else None,
        rings,
        checks,
        fixed,
        form,
        upsilon,
    )
    return report, None


def run_verify(args: argparse.Namespace) -> tuple[BaseModel, str | None]:
    checks = select_checks(args.only, skip_slow=args.skip_slow)
    result = asyncio.run(
        run_suite(checks, seed=args.seed, max_concurrency=args.max_concurrency)
    )
    return result, None


def _print_suite(result: SuiteResult) -> None:
    width = max((len(r.name) for r in result.results), default=4)
    for r in result.results:
        verdict = "PASS" if r.passed else "FAIL"
        print(f"  {r.name:<{width}}  {verdict}  {r.seconds:8.2f}s  {r.detail}")
    print(f"\n{result.passed}/{result.total} passed (seed {result.seed})")


# ── Parser ─────────────────────────────────────────────────────────────────────


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="hkq",
        description="Exact cohomology rings of hyperkähler quotients.",
    )
    parser.add_argument("--version", action="version", version=f"hkq {__version__}")
    common = _Parser(add_help=False)
    common.add_argument(
        "--seed",
        type=int,
        default=settings.hkq_seed,
        help="Sampling seed. Default: HKQ_SEED or %(default)r.",
    )
    common.add_argument(
        "--output",
        default=None,
        help="Write <stem>.json and <stem>.txt (plus <stem>.dot for flows).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "hypertoric", parents=[common], help="Presentations, core and flow graph."
    )
    p.add_argument("arrangement", help="Arrangement JSON file or fixture name.")
    p.add_argument(
        "--flavor",
        action="append",
        choices=FLAVORS,
        help="Ring flavor; repeatable. Default: HTdS1.",
    )
    p.add_argument("--field", choices=["QQ", "GF2"], default="QQ")
    p.add_argument(
        "--core", action="store_true", help="Extended core, fixed locus and flow."
    )
    p.set_defaults(handler=run_hypertoric)

    p = sub.add_parser("cogen", parents=[common], help="Volume polynomials.")
    p.add_argument("arrangement", help="Arrangement JSON file or fixture name.")
    p.add_argument("--A", default="", help="Sign subset, 1-based, e.g. 1,4.")
    p.add_argument("--offsets", default=None, help="Comma-separated p/q offsets.")
    p.add_argument(
        "--decompose", action="store_true", help="Characteristic-function terms."
    )
    p.add_argument(
        "--verify",
        action="append",
        default=[],
        choices=["char", "identity", "toric", "int"],
        help="Run a check; repeatable.",
    )
    p.set_defaults(handler=run_cogen)

    p = sub.add_parser("os2", parents=[common], help="Equivariant Orlik–Solomon rings.")
    p.add_argument(
        "arrangement", nargs="?", help="Arrangement JSON file or fixture name."
    )
    p.add_argument(
        "--arrangement",
        dest="arrangement_option",
        default=None,
        metavar="FILE",
        help="Same as the positional argument.",
    )
    p.add_argument("--specialize", choices=["none", "0", "1"], default="none")
    p.add_argument("--fingerprint-degree", type=int, default=None)
    p.set_defaults(handler=run_os2)

    p = sub.add_parser("polygon", parents=[common], help="Hyperpolygon spaces.")
    p.add_argument("polygon", help="Polygon JSON file or fixture name.")
    p.add_argument("--short-sets", action="store_true")
    p.add_argument(
        "--ring",
        action="append",
        default=[],
        help="hp, konno, abelian, core:S or core0:S (x = 0); repeatable.",
    )
    p.add_argument(
        "--verify",
        action="append",
        default=[],
        help="hp, colon, konno, abelian, upsilon or jt:S; repeatable.",
    )
    p.add_argument(
        "--intersection-form", default=None, metavar="S", help="n = 5 only."
    )
    p.add_argument(
        "--fixed",
        nargs="?",
        const="",
        default=None,
        metavar="S",
        help="Fixed components of M, or of the core component U_S.",
    )
    p.set_defaults(handler=run_polygon)

    p = sub.add_parser(
        "verify-paper",
        aliases=["verify-examples"],
        parents=[common],
        help="Bundled example suite.",
    )
    p.add_argument("--skip-slow", action="store_true")
    p.add_argument("--only", action="append", default=None, metavar="CHECK")
    p.add_argument(
        "--max-concurrency",
        type=int,
        default=settings.max_concurrency,
        help="Checks run simultaneously. Default: %(default)r.",
    )
    p.set_defaults(handler=run_verify)
    return parser


def _configure_logging() -> None:
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.INFO),
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
        stream=sys.stderr,
    )
    if settings.log_file:
        handler = logging.FileHandler(settings.log_file, encoding="utf-8")
        handler.setFormatter(
            logging.Formatter("%(asctime)s %(name)s %(levelname)s %(message)s")
        )
        logging.getLogger().addHandler(handler)


def _fail(kind: str, error: object, code: int) -> NoReturn:
    message = " ".join(str(error).split())
    print(f"Error: {kind}: {message}", file=sys.stderr)
    sys.exit(code)


def main() -> None:
    """Entry point for the hkq CLI."""
    args = build_parser().parse_args()
    _configure_logging()
    logger.info("Running %s", args.command)

    try:
        report, dot = args.handler(args)
        if args.output:
            emit_report(report, args.output, dot)
    except InputError as e:
        _fail(type(e).__name__, e, EXIT_INPUT)
    except PreconditionError as e:
        _fail(type(e).__name__, e, EXIT_PRECONDITION)
    except InconsistencyError as e:
        _fail(type(e).__name__, e, EXIT_INCONSISTENCY)
    except Exception as e:  # noqa: BLE001
        logger.error("Unexpected failure in %s: %r", args.command, e)
        logger.debug("Traceback", exc_info=True)
        _fail("UnexpectedError", f"{type(e).__name__}: {e}", EXIT_UNEXPECTED)

    if isinstance(report, SuiteResult):
        _print_suite(report)
        sys.exit(0 if report.failed == 0 else EXIT_INCONSISTENCY)
    print(render_text(report))
    sys.exit(0)
