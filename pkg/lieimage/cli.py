"""
Command line frontend: ``python -m lieimage {image,verify,census,ktuple,
parse}``. Exit codes: 0 on success, 1 when a check failed, 2 on usage or
domain errors.
"""
import argparse
import json
import sys
from typing import Any, Callable, Optional, Sequence

from . import census, engine, genset, logger, settings
from .enums import (Family, OrbitKind, OutputFormat, SearchGoal, Status,
                    Strategy)
from .errors import LieImageError
from .gf import (FieldDescriptor, field_from_order, make_field,
                 parse_modulus)
from .lieword import (LieWord, arity, build_family, normalize,
                      params_from_mapping, parse, render, search_params)
from .paths import DEFAULTS_PATH
from .version import __version__

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

_PARAM_KEYS = {"i", "j", "pairs", "alphas", "betas", "zero"}
_OPTION_KEYS = {"gamma", "c", "t", "part", "det", "ceiling", "d"}


def _split_key_values(text: str) -> dict[str, list[str]]:
    # "alphas=4,4,betas=2,2": bare tokens continue the previous key
    table: dict[str, list[str]] = {}
    key_: Optional[str] = None
    for token in (t.strip() for t in text.split(",")):
        if not token:
            continue
        if "=" in token:
            key_, value = (part.strip() for part in token.split("=", 1))
            table[key_] = [value]
        elif key_ is None:
            raise ValueError(f"Expected key=value, got {token!r}")
        else:
            table[key_].append(token)
    return table


def parse_params(
    text: Optional[str]
) -> tuple[dict[str, Any], dict[str, int]]:
    """
    Split a ``key=value`` list into family parameters and statement
    options.

    :param text: E.g. ``"i=4,j=2,pairs=2:1"`` or ``"gamma=3,c=6"``.
    :type text: Optional[str]
    :raises ValueError: Unknown keys or malformed values.
    :return: The parameter table (ready for `params_from_mapping`) and the
    integer options.
    :rtype: tuple[dict[str, Any], dict[str, int]]
    """
    mapping: dict[str, Any] = {}
    options: dict[str, int] = {}
    if not text:
        return mapping, options
    for key_, values in _split_key_values(text).items():
        if key_ in _OPTION_KEYS or key_ in ("i", "j"):
            if len(values) != 1:
                raise ValueError(f"{key_} takes a single integer")
            target = options if key_ in _OPTION_KEYS else mapping
            target[key_] = int(values[0])
        elif key_ in ("alphas", "betas"):
            mapping[key_] = tuple(int(v) for v in values)
        elif key_ == "pairs":
            mapping[key_] = tuple(
                tuple(int(x) for x in v.split(":")) for v in values
            )
            if any(len(pair) != 2 for pair in mapping[key_]):
                raise ValueError("pairs are written i:j")
        elif key_ == "zero":
            zero = tuple(int(x) for x in values[0].split(":"))
            if len(values) != 1 or len(zero) != 4:
                raise ValueError("zero is written alpha0:beta0:i0:j0")
            mapping[key_] = zero
        else:
            raise ValueError(
                f"Unknown parameter {key_!r}, expected one of "
                f"{', '.join(sorted(_PARAM_KEYS | _OPTION_KEYS))}"
            )
    return mapping, options


def infer_params(mapping: dict[str, Any]) -> Optional[Any]:
    """
    Family parameters from the keys present: alphas for w_{m,n} (w0 with
    zero), pairs for w_n, a bare i and j for Engel words.
    """
    if not mapping:
        return None
    if "alphas" in mapping:
        family = Family.w0mn if "zero" in mapping else Family.wmn
        return params_from_mapping(family, mapping)
    if "pairs" in mapping:
        return params_from_mapping(Family.wn, mapping)
    return params_from_mapping(Family.engel_diff, mapping)


def field_from_args(args: argparse.Namespace) -> FieldDescriptor:
    if args.p is not None:
        modulus = None if args.modulus is None \
            else parse_modulus(args.modulus)
        return make_field(args.p, args.r, modulus)
    if args.q is None:
        raise ValueError("Give --q or --p")
    return field_from_order(int(args.q))


def _q_list(text: Optional[str]) -> Optional[list[int]]:
    if text is None:
        return None
    return [int(q) for q in text.split(",") if q.strip()]


def _print_json(data: Any) -> None:
    print(json.dumps(data, indent=2))


# Subcommands

def _family_word(
    family: Family, field: FieldDescriptor, text: Optional[str]
) -> tuple[LieWord, Optional[Any]]:
    mapping, options = parse_params(text)
    if mapping:
        params = params_from_mapping(family, mapping)
        if family in (Family.wn, Family.wmn, Family.w0mn):
            params = census.family_params(family, params)
    elif family == Family.wmn:
        params = search_params(
            SearchGoal.odd_gamma, field, gamma=options.get("gamma"),
            c=options.get("c", 2),
        )
    elif family == Family.w0mn:
        params = search_params(
            SearchGoal.even_gamma, field, gamma=options.get("gamma")
        )
    else:
        raise ValueError(f"The {family} family needs --params")
    return build_family(family, params), params


def cmd_image(args: argparse.Namespace) -> int:
    field = field_from_args(args)
    params = None
    if args.word is not None:
        word = parse(args.word)
    else:
        word, params = _family_word(Family(args.family), field, args.params)
    closed_params = params if args.family in ("wn", "wmn", "w0mn") else None
    strategy = Strategy(args.strategy)
    image = engine.compute_image(
        word, field, strategy, closed_params, args.pivot,
        jobs=args.jobs,
    )

    match OutputFormat(args.format):
        case OutputFormat.json:
            print(engine.image_to_json(image))
        case OutputFormat.csv:
            if strategy == Strategy.closed:
                assert closed_params is not None
                spectrum = engine.closed_form_spectrum(
                    Family(args.family), closed_params, field
                )
            else:
                spectrum = engine.det_spectrum(
                    word, field, strategy, args.pivot, jobs=args.jobs
                )
            sys.stdout.write(engine.spectrum_to_csv(spectrum))
        case _:
            print(image.text())
            kinds = image.kinds()
            print(", ".join(f"{kind}: {kinds[kind]}" for kind in OrbitKind))
            print(f"elements: {image.element_count()}")
    return EXIT_OK


def _verify_reports(
    args: argparse.Namespace
) -> list[census.VerificationReport]:
    catalogue = census.PropositionCatalogue()
    if args.props == "all":
        ids = catalogue.ids()
    else:
        ids = [census.proposition_id(p.strip())
               for p in args.props.split(",") if p.strip()]
    qs = _q_list(args.q)
    strategy = Strategy(args.strategy)
    mapping, options = parse_params(args.params)
    if not mapping and not options:
        return census.run_suite(ids, qs, strategy, args.jobs, catalogue)

    params = infer_params(mapping)
    qs = settings.current().q_list if qs is None else qs
    reports = []
    for prop_id in ids:
        fields: Sequence[Optional[FieldDescriptor]] = (
            [field_from_order(q) for q in qs] if catalogue.swept(prop_id)
            else [None]
        )
        for field in fields:
            reports.append(census.verify(
                prop_id, field, params, strategy, args.jobs, **options
            ))
    return reports


def cmd_verify(args: argparse.Namespace) -> int:
    reports = _verify_reports(args)
    if OutputFormat(args.format) == OutputFormat.json:
        _print_json([report.to_json() for report in reports])
    else:
        for report in reports:
            print(report.text())
        statuses = [report.status for report in reports]
        print(", ".join(
            f"{statuses.count(status)} {status}" for status in Status
        ))
    if any(report.status == Status.failed for report in reports):
        return EXIT_FAILED
    return EXIT_OK


def cmd_census(args: argparse.Namespace) -> int:
    field = field_from_args(args)
    reports: list[census.CountingReport] = []
    extra: list[dict[str, Any]] = []
    if args.orbits or not (args.salpha or args.ns or args.missed_values):
        reports.append(census.orbit_census(field))
    if args.salpha:
        reports.append(census.s_alpha_table(field))
    if args.ns:
        reports += [
            census.n_s(field.element(a)) for a in range(1, field.q)
        ]
    if args.missed_values:
        _, options = parse_params(args.missed_values)
        d = options.get("d")
        if d is None:
            raise ValueError("--missed-values takes d=<exponent>")
        extra.append({
            "q": field.q,
            "name": f"missed values of x^2(1-4x)^2 y^{d}",
            "count": census.missed_values_count(field, d),
        })

    if OutputFormat(args.format) == OutputFormat.json:
        _print_json([report.to_json() for report in reports] + extra)
    else:
        for report in reports:
            print(report.text())
        for entry in extra:
            print(f"{entry['name']} over F_{entry['q']}: {entry['count']}")
    return EXIT_OK if all(r.agrees for r in reports) else EXIT_FAILED


def cmd_ktuple(args: argparse.Namespace) -> int:
    field = field_from_args(args)
    report = genset.tuple_orbit_census(field, args.k)
    generated: Optional[bool] = None
    if args.one_and_a_half:
        generated, _ = genset.is_one_and_a_half_generated(field, args.jobs)

    if OutputFormat(args.format) == OutputFormat.json:
        data = report.to_json()
        if generated is not None:
            data["one_and_a_half_generated"] = generated
        _print_json(data)
    else:
        print(report.text())
        if generated is not None:
            verdict = "yes" if generated else "no"
            print(f"one-and-a-half generated: {verdict}")
    if not report.free or generated is False:
        return EXIT_FAILED
    return EXIT_OK


def cmd_parse(args: argparse.Namespace) -> int:
    word = parse(args.text)
    if args.normalize:
        word = normalize(word)
    if OutputFormat(args.format) == OutputFormat.json:
        _print_json(
            {"word": render(word), "arity": arity(word), "ast": repr(word)}
        )
    else:
        print(render(word))
        print(f"arity: {arity(word)}")
        print(repr(word))
    return EXIT_OK


# Argument parsing

def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML settings file")
    common.add_argument("--log-level", default=None,
                        help="DEBUG, INFO, WARNING, ...")
    common.add_argument("--jobs", type=int, default=None,
                        help="worker processes")
    common.add_argument("--budget", type=int, default=None,
                        help="brute force evaluation cap")
    common.add_argument("--format", default=OutputFormat.pretty,
                        choices=[str(f) for f in OutputFormat])
    return common


def _field_parser() -> argparse.ArgumentParser:
    field = argparse.ArgumentParser(add_help=False)
    field.add_argument("--q", help="field order")
    field.add_argument("--p", type=int, help="characteristic")
    field.add_argument("--r", type=int, default=1, help="extension degree")
    field.add_argument("--modulus",
                       help="little-endian coefficients, e.g. 1,0,1")
    return field


def build_parser() -> argparse.ArgumentParser:
    common, field = _common_parser(), _field_parser()
    parser = argparse.ArgumentParser(
        prog="lieimage",
        description="Images of Lie word maps on sl2 over finite fields.",
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    image = commands.add_parser("image", parents=[common, field],
                                help="compute a word image")
    source = image.add_mutually_exclusive_group(required=True)
    source.add_argument("--word", help='e.g. "ad(x1, 2, x2) - [x1, x2]"')
    source.add_argument("--family", choices=[str(f) for f in Family])
    image.add_argument("--params", help="key=value list for --family")
    image.add_argument("--strategy", default=Strategy.reduced,
                       choices=[str(s) for s in Strategy])
    image.add_argument("--pivot", type=int, default=1,
                       help="variable restricted to representatives")
    image.set_defaults(handler=cmd_image)

    verify = commands.add_parser("verify", parents=[common],
                                 help="run verification suites")
    verify.add_argument("--props", default="all",
                        help="comma separated ids, or all")
    verify.add_argument("--q", help="comma separated field orders")
    verify.add_argument("--params", help="key=value parameters and options")
    verify.add_argument("--strategy", default=Strategy.reduced,
                        choices=[str(Strategy.brute),
                                 str(Strategy.reduced)])
    verify.set_defaults(handler=cmd_verify)

    census_ = commands.add_parser("census", parents=[common, field],
                                  help="counting results against oracles")
    census_.add_argument("--orbits", action="store_true")
    census_.add_argument("--salpha", action="store_true")
    census_.add_argument("--ns", action="store_true",
                         help="N_S(a) for every nonzero a")
    census_.add_argument("--missed-values", metavar="d=D")
    census_.set_defaults(handler=cmd_census)

    ktuple = commands.add_parser("ktuple", parents=[common, field],
                                 help="generating tuples and their orbits")
    ktuple.add_argument("--k", type=int, default=2)
    ktuple.add_argument("--one-and-a-half", action="store_true")
    ktuple.set_defaults(handler=cmd_ktuple)

    parse_ = commands.add_parser("parse", parents=[common],
                                 help="echo the syntax tree of a word")
    parse_.add_argument("text")
    parse_.add_argument("--normalize", action="store_true",
                        help="expand ad(...) into brackets")
    parse_.set_defaults(handler=cmd_parse)
    return parser


def _apply_settings(args: argparse.Namespace) -> None:
    loaded = settings.Settings.load(args.config or DEFAULTS_PATH)
    if args.budget is not None:
        loaded.budget = args.budget
    if args.jobs is not None:
        loaded.jobs = args.jobs
    settings.use(loaded)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logger.configure_logger(level=args.log_level)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        _apply_settings(args)
        return handler(args)
    except (LieImageError, ValueError, KeyError, OSError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    finally:
        engine.shutdown_pool()
