"""Command-line front end.

Exit codes: 0 on success or a passing certificate, 1 on a failing
certificate, 2 on usage or input errors, 3 on scope and budget errors.
"""

import argparse
import json
import logging
import os
import sys
import tempfile
from dataclasses import replace

from sympy import isprime

from inertia_lab import __version__
from inertia_lab.certificate import Certificate, emit_certificate
from inertia_lab.config import DEFAULT_SETTINGS
from inertia_lab.cover import RamificationReport, WitnessSearchResult, parse_cover_spec, ramification_report, witness_search
from inertia_lab.errors import InertiaLabError, ParseError, SideConditionViolated, exit_code_for
from inertia_lab.inertia import TargetList, enumerate_ic_targets
from inertia_lab.perm import GroupClass, Perm, PermGroup, classify_alt_sym
from inertia_lab.theorems import replay

logger = logging.getLogger(__name__)

FIELD_DEGREES = {"Fp": 1, "Fp2": 2}
KINDS = {"A": GroupClass.ALTERNATING, "S": GroupClass.SYMMETRIC}


def _odd_prime(text):
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if p < 3 or not isprime(p):
        raise argparse.ArgumentTypeError(f"{p} is not an odd prime")
    return p


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{value} must be positive")
    return value


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="FILE", help="Write JSON output to FILE (atomically).")
    common.add_argument("--csv", metavar="DIR", help="Also export a CSV table into DIR.")
    common.add_argument("--budget", type=_positive, help="Search budget in tuples.")
    common.add_argument("--field", choices=sorted(FIELD_DEGREES), default="Fp", help="Field for witness searches.")
    common.add_argument("--workers", type=_positive, help="Worker processes for witness searches.")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging.")

    parser = argparse.ArgumentParser(prog="inertia-lab", description="Exact checks of inertia-group realizations.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze-cover", parents=[common], help="Report ramification of a cover spec.")
    analyze.add_argument("--spec", required=True, metavar="FILE", help="Cover spec in key=value text.")

    search = sub.add_parser("search-witness", parents=[common], help="Exhaustive search for cover points.")
    search.add_argument("params", nargs="+", metavar="KEY=VALUE", help="p, t, s, r and optionally n, m.")

    verify = sub.add_parser("verify-theorem", parents=[common], help="Replay a theorem into a certificate.")
    verify.add_argument("--id", required=True, dest="theorem_id", help="Theorem, corollary or gpwic:<check> id.")
    verify.add_argument("--p", required=True, type=_odd_prime)
    verify.add_argument("--d", type=_positive)
    verify.add_argument("--t", type=_positive)
    verify.add_argument("--format", choices=["text", "json"], default="text", help="Format printed to stdout.")

    targets = sub.add_parser("enumerate-targets", parents=[common], help="List inertia shapes to realize.")
    targets.add_argument("--d", required=True, type=_positive)
    targets.add_argument("--p", required=True, type=_odd_prime)
    targets.add_argument("--kind", choices=sorted(KINDS), default="A")

    group = sub.add_parser("group", parents=[common], help="Order and structure of a permutation group.")
    group.add_argument("--d", required=True, type=_positive)
    group.add_argument("perms", nargs="+", metavar="PERM", help="Generators in cycle notation, e.g. (1 2 3).")
    return parser


def parse_args(argv=None):
    """Parses argv strictly; usage errors exit with code 2."""
    return build_parser().parse_args(argv)


def _settings(args):
    settings = DEFAULT_SETTINGS
    if args.budget is not None:
        settings = replace(settings, search_budget=args.budget)
    if args.workers is not None:
        settings = replace(settings, workers=args.workers)
    if args.csv:
        settings = replace(settings, output_directory=args.csv)
    return settings


def _search_params(items):
    params = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise ParseError(f"expected KEY=VALUE, got {item!r}")
        params[key] = value
    try:
        p, t, s, r = (int(params.pop(key)) for key in ("p", "t", "s", "r"))
        n = tuple(int(x) for x in params.pop("n").split(",")) if "n" in params else None
        m = tuple(int(x) for x in params.pop("m").split(",")) if "m" in params else None
    except (KeyError, ValueError) as e:
        raise ParseError(f"bad search parameters: {e}") from e
    if params:
        raise ParseError(f"unknown search parameters: {', '.join(sorted(params))}")
    return dict(p=p, t=t, s=s, r=r, n=n, m=m)


def _group_summary(G):
    return {
        "degree": G.degree,
        "generators": [str(g) for g in G.generators],
        "order": G.order(),
        "transitive": G.is_transitive(),
        "primitive": G.is_primitive(),
        "class": classify_alt_sym(G).value,
        "orbits": [list(orbit) for orbit in G.orbits()],
    }


def report(result, fmt="text"):
    """
    Renders a result as UTF-8 text or JSON ending in a newline.

    Args:
        result: A Certificate, RamificationReport, WitnessSearchResult,
            TargetList or group summary dict.
        fmt (str): "text" or "json".

    Returns:
        bytes: The rendered output.
    """
    if isinstance(result, Certificate):
        return emit_certificate(result, fmt)
    if isinstance(result, RamificationReport):
        text, payload = result.to_text(), result.to_dict()
    elif isinstance(result, WitnessSearchResult):
        payload = {"visited": result.visited, "witnesses": [w.to_text() for w in result.witnesses]}
        if result.witnesses:
            lines = [str(w) for w in result.witnesses]
            lines.append(f"{len(result.witnesses)} witnesses in {result.visited} tuples")
            text = "\n".join(lines)
        else:
            text = "no witnesses found"
    elif isinstance(result, TargetList):
        payload = [
            {"shape": str(e.shape), "status": e.status.value, "note": str(e)} for e in result.entries
        ]
        text = "\n".join(str(e) for e in result.entries)
    else:
        payload = result
        text = "\n".join(f"{key}: {value}" for key, value in result.items())
    if fmt == "json":
        text = json.dumps(payload, indent=2, ensure_ascii=False)
    elif fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    return (text + "\n").encode("utf-8")


def write_atomic(path, data):
    """Writes bytes to path through a temporary file in the same directory and a rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".inertia-lab-", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _execute(args, settings):
    """Runs the subcommand and returns (result, exit code)."""
    if args.command == "analyze-cover":
        try:
            with open(args.spec, encoding="utf-8") as handle:
                text = handle.read()
        except OSError as e:
            raise ParseError(f"cannot read {args.spec}: {e}") from e
        return ramification_report(parse_cover_spec(text)), 0
    if args.command == "search-witness":
        params = _search_params(args.params)
        result = witness_search(**params, field_degree=FIELD_DEGREES[args.field], settings=settings)
        return result, 0
    if args.command == "verify-theorem":
        cert = replay(args.theorem_id, args.p, d=args.d, t=args.t, settings=settings)
        return cert, 0 if cert.passed else 1
    if args.command == "enumerate-targets":
        return enumerate_ic_targets(args.d, args.p, KINDS[args.kind]), 0
    perms = [Perm.parse(text, args.d) for text in args.perms]
    return _group_summary(PermGroup(args.d, perms, settings)), 0


def run(args):
    """
    Executes a parsed invocation.

    Returns:
        int: The exit code.
    """
    settings = _settings(args)
    try:
        result, code = _execute(args, settings)
    except SideConditionViolated as e:
        reason = {"error": type(e).__name__, "theorem": e.theorem, "p": e.p, "reason": e.reason}
        print(json.dumps(reason), file=sys.stderr)
        return exit_code_for(e)
    except InertiaLabError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return exit_code_for(e)

    fmt = getattr(args, "format", "text")
    sys.stdout.write(report(result, fmt).decode("utf-8"))
    if args.json:
        write_atomic(args.json, report(result, "json"))
        logger.info("wrote %s", args.json)
    if args.csv and hasattr(result, "save_to_csv"):
        path = result.save_to_csv(directory=args.csv)
        logger.info("wrote %s", path)
    return code


def main(argv=None):
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(asctime)s - %(levelname)s - %(message)s", stream=sys.stderr)
    return run(args)


# Example usage:
# main(["verify-theorem", "--id", "A_p+1", "--p", "5"])
# main(["enumerate-targets", "--d", "6", "--p", "5"])
