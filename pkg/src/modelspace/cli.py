"""Command line front end.

Exit codes: 0 success, 1 a checked claim failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import report
from .homology import NotACandidate, homology, pd_compatible
from .matchings import (
    CATALOG_HELP,
    DescriptorError,
    InvalidSystem,
    MatchingError,
    as_system,
    canonical_descriptor,
    catalog,
    trivial_extension,
)
from .pi1 import classify, presentation
from .quotient import build_quotient, components
from .survey import (
    LimitExceeded,
    Plan,
    run_cached,
    single_universe,
    run_records,
    two_simplex_universe,
    verify_front_face,
    verify_h1_membership,
    verify_h2_rank_zero,
    verify_pi1_cyclic,
    verify_pi1_trivial,
    verify_suspension,
)

CLAIMS = ("h1-membership", "pi1-cyclic", "h2-rank", "pi1-trivial", "suspension-shift", "front-face")


class UsageError(Exception):
    pass


def _add_universe(p: argparse.ArgumentParser) -> None:
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--single", action="store_true", help="single-simplex matchings")
    mode.add_argument("--two", action="store_true", help="two-simplex systems")
    p.add_argument("-n", type=int, required=True, help="simplex dimension")
    p.add_argument("--sign", choices=("same", "opp"), help="coefficient signs of the two simplices")
    p.add_argument("--dedup", action="store_true", help="drop systems equal up to swapping equal-sign simplices")


def _universe(args) -> list:
    if args.single:
        if args.sign or args.dedup:
            raise UsageError("--sign/--dedup only apply to --two")
        return single_universe(args.n)
    if not args.sign:
        raise UsageError("--two needs --sign same|opp")
    return two_simplex_universe(args.n, args.sign, args.dedup)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modelspace", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to standard error")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list matching descriptors")
    _add_universe(p)

    p = sub.add_parser("build", help="dump the quotient complex as JSON")
    p.add_argument("descriptor")

    p = sub.add_parser("homology", help="integral homology per component")
    p.add_argument("descriptor")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--pd", action="store_true", help="also test Poincare duality compatibility")
    p.add_argument("--torsion-pd", action="store_true", help="include the torsion condition in the duality test")

    p = sub.add_parser("pi1", help="fundamental group presentation and verdict per component")
    p.add_argument("descriptor")

    p = sub.add_parser("survey", help="homology and pi1 table over a matching family")
    _add_universe(p)
    p.add_argument("--format", choices=report.FORMATS, default="md")
    p.add_argument("--store", help="JSON-lines result cache")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("verify", help="check a claim over its matching universe")
    p.add_argument("claim", choices=CLAIMS)
    p.add_argument("descriptor", nargs="?")
    p.add_argument("-n", type=int, action="append", help="dimension(s) for pi1-trivial / h2-rank")
    p.add_argument("-k", type=int, action="append", help="front-face degree(s) or number of extensions")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--store", help="JSON-lines result cache")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("suspend", help="apply trivial extensions and compare homology")
    p.add_argument("descriptor")
    p.add_argument("-k", type=int, default=1)

    entries = "\n".join(f"  {name:15s} {text}" for name, text in CATALOG_HELP.items())
    p = sub.add_parser(
        "catalog",
        help="named systems",
        description="Named matching systems:\n" + entries,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("name", nargs="?")
    p.add_argument("-n", type=int, action="append", help="dimensions for parametrised entries when listing")
    return parser


def _records(args, systems, kind: str, n: int, sign: str | None = None):
    if getattr(args, "store", None):
        return run_cached(Plan(kind, n, args.store, sign, getattr(args, "dedup", False), args.jobs))
    return run_records(systems, args.jobs)


def cmd_enumerate(args) -> int:
    for s in _universe(args):
        print(canonical_descriptor(s, args.dedup))
    return 0


def cmd_build(args) -> int:
    print(json.dumps(build_quotient(args.descriptor).to_json()))
    return 0


def cmd_homology(args) -> int:
    system = as_system(args.descriptor)
    qc = build_quotient(system)
    profiles = [homology(c) for c in components(qc)]
    if args.format == "json":
        print(json.dumps([h.to_json() for h in profiles]))
    else:
        for h in profiles:
            print(h.text())
    if args.pd or args.torsion_pd:
        for h in profiles:
            try:
                verdict = pd_compatible(h, system.n, args.torsion_pd)
            except NotACandidate as exc:
                print(f"PD: not a candidate ({exc})")
                continue
            print(f"PD: {'compatible' if verdict else 'incompatible'} ({verdict.reason})")
    return 0


def cmd_pi1(args) -> int:
    qc = build_quotient(args.descriptor)
    for idx, comp in enumerate(components(qc)):
        p = presentation(comp)
        verdict = classify(p)
        print(f"component {idx}: {p.text()}")
        print(f"  simplified: {verdict.simplified.text()}")
        print(f"  pi1 = {verdict.text()} ({verdict.kind.value}), abelianization {verdict.abelianization}")
    return 0


def cmd_survey(args) -> int:
    systems = _universe(args)
    kind = "single" if args.single else "two"
    records = _records(args, systems, kind, args.n, args.sign)
    sys.stdout.write(report.emit_tables(records, args.format))
    return 0


def cmd_verify(args) -> int:
    claim = args.claim
    if claim in ("h1-membership", "pi1-cyclic"):
        records = []
        for sign in ("same", "opp"):
            records += _records(args, two_simplex_universe(3, sign), "two", 3, sign)
        rep = verify_h1_membership(records) if claim == "h1-membership" else verify_pi1_cyclic(records)
    elif claim == "h2-rank":
        # in even dimension only opposite signs admit a cancelling pairing
        n = (args.n or [6])[0]
        rep = verify_h2_rank_zero(_records(args, two_simplex_universe(n, "opp"), "two", n, "opp"))
    elif claim == "pi1-trivial":
        records = []
        for n in args.n or [3, 5, 7]:
            records += _records(args, single_universe(n), "single", n)
        rep = verify_pi1_trivial(records)
    elif claim == "suspension-shift":
        rep = verify_suspension(args.descriptor or catalog("dim5-exotic"), (args.k or [3])[0])
    else:
        if not args.descriptor:
            raise UsageError("front-face needs a matching descriptor")
        m = as_system(args.descriptor).as_matching()
        rep = verify_front_face(m, args.k or list(range(1, m.n - 1, 2)))
    print(json.dumps(rep.to_json(), indent=1) if args.format == "json" else rep.text())
    return 0 if rep.ok else 1


def cmd_suspend(args) -> int:
    m = as_system(args.descriptor).as_matching()
    rep = verify_suspension(m, args.k)
    ext = m
    for _ in range(args.k):
        ext = trivial_extension(ext)
    print(ext.descriptor())
    print(rep.details[ext.descriptor()])
    print(f"shift check: {'PASS' if rep.ok else 'FAIL'} ({rep.passed}/{rep.universe} steps)")
    return 0 if rep.ok else 1


def cmd_catalog(args) -> int:
    if args.name:
        try:
            print(catalog(args.name).descriptor())
        except KeyError as exc:
            raise UsageError(exc.args[0]) from exc
        return 0
    dims = args.n or [3, 4, 5, 6]
    print(f"dim3-exotic\t{catalog('dim3-exotic').descriptor()}")
    print(f"dim5-exotic\t{catalog('dim5-exotic').descriptor()}")
    for n in dims:
        if n % 2:
            print(f"standard-{n}\t{catalog(f'standard-{n}').descriptor()}")
        name = f"s1xs-{'odd' if n % 2 else 'even'}-{n}"
        print(f"{name}\t{catalog(name).descriptor()}")
    return 0


COMMANDS = {
    "enumerate": cmd_enumerate,
    "build": cmd_build,
    "homology": cmd_homology,
    "pi1": cmd_pi1,
    "survey": cmd_survey,
    "verify": cmd_verify,
    "suspend": cmd_suspend,
    "catalog": cmd_catalog,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, DescriptorError, MatchingError, InvalidSystem, LimitExceeded) as exc:
        print(f"modelspace {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
