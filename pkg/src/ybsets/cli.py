"""``ybsets`` command line.

Reports are ``key: value`` lines in a fixed order; ``--json`` prints the same
data as one JSON object. Exit codes: 0 success or PASS, 1 FAIL or a failed
``--require``, 2 invalid input, 3 budget or size limit exceeded.

The default orbit budget can be overridden with the ``YBSETS_BUDGET``
environment variable; ``--budget`` takes precedence over both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import ceil
from pathlib import Path

from sympy import isprime

from . import classify, constructions, io, orbits, transforms
from .errors import InvalidInput, LimitExceeded
from .qset import is_braided, is_involutive, is_non_degenerate, is_sd, is_square_free

BUDGET_ENV = "YBSETS_BUDGET"
THEOREMS = ("min-dim", "sf-min-dim", "minimal-classification", "prime-dihedral")


class Failed(Exception):
    """A verification or ``--require`` check did not hold; exit code 1."""


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def _emit(report: dict, args, out, expand: dict | None = None) -> None:
    """Print ``report``. ``expand`` maps a list-valued key to the key used for
    one line per item in text mode, with each item pre-formatted."""
    if args.json:
        out.write(json.dumps(report, separators=(",", ":")) + "\n")
        return
    expand = expand or {}
    for key, value in report.items():
        if key in expand:
            line_key, fmt = expand[key]
            for item in value:
                out.write(f"{line_key}: {fmt(item)}\n")
        else:
            out.write(f"{key}: {_fmt(value)}\n")


def _budget(args) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    if env is None:
        return orbits.DEFAULT_BUDGET
    try:
        value = int(env)
    except ValueError:
        raise InvalidInput(f"{BUDGET_ENV}={env!r} is not an integer") from None
    if value < 1:
        raise InvalidInput(f"{BUDGET_ENV} must be positive")
    return value


def _suffixed(path: str, index: int) -> Path:
    p = Path(path)
    return p.with_name(f"{p.stem}-{index}{p.suffix}")


# --- subcommands ----------------------------------------------------------


def cmd_check(args, out):
    qs = io.read_solution(args.file)
    nd = is_non_degenerate(qs)
    report = {
        "n": qs.n,
        "non_degenerate": nd,
        "involutive": is_involutive(qs),
        "square_free": is_square_free(qs),
        "sd": is_sd(qs),
        "braided": is_braided(qs),
        "two_cancellative": orbits.is_2_cancellative(qs),
        "maximality": orbits.satisfies_maximality(qs),
    }
    if nd:
        report["indecomposable"] = transforms.is_indecomposable(qs)
    _emit(report, args, out)
    for prop in args.require or ():
        if prop not in report or report[prop] is not True:
            raise Failed(f"required property {prop} does not hold")


def cmd_orbits(args, out):
    qs = io.read_solution(args.file)
    part = orbits.orbit_partition(qs, args.m, budget=_budget(args))
    report = {"n": qs.n, "m": args.m, "orbit_count": part.orbit_count,
              "orbit_sizes": list(part.size_multiset())}
    expand = None
    if args.list:
        report["orbits"] = [[list(t) for t in orb] for orb in part.orbits()]
        expand = {"orbits": ("orbit", lambda orb: " ".join(
            "(" + ",".join(map(str, t)) + ")" for t in orb))}
    _emit(report, args, out, expand)


def cmd_growth(args, out):
    qs = io.read_solution(args.file)
    table = orbits.growth_table(qs, args.max, budget=_budget(args))
    report = {"n": qs.n, "dims": list(table.dims), "cumulative": list(table.cumulative),
              "window": table.window,
              "gk_estimate": "inconclusive" if table.inconclusive else table.gk_estimate}
    _emit(report, args, out)


def _write_or_print(qs, path, out):
    if path:
        io.write_solution(qs, path)
        out.write(f"written: {path}\n")
    else:
        out.write(io.dump_solution(qs))


def cmd_derived(args, out):
    qs = io.read_solution(args.file)
    _write_or_print(transforms.derived_solution(qs), args.output, out)


def cmd_retract(args, out):
    qs = io.read_solution(args.file)
    if args.tower:
        sizes = transforms.retraction_tower(qs)
        level = len(sizes) - 1 if sizes[-1] == 1 else "not-multipermutation"
        _emit({"n": qs.n, "tower": sizes, "multipermutation_level": level}, args, out)
        return
    ret, class_map = transforms.retraction(qs)
    if args.output:
        io.write_solution(ret, args.output)
    report = {"n": qs.n, "size": ret.n, "class_map": list(class_map)}
    if args.output:
        report["written"] = args.output
    else:
        report["solution"] = io.to_document(ret)
    _emit(report, args, out)


def cmd_construct(args, out):
    builder = constructions.NAMED[args.name]
    if args.name == "three-element":
        if args.n not in (None, 3):
            raise InvalidInput("three-element is defined only for n = 3")
        made = builder()
    else:
        if args.n is None:
            raise InvalidInput(f"{args.name} needs --n")
        made = builder(args.n)
    if args.name != "cycle-ext":
        _write_or_print(made, args.output, out)
        return
    out.write(f"solutions: {len(made)}\n")
    for i, qs in enumerate(made):
        if args.output:
            path = _suffixed(args.output, i)
            io.write_solution(qs, path)
            out.write(f"written: {path}\n")
        else:
            out.write(io.dump_solution(qs))


def cmd_isomorphic(args, out):
    a = io.read_solution(args.file_a)
    b = io.read_solution(args.file_b)
    f = transforms.are_isomorphic(a, b)
    _emit({"isomorphic": f is not None,
           "witness": list(f.images) if f is not None else "not-isomorphic"}, args, out)


def _min_orbit_target(n: int, family: str) -> int:
    return 2 * n - 1 if family == "quandle" else ceil(n / 2)


def cmd_classify(args, out):
    enum = classify.enumerate_quandles if args.family == "quandle" else classify.enumerate_racks
    limit = args.limit if args.limit is not None else (
        classify.QUANDLE_LIMIT if args.family == "quandle" else classify.RACK_LIMIT)
    catalog = enum(args.n, limit=limit)
    entries = list(catalog.entries)
    if args.min_orbits:
        target = _min_orbit_target(args.n, args.family)
        entries = [e for e in entries if e.orbit_count == target]
    selected = classify.SolutionCatalog(catalog.n, catalog.family, tuple(entries))
    if args.catalog:
        Path(args.catalog).write_text(selected.to_jsonl())
    report = {"n": args.n, "family": args.family, "classes": len(catalog),
              "selected": len(selected), "entries": selected.records()}
    if args.catalog:
        report["catalog"] = args.catalog
    _emit(report, args, out, {"entries": ("entry", lambda rec: json.dumps(rec, separators=(",", ":")))})


def _verify(theorem: str, n: int) -> tuple[bool, dict]:
    if theorem in ("min-dim", "sf-min-dim"):
        catalog = (classify.enumerate_racks(n) if theorem == "min-dim"
                   else classify.enumerate_quandles(n))
        rep = classify.verify_bounds(catalog)
        return rep.passed, {
            "family": rep.family, "classes": len(catalog), "bound": rep.bound,
            "min_orbit_count": rep.min_orbit_count, "violations": len(rep.violations),
            "equality_mismatches": len(rep.equality_mismatches)}
    if theorem == "minimal-classification":
        rep = classify.verify_minimality_classification(n)
        return rep.passed, {
            "survivors": len(rep.survivors), "expected": len(rep.expected),
            "missing": [list(c) for c in rep.missing],
            "unexpected": [list(c) for c in rep.unexpected]}
    count = orbits.dim_A(constructions.dihedral_quandle(n), 2)
    target = 2 * n - 1
    prime = isprime(n)
    ok = count == target if prime else count > target
    relation = ("=" if count == target else ">" if count > target else "<")
    if prime:
        verdict = "attained as predicted" if ok else "not attained"
    else:
        verdict = "violated as predicted" if ok else "unexpectedly attained"
    return ok, {"prime": bool(prime), "orbit_count": count,
                "evidence": f"orbit_count 2·{n}−1 {verdict}: count {relation} {target}"}


def cmd_verify(args, out):
    ok, evidence = _verify(args.theorem, args.n)
    _emit({"theorem": args.theorem, "n": args.n, **evidence, "result": "PASS" if ok else "FAIL"},
          args, out)
    if not ok:
        raise Failed(f"{args.theorem} failed for n={args.n}")


# --- parser ---------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{value} is not positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON object")

    parser = argparse.ArgumentParser(prog="ybsets", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="property report")
    p.add_argument("file")
    p.add_argument("--require", action="append", metavar="PROP",
                   help="exit 1 unless PROP is true (repeatable)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("orbits", parents=[common], help="orbits of X^m")
    p.add_argument("file")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--list", action="store_true")
    p.add_argument("--budget", type=_positive)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("growth", parents=[common], help="dims per degree and GK estimate")
    p.add_argument("file")
    p.add_argument("--max", type=_positive, required=True)
    p.add_argument("--budget", type=_positive)
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("derived", parents=[common], help="write the derived solution")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_derived)

    p = sub.add_parser("retract", parents=[common], help="retraction or retraction tower")
    p.add_argument("file")
    p.add_argument("--tower", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_retract)

    p = sub.add_parser("construct", parents=[common], help="build a named solution")
    p.add_argument("name", choices=sorted(constructions.NAMED))
    p.add_argument("--n", type=_positive)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("isomorphic", parents=[common], help="isomorphism witness")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=cmd_isomorphic)

    p = sub.add_parser("classify", parents=[common], help="census up to isomorphism")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--family", choices=classify.FAMILIES, required=True)
    p.add_argument("--min-orbits", action="store_true")
    p.add_argument("--catalog", metavar="OUT", help="write JSONL records")
    p.add_argument("--limit", type=_positive, help="largest n allowed")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", parents=[common], help="run a bound or classification check")
    p.add_argument("--theorem", choices=THEOREMS, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except Failed as exc:
        print(f"fail: {exc}", file=sys.stderr)
        return 1
    except LimitExceeded as exc:
        print(f"limit: {exc}", file=sys.stderr)
        return 3
    except (InvalidInput, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
