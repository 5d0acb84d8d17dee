"""Command-line frontend.

    affine-fibration analyze --potential "x1*x2^2+(x3-x2*x4)^2" --vars x1,x2,x3,x4 --json
    affine-fibration analyze --catalog ex1
    affine-fibration limit --catalog ex1 --curve "(1,0,0,0)+t*(0,1,1,0)" --pieces "x2=0,x3=0"
    affine-fibration conjecture --catalog seven-var --pieces "y=0,z=v*t;v=0,z=y*w"

Exit codes: 0 all checks pass, 1 a check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from . import catalog
from .conjecture import (
    Consistent,
    UnsolvableEquations,
    piece_from_equations,
    verify_union_of_affine,
)
from .fibration import (
    CurveInsideIndeterminacy,
    CurveSpec,
    HoloMap,
    analyze,
    check_tangency,
    from_components,
    from_potential,
    limit_along_curve,
)
from .parsing import ParseError, parse_curve, parse_map, parse_pieces, parse_polynomial, parse_vars
from .report import FibrationReport, build_report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class Subject:
    """A map to analyze, with variable names and a printable description."""

    gmap: HoloMap
    names: tuple[str, ...]
    description: str
    catalog_id: str | None = None


def _subject(args) -> Subject:
    given = [x for x in (args.potential, args.map, args.catalog) if x is not None]
    if len(given) != 1:
        raise InputError("exactly one of --potential, --map, --catalog is required")
    if args.catalog is not None:
        try:
            entry = catalog.get_entry(args.catalog)
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from None
        return Subject(entry.holomap(), entry.names, entry.input_description(), entry.id)
    if args.vars is None:
        raise InputError("--vars is required with --potential or --map")
    try:
        names = tuple(parse_vars(args.vars))
        if args.potential is not None:
            psi = parse_polynomial(args.potential, names)
            if len(names) < 2:
                raise InputError("a potential needs at least two variables")
            desc = f"potential: {args.potential} | vars: {args.vars}"
            return Subject(from_potential(psi), names, desc)
        comps = parse_map(args.map, names)
    except ParseError as exc:
        raise InputError(f"parse error: {exc}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if len(comps) != len(names):
        raise InputError(f"--map has {len(comps)} components but there are {len(names)} variables")
    return Subject(from_components(comps), names, f"map: {args.map} | vars: {args.vars}")


def _pieces(text: str, subject: Subject):
    try:
        eq_lists = parse_pieces(text, subject.names)
    except ParseError as exc:
        raise InputError(f"parse error in --pieces: {exc}") from None
    out = []
    for eqs in eq_lists:
        try:
            out.append(piece_from_equations(eqs, len(subject.names)))
        except UnsolvableEquations as exc:
            raise InputError(f"cannot parametrize piece: {exc}") from None
        except ValueError as exc:
            raise InputError(str(exc)) from None
    return out


def _fmt_point(point) -> str:
    return "(" + ",".join(str(x) for x in point) + ")"


def cmd_analyze(args) -> tuple[int, list[FibrationReport]]:
    if args.catalog == "all":
        reports = [catalog.run_entry(i, args.samples, args.seed) for i in catalog.list_entries()]
    else:
        subject = _subject(args)
        if subject.catalog_id is not None:
            reports = [catalog.run_entry(subject.catalog_id, args.samples, args.seed)]
        else:
            reports = [build_report(analyze(subject.gmap), subject.names, subject.description)]
    if args.json:
        if len(reports) == 1:
            print(reports[0].to_json())
        else:
            print(json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        print("\n\n".join(r.render() for r in reports))
    return (EXIT_FAIL if any(r.failed for r in reports) else EXIT_OK), reports


def cmd_limit(args) -> int:
    subject = _subject(args)
    if args.curve is None:
        raise InputError("--curve is required")
    try:
        coeffs = parse_curve(args.curve)
        curve = CurveSpec(tuple(coeffs))
    except ParseError as exc:
        raise InputError(f"parse error in --curve: {exc}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if len(curve.limit_point) != len(subject.names):
        raise InputError("curve dimension does not match the number of variables")
    analysis = analyze(subject.gmap)
    if analysis.pluecker is None:
        print(f"condition A1 fails (k={analysis.k}); no kernel fibration")
        return EXIT_FAIL
    try:
        limit = limit_along_curve(analysis, curve)
    except CurveInsideIndeterminacy as exc:
        print(f"error: {exc}")
        return EXIT_FAIL
    out: dict = {
        "limit_point": [str(x) for x in curve.limit_point],
        "subspace_dim": limit.subspace_dim,
        "pluecker": {",".join(map(str, t)): str(v) for t, v in limit.coordinates.items()},
        "basis": [[str(x) for x in v] for v in limit.basis()],
    }
    status = EXIT_OK
    if args.pieces:
        verdicts = []
        containing = [p for p in _pieces(args.pieces, subject) if p.contains_point(curve.limit_point)]
        if len(containing) != 1:
            why = "limit point lies on no piece" if not containing else "limit point lies on several pieces"
            verdicts.append({"status": "skip", "details": f"unverifiable: {why}"})
        else:
            piece = containing[0]
            ok = check_tangency(limit, piece.tangent_space(curve.limit_point))
            verdicts.append({"status": "pass" if ok else "fail", "details": "limit subspace in tangent space"})
            if not ok:
                status = EXIT_FAIL
        out["tangency"] = verdicts[0]
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        print(f"limit at {_fmt_point(curve.limit_point)}:")
        for v in out["basis"]:
            print("  span " + "(" + ",".join(v) + ")")
        if "tangency" in out:
            print(f"tangency: [{out['tangency']['status']}] {out['tangency']['details']}")
    return status


def cmd_conjecture(args) -> int:
    subject = _subject(args)
    if not args.pieces:
        raise InputError("--pieces is required")
    pieces = _pieces(args.pieces, subject)
    analysis = analyze(subject.gmap)
    if analysis.pluecker is None:
        print(f"condition A1 fails (k={analysis.k}); no kernel fibration")
        return EXIT_FAIL
    verdict = verify_union_of_affine(analysis.singular_generators, pieces, args.samples, args.seed)
    kind = type(verdict).__name__
    out = {
        "verdict": kind,
        "status": "heuristic-pass" if isinstance(verdict, Consistent) else "fail",
        "details": verdict.details,
        "piece_dimensions": [p.dimension for p in pieces],
    }
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        print(f"{kind}: {verdict.details}")
        print(f"piece dimensions: {out['piece_dimensions']} (n-2 = {len(subject.names) - 2})")
    return EXIT_OK if isinstance(verdict, Consistent) else EXIT_FAIL


def cmd_catalog(args) -> int:
    if args.json:
        print(catalog.catalog_to_json())
    else:
        for entry in catalog.entries():
            print(f"{entry.id:16s} n={entry.n} k={entry.expected_k}  {entry.notes}")
    return EXIT_OK


def _add_subject_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--potential", help="scalar potential psi; the map is its gradient")
    p.add_argument("--map", help="map components separated by ';'")
    p.add_argument("--catalog", help="catalog entry id (or 'all' for analyze)")
    p.add_argument("--vars", help="comma-separated variable names, in coordinate order")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="affine-fibration", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", help="run the full analysis")
    _add_subject_flags(p)
    p = sub.add_parser("limit", help="limit of the kernel subspace along a curve")
    _add_subject_flags(p)
    p.add_argument("--curve", help='e.g. "(1,0,0,0)+t*(0,1,1,0)+t^2*(0,0,0,1)"')
    p.add_argument("--pieces", help='e.g. "x2=0,x3=0;y=0,z=v*t"')
    p = sub.add_parser("conjecture", help="check the zero set is the union of the given pieces")
    _add_subject_flags(p)
    p.add_argument("--pieces", help='e.g. "x2=0,x3=0;y=0,z=v*t"')
    p = sub.add_parser("catalog", help="list or export the example catalog")
    p.add_argument("--json", action="store_true")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.command == "analyze":
            return cmd_analyze(args)[0]
        if args.command == "limit":
            return cmd_limit(args)
        if args.command == "conjecture":
            return cmd_conjecture(args)
        return cmd_catalog(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
