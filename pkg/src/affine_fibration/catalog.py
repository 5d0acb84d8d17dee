"""Registry of worked examples with their expected analysis outcomes."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .conjecture import (
    Consistent,
    ParametrizedPiece,
    contains_affine_set,
    intersect,
    piece_from_equations,
    verify_union_of_affine,
)
from .fibration import (
    CurveInsideIndeterminacy,
    HoloMap,
    analyze,
    approach_curves,
    check_tangency,
    check_theorem1_bounds,
    from_components,
    from_potential,
    has_no_common_zero,
    limit_along_curve,
)
from .parsing import parse_equation, parse_polynomial, parse_vars, print_polynomial
from .polyalg import Polynomial, RationalFunction, exact_div, gcd
from .report import Check, FibrationReport, build_report, format_vector, pluecker_key
from .symlinalg import normalize_vector, pluecker

TANGENCY_CURVES = 5


@dataclass(frozen=True)
class ExpectedPiece:
    equations: tuple[Polynomial, ...]
    dimension: int

    def piece(self, n: int) -> ParametrizedPiece:
        return piece_from_equations(self.equations, n)


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    names: tuple[str, ...]
    potential: Polynomial | None
    components: tuple[Polynomial, ...] | None
    expected_k: int
    expected_kernel: tuple[tuple[Polynomial, ...], ...]
    expected_pieces: tuple[ExpectedPiece, ...] = ()
    expected_a2: bool = True
    intersection_dim: int | None = None
    notes: str = field(default="", compare=False)

    @property
    def n(self) -> int:
        return len(self.names)

    def holomap(self) -> HoloMap:
        if self.potential is not None:
            return from_potential(self.potential)
        assert self.components is not None
        return from_components(self.components)

    def input_description(self) -> str:
        head = f"catalog:{self.id}"
        if self.potential is not None:
            body = "potential: " + print_polynomial(self.potential, self.names)
        else:
            body = "map: " + "; ".join(print_polynomial(c, self.names) for c in self.components)
        return f"{head} | {body} | vars: {','.join(self.names)}"


def clear_denominators(vec: Sequence[RationalFunction]) -> tuple[Polynomial, ...]:
    """Multiply by the lcm of denominators and normalize."""
    n = vec[0].nvars
    den = Polynomial.one(n)
    for x in vec:
        den = den * exact_div(x.den, gcd(den, x.den))
    return normalize_vector([exact_div(x.num * den, x.den) for x in vec])


def _poly(text: str, names: Sequence[str]) -> Polynomial:
    return parse_polynomial(text, names)


def _rf(num: str, names: Sequence[str], den: str = "1", scale: Fraction = Fraction(1)) -> RationalFunction:
    return RationalFunction(_poly(num, names).scale(scale), _poly(den, names))


def _pieces(specs: Sequence[tuple[Sequence[str], int]], names: Sequence[str]) -> tuple[ExpectedPiece, ...]:
    return tuple(
        ExpectedPiece(tuple(parse_equation(eq, names) for eq in eqs), dim) for eqs, dim in specs
    )


def _ex1() -> CatalogEntry:
    names = ("x1", "x2", "x3", "x4")
    kernel = clear_denominators(
        [_rf("x3", names, "x2") - _rf("x4", names), _rf("0", names), _rf("x2", names), _rf("1", names)]
    )
    return CatalogEntry(
        id="ex1",
        names=names,
        potential=_poly("x1*x2^2 + (x3 - x2*x4)^2", names),
        components=None,
        expected_k=3,
        expected_kernel=(kernel,),
        expected_pieces=_pieces([(("x2 = 0", "x3 = 0"), 2)], names),
        notes="first gradient-type example in C^4; kernel direction x3/x2 - x4, 0, x2, 1",
    )


def _family(k: int, m: int) -> CatalogEntry:
    names = ("x1", "x2", "x3", "x4")
    first = _rf(f"(x3 - x2*x4)^{m - 1}", names, f"x2^{k - 1}", Fraction(m, k))
    kernel = clear_denominators([first, _rf("0", names), _rf("x2", names), _rf("1", names)])
    return CatalogEntry(
        id=f"fam-{k}-{m}",
        names=names,
        potential=_poly(f"x1*x2^{k} + (x3 - x2*x4)^{m}", names),
        components=None,
        expected_k=3,
        expected_kernel=(kernel,),
        expected_pieces=_pieces([(("x2 = 0", "x3 = 0"), 2)], names),
        notes=f"family x1*x2^k + (x3 - x2*x4)^m with k={k}, m={m}; coefficient m/k = {Fraction(m, k)}",
    )


def _ndim(n: int) -> CatalogEntry:
    xs = [f"x{i + 1}" for i in range(n - 3)]
    names = (*xs, "y", "z", "w")
    zero = _rf("0", names)
    vecs = []
    for i in range(len(xs) - 1):
        v = [zero] * n
        v[i], v[i + 1] = _rf("1", names), _rf("-1", names)
        vecs.append(clear_denominators(v))
    last = [zero] * n
    last[0] = _rf("z - y*w", names, "y")
    last[n - 2] = _rf("y", names)
    last[n - 1] = _rf("1", names)
    vecs.append(clear_denominators(last))
    return CatalogEntry(
        id=f"ndim-{n}",
        names=names,
        potential=_poly("y^2*(" + " + ".join(xs) + ") + (z - y*w)^2", names),
        components=None,
        expected_k=3,
        expected_kernel=tuple(vecs),
        expected_pieces=_pieces([(("y = 0", "z = 0"), n - 2)], names),
        notes=f"fibres of dimension n-3 in C^{n}; kernel basis derived by hand",
    )


def _seven() -> CatalogEntry:
    names = ("x", "y", "z", "v", "w", "s", "t")
    zero, one = _rf("0", names), _rf("1", names)
    u = "z - y*w - v*t"
    # y (resp. v) sits in the z-slot; with it in the v-slot the vectors leave the kernel
    first = clear_denominators([_rf(u, names, "y"), zero, _rf("y", names), zero, one, zero, zero])
    second = clear_denominators([zero, zero, _rf("v", names), zero, zero, _rf(u, names, "v"), one])
    return CatalogEntry(
        id="seven-var",
        names=names,
        potential=_poly("x*y^2 + s*v^2 + (z - y*w - v*t)^2", names),
        components=None,
        expected_k=5,
        expected_kernel=(first, second),
        expected_pieces=_pieces([(("y = 0", "z = v*t"), 5), (("v = 0", "z = y*w"), 5)], names),
        intersection_dim=4,
        notes="rank 5 Hessian in C^7; singular set is a union of two 5-dimensional pieces",
    )


def _c3_trivial() -> CatalogEntry:
    names = ("x1", "x2", "x3")
    e3 = tuple(Polynomial.constant(3, int(i == 2)) for i in range(3))
    return CatalogEntry(
        id="c3-trivial",
        names=names,
        potential=_poly("x1*x2^2", names),
        components=None,
        expected_k=2,
        expected_kernel=(e3,),
        notes="n = 3: constant kernel e3, empty singular set",
    )


def _linear_rank2() -> CatalogEntry:
    names = ("x1", "x2", "x3", "x4")
    vecs = (
        normalize_vector([Polynomial.constant(4, c) for c in (1, -1, 0, 0)]),
        normalize_vector([Polynomial.constant(4, c) for c in (0, 0, 1, 1)]),
    )
    return CatalogEntry(
        id="linear-rank2",
        names=names,
        potential=_poly("(x1 + x2)^2 + (x3 - x4)^2", names),
        components=None,
        expected_k=2,
        expected_kernel=vecs,
        notes="linear gradient map of rank 2: constant kernel, empty singular set",
    )


def _parabola() -> CatalogEntry:
    names = ("x1", "x2")
    return CatalogEntry(
        id="parabola-fibres",
        names=names,
        potential=None,
        components=(_poly("x2 - x1^2", names), _poly("0", names)),
        expected_k=1,
        expected_kernel=(normalize_vector([_poly("1", names), _poly("2*x1", names)]),),
        expected_a2=False,
        notes="non-example: level sets x2 = x1^2 + c are parabolas, so A2 fails",
    )


@lru_cache(maxsize=None)
def _registry() -> dict[str, CatalogEntry]:
    entries = [_ex1()]
    entries += [_family(k, m) for k in (2, 3) for m in (2, 3)]
    entries += [_ndim(5), _ndim(6), _seven(), _c3_trivial(), _linear_rank2(), _parabola()]
    return {e.id: e for e in entries}


def list_entries() -> list[str]:
    return list(_registry())


def get_entry(entry_id: str) -> CatalogEntry:
    try:
        return _registry()[entry_id]
    except KeyError:
        raise KeyError(f"unknown catalog entry {entry_id!r}") from None


def entries() -> list[CatalogEntry]:
    return list(_registry().values())


# ---------------------------------------------------------------------------


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _kernel_check(entry: CatalogEntry, computed) -> Check:
    expected = tuple(normalize_vector(v) for v in entry.expected_kernel)
    if computed is None:
        return Check("expected_kernel", "fail", "no kernel computed")
    if computed.vectors == expected:
        return Check("expected_kernel", "pass", "bases are equal")
    if len(expected) == computed.dim and pluecker(expected) == pluecker(computed):
        return Check("expected_kernel", "pass", "bases span the same subspace")
    return Check("expected_kernel", "fail", "computed kernel differs from the expected one")


def run_entry(entry_id: str, samples: int = 200, seed: int = 0) -> FibrationReport:
    """Run the full pipeline on a catalog entry and compare with expectations."""
    entry = get_entry(entry_id)
    n = entry.n
    analysis = analyze(entry.holomap())
    checks = [
        Check("expected_k", _status(analysis.k == entry.expected_k), f"k={analysis.k}, expected {entry.expected_k}"),
        _kernel_check(entry, analysis.kernel),
    ]
    gens = analysis.singular_generators
    pieces = [p.piece(n) for p in entry.expected_pieces]
    rng = random.Random(seed)
    for i, (exp, piece) in enumerate(zip(entry.expected_pieces, pieces)):
        checks.append(Check(f"piece[{i}].contained", _status(contains_affine_set(gens, piece))))
        checks.append(
            Check(
                f"piece[{i}].dimension",
                _status(piece.dimension == exp.dimension),
                f"dim={piece.dimension}, expected {exp.dimension}",
            )
        )
        if 1 <= analysis.k <= n - 1:
            ok = check_theorem1_bounds(n, analysis.k, piece.dimension)
            lo, hi = max(analysis.k - 1, n - analysis.k + 1), n - 2
            checks.append(Check(f"piece[{i}].theorem1_bounds", _status(ok), f"{lo} <= {piece.dimension} <= {hi}"))
        others = [p for j, p in enumerate(pieces) if j != i]
        good = 0
        tried = 0
        for curve in approach_curves(piece, TANGENCY_CURVES, rng, avoid=others):
            tried += 1
            try:
                limit = limit_along_curve(analysis, curve)
            except CurveInsideIndeterminacy:
                continue
            if check_tangency(limit, piece.tangent_space(curve.limit_point)):
                good += 1
        checks.append(
            Check(f"piece[{i}].tangency", _status(good == tried), f"{good}/{tried} curve limits tangent")
        )
    if len(pieces) >= 2 and entry.intersection_dim is not None:
        inter = intersect(pieces[0], pieces[1])
        dim = None if inter is None else inter.dimension
        checks.append(
            Check("intersection_dim", _status(dim == entry.intersection_dim), f"dim={dim}, expected {entry.intersection_dim}")
        )
    if pieces:
        verdict = verify_union_of_affine(gens, pieces, samples, seed)
        status = "heuristic-pass" if isinstance(verdict, Consistent) else "fail"
        checks.append(Check("union_of_affine", status, verdict.details))
        dims = sorted({p.dimension for p in pieces})
        checks.append(
            Check(
                "codim2_observation",
                "skip",
                f"piece dimensions {dims}; n-2 = {n - 2}" + (" (all equal n-2)" if dims == [n - 2] else ""),
            )
        )
    elif entry.expected_a2:
        empty = has_no_common_zero(gens)
        checks.append(Check("expected_empty_locus", _status(empty is True), "some reduced coordinate is a nonzero constant"))
    return build_report(analysis, entry.names, entry.input_description(), checks, entry.expected_a2)


# ---------------------------------------------------------------------------
# JSON (same schema as analysis reports, carrying expected values)


def entry_to_report(entry: CatalogEntry) -> FibrationReport:
    names = entry.names
    kernel = tuple(normalize_vector(v) for v in entry.expected_kernel)
    pv = pluecker(kernel)
    checks = [
        Check(
            f"piece[{i}]",
            "skip",
            ", ".join(print_polynomial(eq, names) + " = 0" for eq in p.equations) + f" | dim {p.dimension}",
        )
        for i, p in enumerate(entry.expected_pieces)
    ]
    if entry.intersection_dim is not None:
        checks.append(Check("intersection_dim", "skip", str(entry.intersection_dim)))
    checks.append(Check("notes", "skip", entry.notes))
    return FibrationReport(
        input=entry.input_description(),
        n=entry.n,
        k=entry.expected_k,
        a1_ok=1 <= entry.expected_k <= entry.n - 1,
        a2_ok=entry.expected_a2,
        kernel_basis=[format_vector(v, names) for v in kernel],
        reduced_pluecker={pluecker_key(t): print_polynomial(p, names) for t, p in pv.coordinates.items()},
        singular_generators=[print_polynomial(g, names) for g in pv.nonzero()],
        checks=checks,
    )


def _parse_input(desc: str) -> tuple[str, str, str, tuple[str, ...]]:
    parts = [p.strip() for p in desc.split("|")]
    if len(parts) != 3 or not parts[0].startswith("catalog:"):
        raise ValueError(f"not a catalog input description: {desc!r}")
    entry_id = parts[0][len("catalog:"):]
    kind, _, body = parts[1].partition(":")
    names = tuple(parse_vars(parts[2].partition(":")[2]))
    return entry_id, kind.strip(), body.strip(), names


def _parse_vector(text: str, names: Sequence[str]) -> tuple[Polynomial, ...]:
    inner = text.strip()[1:-1]
    return tuple(parse_polynomial(s, names) for s in inner.split(","))


def entry_from_report(report: FibrationReport) -> CatalogEntry:
    entry_id, kind, body, names = _parse_input(report.input)
    potential = components = None
    if kind == "potential":
        potential = parse_polynomial(body, names)
    else:
        components = tuple(parse_polynomial(c, names) for c in body.split(";"))
    pieces = []
    intersection_dim = None
    notes = ""
    for c in report.checks:
        if c.name.startswith("piece["):
            eqs, _, dim = c.details.rpartition("|")
            equations = tuple(parse_equation(e, names) for e in eqs.split(","))
            pieces.append(ExpectedPiece(equations, int(dim.strip().removeprefix("dim "))))
        elif c.name == "intersection_dim":
            intersection_dim = int(c.details)
        elif c.name == "notes":
            notes = c.details
    return CatalogEntry(
        id=entry_id,
        names=names,
        potential=potential,
        components=components,
        expected_k=report.k,
        expected_kernel=tuple(_parse_vector(v, names) for v in report.kernel_basis),
        expected_pieces=tuple(pieces),
        expected_a2=report.a2_ok,
        intersection_dim=intersection_dim,
        notes=notes,
    )


def catalog_to_json(selected: Sequence[CatalogEntry] | None = None) -> str:
    chosen = entries() if selected is None else list(selected)
    return json.dumps([entry_to_report(e).to_dict() for e in chosen], indent=2)


def catalog_from_json(text: str) -> list[CatalogEntry]:
    return [entry_from_report(FibrationReport.from_dict(d)) for d in json.loads(text)]
