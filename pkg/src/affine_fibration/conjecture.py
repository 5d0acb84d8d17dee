"""Affine pieces of a zero set and the union-of-affine-spaces check.

Two kinds of pieces are handled:

* :class:`AffineSubspace` -- basepoint plus linearly independent directions.
* :class:`ParametrizedPiece` -- the graph of a polynomial map, obtained by
  solving defining equations one variable at a time.  Sets such as
  ``{y = 0, z = v*t}`` live here: they are affine over each fixed value of the
  remaining coordinates, and their parametrization keeps all checks exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .polyalg import Polynomial, Scalar, exact_div, gcd, gcd_many
from .symlinalg import rational_kernel, rational_rank


@dataclass(frozen=True)
class AffineSubspace:
    basepoint: tuple[Fraction, ...]
    directions: tuple[tuple[Fraction, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "basepoint", tuple(Fraction(x) for x in self.basepoint))
        object.__setattr__(
            self, "directions", tuple(tuple(Fraction(x) for x in d) for d in self.directions)
        )
        n = len(self.basepoint)
        if any(len(d) != n for d in self.directions):
            raise ValueError("direction vectors must match the ambient dimension")
        if self.directions and rational_rank(self.directions) != len(self.directions):
            raise ValueError("direction vectors are linearly dependent")

    @classmethod
    def coordinate(cls, n: int, zero_coords: Sequence[int]) -> AffineSubspace:
        """The linear subspace {x_i = 0 for i in zero_coords}."""
        dirs = []
        for j in range(n):
            if j not in zero_coords:
                dirs.append(tuple(Fraction(int(i == j)) for i in range(n)))
        return cls((Fraction(0),) * n, tuple(dirs))

    @property
    def n(self) -> int:
        return len(self.basepoint)

    @property
    def dimension(self) -> int:
        return len(self.directions)

    def parametrization(self) -> tuple[Polynomial, ...]:
        d = self.dimension
        out = []
        for i in range(self.n):
            terms = {(0,) * d: self.basepoint[i]}
            for j, vec in enumerate(self.directions):
                e = [0] * d
                e[j] = 1
                terms[tuple(e)] = vec[i]
            out.append(Polynomial(d, terms))
        return tuple(out)

    def equations(self) -> tuple[Polynomial, ...]:
        """Linear equations cutting out the subspace."""
        if self.directions:
            normals = rational_kernel(self.directions, self.n)
        else:
            normals = [[Fraction(int(i == j)) for j in range(self.n)] for i in range(self.n)]
        out = []
        for a in normals:
            c = -sum(x * p for x, p in zip(a, self.basepoint))
            terms = {(0,) * self.n: c}
            for i, x in enumerate(a):
                e = [0] * self.n
                e[i] = 1
                terms[tuple(e)] = x
            out.append(Polynomial(self.n, terms).normalized())
        return tuple(out)

    def contains_point(self, point: Sequence[Scalar]) -> bool:
        diff = [Fraction(x) - b for x, b in zip(point, self.basepoint)]
        if not any(diff):
            return True
        return rational_rank(list(self.directions) + [diff]) == self.dimension

    def tangent_space(self, point: Sequence[Scalar] | None = None) -> AffineSubspace:
        if point is None:
            return self
        return AffineSubspace(tuple(point), self.directions)


@dataclass(frozen=True)
class ParametrizedPiece:
    """Solution set of polynomial equations in solved (graph) form.

    ``parametrization[i]`` is a polynomial in ``len(free)`` parameters; the
    parameter ``j`` is the coordinate ``free[j]`` itself.
    """

    n: int
    equations: tuple[Polynomial, ...]
    parametrization: tuple[Polynomial, ...]
    free: tuple[int, ...]
    label: str = field(default="", compare=False)

    @property
    def dimension(self) -> int:
        return len(self.free)

    def contains_point(self, point: Sequence[Scalar]) -> bool:
        return all(eq.evaluate(point) == 0 for eq in self.equations)

    def is_linear(self) -> bool:
        return all(p.total_degree() <= 1 for p in self.parametrization)

    def point_at(self, params: Sequence[Scalar]) -> tuple[Fraction, ...]:
        return tuple(p.evaluate(params) for p in self.parametrization)

    def tangent_space(self, point: Sequence[Scalar]) -> AffineSubspace:
        """Tangent space at a point of the piece (every point of a graph is regular)."""
        if not self.contains_point(point):
            raise ValueError("point does not lie on the piece")
        params = [Fraction(point[i]) for i in self.free]
        dirs = []
        for j in range(self.dimension):
            dirs.append(tuple(p.derivative(j).evaluate(params) for p in self.parametrization))
        return AffineSubspace(tuple(Fraction(x) for x in point), tuple(dirs))

    def to_affine(self) -> AffineSubspace:
        if not self.is_linear():
            raise ValueError("piece is not affine")
        d = self.dimension
        zero = [0] * d
        base = tuple(p.evaluate(zero) for p in self.parametrization)
        dirs = []
        for j in range(d):
            dirs.append(tuple(p.derivative(j).evaluate(zero) for p in self.parametrization))
        return AffineSubspace(base, tuple(dirs))


Piece = Union[AffineSubspace, ParametrizedPiece]


class UnsolvableEquations(ValueError):
    """The equations could not be brought into solved form."""


def _solvable_variable(eq: Polynomial) -> int | None:
    """Lowest-index variable occurring only in a single term c*x_i."""
    candidates = []
    for i in sorted(eq.support()):
        occurrences = [(e, c) for e, c in eq if e[i]]
        if len(occurrences) == 1:
            e, _ = occurrences[0]
            if e[i] == 1 and sum(e) == 1:
                candidates.append(i)
    return candidates[0] if candidates else None


def solve_equations(equations: Sequence[Polynomial], n: int, label: str = "") -> ParametrizedPiece | None:
    """Bring polynomial equations into solved form by successive elimination.

    Each step picks an equation in which some variable appears only as a
    linear term with constant coefficient, solves for it and substitutes.
    Returns None for an inconsistent system; raises UnsolvableEquations when
    no equation admits such a step.
    """
    originals = tuple(equations)
    if any(eq.nvars != n for eq in originals):
        raise ValueError("equations must live in the ambient ring")
    xs = list(Polynomial.variables(n))
    subst = list(xs)  # current value of each coordinate
    pending = [eq for eq in originals if eq]
    solved: set[int] = set()
    while True:
        pending = [eq.compose(subst) for eq in pending]
        pending = [eq for eq in pending if eq]
        if any(eq.is_constant() for eq in pending):
            return None
        if not pending:
            break
        pending.sort(key=lambda q: (q.total_degree(), len(q)))
        for idx, eq in enumerate(pending):
            var = _solvable_variable(eq)
            if var is not None:
                break
        else:
            raise UnsolvableEquations("cannot solve equations for a linear variable")
        c = eq.coefficient(tuple(int(i == var) for i in range(n)))
        value = (xs[var].scale(c) - eq).scale(1 / c)
        step = list(xs)
        step[var] = value
        subst = [s.compose(step) for s in subst]
        solved.add(var)
        pending.pop(idx)
    free = tuple(i for i in range(n) if i not in solved)
    d = len(free)
    to_params = [Polynomial.zero(d) for _ in range(n)]
    for j, i in enumerate(free):
        to_params[i] = Polynomial.variable(d, j)
    param = tuple(s.compose(to_params) for s in subst)
    return ParametrizedPiece(n, originals, param, free, label)


def piece_from_equations(equations: Sequence[Polynomial], n: int, label: str = "") -> ParametrizedPiece:
    piece = solve_equations(equations, n, label)
    if piece is None:
        raise ValueError("equations have no common solution")
    return piece


def piece_equations(piece: Piece) -> tuple[Polynomial, ...]:
    return piece.equations() if isinstance(piece, AffineSubspace) else piece.equations


def piece_parametrization(piece: Piece) -> tuple[Polynomial, ...]:
    return piece.parametrization() if isinstance(piece, AffineSubspace) else piece.parametrization


def affine_dimension(s: Piece) -> int:
    return s.dimension


def contains_affine_set(generators: Sequence[Polynomial], s: Piece) -> bool:
    """True iff every generator vanishes identically on the piece."""
    if any(g.nvars != s.n for g in generators):
        raise ValueError("generators and piece live in different ambient spaces")
    param = piece_parametrization(s)
    return all(g.compose(param).is_zero() for g in generators)


def intersect(a: Piece, b: Piece) -> AffineSubspace | None:
    """Intersection of two pieces, required to come out affine; None if empty."""
    if a.n != b.n:
        raise ValueError("pieces live in different ambient spaces")
    eqs = piece_equations(a) + piece_equations(b)
    solved = solve_equations(eqs, a.n)
    if solved is None:
        return None
    if not solved.is_linear():
        raise ValueError("intersection is not affine")
    return solved.to_affine()


# ---------------------------------------------------------------------------
# union-of-affine verdicts


@dataclass(frozen=True)
class Consistent:
    lines: int
    hits: int
    rational_points_checked: int
    unchecked_slice_points: int

    @property
    def details(self) -> str:
        return (
            f"{self.lines} lines, {self.hits} met the zero set, "
            f"{self.rational_points_checked} rational points checked, "
            f"{self.unchecked_slice_points} unchecked slice points"
        )


@dataclass(frozen=True)
class PieceNotContained:
    index: int

    @property
    def details(self) -> str:
        return f"piece {self.index} is not contained in the zero set"


@dataclass(frozen=True)
class UncoveredZeroFound:
    point: tuple[Fraction, ...]

    @property
    def details(self) -> str:
        return "common zero outside all pieces: (" + ", ".join(str(x) for x in self.point) + ")"


Verdict = Union[Consistent, PieceNotContained, UncoveredZeroFound]


def _squarefree(g: Polynomial) -> Polynomial:
    dg = g.derivative(0)
    if dg.is_zero():
        return g
    return exact_div(g, gcd(g, dg))


def rational_roots(g: Polynomial) -> tuple[list[Fraction], int]:
    """Rational roots of a univariate polynomial and the count of other roots.

    Candidates come from floating-point root approximations and are confirmed
    by exact evaluation, so no reported root is spurious; roots that cannot be
    confirmed are counted, not dropped.
    """
    if g.nvars != 1:
        raise ValueError("expected a univariate polynomial")
    if g.total_degree() <= 0:
        return [], 0
    sf = _squarefree(g.normalized())
    deg = sf.total_degree()
    coeffs = [sf.coefficient((k,)) for k in range(deg + 1)]
    roots: set[Fraction] = set()
    if deg == 1:
        roots.add(-coeffs[0] / coeffs[1])
    else:
        lead = abs(coeffs[-1].numerator)
        approx = np.roots([float(c) for c in reversed(coeffs)])
        for z in approx:
            if abs(z.imag) > 1e-6 * max(1.0, abs(z.real)):
                continue
            for cand in (Fraction(z.real).limit_denominator(max(lead, 1)), Fraction(round(z.real))):
                if sf.evaluate([cand]) == 0:
                    roots.add(cand)
    found = sorted(roots)
    return found, deg - len(found)


def _random_line(rng: random.Random, n: int) -> tuple[list[Fraction], list[Fraction]]:
    # sparse small-integer coordinates give lines a fair chance of meeting
    # low-dimensional coordinate-like zero sets
    def coord(p_zero: float) -> Fraction:
        return Fraction(0) if rng.random() < p_zero else Fraction(rng.randint(-9, 9))

    base = [coord(0.5) for _ in range(n)]
    while True:
        direction = [coord(0.6) for _ in range(n)]
        if any(direction):
            return base, direction


def _line_polys(base: Sequence[Fraction], direction: Sequence[Fraction]) -> list[Polynomial]:
    return [Polynomial(1, {(0,): b, (1,): d}) for b, d in zip(base, direction)]


def _in_some_piece(point: Sequence[Fraction], pieces: Sequence[Piece]) -> bool:
    return any(p.contains_point(point) for p in pieces)


def verify_union_of_affine(
    generators: Sequence[Polynomial],
    pieces: Sequence[Piece],
    samples: int = 200,
    seed: int = 0,
) -> Verdict:
    """Check that the common zero set of ``generators`` is the union of ``pieces``.

    Containment of each piece is exact.  Completeness is probed by slicing
    with ``samples`` random lines: on each line the gcd of the restricted
    generators vanishes exactly where the line meets the zero set, and every
    rational such point must lie in some piece.
    """
    gens = [g for g in generators if g]
    for idx, piece in enumerate(pieces):
        if not contains_affine_set(gens, piece):
            return PieceNotContained(idx)
    if pieces:
        n = pieces[0].n
    elif generators:
        n = generators[0].nvars
    else:
        raise ValueError("need generators or pieces to fix the ambient dimension")
    rng = random.Random(seed)
    hits = checked = unchecked = 0
    for _ in range(samples):
        base, direction = _random_line(rng, n)
        line = _line_polys(base, direction)
        restricted = [g.compose(line) for g in gens]
        nonzero = [r for r in restricted if r]

        def at(tv: Fraction) -> tuple[Fraction, ...]:
            return tuple(b + tv * d for b, d in zip(base, direction))

        if not nonzero:
            # the whole line lies in the zero set
            hits += 1
            if any(all(eq.compose(line).is_zero() for eq in piece_equations(p)) for p in pieces):
                continue
            bound = sum(
                max((eq.total_degree() for eq in piece_equations(p)), default=0) for p in pieces
            )
            for tv in range(bound + 2):
                pt = at(Fraction(tv))
                if not _in_some_piece(pt, pieces):
                    return UncoveredZeroFound(pt)
            continue
        g = gcd_many(nonzero)
        if g.is_constant():
            continue
        hits += 1
        roots, other = rational_roots(g)
        unchecked += other
        for root in roots:
            checked += 1
            pt = at(root)
            if not _in_some_piece(pt, pieces):
                return UncoveredZeroFound(pt)
    return Consistent(samples, hits, checked, unchecked)
