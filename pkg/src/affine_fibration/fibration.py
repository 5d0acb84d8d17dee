"""Kernel fibrations of polynomial maps and their singularities.

For a polynomial map G: C^n -> C^n of generic Jacobian rank k, the kernel
map xi -> ker DG(xi) is represented by its reduced Pluecker vector: maximal
minors of a polynomial kernel basis, divided by their gcd.  The common zero
set of that vector is where the kernel map has no value by evaluation, and is
the computable candidate for the set of essential singularities.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence, Union

from .conjecture import AffineSubspace, ParametrizedPiece, Piece, piece_parametrization
from .polyalg import Polynomial, Scalar
from .symlinalg import (
    KernelBasis,
    PlueckerVector,
    PolyMatrix,
    bareiss_rank,
    determinant,
    kernel_basis,
    pluecker,
    rank_at_point,
    rational_rank,
    spanning_vectors,
)

RANDOM_COORD_BOUND = 1000


class CurveInsideIndeterminacy(ValueError):
    """The curve lies entirely inside the common zero set of the Pluecker vector."""


@dataclass(frozen=True)
class HoloMap:
    n: int
    components: tuple[Polynomial, ...]
    gradient_source: Polynomial | None = None

    def __post_init__(self):
        if len(self.components) != self.n:
            raise ValueError(f"expected {self.n} components, got {len(self.components)}")
        if any(c.nvars != self.n for c in self.components):
            raise ValueError("every component must be a polynomial in n variables")
        if self.gradient_source is not None:
            for i, c in enumerate(self.components):
                if c != self.gradient_source.derivative(i):
                    raise ValueError("components are not the gradient of the potential")

    def jacobian(self) -> PolyMatrix:
        """Entry (j, k) is the derivative of component j in variable k."""
        return PolyMatrix.from_rows(
            [[c.derivative(k) for k in range(self.n)] for c in self.components]
        )

    def __call__(self, args: Sequence[Polynomial]) -> tuple[Polynomial, ...]:
        return tuple(c.compose(args) for c in self.components)


def from_potential(psi: Polynomial) -> HoloMap:
    """Gradient map of a potential; its Jacobian is the Hessian of ``psi``."""
    if psi.nvars < 2:
        raise ValueError("a potential needs at least two variables")
    comps = tuple(psi.derivative(i) for i in range(psi.nvars))
    return HoloMap(psi.nvars, comps, psi)


def from_components(components: Sequence[Polynomial]) -> HoloMap:
    return HoloMap(len(components), tuple(components))


def check_a1(gmap: HoloMap) -> tuple[int, bool]:
    k = bareiss_rank(gmap.jacobian())
    return k, 1 <= k <= gmap.n - 1


def a2_defects(gmap: HoloMap, kernel: KernelBasis | None = None) -> list[Polynomial]:
    """Defects G(xi + sum t_i w_i(xi)) - G(xi), one per component of G.

    The kernel vectors w_1..w_r come with fresh parameters t_1..t_r, so the
    defects live in n + r variables.
    """
    if kernel is None:
        kernel = kernel_basis(gmap.jacobian())
    n, r = gmap.n, kernel.dim
    m = n + r
    xs = [Polynomial.variable(m, i) for i in range(n)]
    ts = [Polynomial.variable(m, n + j) for j in range(r)]
    ws = [[c.extend(m) for c in vec] for vec in kernel.vectors]
    moved = []
    for i in range(n):
        coord = xs[i]
        for t, w in zip(ts, ws):
            if w[i]:
                coord = coord + t * w[i]
        moved.append(coord)
    return [comp.compose(moved) - comp.extend(m) for comp in gmap.components]


def check_a2(gmap: HoloMap, kernel: KernelBasis | None = None) -> tuple[bool, Polynomial | None]:
    """Check that xi + span(kernel(xi)) lies in the level set through xi.

    Returns the verdict and, on failure, the first nonzero defect component.
    """
    for defect in a2_defects(gmap, kernel):
        if defect:
            return False, defect
    return True, None


@dataclass(frozen=True)
class FibrationAnalysis:
    map: HoloMap
    k: int
    jacobian: PolyMatrix
    kernel: KernelBasis | None
    pluecker: PlueckerVector | None
    a1_ok: bool
    a2_ok: bool
    a2_witness: Polynomial | None = None
    singular_generators: tuple[Polynomial, ...] = field(default=())

    @property
    def n(self) -> int:
        return self.map.n


def analyze(gmap: HoloMap) -> FibrationAnalysis:
    jac = gmap.jacobian()
    k = bareiss_rank(jac)
    a1 = 1 <= k <= gmap.n - 1
    if not a1:
        return FibrationAnalysis(gmap, k, jac, None, None, False, False)
    kb = kernel_basis(jac)
    pv = pluecker(kb)
    a2, witness = check_a2(gmap, kb)
    return FibrationAnalysis(gmap, k, jac, kb, pv, True, a2, witness, tuple(pv.nonzero()))


def _require_kernel(analysis: FibrationAnalysis) -> PlueckerVector:
    if analysis.pluecker is None:
        raise ValueError("analysis has no kernel fibration (condition A1 failed)")
    return analysis.pluecker


# ---------------------------------------------------------------------------
# Grassmannian values


@dataclass(frozen=True)
class GrassmannPoint:
    subspace_dim: int
    n: int
    coordinates: dict[tuple[int, ...], Fraction] = field(hash=False)

    @classmethod
    def from_coordinates(cls, d: int, n: int, coords: dict[tuple[int, ...], Scalar]) -> GrassmannPoint:
        tuples = list(combinations(range(n), d))
        lead = next((coords[t] for t in tuples if coords[t] != 0), None)
        if lead is None:
            raise ValueError("all Pluecker coordinates vanish")
        return cls(d, n, {t: Fraction(coords[t]) / lead for t in tuples})

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence[Scalar]]) -> GrassmannPoint:
        d, n = len(vectors), len(vectors[0])
        mat = PolyMatrix.from_rationals(vectors)
        coords = {
            t: determinant(mat.submatrix(range(d), t)).constant_value()
            for t in combinations(range(n), d)
        }
        return cls.from_coordinates(d, n, coords)

    def basis(self) -> list[list[Fraction]]:
        return [list(map(Fraction, v)) for v in spanning_vectors(self.coordinates, self.subspace_dim, self.n)]

    def as_vector(self) -> tuple[Fraction, ...]:
        if self.subspace_dim != 1:
            raise ValueError("only lines have a single representing vector")
        return tuple(self.coordinates[(i,)] for i in range(self.n))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrassmannPoint):
            return NotImplemented
        return (self.subspace_dim, self.n, self.coordinates) == (
            other.subspace_dim,
            other.n,
            other.coordinates,
        )

    def __hash__(self) -> int:
        return hash((self.subspace_dim, self.n, tuple(sorted(self.coordinates.items()))))


@dataclass(frozen=True)
class Singular:
    """Every reduced Pluecker coordinate vanishes at the point."""


@dataclass(frozen=True)
class ExtendibleWith:
    value: GrassmannPoint


@dataclass(frozen=True)
class OnMaxRankStratum:
    value: GrassmannPoint


PointStatus = Union[Singular, ExtendibleWith, OnMaxRankStratum]


def is_essential_singularity(analysis: FibrationAnalysis, point: Sequence[Scalar]) -> PointStatus:
    pv = _require_kernel(analysis)
    vals = pv.evaluate(point)
    if all(v == 0 for v in vals.values()):
        return Singular()
    value = GrassmannPoint.from_coordinates(pv.subspace_dim, pv.n, vals)
    if rank_at_point(analysis.jacobian, point) == analysis.k:
        return OnMaxRankStratum(value)
    return ExtendibleWith(value)


@dataclass(frozen=True)
class CurveSpec:
    """Polynomial curve xi(t) = a0 + t*a1 + t^2*a2 + ..."""

    coefficients: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        coeffs = tuple(tuple(Fraction(x) for x in a) for a in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if len(coeffs) < 2:
            raise ValueError("a curve needs a limit point and at least one direction")
        if any(len(a) != len(coeffs[0]) for a in coeffs):
            raise ValueError("curve coefficient vectors differ in length")
        if not any(any(a) for a in coeffs[1:]):
            raise ValueError("curve is constant")

    @property
    def limit_point(self) -> tuple[Fraction, ...]:
        return self.coefficients[0]

    def polynomials(self) -> list[Polynomial]:
        n = len(self.coefficients[0])
        return [
            Polynomial(1, {(j,): a[i] for j, a in enumerate(self.coefficients)})
            for i in range(n)
        ]


def limit_along_curve(analysis: FibrationAnalysis, curve: CurveSpec) -> GrassmannPoint:
    """Limit of the kernel subspace as t -> 0 along the curve."""
    pv = _require_kernel(analysis)
    if len(curve.limit_point) != pv.n:
        raise ValueError("curve dimension does not match the ambient space")
    path = curve.polynomials()
    along = {t: pv.coordinates[t].compose(path) for t in pv.tuples()}
    orders = [min(e[0] for e in p.as_dict()) for p in along.values() if p]
    if not orders:
        raise CurveInsideIndeterminacy("curve lies inside the indeterminacy locus")
    low = min(orders)
    coords = {t: p.coefficient((low,)) for t, p in along.items()}
    return GrassmannPoint.from_coordinates(pv.subspace_dim, pv.n, coords)


class TangencyUnverifiable(ValueError):
    """Tangency cannot be certified at the requested point."""


def check_tangency(limit: GrassmannPoint, piece: AffineSubspace) -> bool:
    """True iff the limit subspace lies in the direction space of ``piece``."""
    if piece.n != limit.n:
        raise ValueError("limit and piece live in different ambient spaces")
    if piece.dimension < limit.subspace_dim:
        raise ValueError("piece is smaller than the limit subspace")
    dirs = [list(d) for d in piece.directions]
    return rational_rank(dirs + limit.basis()) == piece.dimension


def rank_on_affine_set(gmap: HoloMap, piece: Piece) -> int:
    """Generic rank of the Jacobian restricted to a piece."""
    param = piece_parametrization(piece)
    jac = gmap.jacobian()
    return bareiss_rank(jac.map_entries(lambda p: p.compose(param)))


def check_theorem1_bounds(n: int, k: int, d: int) -> bool:
    """Dimension bounds max(k-1, n-k+1) <= d <= n-2 for a nonempty singular set.

    Out-of-range k or d simply fail the inequality.
    """
    return max(k - 1, n - k + 1) <= d <= n - 2


def _linear_system_consistent(gens: Sequence[Polynomial]) -> bool:
    n = gens[0].nvars
    rows = []
    for g in gens:
        row = [g.coefficient(tuple(int(i == j) for i in range(n))) for j in range(n)]
        rows.append(row + [-g.coefficient((0,) * n)])
    coeff_rank = rational_rank([r[:-1] for r in rows])
    return coeff_rank == rational_rank(rows)


def has_no_common_zero(generators: Sequence[Polynomial]) -> bool | None:
    """Certify emptiness of the common zero set when it is decidable cheaply.

    True if some generator is a nonzero constant or the generators form an
    inconsistent linear system; False if a common zero is certain; None when
    neither case applies.
    """
    gens = [g for g in generators if g]
    if not gens:
        return False
    if any(g.is_constant() for g in gens):
        return True
    if all(g.total_degree() <= 1 for g in gens):
        return not _linear_system_consistent(gens)
    if all(not g.coefficient((0,) * g.nvars) for g in gens):
        return False  # the origin is a common zero
    return None


def check_corollary(n: int, k: int, singular_generators: Sequence[Polynomial]) -> bool:
    """For n <= 3 or k <= 2 the generators must have no common zero."""
    if not (n <= 3 or k <= 2):
        return True
    return has_no_common_zero(singular_generators) is True


def random_point(rng: random.Random, n: int, bound: int = RANDOM_COORD_BOUND) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-bound, bound)) for _ in range(n))


def approach_curves(
    piece: Piece,
    count: int,
    rng: random.Random,
    avoid: Sequence[Piece] = (),
    degree: int = 2,
) -> list[CurveSpec]:
    """Random polynomial curves ending at random points of ``piece``.

    Limit points avoid the other pieces, so they are regular points of the
    union whenever the piece is a graph.
    """
    curves = []
    while len(curves) < count:
        params = [Fraction(rng.randint(-20, 20)) for _ in range(piece.dimension)]
        if isinstance(piece, ParametrizedPiece):
            a0 = piece.point_at(params)
        else:
            a0 = tuple(
                b + sum((p * d[i] for p, d in zip(params, piece.directions)), Fraction(0))
                for i, b in enumerate(piece.basepoint)
            )
        if any(other.contains_point(a0) for other in avoid):
            continue
        rest = [
            tuple(Fraction(rng.randint(-9, 9)) for _ in a0) for _ in range(degree)
        ]
        if not any(any(a) for a in rest):
            continue
        curves.append(CurveSpec((a0, *rest)))
    return curves
