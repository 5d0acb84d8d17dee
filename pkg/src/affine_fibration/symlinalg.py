"""Linear algebra over Q[x1..xn] and its fraction field.

Ranks and kernels are computed by fraction-free (Bareiss) elimination so all
intermediate entries stay polynomial.  A plain fraction-field eliminator over
:class:`RationalFunction` is kept alongside as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .polyalg import (
    Polynomial,
    RationalFunction,
    Scalar,
    exact_div,
    gcd,
    reduce_vector,
)


class KernelEmpty(ValueError):
    """Raised when a kernel is requested for a matrix of full column rank."""


@dataclass(frozen=True)
class PolyMatrix:
    rows: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(self.rows[0])
        nv = self.rows[0][0].nvars
        for r in self.rows:
            if len(r) != width:
                raise ValueError("ragged matrix")
            if any(p.nvars != nv for p in r):
                raise ValueError("all entries must share arity")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Polynomial]]) -> PolyMatrix:
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def from_rationals(cls, rows: Sequence[Sequence[Scalar]], nvars: int = 0) -> PolyMatrix:
        return cls.from_rows([[Polynomial.constant(nvars, c) for c in r] for r in rows])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def nvars(self) -> int:
        return self.rows[0][0].nvars

    def __getitem__(self, ij: tuple[int, int]) -> Polynomial:
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> PolyMatrix:
        return PolyMatrix(tuple(zip(*self.rows)))

    def is_symmetric(self) -> bool:
        return self.rows == self.transpose().rows

    def apply(self, vec: Sequence[Polynomial]) -> tuple[Polynomial, ...]:
        """Matrix-vector product."""
        if len(vec) != self.shape[1]:
            raise ValueError("vector length does not match column count")
        zero = Polynomial.zero(self.nvars)
        out = []
        for r in self.rows:
            acc = zero
            for a, b in zip(r, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def evaluate(self, point: Sequence[Scalar]) -> list[list[Fraction]]:
        return [[p.evaluate(point) for p in r] for r in self.rows]

    def map_entries(self, fn) -> PolyMatrix:
        return PolyMatrix(tuple(tuple(fn(p) for p in r) for r in self.rows))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> PolyMatrix:
        return PolyMatrix(tuple(tuple(self.rows[i][j] for j in cols) for i in rows))


@dataclass(frozen=True)
class Echelon:
    """Result of fraction-free forward elimination."""

    rows: list[list[Polynomial]]
    pivot_cols: tuple[int, ...]
    row_order: tuple[int, ...]  # row_order[i] = original index of echelon row i
    last_pivot: Polynomial


def bareiss_echelon(m: PolyMatrix) -> Echelon:
    """Fraction-free row echelon form.

    Columns are scanned left to right; within a column the nonzero candidate of
    lowest total degree is taken as pivot (ties broken by row index).  Every
    division by the previous pivot is exact.
    """
    nrows, ncols = m.shape
    a = [list(r) for r in m.rows]
    order = list(range(nrows))
    prev = Polynomial.one(m.nvars)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        cands = [i for i in range(r, nrows) if a[i][c]]
        if not cands:
            continue
        p = min(cands, key=lambda i: (a[i][c].total_degree(), len(a[i][c]), i))
        if p != r:
            a[r], a[p] = a[p], a[r]
            order[r], order[p] = order[p], order[r]
        piv = a[r][c]
        for i in range(r + 1, nrows):
            f = a[i][c]
            for j in range(c + 1, ncols):
                val = piv * a[i][j]
                if f and a[r][j]:
                    val = val - f * a[r][j]
                a[i][j] = exact_div(val, prev) if val else val
            a[i][c] = Polynomial.zero(m.nvars)
        # rows above r are final; columns left of c in rows below are zero
        prev = piv
        pivots.append(c)
        r += 1
    return Echelon(a, tuple(pivots), tuple(order), prev)


def bareiss_rank(m: PolyMatrix) -> int:
    """Rank over the rational function field, i.e. the generic rank."""
    return len(bareiss_echelon(m).pivot_cols)


def determinant(m: PolyMatrix) -> Polynomial:
    nrows, ncols = m.shape
    if nrows != ncols:
        raise ValueError("determinant of a non-square matrix")
    ech = bareiss_echelon(m)
    if len(ech.pivot_cols) < nrows:
        return Polynomial.zero(m.nvars)
    # sign of the row permutation
    perm = list(ech.row_order)
    sign = 1
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return ech.last_pivot if sign > 0 else -ech.last_pivot


def rational_echelon(rows: Sequence[Sequence[Scalar]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return [], []
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a[:r], pivots


def rational_rank(rows: Sequence[Sequence[Scalar]]) -> int:
    return len(rational_echelon(rows)[1])


def rational_kernel(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : A x = 0} over Q."""
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    red, pivots = rational_echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def rank_at_point(m: PolyMatrix, point: Sequence[Scalar]) -> int:
    """Exact rank of the matrix evaluated at a rational point."""
    return rational_rank(m.evaluate(point))


@dataclass(frozen=True)
class KernelBasis:
    vectors: tuple[tuple[Polynomial, ...], ...]

    @property
    def n(self) -> int:
        return len(self.vectors[0])

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def as_matrix(self) -> PolyMatrix:
        return PolyMatrix(self.vectors)


def kernel_basis(m: PolyMatrix) -> KernelBasis:
    """Polynomial basis of the right kernel over the fraction field.

    With pivot columns P of the echelon form and R the corresponding original
    rows, each free column f gives, by Cramer's rule,
    ``v = det(R[:, P]) e_f - sum_p det(R[:, P with p -> f]) e_p``.
    Each vector is divided by the gcd of its entries and sign-normalized.
    """
    nrows, ncols = m.shape
    ech = bareiss_echelon(m)
    pivots = list(ech.pivot_cols)
    k = len(pivots)
    if k == ncols:
        raise KernelEmpty("matrix has full column rank; kernel is trivial")
    zero = Polynomial.zero(m.nvars)
    free = [c for c in range(ncols) if c not in pivots]
    if k == 0:
        vecs = []
        for f in free:
            v = [zero] * ncols
            v[f] = Polynomial.one(m.nvars)
            vecs.append(tuple(v))
        return KernelBasis(tuple(vecs))
    base_rows = sorted(ech.row_order[:k])
    sub = m.submatrix(base_rows, range(ncols))
    dP = determinant(sub.submatrix(range(k), pivots))
    vecs = []
    for f in free:
        v = [zero] * ncols
        v[f] = dP
        for idx, p in enumerate(pivots):
            cols = list(pivots)
            cols[idx] = f
            v[p] = -determinant(sub.submatrix(range(k), cols))
        vecs.append(reduce_vector(v))
    return KernelBasis(tuple(vecs))


def minors(m: PolyMatrix, r: int) -> list[Polynomial]:
    """All r x r minors, ordered by row tuple then column tuple (lexicographic)."""
    nrows, ncols = m.shape
    if not 1 <= r <= min(nrows, ncols):
        raise ValueError(f"minor size {r} out of range for a {nrows}x{ncols} matrix")
    out = []
    for rows in combinations(range(nrows), r):
        for cols in combinations(range(ncols), r):
            out.append(determinant(m.submatrix(rows, cols)))
    return out


# ---------------------------------------------------------------------------
# Pluecker coordinates


def sort_with_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation (0 on a repeated index) and the sorted tuple."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, tuple(sorted(idx))
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


@dataclass(frozen=True)
class PlueckerVector:
    subspace_dim: int
    n: int
    coordinates: dict[tuple[int, ...], Polynomial] = field(hash=False)
    reduced: bool = False

    def tuples(self) -> list[tuple[int, ...]]:
        return list(combinations(range(self.n), self.subspace_dim))

    def values(self) -> list[Polynomial]:
        return [self.coordinates[t] for t in self.tuples()]

    def nonzero(self) -> list[Polynomial]:
        return [p for p in self.values() if p]

    def evaluate(self, point: Sequence[Scalar]) -> dict[tuple[int, ...], Fraction]:
        return {t: self.coordinates[t].evaluate(point) for t in self.tuples()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlueckerVector):
            return NotImplemented
        return (
            self.subspace_dim == other.subspace_dim
            and self.n == other.n
            and self.coordinates == other.coordinates
        )

    def __hash__(self) -> int:
        return hash((self.subspace_dim, self.n, tuple(self.values())))


def pluecker_raw(vectors: Sequence[Sequence[Polynomial]]) -> PlueckerVector:
    d = len(vectors)
    if d == 0:
        raise ValueError("cannot take Pluecker coordinates of an empty basis")
    n = len(vectors[0])
    mat = PolyMatrix.from_rows(vectors)
    coords = {
        cols: determinant(mat.submatrix(range(d), cols))
        for cols in combinations(range(n), d)
    }
    return PlueckerVector(d, n, coords, reduced=False)


def reduce_pluecker(pv: PlueckerVector) -> PlueckerVector:
    tuples = pv.tuples()
    vals = reduce_vector([pv.coordinates[t] for t in tuples])
    return PlueckerVector(pv.subspace_dim, pv.n, dict(zip(tuples, vals)), reduced=True)


def pluecker(basis: KernelBasis | Sequence[Sequence[Polynomial]]) -> PlueckerVector:
    """Reduced Pluecker vector of the span of ``basis``."""
    vectors = basis.vectors if isinstance(basis, KernelBasis) else basis
    return reduce_pluecker(pluecker_raw(vectors))


def signed_coordinate(coords: dict[tuple[int, ...], Scalar], idx: Sequence[int]):
    sign, key = sort_with_sign(idx)
    if sign == 0:
        return 0
    return sign * coords[key]


def pluecker_relation_values(coords: dict[tuple[int, ...], Scalar], d: int, n: int) -> list:
    """Values of all quadratic Pluecker relations; all zero on a decomposable vector."""
    out = []
    for small in combinations(range(n), d - 1):
        for big in combinations(range(n), d + 1):
            total = 0
            for l, j in enumerate(big):
                rest = big[:l] + big[l + 1 :]
                total += (-1) ** l * signed_coordinate(coords, small + (j,)) * signed_coordinate(coords, rest)
            out.append(total)
    return out


def spanning_vectors(coords: dict[tuple[int, ...], Scalar], d: int, n: int) -> list[list]:
    """Vectors spanning the subspace with the given Pluecker coordinates.

    For a tuple I with p_I != 0, the vectors j -> p(J + (j,)) over the
    (d-1)-subsets J of I form a basis.
    """
    anchor = next((t for t in combinations(range(n), d) if coords[t] != 0), None)
    if anchor is None:
        raise ValueError("all Pluecker coordinates vanish")
    vecs = []
    for J in combinations(anchor, d - 1):
        vecs.append([signed_coordinate(coords, J + (j,)) for j in range(n)])
    return vecs


# ---------------------------------------------------------------------------
# naive fraction-field elimination (test oracle)


def fraction_field_echelon(m: PolyMatrix) -> tuple[list[list[RationalFunction]], list[int]]:
    """Reduced row echelon form over Q(x), with plain division."""
    nv = m.nvars
    a = [[RationalFunction.from_polynomial(p) for p in r] for r in m.rows]
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if not a[i][c].is_zero()), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = RationalFunction.constant(nv, 1) / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a[:r], pivots


def fraction_field_rank(m: PolyMatrix) -> int:
    return len(fraction_field_echelon(m)[1])


def fraction_field_kernel(m: PolyMatrix) -> KernelBasis:
    """Kernel from the naive echelon form, denominators cleared afterwards."""
    nv = m.nvars
    ncols = m.shape[1]
    red, pivots = fraction_field_echelon(m)
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        raise KernelEmpty("matrix has full column rank; kernel is trivial")
    vecs = []
    for f in free:
        v = [RationalFunction.constant(nv, 0) for _ in range(ncols)]
        v[f] = RationalFunction.constant(nv, 1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        den = Polynomial.one(nv)
        for x in v:
            den = den * exact_div(x.den, gcd(den, x.den))
        vecs.append(reduce_vector([exact_div(x.num * den, x.den) for x in v]))
    return KernelBasis(tuple(vecs))


def same_span(a: Sequence[Sequence[Polynomial]], b: Sequence[Sequence[Polynomial]]) -> bool:
    """True iff two polynomial bases span the same subspace over the fraction field."""
    return pluecker(a) == pluecker(b)


def normalize_vector(v: Sequence[Polynomial]) -> tuple[Polynomial, ...]:
    """Content-cleared, sign-normalized representative of a polynomial vector."""
    return reduce_vector(v)


__all__ = [
    "Echelon",
    "KernelBasis",
    "KernelEmpty",
    "PlueckerVector",
    "PolyMatrix",
    "bareiss_echelon",
    "bareiss_rank",
    "determinant",
    "fraction_field_kernel",
    "fraction_field_rank",
    "kernel_basis",
    "minors",
    "normalize_vector",
    "pluecker",
    "pluecker_raw",
    "pluecker_relation_values",
    "rank_at_point",
    "rational_kernel",
    "rational_rank",
    "reduce_pluecker",
    "same_span",
    "spanning_vectors",
]
