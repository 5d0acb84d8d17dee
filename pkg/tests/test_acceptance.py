"""Acceptance criteria, one test per criterion (names carry the criterion number)."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import pytest

from affine_fibration.catalog import entries, get_entry
from affine_fibration.conjecture import (
    AffineSubspace,
    Consistent,
    contains_affine_set,
    intersect,
    verify_union_of_affine,
)
from affine_fibration.fibration import (
    CurveSpec,
    GrassmannPoint,
    Singular,
    a2_defects,
    analyze,
    approach_curves,
    check_a2,
    check_tangency,
    check_theorem1_bounds,
    from_potential,
    has_no_common_zero,
    is_essential_singularity,
    limit_along_curve,
    rank_on_affine_set,
)
from affine_fibration.parsing import parse_polynomial, print_polynomial
from affine_fibration.polyalg import Polynomial
from affine_fibration.symlinalg import (
    PolyMatrix,
    bareiss_rank,
    fraction_field_kernel,
    fraction_field_rank,
    kernel_basis,
    normalize_vector,
    pluecker,
    same_span,
)

from helpers import random_matrix, random_poly

X = ("x1", "x2", "x3", "x4")
FAMILY = [f"fam-{k}-{m}" for k, m in product((2, 3), repeat=2)]


def p(text: str, names=X) -> Polynomial:
    return parse_polynomial(text, names)


@pytest.fixture(scope="module")
def ex1():
    return analyze(from_potential(p("x1*x2^2 + (x3 - x2*x4)^2")))


def test_c01_hessian_reproduction(ex1):
    displayed = [
        ["0", "2*x2", "0", "0"],
        ["2*x2", "2*x1 + 2*x4^2", "-2*x4", "4*x2*x4 - 2*x3"],
        ["0", "-2*x4", "2", "-2*x2"],
        ["0", "4*x2*x4 - 2*x3", "-2*x2", "2*x2^2"],
    ]
    expected = PolyMatrix.from_rows([[p(e) for e in row] for row in displayed])
    assert ex1.jacobian.rows == expected.rows


def test_c02_generic_rank(ex1):
    assert bareiss_rank(ex1.jacobian) == 3
    seven = get_entry("seven-var")
    assert bareiss_rank(seven.holomap().jacobian()) == 5


def test_c03_kernel(ex1):
    span = [p("x3 - x2*x4"), p("0"), p("x2^2"), p("x2")]
    assert ex1.kernel.vectors == (normalize_vector(span),)
    for k, m in product((2, 3), repeat=2):
        gmap = from_potential(p(f"x1*x2^{k} + (x3 - x2*x4)^{m}"))
        analysis = analyze(gmap)
        # (m/k (x3 - x2 x4)^(m-1) / x2^(k-1), 0, x2, 1) times x2^(k-1)
        num = p(f"(x3 - x2*x4)^{m - 1}").scale(Fraction(m, k))
        den = p(f"x2^{k - 1}")
        cleared = [num, p("0"), p("x2") * den, den]
        assert analysis.pluecker == pluecker([normalize_vector(cleared)])


def test_c04_stratum_ranks(ex1):
    gmap = ex1.map
    assert rank_on_affine_set(gmap, AffineSubspace.coordinate(4, [1, 2])) == 2
    assert rank_on_affine_set(gmap, AffineSubspace.coordinate(4, [0, 1, 2])) == 1


@pytest.mark.parametrize("entry_id", ["ex1", *FAMILY])
def test_c05_singular_locus(entry_id):
    entry = get_entry(entry_id)
    gens = analyze(entry.holomap()).singular_generators
    plane = AffineSubspace.coordinate(4, [1, 2])
    assert contains_affine_set(gens, plane)
    verdict = verify_union_of_affine(gens, [plane], samples=200, seed=0)
    assert isinstance(verdict, Consistent)
    again = verify_union_of_affine(gens, [plane], samples=200, seed=0)
    assert again == verdict


def test_c06_essential_singularity_witness(ex1):
    def limit(c):
        return limit_along_curve(ex1, CurveSpec(((1, 0, 0, 0), (0, 1, c, 0))))

    flat, tilted = limit(0), limit(1)
    assert flat == GrassmannPoint.from_vectors([(0, 0, 0, 1)])
    assert tilted == GrassmannPoint.from_vectors([(1, 0, 0, 1)])
    assert flat != tilted
    assert isinstance(is_essential_singularity(ex1, (1, 0, 0, 0)), Singular)


def test_c07_theorem1_bounds():
    seen = 0
    for entry in entries():
        for exp in entry.expected_pieces:
            piece = exp.piece(entry.n)
            assert check_theorem1_bounds(entry.n, entry.expected_k, piece.dimension)
            seen += 1
    assert seen >= 8
    allowed = [d for d in range(5) if check_theorem1_bounds(4, 3, d)]
    assert allowed == [2]
    assert get_entry("ex1").expected_pieces[0].piece(4).dimension == 2


def test_c08_tangency(ex1):
    piece = AffineSubspace.coordinate(4, [1, 2])
    e1_e4 = AffineSubspace.coordinate(4, [1, 2])
    assert [list(d) for d in e1_e4.directions] == [[1, 0, 0, 0], [0, 0, 0, 1]]
    curves = approach_curves(piece, 8, random.Random(0))
    for curve in curves:
        a0 = curve.limit_point
        assert a0[1] == a0[2] == 0
        assert check_tangency(limit_along_curve(ex1, curve), e1_e4)
    assert len(curves) >= 5


@pytest.mark.parametrize("entry_id", ["c3-trivial", "linear-rank2"])
def test_c09_corollary_regression(entry_id):
    analysis = analyze(get_entry(entry_id).holomap())
    assert any(g.is_constant() for g in analysis.singular_generators)
    assert has_no_common_zero(analysis.singular_generators) is True


def test_c10_seven_variable_example():
    entry = get_entry("seven-var")
    gens = analyze(entry.holomap()).singular_generators
    pieces = [exp.piece(7) for exp in entry.expected_pieces]
    assert len(pieces) == 2
    for piece in pieces:
        assert contains_affine_set(gens, piece)
    assert intersect(pieces[0], pieces[1]).dimension == 4


@pytest.mark.parametrize("entry_id", [e.id for e in entries() if e.expected_a2])
def test_c11_a2_identity(entry_id):
    gmap = get_entry(entry_id).holomap()
    assert check_a2(gmap) == (True, None)
    assert all(d.is_zero() for d in a2_defects(gmap))


def test_c12_oracle_equivalence():
    rng = random.Random(12)
    for _ in range(100):
        m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        assert bareiss_rank(m) == fraction_field_rank(m)
        if bareiss_rank(m) < m.shape[1]:
            assert same_span(kernel_basis(m).vectors, fraction_field_kernel(m).vectors)

    names = ("a", "b", "c")
    for _ in range(1000):
        q = random_poly(rng, 3, max_terms=6)
        assert parse_polynomial(print_polynomial(q, names), names) == q

    changes = 0
    while changes < 30:
        n, d = rng.randint(2, 5), rng.randint(1, 3)
        d = min(d, n - 1)
        basis = [[random_poly(rng, 2, 2, 1) for _ in range(n)] for _ in range(d)]
        if bareiss_rank(PolyMatrix.from_rows(basis)) < d:
            continue
        changes += 1
        while True:
            r = [[Fraction(rng.randint(-4, 4)) for _ in range(d)] for _ in range(d)]
            if bareiss_rank(PolyMatrix.from_rationals(r, 2)) == d:
                break
        changed = [
            [sum((basis[k][j].scale(r[i][k]) for k in range(d)), Polynomial.zero(2)) for j in range(n)]
            for i in range(d)
        ]
        assert pluecker(changed) == pluecker(basis)
