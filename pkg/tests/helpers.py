"""Shared random generators for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from affine_fibration.polyalg import Polynomial
from affine_fibration.symlinalg import PolyMatrix


def random_poly(rng: random.Random, nvars: int, max_terms: int = 4, max_deg: int = 3, coeff: int = 5) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exp = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        num = rng.randint(-coeff, coeff)
        den = rng.choice((1, 1, 1, 2, 3))
        terms[exp] = Fraction(num, den)
    return Polynomial(nvars, terms)


def random_matrix(rng: random.Random, rows: int, cols: int, nvars: int = 2) -> PolyMatrix:
    """Random polynomial matrix, often rank deficient (built from a low-rank product)."""
    if rng.random() < 0.5:
        return PolyMatrix.from_rows(
            [[random_poly(rng, nvars, 2, 2) for _ in range(cols)] for _ in range(rows)]
        )
    r = rng.randint(1, min(rows, cols))
    left = [[random_poly(rng, nvars, 2, 1) for _ in range(r)] for _ in range(rows)]
    right = [[random_poly(rng, nvars, 2, 1) for _ in range(cols)] for _ in range(r)]
    entries = [
        [sum((left[i][k] * right[k][j] for k in range(r)), Polynomial.zero(nvars)) for j in range(cols)]
        for i in range(rows)
    ]
    return PolyMatrix.from_rows(entries)


def polynomials(nvars: int = 3, max_terms: int = 5, max_deg: int = 3):
    exps = st.tuples(*[st.integers(0, max_deg)] * nvars)
    coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=6)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: Polynomial(nvars, d))
