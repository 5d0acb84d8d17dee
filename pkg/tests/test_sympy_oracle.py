"""Cross-checks against an independent computer algebra system."""

from __future__ import annotations

import random

import pytest

from affine_fibration.catalog import entries
from affine_fibration.parsing import parse_polynomial, print_polynomial
from affine_fibration.polyalg import gcd
from affine_fibration.symlinalg import bareiss_rank, kernel_basis

from helpers import random_poly

sympy = pytest.importorskip("sympy")

NAMES = ("a", "b", "c")


def to_sympy(p, names):
    syms = sympy.symbols(names)
    text = print_polynomial(p, names).replace("^", "**")
    return sympy.sympify(text, locals=dict(zip(names, syms)))


def test_gcd_agrees_with_sympy():
    rng = random.Random(7)
    for _ in range(150):
        common = random_poly(rng, 3, 2, 2)
        a = random_poly(rng, 3, 3, 2) * common
        b = random_poly(rng, 3, 3, 2) * common
        if a.is_zero() and b.is_zero():
            continue
        ours = to_sympy(gcd(a, b), NAMES)
        theirs = sympy.gcd(to_sympy(a, NAMES), to_sympy(b, NAMES))
        assert sympy.simplify(ours / theirs).is_number


@pytest.mark.parametrize("entry", entries(), ids=lambda e: e.id)
def test_catalog_rank_and_kernel_agree_with_sympy(entry):
    jac = entry.holomap().jacobian()
    sym = sympy.Matrix([[to_sympy(x, entry.names) for x in row] for row in jac.rows])
    rank = sym.rank(simplify=True)
    assert bareiss_rank(jac) == rank
    basis = kernel_basis(jac)
    assert basis.dim == entry.n - rank
    for vec in basis.vectors:
        col = sympy.Matrix([to_sympy(x, entry.names) for x in vec])
        assert (sym * col).expand() == sympy.zeros(len(vec), 1)


def test_printed_polynomials_parse_in_sympy():
    rng = random.Random(3)
    for _ in range(100):
        q = random_poly(rng, 3, 5)
        back = parse_polynomial(print_polynomial(q, NAMES), NAMES)
        assert sympy.expand(to_sympy(q, NAMES) - to_sympy(back, NAMES)) == 0
