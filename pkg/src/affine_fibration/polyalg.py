"""Exact sparse multivariate polynomials and rational functions over Q.

A polynomial in ``n`` variables is a map from exponent tuples to nonzero
:class:`fractions.Fraction` coefficients.  Terms are ordered by graded reverse
lexicographic order (variable 0 is the largest variable), which fixes the
meaning of "leading term" and makes printing deterministic.

    x0^2*x1 + 3  ->  {(2, 1): Fraction(1), (0, 0): Fraction(3)}

Everything here is exact; zero tests are emptiness tests on the term map.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


def grevlex_key(exp: Exponent) -> tuple:
    """Sort key: larger key means larger monomial in grevlex order."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


def _as_fraction(c: Scalar) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


class Polynomial:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("nvars", "_terms", "_sorted", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Scalar] | None = None):
        if nvars < 0:
            raise ValueError("number of variables must be non-negative")
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != nvars:
                    raise ValueError(
                        f"exponent {exp} has length {len(exp)}, expected {nvars}"
                    )
                c = _as_fraction(c)
                if c != 0:
                    clean[tuple(exp)] = c
        self._terms = clean
        self._sorted: list[tuple[Exponent, Fraction]] | None = None
        self._hash: int | None = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> Polynomial:
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._sorted = None
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c: Scalar) -> Polynomial:
        c = _as_fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars: int) -> Polynomial:
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, i: int) -> Polynomial:
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[i] = 1
        return cls._raw(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def variables(cls, nvars: int) -> tuple[Polynomial, ...]:
        return tuple(cls.variable(nvars, i) for i in range(nvars))

    @classmethod
    def monomial(cls, exp: Sequence[int], c: Scalar = 1) -> Polynomial:
        exp = tuple(exp)
        return cls(len(exp), {exp: c})

    # basic queries

    def terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in decreasing grevlex order."""
        if self._sorted is None:
            self._sorted = sorted(
                self._terms.items(), key=lambda kv: grevlex_key(kv[0]), reverse=True
            )
        return self._sorted

    def as_dict(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self.terms())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (
            len(self._terms) == 1 and (0,) * self.nvars in self._terms
        )

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms()[0]

    def leading_monomial(self) -> Exponent:
        return self.leading_term()[0]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree(self, i: int) -> int:
        """Degree in variable ``i``; -1 for the zero polynomial."""
        return max((e[i] for e in self._terms), default=-1)

    def support(self) -> set[int]:
        """Indices of the variables that actually occur."""
        out: set[int] = set()
        for e in self._terms:
            out.update(i for i, k in enumerate(e) if k)
        return out

    # arithmetic

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError(
                    f"arity mismatch: {self.nvars} vs {other.nvars} variables"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return Polynomial.zero(self.nvars)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return Polynomial._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> Polynomial:
        c = _as_fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {e: c * v for e, v in self._terms.items()})

    def __pow__(self, k: int) -> Polynomial:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, exp: Exponent, c: Scalar = 1) -> Polynomial:
        c = _as_fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(
            self.nvars,
            {tuple(x + y for x, y in zip(e, exp)): v * c for e, v in self._terms.items()},
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        names = [f"x{i + 1}" for i in range(self.nvars)]
        return f"Polynomial({format_polynomial(self, names)!r})"

    # calculus and evaluation

    def derivative(self, i: int) -> Polynomial:
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        out: dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Polynomial._raw(self.nvars, out)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has length {len(point)}, expected {self.nvars}")
        pt = [_as_fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for v, k in zip(pt, e):
                if k:
                    term *= v**k
            total += term
        return total

    def compose(self, args: Sequence[Polynomial]) -> Polynomial:
        """Substitute polynomial ``args[i]`` for variable ``i``."""
        if len(args) != self.nvars:
            raise ValueError(f"expected {self.nvars} arguments, got {len(args)}")
        if not args:
            return self
        m = args[0].nvars
        if any(a.nvars != m for a in args):
            raise ValueError("substituted polynomials must share arity")
        powers: list[list[Polynomial]] = [[Polynomial.one(m)] for _ in args]

        def power(i: int, k: int) -> Polynomial:
            cache = powers[i]
            while len(cache) <= k:
                cache.append(cache[-1] * args[i])
            return cache[k]

        out = Polynomial.zero(m)
        for e, c in self._terms.items():
            term = Polynomial.constant(m, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def extend(self, nvars: int, offset: int = 0) -> Polynomial:
        """Embed into a ring with ``nvars`` variables, shifting indices by ``offset``."""
        if offset + self.nvars > nvars:
            raise ValueError("target ring too small")
        pad_l, pad_r = (0,) * offset, (0,) * (nvars - offset - self.nvars)
        return Polynomial._raw(nvars, {pad_l + e + pad_r: c for e, c in self._terms.items()})

    # coefficient manipulation

    def coefficients_in(self, i: int) -> dict[int, Polynomial]:
        """View as a polynomial in variable ``i``: degree -> coefficient free of ``i``."""
        parts: dict[int, dict[Exponent, Fraction]] = {}
        for e, c in self._terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1 :]
            parts.setdefault(k, {})[ne] = c
        return {k: Polynomial._raw(self.nvars, t) for k, t in parts.items()}

    def rational_content(self) -> Fraction:
        """Positive rational c such that self / c has coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self._terms.values():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def normalized(self) -> Polynomial:
        """Integer-primitive associate with positive leading coefficient (0 stays 0)."""
        if not self._terms:
            return self
        c = self.rational_content()
        if self.leading_coefficient() < 0:
            c = -c
        if c == 1:
            return self
        return self.scale(1 / c)

    def monic(self) -> Polynomial:
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient())


# ---------------------------------------------------------------------------
# functional interface


def _check_arity(a: Polynomial, b: Polynomial) -> None:
    if a.nvars != b.nvars:
        raise ValueError(f"arity mismatch: {a.nvars} vs {b.nvars} variables")


def add(a: Polynomial, b: Polynomial) -> Polynomial:
    _check_arity(a, b)
    return a + b


def mul(a: Polynomial, b: Polynomial) -> Polynomial:
    _check_arity(a, b)
    return a * b


def partial_derivative(p: Polynomial, i: int) -> Polynomial:
    return p.derivative(i)


def evaluate(p: Polynomial, point: Sequence[Scalar]) -> Fraction:
    return p.evaluate(point)


# ---------------------------------------------------------------------------
# division


def divmod_poly(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Multivariate division of ``a`` by the single divisor ``b`` (grevlex).

    The remainder is zero exactly when ``b`` divides ``a``.
    """
    _check_arity(a, b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lb, cb = b.leading_term()
    rem = dict(a._terms)
    quot: dict[Exponent, Fraction] = {}
    out_rem: dict[Exponent, Fraction] = {}
    b_items = list(b._terms.items())
    while rem:
        lr = max(rem, key=grevlex_key)
        cr = rem[lr]
        if all(x >= y for x, y in zip(lr, lb)):
            qe = tuple(x - y for x, y in zip(lr, lb))
            qc = cr / cb
            quot[qe] = quot.get(qe, 0) + qc
            for e, c in b_items:
                ne = tuple(x + y for x, y in zip(e, qe))
                v = rem.get(ne, 0) - qc * c
                if v:
                    rem[ne] = v
                else:
                    rem.pop(ne, None)
        else:
            out_rem[lr] = cr
            del rem[lr]
    return (
        Polynomial._raw(a.nvars, {e: c for e, c in quot.items() if c}),
        Polynomial._raw(a.nvars, out_rem),
    )


def divides(b: Polynomial, a: Polynomial) -> bool:
    """True iff ``b`` divides ``a`` exactly."""
    if b.is_zero():
        return a.is_zero()
    return divmod_poly(a, b)[1].is_zero()


def exact_div(a: Polynomial, b: Polynomial) -> Polynomial:
    """Quotient a / b; raises ArithmeticError when the division is not exact."""
    if b.is_constant():
        if b.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        return a.scale(1 / b.constant_value())
    q, r = divmod_poly(a, b)
    if not r.is_zero():
        raise ArithmeticError("polynomial division is not exact")
    return q


# ---------------------------------------------------------------------------
# gcd

_GCD_RNG_SEED = 0x5EED


def _monomial_content(p: Polynomial) -> Exponent:
    exps = iter(p._terms)
    low = list(next(exps))
    for e in exps:
        low = [min(x, y) for x, y in zip(low, e)]
    return tuple(low)


def _divide_monomial(p: Polynomial, m: Exponent) -> Polynomial:
    if not any(m):
        return p
    return Polynomial._raw(
        p.nvars, {tuple(x - y for x, y in zip(e, m)): c for e, c in p._terms.items()}
    )


def _uni_restrict(p: Polynomial, base: Sequence[Fraction], direction: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients (low to high) of s -> p(base + s*direction)."""
    line = [
        Polynomial(1, {(0,): b, (1,): d}) for b, d in zip(base, direction)
    ]
    q = p.compose(line)
    deg = q.total_degree()
    return [q.coefficient((k,)) for k in range(deg + 1)]


def _uni_gcd_degree(a: list[Fraction], b: list[Fraction]) -> int:
    """Degree of gcd of two dense univariate polynomials over Q."""
    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(list(a)), trim(list(b))
    while b:
        # a mod b
        a = list(a)
        while len(a) >= len(b) and a:
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[shift + i] -= f * c
            trim(a)
        a, b = b, a
    return len(a) - 1


def _coprime_precheck(a: Polynomial, b: Polynomial) -> bool:
    """Sound sufficient test for gcd(a, b) = 1 via restriction to a random line.

    A direction ``d`` with a_top(d) != 0 keeps every divisor of ``a`` at full
    degree on the line, so a constant restricted gcd certifies coprimality.
    """
    rng = random.Random(_GCD_RNG_SEED + len(a) * 31 + len(b))
    n = a.nvars
    top_deg = a.total_degree()
    top = Polynomial._raw(n, {e: c for e, c in a._terms.items() if sum(e) == top_deg})
    for _ in range(3):
        d = [Fraction(rng.randint(-97, 97)) for _ in range(n)]
        if top.evaluate(d) == 0:
            continue
        base = [Fraction(rng.randint(-97, 97)) for _ in range(n)]
        ua = _uni_restrict(a, base, d)
        ub = _uni_restrict(b, base, d)
        return _uni_gcd_degree(ua, ub) == 0
    return False


def _content_in(p: Polynomial, v: int) -> Polynomial:
    g: Polynomial | None = None
    for _, c in sorted(p.coefficients_in(v).items()):
        g = c if g is None else _gcd(g, c)
        if g.is_constant():
            return Polynomial.one(p.nvars)
    assert g is not None
    return g.normalized()


def _to_uni(p: Polynomial, v: int) -> list[Polynomial]:
    parts = p.coefficients_in(v)
    deg = max(parts)
    zero = Polynomial.zero(p.nvars)
    return [parts.get(k, zero) for k in range(deg + 1)]


def _from_uni(coeffs: Sequence[Polynomial], v: int) -> Polynomial:
    n = coeffs[0].nvars
    out = Polynomial.zero(n)
    for k, c in enumerate(coeffs):
        if c:
            e = [0] * n
            e[v] = k
            out = out + c.mul_monomial(tuple(e))
    return out


def _uni_trim(p: list[Polynomial]) -> list[Polynomial]:
    while p and p[-1].is_zero():
        p.pop()
    return p


def _prem(a: list[Polynomial], b: list[Polynomial]) -> list[Polynomial]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b over the coefficient ring."""
    lb = b[-1]
    db = len(b) - 1
    r = list(a)
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        s = len(r) - 1 - db
        r = [c * lb for c in r]
        for i, c in enumerate(b):
            r[s + i] = r[s + i] - lr * c
        _uni_trim(r)
        e -= 1
    if e > 0 and r:
        f = lb**e
        r = [c * f for c in r]
    return r


def _subresultant_gcd(a: list[Polynomial], b: list[Polynomial]) -> list[Polynomial]:
    """Last nonzero subresultant of two primitive univariate polynomials."""
    if len(a) < len(b):
        a, b = b, a
    n = a[0].nvars
    g = Polynomial.one(n)
    h = Polynomial.one(n)
    while True:
        d = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            return b
        if len(r) == 1:
            return [Polynomial.one(n)]
        divisor = g * h**d
        a, b = b, [exact_div(c, divisor) for c in r]
        g = a[-1]
        if d == 0:
            pass
        elif d == 1:
            h = g
        else:
            h = exact_div(g**d, h ** (d - 1))


def _gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    n = a.nvars
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.is_constant() or b.is_constant():
        return Polynomial.one(n)
    ma, mb = _monomial_content(a), _monomial_content(b)
    mono = tuple(min(x, y) for x, y in zip(ma, mb))
    a, b = _divide_monomial(a, ma), _divide_monomial(b, mb)
    mono_poly = Polynomial.monomial(mono) if n else Polynomial.one(0)
    if a.is_constant() or b.is_constant():
        return mono_poly
    if a.is_monomial() or b.is_monomial():
        # after stripping monomial content, a monomial is a constant
        return mono_poly
    if a == b or a == -b:
        return mono_poly * a
    sa, sb = a.support(), b.support()
    for v in sorted(sa | sb):
        if v in sa and v not in sb:
            return mono_poly * _gcd(_content_in(a, v), b)
        if v in sb and v not in sa:
            return mono_poly * _gcd(a, _content_in(b, v))
    if _coprime_precheck(a, b) or _coprime_precheck(b, a):
        return mono_poly
    v = min(sa, key=lambda i: (max(a.degree(i), b.degree(i)), i))
    ca, cb = _content_in(a, v), _content_in(b, v)
    c = _gcd(ca, cb)
    pa, pb = exact_div(a, ca), exact_div(b, cb)
    g = _from_uni(_subresultant_gcd(_to_uni(pa, v), _to_uni(pb, v)), v)
    if g.degree(v) > 0:
        g = exact_div(g, _content_in(g, v))
    else:
        g = Polynomial.one(n)
    return mono_poly * c * g


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Greatest common divisor, integer-primitive with positive leading coefficient."""
    _check_arity(a, b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    return _gcd(a, b).normalized()


def gcd_many(polys: Iterable[Polynomial]) -> Polynomial:
    g: Polynomial | None = None
    for p in polys:
        if p.is_zero():
            continue
        g = p.normalized() if g is None else gcd(g, p)
        if g.is_constant():
            return g
    if g is None:
        raise ValueError("gcd of zero polynomials is undefined")
    return g


def primitive_vector(polys: Sequence[Polynomial]) -> tuple[Polynomial, ...]:
    """Scale a vector by a rational so its coefficients are coprime integers and
    the first nonzero entry has positive leading coefficient."""
    nonzero = [p for p in polys if p]
    if not nonzero:
        return tuple(polys)
    num = 0
    den = 1
    for p in nonzero:
        c = p.rational_content()
        num = math.gcd(num, c.numerator)
        den = den * c.denominator // math.gcd(den, c.denominator)
    scale = Fraction(den, num)
    if nonzero[0].leading_coefficient() < 0:
        scale = -scale
    return tuple(p.scale(scale) for p in polys)


def reduce_vector(polys: Sequence[Polynomial]) -> tuple[Polynomial, ...]:
    """Divide a polynomial vector by the gcd of its entries, then normalize."""
    if not any(polys):
        return tuple(polys)
    g = gcd_many(polys)
    if not g.is_constant():
        polys = [exact_div(p, g) for p in polys]
    return primitive_vector(polys)


# ---------------------------------------------------------------------------
# rational functions


class RationalFunction:
    """Quotient num/den of coprime polynomials; den is monic in grevlex order."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None, *, reduce: bool = True):
        if den is None:
            den = Polynomial.one(num.nvars)
        _check_arity(num, den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = Polynomial.one(num.nvars)
        elif reduce and not den.is_constant():
            g = _gcd(num, den)
            if not g.is_constant():
                num, den = exact_div(num, g), exact_div(den, g)
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num.scale(1 / lc), den.scale(1 / lc)
        self.num = num
        self.den = den

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> RationalFunction:
        return cls(p, Polynomial.one(p.nvars), reduce=False)

    @classmethod
    def constant(cls, nvars: int, c: Scalar) -> RationalFunction:
        return cls.from_polynomial(Polynomial.constant(nvars, c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def _coerce(self, other) -> RationalFunction:
        if isinstance(other, RationalFunction):
            _check_arity(self.num, other.num)
            return other
        if isinstance(other, Polynomial):
            return RationalFunction.from_polynomial(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other) -> RationalFunction:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other) -> RationalFunction:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> RationalFunction:
        return (-self) + other

    def __mul__(self, other) -> RationalFunction:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RationalFunction:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, k: int) -> RationalFunction:
        return RationalFunction(self.num**k, self.den**k, reduce=False)

    def __eq__(self, other) -> bool:
        if isinstance(other, (Polynomial, int, Fraction)):
            other = self._coerce(other)
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return self.num.evaluate(point) / d


def substitute(p: Polynomial, args: Sequence[RationalFunction | Polynomial]) -> RationalFunction:
    """Evaluate ``p`` at rational-function arguments, clearing denominators."""
    if len(args) != p.nvars:
        raise ValueError(f"expected {p.nvars} arguments, got {len(args)}")
    rargs = [
        a if isinstance(a, RationalFunction) else RationalFunction.from_polynomial(a)
        for a in args
    ]
    if not rargs:
        return RationalFunction.from_polynomial(p)
    m = rargs[0].nvars
    if any(a.nvars != m for a in rargs):
        raise ValueError("substituted functions must share arity")
    degs = [p.degree(i) for i in range(p.nvars)]
    # p(n/d) * prod d_i^deg_i is a polynomial
    nums = [a.num for a in rargs]
    dens = [a.den for a in rargs]
    num_pows = [[Polynomial.one(m)] for _ in rargs]
    den_pows = [[Polynomial.one(m)] for _ in rargs]

    def pw(cache: list[Polynomial], base: Polynomial, k: int) -> Polynomial:
        while len(cache) <= k:
            cache.append(cache[-1] * base)
        return cache[k]

    total = Polynomial.zero(m)
    for e, c in p.terms():
        term = Polynomial.constant(m, c)
        for i, k in enumerate(e):
            if degs[i] <= 0:
                continue
            term = term * pw(num_pows[i], nums[i], k) * pw(den_pows[i], dens[i], degs[i] - k)
        total = total + term
    den = Polynomial.one(m)
    for i, d in enumerate(dens):
        if degs[i] > 0:
            den = den * pw(den_pows[i], d, degs[i])
    return RationalFunction(total, den)


# ---------------------------------------------------------------------------
# printing


def _format_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial, names: Sequence[str]) -> str:
    """Render in the CLI grammar, e.g. ``x1*x2^2 - 3/2*x3 + 1``."""
    if len(names) != p.nvars:
        raise ValueError(f"expected {p.nvars} variable names, got {len(names)}")
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for idx, (e, c) in enumerate(p.terms()):
        factors = []
        for name, k in zip(names, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        mag = abs(c)
        if not factors:
            body = _format_fraction(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _format_fraction(mag) + "*" + "*".join(factors)
        if idx == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)
