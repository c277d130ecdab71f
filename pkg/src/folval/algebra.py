"""Exact polynomial arithmetic over the rationals.

Two carriers live here:

* :class:`Poly` -- sparse multivariate polynomial (bivariate for germs,
  trivariate for projective forms) keyed by exponent tuples.
* :class:`UPoly` -- dense univariate polynomial, used for parametrizations
  ``t -> (x(t), y(t))``, for restrictions of forms to a divisor, and as the
  coefficient ring in the bivariate GCD and resultant routines.

Coefficients are :class:`fractions.Fraction` throughout; nothing is ever
rounded.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import UndefinedOrderError

Exponent = tuple[int, ...]
Scalar = int | Fraction

VARIABLE_NAMES = ("x", "y", "z")


def _frac(c: Scalar) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Poly:
    """Sparse polynomial with rational coefficients in ``nvars`` variables.

    Instances are immutable; zero coefficients are never stored, so two
    polynomials are equal iff their term dictionaries are equal.
    """

    __slots__ = ("_terms", "nvars", "_hash")

    def __init__(self, terms: Mapping[Exponent, Scalar] | None = None, nvars: int = 2):
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {nvars} variables")
            c = _frac(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self._terms = clean
        self.nvars = nvars
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, Fraction], nvars: int) -> Poly:
        obj = cls.__new__(cls)
        obj._terms = terms
        obj.nvars = nvars
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars: int = 2) -> Poly:
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c: Scalar, nvars: int = 2) -> Poly:
        c = _frac(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int = 2) -> Poly:
        exp = tuple(1 if k == i else 0 for k in range(nvars))
        return cls._raw({exp: Fraction(1)}, nvars)

    @classmethod
    def monomial(cls, exp: Sequence[int], c: Scalar = 1) -> Poly:
        return cls({tuple(exp): c}, len(exp))

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self._terms.items())

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def order(self) -> int:
        """Lowest total degree of a term (the order at the origin)."""
        if not self._terms:
            raise UndefinedOrderError("the zero polynomial has no order")
        return min(sum(e) for e in self._terms)

    def order_in(self, i: int) -> int:
        """Largest ``k`` with ``var_i ** k`` dividing the polynomial."""
        if not self._terms:
            raise UndefinedOrderError("the zero polynomial has no order")
        return min(e[i] for e in self._terms)

    def degree_in(self, i: int) -> int:
        if not self._terms:
            return -1
        return max(e[i] for e in self._terms)

    def homogeneous_part(self, d: int) -> Poly:
        return Poly._raw({e: c for e, c in self._terms.items() if sum(e) == d}, self.nvars)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def leading_term(self) -> tuple[Exponent, Fraction]:
        """Lex-largest term (first variable most significant)."""
        exp = max(self._terms)
        return exp, self._terms[exp]

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other: Poly | Scalar) -> Poly:
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other, self.nvars)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Poly | Scalar) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other: Poly | Scalar) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> Poly:
        return (-self) + other

    def __mul__(self, other: Poly | Scalar) -> Poly:
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly.zero(self.nvars)
            c = _frac(other)
            return Poly._raw({e: v * c for e, v in self._terms.items()}, self.nvars)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._raw({e: c for e, c in out.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative exponent")
        result = Poly.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: Scalar) -> Poly:
        return self * c

    def __truediv__(self, c: Scalar) -> Poly:
        if isinstance(c, Poly):
            return self.exact_div(c)
        c = _frac(c)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return Poly._raw({e: v / c for e, v in self._terms.items()}, self.nvars)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Poly.constant(other, self.nvars)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def shift_down(self, exp: Sequence[int]) -> Poly:
        """Divide by the monomial with exponent ``exp`` (must divide exactly)."""
        out = {}
        for e, c in self._terms.items():
            ne = tuple(a - b for a, b in zip(e, exp))
            if min(ne) < 0:
                raise ArithmeticError("monomial does not divide polynomial")
            out[ne] = c
        return Poly._raw(out, self.nvars)

    def exact_div(self, other: Poly) -> Poly:
        """Quotient of an exact division; raises if the division is not exact."""
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        lead_e, lead_c = other.leading_term()
        rem = self
        quot: dict[Exponent, Fraction] = {}
        while rem:
            e, c = rem.leading_term()
            qe = tuple(a - b for a, b in zip(e, lead_e))
            if min(qe) < 0:
                raise ArithmeticError("polynomial division is not exact")
            qc = c / lead_c
            quot[qe] = qc
            rem = rem - other * Poly._raw({qe: qc}, self.nvars)
        return Poly._raw(quot, self.nvars)

    def diff(self, i: int) -> Poly:
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Poly._raw(out, self.nvars)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for v, k in zip(point, e):
                if k:
                    term *= _frac(v) ** k
            total += term
        return total

    def substitute(self, images: Sequence[Poly]) -> Poly:
        """Compose: replace variable ``i`` with ``images[i]``.

        All images must share one ring; the result lives in that ring.
        """
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].nvars
        powers: list[dict[int, Poly]] = [{0: Poly.constant(1, target), 1: im} for im in images]

        def power(i: int, k: int) -> Poly:
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        out: dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            term = Poly.constant(c, target)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            for te, tc in term._terms.items():
                out[te] = out.get(te, 0) + tc
        return Poly._raw({e: c for e, c in out.items() if c}, target)

    def restrict(self, i: int, value: Scalar) -> Poly:
        """Set variable ``i`` to a constant, keeping the ring."""
        images = [Poly.var(k, self.nvars) for k in range(self.nvars)]
        images[i] = Poly.constant(value, self.nvars)
        return self.substitute(images)

    def to_upoly(self, i: int) -> UPoly:
        """View a polynomial involving only variable ``i`` as a UPoly."""
        coeffs: dict[int, Fraction] = {}
        for e, c in self._terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial involves other variables")
            coeffs[e[i]] = c
        return UPoly.from_dict(coeffs)

    @classmethod
    def from_upoly(cls, u: UPoly, i: int, nvars: int = 2) -> Poly:
        out = {}
        for k, c in enumerate(u.coeffs):
            if c:
                out[tuple(k if j == i else 0 for j in range(nvars))] = c
        return cls._raw(out, nvars)

    def content(self) -> Fraction:
        """Positive rational c such that self / c has coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self._terms.values():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def normalized(self) -> Poly:
        """Content 1 and positive lex-leading coefficient; zero stays zero."""
        if not self._terms:
            return self
        c = self.content()
        if self.leading_term()[1] < 0:
            c = -c
        return self / c

    # -- display ------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: (-sum(t[0]), tuple(-k for k in t[0])))

    def format(self, names: Sequence[str] = VARIABLE_NAMES) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Poly({self.format()!r}, nvars={self.nvars})"


X = Poly.var(0, 2)
Y = Poly.var(1, 2)
ONE = Poly.constant(1, 2)


def order_at_origin(p: Poly) -> int:
    return p.order()


def homogeneous_part(p: Poly, d: int) -> Poly:
    return p.homogeneous_part(d)


def substitute(p: Poly, x_expr: Poly, y_expr: Poly) -> Poly:
    return p.substitute([x_expr, y_expr])


# ---------------------------------------------------------------------------
# Univariate polynomials
# ---------------------------------------------------------------------------


class UPoly:
    """Dense univariate polynomial over Q, coefficients stored low to high."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def from_dict(cls, d: Mapping[int, Scalar]) -> UPoly:
        if not d:
            return cls()
        n = max(d) + 1
        return cls(d.get(k, 0) for k in range(n))

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> UPoly:
        return cls([0] * k + [c])

    @classmethod
    def constant(cls, c: Scalar) -> UPoly:
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def ord(self) -> int:
        """Lowest exponent with nonzero coefficient (``ord_t``)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        raise UndefinedOrderError("the zero polynomial has no order")

    def __call__(self, t: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def _c(self, other: UPoly | Scalar) -> UPoly:
        return other if isinstance(other, UPoly) else UPoly([other])

    def __add__(self, other: UPoly | Scalar) -> UPoly:
        o = self._c(other).coeffs
        a = self.coeffs
        n = max(len(a), len(o))
        return UPoly((a[k] if k < len(a) else 0) + (o[k] if k < len(o) else 0) for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> UPoly:
        return UPoly(-c for c in self.coeffs)

    def __sub__(self, other: UPoly | Scalar) -> UPoly:
        return self + (-self._c(other))

    def __rsub__(self, other: Scalar) -> UPoly:
        return (-self) + other

    def __mul__(self, other: UPoly | Scalar) -> UPoly:
        if not isinstance(other, UPoly):
            c = _frac(other)
            return UPoly(v * c for v in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> UPoly:
        result = UPoly([1])
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def divmod(self, other: UPoly) -> tuple[UPoly, UPoly]:
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        db = other.degree
        lc = other.lc()
        if len(rem) - 1 < db:
            return UPoly(), self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                q = c / lc
                quot[k - db] = q
                for j, cb in enumerate(other.coeffs):
                    rem[k - db + j] -= q * cb
        return UPoly(quot), UPoly(rem[:db] if db > 0 else [])

    def __floordiv__(self, other: UPoly) -> UPoly:
        return self.divmod(other)[0]

    def __mod__(self, other: UPoly) -> UPoly:
        return self.divmod(other)[1]

    def exact_div(self, other: UPoly) -> UPoly:
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def monic(self) -> UPoly:
        if self.is_zero:
            return self
        return self * (1 / self.lc())

    def derivative(self) -> UPoly:
        return UPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def compose(self, other: UPoly) -> UPoly:
        acc = UPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def shift(self, a: Scalar) -> UPoly:
        """Return p(t + a)."""
        return self.compose(UPoly([a, 1]))

    def primitive_integer(self) -> tuple[int, ...]:
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if self.is_zero:
            return ()
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        sign = -1 if ints[-1] < 0 else 1
        return tuple(sign * v // g for v in ints)

    def format(self, name: str = "t") -> str:
        p = Poly({(k,): c for k, c in enumerate(self.coeffs)}, 1)
        return p.format((name,))

    def __repr__(self) -> str:
        return f"UPoly({self.format()!r})"


ParamPoly = UPoly


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd over Q (zero if both are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def upoly_xgcd(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly, UPoly]:
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = a, b
    s0, s1 = UPoly([1]), UPoly()
    t0, t1 = UPoly(), UPoly([1])
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    inv = 1 / r0.lc()
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_decomposition(p: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm: monic squarefree coprime factors with multiplicities."""
    if p.degree < 1:
        return []
    out: list[tuple[UPoly, int]] = []
    dp = p.derivative()
    a = upoly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    k = 1
    while b.degree >= 1:
        a = upoly_gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree >= 1:
            out.append((a.monic(), k))
        k += 1
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    factors: dict[int, int] = {}
    m = n
    f = 2
    while f * f <= m:
        while m % f == 0:
            factors[f] = factors.get(f, 0) + 1
            m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    divs = [1]
    for prime, k in factors.items():
        divs = [d * prime**j for d in divs for j in range(k + 1)]
    return sorted(divs)


def _int_value(ints: Sequence[int], num: int, den: int) -> int:
    """den^n * f(num/den) for integer coefficients, low degree first."""
    n = len(ints) - 1
    acc = 0
    for k, a in enumerate(ints):
        acc += a * num**k * den ** (n - k)
    return acc


def _divides(d: int, n: int) -> bool:
    return n % d == 0 if d else n == 0


def _linear_root(f: UPoly) -> Fraction:
    return -f.coeffs[0] / f.coeffs[1]


def rational_roots(p: UPoly) -> list[tuple[Fraction, int]]:
    """All rational roots with multiplicity, sorted by value."""
    if p.is_zero:
        raise ValueError("the zero polynomial has every number as a root")
    found: set[Fraction] = set()
    rest = p
    while rest.coeffs and not rest.coeffs[0]:
        rest = UPoly(rest.coeffs[1:])
        found.add(Fraction(0))
    for f, _ in squarefree_decomposition(rest) if rest.degree >= 1 else []:
        if f.degree == 1:
            found.add(_linear_root(f))
            continue
        ints = f.primitive_integer()
        f1, fm1 = sum(ints), sum(a * (-1) ** k for k, a in enumerate(ints))
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                if math.gcd(num, den) != 1:
                    continue
                for signed in (num, -num):
                    # a root num/den forces den - num | f(1) and den + num | f(-1)
                    if not _divides(den - signed, f1) or not _divides(den + signed, fm1):
                        continue
                    if _int_value(ints, signed, den) == 0:
                        found.add(Fraction(signed, den))
    roots = []
    for r in found:
        mult = 0
        lin = UPoly([-r, 1])
        q = p
        while True:
            quo, rem = q.divmod(lin)
            if rem:
                break
            q = quo
            mult += 1
        roots.append((r, mult))
    return sorted(roots)


def split_rational_part(p: UPoly) -> tuple[list[tuple[Fraction, int]], UPoly]:
    """Return (rational roots with multiplicity, monic cofactor free of rational roots)."""
    roots = rational_roots(p)
    rest = p
    for r, m in roots:
        rest = rest.exact_div(UPoly([-r, 1]) ** m)
    return roots, rest.monic()


# ---------------------------------------------------------------------------
# Bivariate GCD via Q[x][y]
# ---------------------------------------------------------------------------


def _to_y_coeffs(p: Poly, var: int) -> dict[int, UPoly]:
    """View bivariate ``p`` as a polynomial in variable ``var`` over Q[other]."""
    other = 1 - var
    buckets: dict[int, dict[int, Fraction]] = {}
    for e, c in p.items():
        buckets.setdefault(e[var], {})[e[other]] = c
    return {k: UPoly.from_dict(v) for k, v in buckets.items()}


def _from_y_coeffs(cs: Mapping[int, UPoly], var: int) -> Poly:
    other = 1 - var
    out: dict[Exponent, Fraction] = {}
    for k, u in cs.items():
        for j, c in enumerate(u.coeffs):
            if c:
                e = [0, 0]
                e[var] = k
                e[other] = j
                out[tuple(e)] = c
    return Poly(out, 2)


def _ydeg(cs: Mapping[int, UPoly]) -> int:
    return max((k for k, v in cs.items() if v), default=-1)


def _content(cs: Mapping[int, UPoly]) -> UPoly:
    g = UPoly()
    for v in cs.values():
        g = upoly_gcd(g, v)
        if g.degree == 0:
            break
    return g


def _prim(cs: Mapping[int, UPoly]) -> dict[int, UPoly]:
    c = _content(cs)
    return {k: v.exact_div(c) for k, v in cs.items() if v}


def _prem(a: dict[int, UPoly], b: dict[int, UPoly]) -> dict[int, UPoly]:
    db = _ydeg(b)
    lb = b[db]
    r = dict(a)
    while True:
        dr = _ydeg(r)
        if dr < db:
            return {k: v for k, v in r.items() if v}
        lr = r[dr]
        shift = dr - db
        new = {k: v * lb for k, v in r.items()}
        for k, v in b.items():
            new[k + shift] = new.get(k + shift, UPoly()) - lr * v
        r = {k: v for k, v in new.items() if v}


def gcd(p: Poly, q: Poly) -> Poly:
    """Normalized gcd of two bivariate polynomials (content 1, positive lead)."""
    if p.nvars != 2 or q.nvars != 2:
        raise ValueError("gcd is implemented for bivariate polynomials")
    if p.is_zero and q.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    if p.is_zero:
        return q.normalized()
    if q.is_zero:
        return p.normalized()
    var = 1
    a = _to_y_coeffs(p, var)
    b = _to_y_coeffs(q, var)
    cont = upoly_gcd(_content(a), _content(b))
    a, b = _prim(a), _prim(b)
    if _ydeg(a) < _ydeg(b):
        a, b = b, a
    while b and _ydeg(b) > 0:
        r = _prem(a, b)
        a, b = b, (_prim(r) if r else {})
    if b:
        # b is a nonzero element of Q[x] after priming, i.e. a unit
        g = {0: UPoly([1])}
    else:
        g = _prim(a)
    result = _from_y_coeffs({k: v * cont for k, v in g.items()}, var)
    return result.normalized()


def coprime(p: Poly, q: Poly) -> bool:
    return gcd(p, q).is_constant()


# ---------------------------------------------------------------------------
# Resultants
# ---------------------------------------------------------------------------


def _det_bareiss(m: list[list[UPoly]]) -> UPoly:
    n = len(m)
    if n == 0:
        return UPoly([1])
    a = [row[:] for row in m]
    sign = 1
    prev = UPoly([1])
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return UPoly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def resultant(p: Poly, q: Poly, var: int) -> UPoly:
    """Sylvester resultant of bivariate p, q eliminating ``var``.

    The result is a univariate polynomial in the remaining variable.
    """
    a = _to_y_coeffs(p, var)
    b = _to_y_coeffs(q, var)
    m, n = _ydeg(a), _ydeg(b)
    if m < 0 or n < 0:
        return UPoly()
    if m == 0 and n == 0:
        return UPoly([1])
    if m == 0:
        return a[0] ** n
    if n == 0:
        return b[0] ** m
    size = m + n
    rows: list[list[UPoly]] = []
    for i in range(n):
        row = [UPoly()] * size
        for k in range(m + 1):
            row[i + m - k] = a.get(k, UPoly())
        rows.append(row)
    for i in range(m):
        row = [UPoly()] * size
        for k in range(n + 1):
            row[i + n - k] = b.get(k, UPoly())
        rows.append(row)
    return _det_bareiss(rows)


def eval_on_param(p: Poly, gamma: tuple[UPoly, UPoly]) -> UPoly:
    """Exact composition ``p(gamma_1(t), gamma_2(t))``."""
    g1, g2 = gamma
    pw1: dict[int, UPoly] = {0: UPoly([1])}
    pw2: dict[int, UPoly] = {0: UPoly([1])}

    def pw(cache: dict[int, UPoly], base: UPoly, k: int) -> UPoly:
        if k not in cache:
            cache[k] = pw(cache, base, k - 1) * base
        return cache[k]

    acc = UPoly()
    for (i, j), c in p.items():
        acc = acc + pw(pw1, g1, i) * pw(pw2, g2, j) * c
    return acc


def modular_inverse(a: UPoly, modulus: UPoly) -> UPoly:
    g, s, _ = upoly_xgcd(a % modulus, modulus)
    if g.degree != 0:
        raise ZeroDivisionError("element is not invertible modulo the polynomial")
    return s % modulus


def rational_values(r: UPoly, modulus: UPoly) -> list[Fraction]:
    """Rational numbers taken by ``r`` at the complex roots of squarefree ``modulus``.

    Uses the characteristic polynomial Res_y(modulus(y), T - r(y)).
    """
    mod_p = Poly.from_upoly(modulus, 1)
    # variables: x <- T, y <- y
    r_p = Poly.from_upoly(r % modulus, 1)
    char = resultant(mod_p, Poly.var(0) - r_p, 1)
    return [v for v, _ in rational_roots(char)] if char else []


__all__ = [
    "Poly",
    "UPoly",
    "ParamPoly",
    "X",
    "Y",
    "ONE",
    "order_at_origin",
    "homogeneous_part",
    "substitute",
    "gcd",
    "coprime",
    "upoly_gcd",
    "upoly_xgcd",
    "squarefree_decomposition",
    "rational_roots",
    "split_rational_part",
    "resultant",
    "eval_on_param",
    "modular_inverse",
    "rational_values",
]
