"""Exact ring types used throughout the package.

Rationals are plain :class:`fractions.Fraction` values.  This module adds the
three rings Fraction does not cover: Gaussian rationals, univariate
polynomials with rational coefficients, and reduced rational functions.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence, Union

ExactRational = Fraction

RationalLike = Union[int, Fraction]


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and decimal/ratio strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class GaussianRational:
    """Complex number ``re + i*im`` with Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return cls(x, 0)

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        p = self * o.conjugate()
        return GaussianRational(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return GaussianRational(1) / (self ** (-k))
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


I = GaussianRational(0, 1)


class Polynomial:
    """Univariate polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        c = [as_fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def constant(cls, c: RationalLike) -> "Polynomial":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @staticmethod
    def _coerce(x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        return Polynomial([x])

    def __add__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        o = Polynomial._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (n - len(o.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        return self + (-Polynomial._coerce(other))

    def __rsub__(self, other):
        return Polynomial._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        o = Polynomial._coerce(other)
        if not self.coeffs or not o.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        o = Polynomial._coerce(other)
        if not o.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(o.coeffs) + 1, 0)
        lead = o.coeffs[-1]
        for k in range(len(q) - 1, -1, -1):
            coef = rem[k + len(o.coeffs) - 1] / lead
            q[k] = coef
            if coef:
                for j, b in enumerate(o.coeffs):
                    rem[k + j] -= coef * b
        return Polynomial(q), Polynomial(rem[: len(o.coeffs) - 1])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, k: int = 1) -> "Polynomial":
        c = list(self.coeffs)
        for _ in range(k):
            c = [i * c[i] for i in range(1, len(c))]
        return Polynomial(c)

    def monic(self) -> "Polynomial":
        lead = self.lead()
        return Polynomial(c / lead for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        try:
            o = Polynomial._coerce(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def format(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}" + (f"*{mono}" if mono else "")
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over the rationals (Euclid)."""
    while b.coeffs:
        a, b = b, a.divmod(b)[1]
    if not a.coeffs:
        return Polynomial([1])
    return a.monic()


class RationalFunction:
    """Reduced ratio of integer-coefficient polynomials in one variable.

    Canonical form: numerator and denominator are coprime, all coefficients
    are integers with no common content, and the denominator's leading
    coefficient is positive.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        n = Polynomial._coerce(num)
        d = Polynomial._coerce(den)
        if not d.coeffs:
            raise ZeroDivisionError("rational function with zero denominator")
        g = poly_gcd(n, d)
        if g.degree > 0:
            n = n.divmod(g)[0]
            d = d.divmod(g)[0]
        allc = n.coeffs + d.coeffs
        scale = Fraction(reduce(lcm, (c.denominator for c in allc), 1))
        ints = [int(c * scale) for c in allc]
        content = reduce(gcd, ints, 0) or 1
        scale /= content
        if d.lead() * scale < 0:
            scale = -scale
        self.num = Polynomial(c * scale for c in n.coeffs)
        self.den = Polynomial(c * scale for c in d.coeffs)

    @classmethod
    def variable(cls) -> "RationalFunction":
        return cls(Polynomial.x())

    @staticmethod
    def _coerce(x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        return RationalFunction(Polynomial._coerce(x))

    def __add__(self, other):
        o = RationalFunction._coerce(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunction._coerce(other))

    def __rsub__(self, other):
        return RationalFunction._coerce(other) - self

    def __mul__(self, other):
        o = RationalFunction._coerce(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalFunction._coerce(other)
        if not o.num.coeffs:
            raise ZeroDivisionError("rational function division by zero")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RationalFunction._coerce(other) / self

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole of rational function at {x}")
        return Fraction(self.num(x)) / d

    def __eq__(self, other):
        try:
            o = RationalFunction._coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num.coeffs)

    def __repr__(self):
        return f"RationalFunction({self.format()})"

    def format(self, var: str = "a") -> str:
        if self.den.coeffs == (Fraction(1),):
            return self.num.format(var)
        return f"({self.num.format(var)})/({self.den.format(var)})"


def falling(top, count: int):
    """Falling product top*(top-1)*...*(top-count+1); 1 when count == 0."""
    out = 1
    for i in range(count):
        out = out * (top - i)
    return out


def rising(base, count: int):
    out = 1
    for i in range(count):
        out = out * (base + i)
    return out


def double_factorial(n: int) -> int:
    """n!! with the conventions 0!! = (-1)!! = 1."""
    if n < -1:
        raise ValueError("double factorial undefined below -1")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def vandermonde(points: Sequence) -> object:
    """prod_{i<j} (x_j - x_i), the determinant of [x_j^i]."""
    out = 1
    for j in range(len(points)):
        for i in range(j):
            out = out * (points[j] - points[i])
    return out
