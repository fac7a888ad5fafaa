"""Soft-edge moments: the ring Z[i][C1, C2], Hankel determinants d_n.

C1 = Ai(0) and C2 = Ai'(0) stay formal symbols.  Moments of the complex
measure dz e^{i z^3/3} / (2 pi) are single monomials in C1, C2 and the Hankel
determinants d_n = h_0 h_1 ... h_n are computed exactly in this ring before
numbers are substituted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import mpmath

from .numerics import (
    DEFAULT_DIGITS,
    GUARD_DIGITS,
    GaussianRational,
    I,
    airy_constants,
    exact_det,
)
from .numerics.special import _workdps

Monomial = tuple[int, int]  # exponents of (C1, C2)


class ConsistencyError(ArithmeticError):
    """An internal cross-check failed (for example a stray imaginary part)."""


class AiryPolynomial:
    """Polynomial in C1, C2 with Gaussian-rational coefficients.

    Stored as ``{(p, q): coeff}`` for C1^p C2^q with no zero coefficients.
    Division is exact division only (it raises if the quotient is not a
    polynomial), which is all fraction-free elimination needs.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = GaussianRational.coerce(c)
            if c:
                clean[mono] = c
        self.terms: dict[Monomial, GaussianRational] = clean

    @classmethod
    def c1(cls) -> "AiryPolynomial":
        return cls({(1, 0): 1})

    @classmethod
    def c2(cls) -> "AiryPolynomial":
        return cls({(0, 1): 1})

    @staticmethod
    def _coerce(x) -> "AiryPolynomial":
        if isinstance(x, AiryPolynomial):
            return x
        return AiryPolynomial({(0, 0): x})

    def __add__(self, other):
        o = AiryPolynomial._coerce(other)
        out = dict(self.terms)
        for mono, c in o.terms.items():
            out[mono] = out.get(mono, 0) + c
        return AiryPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return AiryPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-AiryPolynomial._coerce(other))

    def __rsub__(self, other):
        return AiryPolynomial._coerce(other) - self

    def __mul__(self, other):
        o = AiryPolynomial._coerce(other)
        out: dict[Monomial, GaussianRational] = {}
        for (p1, q1), a in self.terms.items():
            for (p2, q2), b in o.terms.items():
                key = (p1 + p2, q1 + q2)
                out[key] = out.get(key, 0) + a * b
        return AiryPolynomial(out)

    __rmul__ = __mul__

    def _leading(self) -> Monomial:
        return max(self.terms)  # lex order, C1 first

    def __truediv__(self, other):
        d = AiryPolynomial._coerce(other)
        if not d.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        lm = d._leading()
        lc = d.terms[lm]
        rem = AiryPolynomial(self.terms)
        quot: dict[Monomial, GaussianRational] = {}
        while rem.terms:
            m = rem._leading()
            p, q = m[0] - lm[0], m[1] - lm[1]
            if p < 0 or q < 0:
                raise ArithmeticError("inexact division in Z[i][C1, C2]")
            c = rem.terms[m] / lc
            quot[(p, q)] = c
            rem = rem - d * AiryPolynomial({(p, q): c})
        return AiryPolynomial(quot)

    def __eq__(self, other):
        try:
            o = AiryPolynomial._coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_real(self) -> bool:
        return all(c.im == 0 for c in self.terms.values())

    def evaluate(self, c1, c2):
        """Return (real part, imaginary part) at numeric C1, C2."""
        re = im = 0
        for (p, q), c in self.terms.items():
            mono = c1**p * c2**q
            re += mono * c.re.numerator / c.re.denominator
            im += mono * c.im.numerator / c.im.denominator
        return re, im

    def __repr__(self):
        return f"AiryPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (p, q) in sorted(self.terms, key=lambda m: (-(m[0] + m[1]), -m[1])):
            c = self.terms[(p, q)]
            mono = "*".join(
                s for s in (
                    "" if p == 0 else ("C1" if p == 1 else f"C1^{p}"),
                    "" if q == 0 else ("C2" if q == 1 else f"C2^{q}"),
                ) if s
            )
            coef = str(c)
            if mono:
                if coef == "1":
                    coef = ""
                elif coef == "-1":
                    coef = "-"
                else:
                    coef += "*"
            parts.append(f"{coef}{mono}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class AiryMomentSequence:
    max_index: int
    moments: tuple[AiryPolynomial, ...]

    def __getitem__(self, n: int) -> AiryPolynomial:
        return self.moments[n]

    def __len__(self):
        return len(self.moments)


def airy_moments(n_max: int) -> AiryMomentSequence:
    """m_0..m_{n_max} from m_0 = C1, m_1 = -i C2, m_2 = 0 and
    m_{n+1} = i (n-1) m_{n-2} (integration by parts against e^{i z^3/3})."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    seq = [AiryPolynomial.c1(), AiryPolynomial.c2() * (-I), AiryPolynomial()]
    for n in range(2, n_max):
        seq.append(seq[n - 2] * (I * (n - 1)))
    return AiryMomentSequence(n_max, tuple(seq[: n_max + 1]))


def airy_moment_closed(n: int) -> AiryPolynomial:
    """m_n = (-i)^n (n-2)(n-5)(n-8)... A_n, the product running over the
    positive terms and A_n = C1, C2, 0 for n = 0, 1, 2 mod 3."""
    if n % 3 == 2:
        return AiryPolynomial()
    coeff = 1
    for j in range(n - 2, 0, -3):
        coeff *= j
    base = AiryPolynomial.c1() if n % 3 == 0 else AiryPolynomial.c2()
    return base * ((-I) ** n * coeff)


def hankel_matrix(moments: AiryMomentSequence | Iterable, n: int):
    m = list(moments)
    if len(m) < 2 * n + 1:
        raise ValueError(f"need {2 * n + 1} moments for the order-{n} Hankel matrix")
    return [[m[i + j] for j in range(n + 1)] for i in range(n + 1)]


def airy_hankel_det(n: int) -> AiryPolynomial:
    """d_n = det[m_{i+j}]_{i,j=0..n} = h_0 h_1 ... h_n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return exact_det(hankel_matrix(airy_moments(2 * n), n))


def airy_hankel_numeric(n: int, digits: int = DEFAULT_DIGITS):
    """Numeric value of d_n; the imaginary part must cancel exactly."""
    poly = airy_hankel_det(n)
    with _workdps(digits + 2):
        c1, c2 = airy_constants(digits + 2)
        re, im = poly.evaluate(c1, c2)
        scale = max(abs(re), mpmath.mpf(10) ** (-(digits + GUARD_DIGITS)))
        if abs(im) > scale * mpmath.mpf(10) ** (-(digits - GUARD_DIGITS)):
            raise ConsistencyError(f"d_{n} has a nonzero imaginary part {im}")
        return +re


def edge_gamma(K: int, digits: int = DEFAULT_DIGITS):
    """Edge analogue of gamma_K: prod_{l=0}^{2K-1} h_l = d_{2K-1}."""
    if K < 1:
        raise ValueError("K must be positive")
    return airy_hankel_numeric(2 * K - 1, digits)


def airy_series(y, digits: int = DEFAULT_DIGITS, terms: int | None = None):
    """Ai(y) from its Maclaurin series C1 f(y) + C2 g(y).

    f = sum 3^k (1/3)_k y^{3k}/(3k)!, g = sum 3^k (2/3)_k y^{3k+1}/(3k+1)!;
    each coefficient is an exact rational, summed until terms fall below the
    working precision.
    """
    with _workdps(digits + 5):
        c1, c2 = airy_constants(digits + 5)
        yy = mpmath.mpf(y) if not isinstance(y, Fraction) else mpmath.mpf(y.numerator) / y.denominator
        f_coef = Fraction(1)
        g_coef = Fraction(1)
        total = 0
        eps = mpmath.mpf(10) ** (-(digits + GUARD_DIGITS + 2))
        k = 0
        while True:
            tf = f_coef.numerator * yy ** (3 * k) / f_coef.denominator
            tg = g_coef.numerator * yy ** (3 * k + 1) / g_coef.denominator
            total += c1 * tf + c2 * tg
            if terms is not None and k + 1 >= terms:
                break
            if k > 2 and abs(tf) + abs(tg) < eps * max(abs(total), eps):
                break
            # 3^k (1/3)_k gains the factor 3k+1, (3k)! gains (3k+1)(3k+2)(3k+3)
            f_coef *= Fraction(3 * k + 1, (3 * k + 1) * (3 * k + 2) * (3 * k + 3))
            g_coef *= Fraction(3 * k + 2, (3 * k + 2) * (3 * k + 3) * (3 * k + 4))
            k += 1
        return total
