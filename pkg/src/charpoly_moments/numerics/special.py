"""Arbitrary-precision special functions.

Every public function takes a ``digits`` target and evaluates internally with
``GUARD_DIGITS`` extra decimal digits, so results carry a relative error below
``10**(-digits)``.  Values are returned as :class:`mpmath.mpf` (or ``mpc``)
numbers created at the working precision.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

import mpmath
from mpmath import mp

GUARD_DIGITS = 5
DEFAULT_DIGITS = 30
MAX_TAIL_TERMS = 4000


class DomainError(ValueError):
    """Argument sits on a pole or outside the function's domain."""


class PrecisionError(ArithmeticError):
    """Requested precision not reached within the configured term budget."""

    def __init__(self, message: str, achieved_bound=None):
        super().__init__(message)
        self.achieved_bound = achieved_bound


class Bounded(NamedTuple):
    value: object
    error_bound: object


def to_mp(x):
    """Convert Fraction / int / str / mpf to an mpmath number at current precision."""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return +x
    if isinstance(x, complex):
        return mpmath.mpc(x)
    return mpmath.mpf(x)


def _is_nonpositive_integer(x) -> bool:
    if isinstance(x, Fraction):
        return x.denominator == 1 and x <= 0
    if isinstance(x, int):
        return x <= 0
    return mpmath.isint(x) and x <= 0


def _workdps(digits: int):
    if digits < 1:
        raise ValueError("digits must be a positive integer")
    return mpmath.workdps(digits + GUARD_DIGITS)


def gamma_fn(x, digits: int = DEFAULT_DIGITS):
    """Gamma function; arguments below 1/2 go through the reflection formula."""
    if _is_nonpositive_integer(x):
        raise DomainError(f"Gamma has a pole at {x}")
    with _workdps(digits):
        z = to_mp(x)
        if z < 0.5:
            return mp.pi / (mpmath.sinpi(z) * mpmath.gamma(1 - z))
        return mpmath.gamma(z)


def euler_gamma(digits: int = DEFAULT_DIGITS):
    """Euler-Mascheroni constant."""
    with _workdps(digits):
        return +mp.euler


def _tail_sum(coeff, start, k_min: int, s_of_k, target) -> Bounded:
    """Sum over k >= k_min of coeff(k) * zeta(s_of_k(k), start).

    ``zeta`` is the Hurwitz zeta function, so this re-sums the expansion in
    powers of the argument of the log-factors n >= start of a regularized
    product.  Terms are added until a geometric remainder bound, built from
    zeta(s, a) <= a^{-s} (1 + a/(s-1)), drops below ``target``.
    """
    total = 0
    bound = None
    for k in range(k_min, k_min + MAX_TAIL_TERMS):
        s, s_next = s_of_k(k), s_of_k(k + 1)
        c, c_next = coeff(k), coeff(k + 1)
        total += c * mpmath.zeta(s, start)
        r = abs(c_next / c) * start ** (s - s_next)
        if r < 1:
            nxt = abs(c_next) * start ** (-s_next) * (1 + start / (s_next - 1))
            bound = nxt / (1 - r)
            if bound < target:
                return Bounded(total, bound)
    raise PrecisionError("regularized-product tail did not converge", achieved_bound=bound)


def barnes_g(z, digits: int = DEFAULT_DIGITS):
    """Barnes G-function G(z) for real z, from the Weierstrass product.

    Evaluates G(w+1) with w = z - 1 as
    (2 pi)^{w/2} exp(-[w + (1+gamma) w^2]/2) prod_n (1+w/n)^n exp(-w + w^2/(2n)).
    Factors n <= n_max are taken explicitly; the log of the remaining factors
    expands as sum_k (-1)^{k+1} w^k / (k n^{k-1}) and is summed through
    Hurwitz zeta values with an explicit remainder bound.
    """
    value, _ = barnes_g_bounded(z, digits)
    return value


def barnes_g_bounded(z, digits: int = DEFAULT_DIGITS) -> Bounded:
    with _workdps(digits + 5):
        w = to_mp(z) - 1
        if mpmath.isint(w) and w < 0:
            return Bounded(mpmath.mpf(0), mpmath.mpf(0))
        n_max = int(mpmath.ceil(4 * abs(w))) + 8
        log_abs = (w / 2) * mpmath.log(2 * mp.pi) - (w + (1 + mp.euler) * w * w) / 2
        sign = 1
        for n in range(1, n_max + 1):
            base = 1 + w / n
            if base == 0:
                return Bounded(mpmath.mpf(0), mpmath.mpf(0))
            if base < 0 and n % 2 == 1:
                sign = -sign
            log_abs += n * mpmath.log(abs(base)) - w + w * w / (2 * n)

        def coeff(k):
            return (-1) ** (k + 1) * w**k / k

        target = mpmath.mpf(10) ** (-(digits + GUARD_DIGITS + 2))
        if w == 0:
            tail = Bounded(mpmath.mpf(0), mpmath.mpf(0))
        else:
            tail = _tail_sum(coeff, n_max + 1, 3, lambda k: k - 1, target)
        value = sign * mpmath.exp(log_abs + tail.value)
        return Bounded(value, abs(value) * tail.error_bound * 2)


def dirac_det(z, digits: int = DEFAULT_DIGITS, mode: str = "closed"):
    """Determinant of the Dirac operator on the two-sphere, Delta^+(z).

    ``mode="closed"`` uses the Barnes-G representation
    pi^{-1/2} (2pi)^z e^{(1+gamma+2 log 2) z^2} Gamma(1/2-z) G(1/2-z)^2 / G(1/2)^2;
    ``mode="product"`` evaluates the regularized product over the spectrum
    l + 1/2 with degeneracy 2l+1 (complex z allowed).
    """
    if mode == "product":
        return dirac_det_product(z, digits).value
    if mode != "closed":
        raise ValueError(f"unknown mode {mode!r}")
    with _workdps(digits + 5):
        zz = to_mp(z)
        arg = mpmath.mpf(1) / 2 - zz
        if mpmath.isint(arg) and arg <= 0:
            raise DomainError(f"Gamma(1/2 - z) has a pole at z = {z}")
        half = mpmath.mpf(1) / 2
        g_ratio = barnes_g(arg, digits + 5) / barnes_g(half, digits + 5)
        return (
            mpmath.power(mp.pi, -half)
            * mpmath.power(2 * mp.pi, zz)
            * mpmath.exp((1 + mp.euler + 2 * mpmath.log(2)) * zz * zz)
            * gamma_fn(arg, digits + 5)
            * g_ratio**2
        )


def _half_integer_product(z, digits, log_factor, tail_coeff, k_min, s_of_k, radius):
    """exp of sum_l (2l+1) log_factor(z, l+1/2): explicit factors up to l_max,
    the rest through ``_tail_sum`` at Hurwitz offset l_max + 3/2."""
    with _workdps(digits + 5):
        zz = to_mp(z)
        l_max = int(mpmath.ceil(4 * radius(abs(zz)))) + 8
        total = 0
        for l in range(l_max + 1):
            total += (2 * l + 1) * log_factor(zz, l + mpmath.mpf(1) / 2)
        if zz == 0:
            return Bounded(mpmath.mpf(1), mpmath.mpf(0))
        target = mpmath.mpf(10) ** (-(digits + GUARD_DIGITS + 2))
        tail = _tail_sum(lambda k: tail_coeff(zz, k), l_max + mpmath.mpf(3) / 2,
                         k_min, s_of_k, target)
        value = mpmath.exp(total + tail.value)
        return Bounded(value, abs(value) * tail.error_bound * 2)


def dirac_det_product(z, digits: int = DEFAULT_DIGITS) -> Bounded:
    """Delta^+(z) from its regularized product (complex z allowed).

    Each factor log is (2l+1)[log(1 - z/c) + z/c + z^2/(2c^2)], c = l + 1/2,
    which expands as -2 sum_{k>=3} z^k / (k c^{k-1}).
    """
    zz = to_mp(z)
    if isinstance(zz, mpmath.mpf) and mpmath.isint(zz - mpmath.mpf(1) / 2) and zz > 0:
        return Bounded(mpmath.mpf(0), mpmath.mpf(0))

    def log_factor(w, c):
        u = w / c
        return mpmath.log(1 - u) + u + u * u / 2

    return _half_integer_product(z, digits, log_factor, lambda w, k: -2 * w**k / k,
                                 3, lambda k: k - 1, lambda r: r)


def laplacian_det(z, digits: int = DEFAULT_DIGITS) -> Bounded:
    """Shifted Laplacian determinant on S^2, prod_l [(1 - z/c^2) e^{z/c^2}]^{2l+1}.

    Factor logs expand as -2 sum_{k>=2} z^k / (k c^{2k-1}).
    """

    def log_factor(w, c):
        u = w / (c * c)
        return mpmath.log(1 - u) + u

    return _half_integer_product(z, digits, log_factor, lambda w, k: -2 * w**k / k,
                                 2, lambda k: 2 * k - 1, mpmath.sqrt)


def airy_constants(digits: int = DEFAULT_DIGITS):
    """(Ai(0), Ai'(0)) = (3^{-2/3}/Gamma(2/3), -3^{-1/3}/Gamma(1/3))."""
    with _workdps(digits):
        c1 = mpmath.power(3, -mpmath.mpf(2) / 3) / gamma_fn(Fraction(2, 3), digits + 2)
        c2 = -mpmath.power(3, -mpmath.mpf(1) / 3) / gamma_fn(Fraction(1, 3), digits + 2)
        return c1, c2


def harmonic_fredholm(lam, digits: int = DEFAULT_DIGITS):
    """Fredholm determinant of the spectrum 0, 1, 2, ...: e^{gamma lam} / Gamma(-lam).

    Exactly zero at the eigenvalues (nonnegative integers).
    """
    if isinstance(lam, (int, Fraction)) and Fraction(lam).denominator == 1 and lam >= 0:
        return mpmath.mpf(0)
    with _workdps(digits):
        x = to_mp(lam)
        if mpmath.isint(x) and x >= 0:
            return mpmath.mpf(0)
        return mpmath.exp(mp.euler * x) / gamma_fn(-x, digits + 2)


def harmonic_fredholm_product(lam, digits: int = DEFAULT_DIGITS) -> Bounded:
    """-lam prod_{n>=1} (1 - lam/n) e^{lam/n}, re-summed like the Barnes product."""
    with _workdps(digits + 5):
        x = to_mp(lam)
        n_max = int(mpmath.ceil(4 * abs(x))) + 8
        if mpmath.isint(x) and x >= 0:
            return Bounded(mpmath.mpf(0), mpmath.mpf(0))
        prod = -x
        for n in range(1, n_max + 1):
            prod *= (1 - x / n) * mpmath.exp(x / n)
        target = mpmath.mpf(10) ** (-(digits + GUARD_DIGITS + 2))
        if x == 0:
            return Bounded(mpmath.mpf(0), mpmath.mpf(0))
        tail = _tail_sum(lambda k: -x**k / k, n_max + 1, 2, lambda k: k, target)
        value = prod * mpmath.exp(tail.value)
        return Bounded(value, abs(value) * tail.error_bound * 2)
