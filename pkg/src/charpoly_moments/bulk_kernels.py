"""Sine- and Bessel-kernel Taylor matrices and the universal constants gamma_K.

The bulk moment I_K is the determinant of the K x K matrix of Taylor
coefficients a_nm of the kernel at the origin.  Everything here is exact
(Fraction / RationalFunction) except the Gamma-function closed forms of the
Bessel class, which are evaluated with mpmath.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod
from typing import Optional, Sequence

import mpmath

from .numerics import (
    DEFAULT_DIGITS,
    DomainError,
    Polynomial,
    RationalFunction,
    as_fraction,
    exact_det,
    gamma_fn,
    to_mp,
)
from .numerics.special import _workdps


@dataclass(frozen=True)
class SineTaylorMatrix:
    order: int
    entries: tuple[tuple[Fraction, ...], ...]

    def det(self) -> Fraction:
        return Fraction(exact_det(self.entries))

    def submatrix(self, indices: Sequence[int]) -> list[list[Fraction]]:
        return [[self.entries[i][j] for j in indices] for i in indices]


@dataclass(frozen=True)
class BesselTaylorMatrix:
    order: int
    alpha: Optional[Fraction]  # None: entries are rational functions of alpha
    entries: tuple[tuple, ...]

    def det(self):
        return exact_det(self.entries)

    def at(self, alpha) -> "BesselTaylorMatrix":
        """Substitute a numeric alpha into a formal matrix."""
        if self.alpha is not None:
            raise ValueError("matrix is already numeric")
        a = as_fraction(alpha)
        _check_alpha(a)
        return BesselTaylorMatrix(self.order, a, tuple(tuple(e(a) for e in row) for row in self.entries))


def _check_order(K: int) -> None:
    if not isinstance(K, int) or K < 1:
        raise ValueError(f"order must be a positive integer, got {K!r}")


def sine_coefficient(n: int, m: int) -> Fraction:
    """Coefficient of u^n v^m in sin(u - v)/(u - v).

    sin(w)/w = sum_k (-1)^k w^{2k}/(2k+1)! and (u - v)^{2k} contributes
    C(2k, n) (-1)^m to u^n v^m, so a_nm = (-1)^{(n+m)/2 + m} C(n+m, n)/(n+m+1)!.
    """
    if (n + m) % 2:
        return Fraction(0)
    k = (n + m) // 2
    return Fraction((-1) ** (k + m) * comb(n + m, n), factorial(n + m + 1))


def sine_taylor_matrix(K: int) -> SineTaylorMatrix:
    _check_order(K)
    rows = tuple(tuple(sine_coefficient(n, m) for m in range(K)) for n in range(K))
    return SineTaylorMatrix(K, rows)


def divide_by_difference(c, K: int):
    """Taylor coefficients of N(x, y)/(x - y) for an antisymmetric N.

    ``c(p, q)`` is the coefficient of x^p y^q in N.  Matching coefficients in
    (x - y) * sum a_nm x^n y^m = N gives a_{n,m} = a_{n-1,m+1} - c_{n,m+1}
    seeded by a_{-1,.} = 0, i.e. a_nm = -sum_{j=0}^{n} c(n-j, m+1+j).
    """
    return [[-sum((c(n - j, m + 1 + j) for j in range(n + 1)), start=0 * c(0, 0))
             for m in range(K)] for n in range(K)]


def gamma_k(K: int) -> Fraction:
    """gamma_K = prod_{l=0}^{K-1} l!/(K+l)!."""
    _check_order(K)
    return Fraction(prod(factorial(l) for l in range(K)),
                    prod(factorial(K + l) for l in range(K)))


def sine_det_check(K: int) -> tuple[Fraction, Fraction]:
    """(det a_nm, 2^{K^2-K} gamma_K); the two agree exactly."""
    return sine_taylor_matrix(K).det(), 2 ** (K * K - K) * gamma_k(K)


def checkerboard_factorization(order: int) -> tuple[Fraction, Fraction, Fraction]:
    """(I_U, I_Sp, I_O) for the sine matrix of the given order.

    I_Sp and I_O are the principal minors on the odd and even indices; the
    checkerboard zero pattern makes I_U = I_Sp * I_O.
    """
    _check_order(order)
    mat = sine_taylor_matrix(order)
    odd = list(range(1, order, 2))
    even = list(range(0, order, 2))
    return (mat.det(),
            Fraction(exact_det(mat.submatrix(odd))),
            Fraction(exact_det(mat.submatrix(even))))


def gamma_k_ensembles(K: int) -> tuple[Fraction, Fraction, Fraction]:
    """(gamma_U, gamma_Sp, gamma_O) with 2^{K^2-1} gamma_U = gamma_Sp gamma_O."""
    _check_order(K)
    fact = factorial
    g_u = Fraction(prod(fact(l) for l in range(1, K)) ** 2, prod(fact(l) for l in range(1, 2 * K)))
    g_sp = Fraction(2 ** (K * (K + 1) // 2) * prod(fact(l) for l in range(1, K + 1)),
                    prod(fact(2 * l) for l in range(1, K + 1)))
    g_o = Fraction(2 ** (K * (K + 1) // 2) * prod(fact(l) for l in range(1, K)),
                   2 * prod(fact(2 * l) for l in range(1, K)))
    return g_u, g_sp, g_o


# Bessel kernel ---------------------------------------------------------------

def _check_alpha(alpha: Fraction) -> None:
    if alpha.denominator == 1 and alpha <= 0:
        raise DomainError(f"Bessel Taylor coefficients have a pole at alpha = {alpha}")


def bessel_series(n_terms: int, alpha=None):
    """First ``n_terms`` Taylor coefficients of phi and psi.

    phi_n = (-1)^n / (4^n n! prod_{l=1}^{n} (alpha+l)),
    psi_n = (-1)^n (alpha+2n) / (4^n n! prod_{l=0}^{n} (alpha+l)).
    With ``alpha=None`` the coefficients are RationalFunctions of alpha.
    """
    if alpha is None:
        a = Polynomial.x()
        one = Polynomial([1])
        phi, psi = [], []
        for n in range(n_terms):
            scale = Fraction((-1) ** n, 4**n * factorial(n))
            den_phi = prod((a + l for l in range(1, n + 1)), start=one)
            phi.append(RationalFunction(Polynomial([scale]), den_phi))
            psi.append(RationalFunction((a + 2 * n) * scale, den_phi * a))
        return phi, psi
    a = as_fraction(alpha)
    _check_alpha(a)
    phi, psi = [], []
    for n in range(n_terms):
        scale = Fraction((-1) ** n, 4**n * factorial(n))
        den = prod((a + l for l in range(1, n + 1)), start=Fraction(1))
        phi.append(scale / den)
        psi.append(scale * (a + 2 * n) / (den * a))
    return phi, psi


def bessel_taylor_matrix(K: int, alpha=None) -> BesselTaylorMatrix:
    """Taylor coefficients a_nm of [phi(x)psi(y) - psi(x)phi(y)] / (2(x - y))."""
    _check_order(K)
    phi, psi = bessel_series(2 * K, alpha)

    def c(p, q):
        return phi[p] * psi[q] - psi[p] * phi[q]

    a = divide_by_difference(c, K)
    rows = tuple(tuple(x / 2 for x in row) for row in a)
    return BesselTaylorMatrix(K, None if alpha is None else as_fraction(alpha), rows)


def bessel_moment_closed(K: int, alpha, digits: int = DEFAULT_DIGITS):
    """I_K = 4^{-K^2 - alpha K} prod_{l=0}^{2K-1} 1/Gamma(alpha + l + 1)."""
    _check_order(K)
    with _workdps(digits):
        a = to_mp(alpha)
        out = mpmath.power(4, -K * K - a * K)
        for l in range(2 * K):
            out /= gamma_fn(alpha + l + 1 if isinstance(alpha, (int, Fraction)) else a + l + 1, digits + 2)
        return out


def bessel_bridge_constant(alpha, digits: int = DEFAULT_DIGITS):
    """c(alpha) = 2^{-2 alpha} / (Gamma(alpha) Gamma(alpha+1)).

    The per-row factor dropped when J_alpha and its derivative are replaced by
    phi and psi; c(alpha)^K det(a_nm) equals the closed-form I_K.
    """
    with _workdps(digits):
        a = to_mp(alpha)
        return mpmath.power(2, -2 * a) / (gamma_fn(alpha, digits + 2) * gamma_fn(alpha + 1, digits + 2))


def bessel_consistency(K: int, alpha, digits: int = DEFAULT_DIGITS):
    """(c(alpha)^K det(a_nm), closed-form I_K) as mpmath numbers."""
    a = as_fraction(alpha)
    det = Fraction(bessel_taylor_matrix(K, a).det())
    with _workdps(digits):
        lhs = bessel_bridge_constant(a, digits + 2) ** K * to_mp(det)
        rhs = bessel_moment_closed(K, a, digits + 2)
        return lhs, rhs
