"""Characteristic-polynomial moments with an external source.

Weight exp(-N Tr X^2/2 + N Tr XA) on M x M Hermitian X, i.e. X = A + G with
G a zero-source sample.  After the unitary integral and the x-integrals
(each monic H_n integrates to a^n against the shifted Gaussian, the common
e^{N a^2/2} sqrt(2 pi/N) cancels against the normalization):

    F_K(lam) = det[ a_i^r | H_r(lam_l) ]_{r < M+K} / (Delta(a) Delta(lam)).

Repeated a's or lam's use derivative columns d^k/dk! in numerator and
denominator.  The b-integral route writes det(lam - X) moments as
Gaussian averages over t ~ N(0, 1/N) of P(lam + i t), P(z) = prod_j (z - a_j).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod
from typing import Iterable

import mpmath

from .gue_finite import MomentSpec, _confluent_rows, _groups, hermite_values
from .numerics import (
    DEFAULT_DIGITS,
    Bounded,
    DomainError,
    GaussianRational,
    PrecisionError,
    as_fraction,
    double_factorial,
    exact_det,
    gamma_fn,
    to_mp,
)
from .numerics.special import _workdps


@dataclass(frozen=True)
class SourceSpec:
    """Source eigenvalues as (a, multiplicity), sorted by a, distinct a's."""

    eigenvalues: tuple[tuple[Fraction, int], ...]

    def __init__(self, eigenvalues: Iterable[tuple]):
        merged: dict[Fraction, int] = {}
        for a, m in eigenvalues:
            m = int(m)
            if m < 1:
                raise ValueError("multiplicities must be positive")
            a = as_fraction(a)
            merged[a] = merged.get(a, 0) + m
        object.__setattr__(self, "eigenvalues", tuple(sorted(merged.items())))

    @classmethod
    def zero(cls, M: int) -> "SourceSpec":
        return cls([(0, M)] if M else [])

    @classmethod
    def from_list(cls, values: Iterable) -> "SourceSpec":
        return cls([(v, 1) for v in values])

    @property
    def size(self) -> int:
        return sum(m for _, m in self.eigenvalues)

    def flat(self) -> list[Fraction]:
        return [a for a, m in self.eigenvalues for _ in range(m)]

    def negated(self) -> "SourceSpec":
        return SourceSpec([(-a, m) for a, m in self.eigenvalues])


@dataclass(frozen=True)
class QuarticMomentTable:
    """q_j = int t^j e^{-t^4} dt for j = 0..2K-2."""

    K: int
    values: tuple

    @classmethod
    def build(cls, K: int, digits: int = DEFAULT_DIGITS) -> "QuarticMomentTable":
        if K < 1:
            raise ValueError("K must be positive")
        with _workdps(digits):
            vals = tuple(gamma_fn(Fraction(j + 1, 4), digits + 2) / 2 if j % 2 == 0 else mpmath.mpf(0)
                         for j in range(2 * K - 1))
        return cls(K, vals)

    def __getitem__(self, j: int):
        return self.values[j]


def _check_sizes(spec: MomentSpec, source: SourceSpec) -> None:
    if source.size != spec.M:
        raise ValueError(f"source multiplicities sum to {source.size}, matrix size is {spec.M}")
    if spec.D:
        raise ValueError("source moments are implemented for D = 0 only")


def source_moment(spec: MomentSpec, source: SourceSpec) -> Fraction:
    """Exact <prod_l det(lam_l - X)> for X = A + G."""
    _check_sizes(spec, source)
    M, K, N = spec.M, spec.K, spec.N
    size = M + K
    if K == 0:
        return Fraction(1)

    def power_cols(v):
        return lambda r, k: comb(r, k) * v ** (r - k) if k <= r else Fraction(0)

    def hermite_cols(v):
        h = hermite_values(size, N, v)
        return lambda r, k: comb(r, k) * h[r - k] if k <= r else Fraction(0)

    lam_groups = _groups(spec.lambdas)
    a_groups = list(source.eigenvalues)
    cols = _confluent_rows(a_groups, size, power_cols) + _confluent_rows(lam_groups, size, hermite_cols)
    num = exact_det(cols)  # transposed; same determinant
    den_a = exact_det(_confluent_rows(a_groups, M, power_cols))
    den_l = exact_det(_confluent_rows(lam_groups, K, power_cols))
    return Fraction(num) / (Fraction(den_a) * den_l)


# b-integral (Gaussian t-average) ----------------------------------------------

def _source_poly(source: SourceSpec) -> list[Fraction]:
    """Coefficients (lowest first) of P(z) = prod_j (z - a_j)."""
    c = [Fraction(1)]
    for a in source.flat():
        c = [Fraction(0)] + c
        for i in range(len(c) - 1):
            c[i] -= a * c[i + 1]
    return c


def _shape(spec: MomentSpec) -> str:
    lams = spec.lambdas
    if len(set(lams)) == len(lams):
        return "distinct"
    if len(set(lams)) == 1:
        return "equal"
    raise ValueError("b-integral route needs all lambdas distinct or all equal")


def _integrand(spec: MomentSpec, pcoef, kind: str):
    lams = list(spec.lambdas)
    K = spec.K

    def P(z):
        acc = 0
        for c in reversed(pcoef):
            acc = acc * z + c
        return acc

    def f(ts):
        if kind == "distinct":
            zs = [to_mp(l) + 1j * t for l, t in zip(lams, ts)]
            val = prod((P(z) for z in zs), start=mpmath.mpc(1))
            for i in range(K):
                for j in range(i + 1, K):
                    val *= zs[i] - zs[j]
            return val
        lam = to_mp(lams[0])
        val = prod((P(lam + 1j * t) for t in ts), start=mpmath.mpc(1))
        for i in range(K):
            for j in range(i + 1, K):
                val *= (ts[i] - ts[j]) ** 2
        return val

    return f


def _prefactor(spec: MomentSpec, kind: str):
    K, N = spec.K, to_mp(spec.N)
    if kind == "distinct":
        d = 1
        lams = spec.lambdas
        for i in range(K):
            for j in range(i + 1, K):
                d *= lams[i] - lams[j]
        return 1 / to_mp(Fraction(d))
    return N ** (K * (K - 1) // 2) / (factorial(K) * prod(factorial(k) for k in range(K)))


def _gauss_hermite_average(f, K: int, N, order: int):
    """E over t_l iid N(0, 1/N) by the tensor Gauss-Hermite rule; fixed
    lexicographic summation order."""
    x, w = mpmath.gauss_quadrature(order, "hermite")
    scale = mpmath.sqrt(2 / to_mp(N))
    nodes = [x[i] * scale for i in range(order)]
    weights = [w[i] / mpmath.sqrt(mpmath.pi) for i in range(order)]
    total = mpmath.mpc(0)
    for idx in itertools.product(range(order), repeat=K):
        wt = prod((weights[i] for i in idx), start=mpmath.mpf(1))
        total += wt * f([nodes[i] for i in idx])
    return total


MAX_QUADRATURE_ORDER = 128


def b_integral_moment_bounded(spec: MomentSpec, source: SourceSpec, digits: int = DEFAULT_DIGITS) -> Bounded:
    """F_K from the K-fold Gaussian integral, with the order-doubling bound.

    Distinct lam: F = E[prod_l P(z_l) prod_{l<l'} (z_l - z_l')] / prod_{l<l'} (lam_l - lam_l'),
    z_l = lam_l + i t_l.  Equal lam:
    F = N^{K(K-1)/2} / (K! prod_{k<K} k!) E[prod_l P(lam + i t_l) Delta(t)^2].
    """
    _check_sizes(spec, source)
    if spec.K == 0:
        return Bounded(mpmath.mpf(1), mpmath.mpf(0))
    if spec.K > 3:
        raise ValueError("quadrature route limited to K <= 3")
    kind = _shape(spec)
    pcoef = _source_poly(source)
    with _workdps(digits + 5):
        f = _integrand(spec, pcoef, kind)
        pre = _prefactor(spec, kind)
        tol = mpmath.mpf(10) ** (-(digits // 2))
        order = 4
        prev = pre * _gauss_hermite_average(f, spec.K, spec.N, order)
        while order < MAX_QUADRATURE_ORDER:
            order *= 2
            cur = pre * _gauss_hermite_average(f, spec.K, spec.N, order)
            err = abs(cur - prev)
            if err <= tol * max(1, abs(cur)):
                if abs(cur.imag) > max(err, tol) * 10 * max(1, abs(cur)):
                    raise PrecisionError("b-integral has a nonvanishing imaginary part", achieved_bound=abs(cur.imag))
                # the order gap is pure rounding once the rule is exact; never claim
                # more than the requested digits
                return Bounded(cur.real, max(err, mpmath.mpf(10) ** -digits * max(1, abs(cur))))
            prev = cur
        raise PrecisionError("Gauss-Hermite orders did not converge", achieved_bound=err)


def b_integral_moment(spec: MomentSpec, source: SourceSpec, digits: int = DEFAULT_DIGITS):
    return b_integral_moment_bounded(spec, source, digits).value


def gaussian_moment(n: int, N) -> Fraction:
    """E[t^n] for t ~ N(0, 1/N)."""
    if n % 2:
        return Fraction(0)
    return Fraction(double_factorial(n - 1)) / as_fraction(N) ** (n // 2)


def b_integral_hankel(spec: MomentSpec, source: SourceSpec) -> Fraction:
    """Exact equal-lam b-integral: Andreief turns E[prod P Delta^2] into
    K! det[E[P(lam + i t) t^{i+j}]], so F = N^{K(K-1)/2}/prod k! * det(...)."""
    _check_sizes(spec, source)
    if spec.K == 0:
        return Fraction(1)
    if _shape(spec) != "equal" and spec.K > 1:
        raise ValueError("Hankel route needs all lambdas equal")
    K, N = spec.K, spec.N
    lam = spec.lambdas[0]
    # P(lam + i t) = prod_j ((lam - a_j) + i t), real and imaginary parts kept apart
    re, im = [Fraction(1)], [Fraction(0)]
    for a in source.flat():
        c = lam - a
        # multiply by (c + i t): coefficient r gains c*(x_r + i y_r) + i*(x_{r-1} + i y_{r-1})
        re_up = [Fraction(0)] + re
        im_up = [Fraction(0)] + im
        re = [c * x - y for x, y in zip(re + [Fraction(0)], im_up)]
        im = [c * y + x for y, x in zip(im + [Fraction(0)], re_up)]
    mom = []
    gm = [gaussian_moment(n, N) for n in range(len(re) + 2 * K)]
    for s in range(2 * K - 1):
        mom.append(GaussianRational(sum(re[r] * gm[r + s] for r in range(len(re))),
                                    sum(im[r] * gm[r + s] for r in range(len(im)))))
    det = exact_det([[mom[i + j] for j in range(K)] for i in range(K)])
    det = GaussianRational.coerce(det)
    if det.im != 0:
        raise ArithmeticError("Hankel b-integral is not real")
    return det.re * as_fraction(N) ** (K * (K - 1) // 2) / prod(factorial(k) for k in range(K))


# saddle points and the bulk recovery ------------------------------------------

def saddle_density(lam):
    """Roots b+, b- of b^2 + i lam b - 1 = 0 and rho = |b+ - b-|/(2 pi).

    Outside the band the roots are purely imaginary and rho is reported as 0
    (no eigenvalues there); at |lam| = 2 the roots coincide.
    """
    with _workdps(DEFAULT_DIGITS):
        x = to_mp(lam)
        disc = mpmath.sqrt(mpmath.mpc(4 - x * x))
        bp = (disc - 1j * x) / 2
        bm = (-disc - 1j * x) / 2
        rho = abs(bp - bm) / (2 * mpmath.pi) if abs(x) < 2 else mpmath.mpf(0)
        return bp, bm, rho


def vandermonde_gaussian(K: int, c, digits: int = DEFAULT_DIGITS):
    """(1/K!) int prod db e^{-c b^2/2} Delta(b)^2 = (2 pi/c)^{K/2} prod l! / c^{K(K-1)/2}."""
    if K < 0:
        raise ValueError("K must be nonnegative")
    with _workdps(digits):
        cc = to_mp(c)
        if cc <= 0:
            raise DomainError("c must be positive")
        return (2 * mpmath.pi / cc) ** (mpmath.mpf(K) / 2) * prod(factorial(l) for l in range(K)) / cc ** (K * (K - 1) // 2 if K else 0)


def vandermonde_gaussian_quadrature(K: int, c, digits: int = DEFAULT_DIGITS, order: int = 8):
    """Direct tensor Gauss-Hermite evaluation of the left side (exact for order >= K)."""
    with _workdps(digits):
        cc = to_mp(c)
        x, w = mpmath.gauss_quadrature(order, "hermite")
        s = mpmath.sqrt(2 / cc)
        total = mpmath.mpf(0)
        for idx in itertools.product(range(order), repeat=K):
            b = [x[i] * s for i in idx]
            v = prod((w[i] * s for i in idx), start=mpmath.mpf(1))
            for i in range(K):
                for j in range(i + 1, K):
                    v *= (b[i] - b[j]) ** 2
            total += v
        return total / factorial(K)


def bulk_saddle_assembly(lam, K: int, N: int, digits: int = DEFAULT_DIGITS):
    """Two-saddle approximation of F_{2K}(lam) at M = N - K.

    Equal-lam b-integral prefactor (N/2pi)^K N^{K(2K-1)} / ((2K)! prod_{l<2K} l!),
    times (2K)!/(K! K!) choices, (K! VG(K, N|f''|))^2 from the Gaussian
    fluctuations, |b+ - b-|^{2K^2} from the cross Vandermonde, and the
    saddle exponent e^{-NK(1 - lam^2/2)}.
    """
    bp, bm, _ = saddle_density(lam)
    with _workdps(digits):
        x = to_mp(lam)
        n = mpmath.mpf(N)
        fpp = abs(1 + 1 / bp**2)
        gap = abs(bp - bm)
        sf = prod(factorial(l) for l in range(2 * K))
        pref = (n / (2 * mpmath.pi)) ** K * n ** (K * (2 * K - 1)) / (factorial(2 * K) * sf)
        choose = mpmath.mpf(factorial(2 * K)) / factorial(K) ** 2
        vg = factorial(K) * vandermonde_gaussian(K, n * fpp, digits + 2)
        expo = -n * K * (bp**2 + bm**2).real / 2 - n * K * (1j * x * (bp + bm)).real + n * K * x * x
        # |b+-| = 1 inside the band so b^M contributes no modulus
        return pref * choose * vg**2 * gap ** (2 * K * K) * mpmath.exp(expo)


def bulk_recovery_check(lam, K: int, N: int, digits: int = DEFAULT_DIGITS):
    """exact F_{2K}(lam) / two-saddle assembly; tends to 1 as N grows."""
    v = as_fraction(lam)
    if abs(v) >= 2:
        raise DomainError(f"lam = {lam} is not inside the band")
    from .gue_finite import charpoly_moment

    exact = charpoly_moment(MomentSpec.equal(N - K, 2 * K, v, N=N))
    with _workdps(digits):
        return to_mp(exact) / bulk_saddle_assembly(v, K, N, digits + 2)


# critical (gap-closing) source ------------------------------------------------

def critical_quartic_hankel(K: int, digits: int = DEFAULT_DIGITS):
    """det[q_{i+j}]_{i,j<K}, q_j = int t^j e^{-t^4} dt."""
    q = QuarticMomentTable.build(K, digits + 2)
    with _workdps(digits):
        return mpmath.det(mpmath.matrix([[q[i + j] for j in range(K)] for i in range(K)]))


def critical_exponent_coefficients(a) -> tuple[Fraction, Fraction]:
    """(c2, c4) in the small-t expansion of the per-variable exponent
    t^2/2 - (1/2) log(1 + t^2/a^2) = c2 t^2 + c4 t^4 + ...

    This is the source {+a, -a} (each multiplicity M/2, M ~ N) at lam = 0,
    with |P(it)|^{1/N} ~ (a^2 + t^2)^{1/2}.  c2 = (1 - 1/a^2)/2 vanishes at
    a = 1, where c4 = 1/(4 a^4) takes over.
    """
    a2 = as_fraction(a) ** 2
    if a2 == 0:
        raise DomainError("a must be nonzero")
    # log(1 + u) = u - u^2/2 + ..., u = t^2/a^2
    return Fraction(1, 2) - Fraction(1, 2) / a2, Fraction(1, 4) / a2**2


def critical_curvature(a) -> Fraction:
    """Second derivative at t = 0 of the exponent above: 1 - 1/a^2."""
    return 2 * critical_exponent_coefficients(a)[0]


def critical_source(M: int, a=1) -> SourceSpec:
    if M % 2:
        raise ValueError("critical source needs even M")
    if M == 0:
        return SourceSpec([])
    return SourceSpec([(a, M // 2), (-as_fraction(a), M // 2)])


def critical_moment_exact(K: int, N: int) -> Fraction:
    """F_K(0) with source +-1 (multiplicity M/2 each), M = N - K."""
    M = N - K
    return b_integral_hankel(MomentSpec.equal(M, K, 0, N=N), critical_source(M))


def critical_asymptotic(K: int, N: int, digits: int = DEFAULT_DIGITS):
    """N^{K^2/4} (2 pi)^{-K/2} 4^{K^2/4} det[q] / prod_{k<K} k!.

    From the quartic exponent e^{-N t^4/4}, the rescaling t = (4/N)^{1/4} u,
    and Andreief's identity.  The sign (-1)^{KM/2} of P(it)^K is dropped.
    """
    with _workdps(digits):
        n = mpmath.mpf(N)
        return (n ** (mpmath.mpf(K * K) / 4) * (2 * mpmath.pi) ** (-mpmath.mpf(K) / 2)
                * mpmath.mpf(4) ** (mpmath.mpf(K * K) / 4) * critical_quartic_hankel(K, digits + 2)
                / prod(factorial(k) for k in range(K)))


def critical_ratio(K: int, N_list: Iterable[int], digits: int = DEFAULT_DIGITS) -> list:
    """|exact F_K(0)| / critical_asymptotic; measured, expected to approach 1."""
    out = []
    for N in N_list:
        ex = critical_moment_exact(K, N)
        with _workdps(digits):
            out.append(abs(to_mp(ex)) / critical_asymptotic(K, N, digits + 2))
    return out
