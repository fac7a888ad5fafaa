"""Finite-N Gaussian-ensemble moments of characteristic polynomials.

Weight exp(-N Tr X^2 / 2) on M x M Hermitian X.  The monic orthogonal
polynomials are the rescaled Hermite polynomials H_n with
H_{n+1} = x H_n - (n/N) H_{n-1}, and

    <prod_l det(lam_l - X)> = det[H_{M+j}(lam_l)] / det[lam_l^j].

Equal arguments are handled with derivative rows p^{(k)}(v)/k! in both
numerator and denominator (confluent Vandermonde).  With that orientation
the determinant ratio is the moment itself, with no extra sign.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, prod
from typing import Iterable, Sequence

import mpmath

from .airy_edge import airy_hankel_numeric, airy_series
from .bulk_kernels import gamma_k
from .numerics import (
    DEFAULT_DIGITS,
    DomainError,
    Polynomial,
    PrecisionError,
    as_fraction,
    double_factorial,
    exact_det,
    falling,
    to_mp,
)
from .numerics.special import _workdps


@dataclass(frozen=True)
class MonicHermite:
    degree: int
    N: Fraction
    poly: Polynomial

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self.poly.coeffs

    def __call__(self, x):
        return self.poly(x)


@dataclass(frozen=True)
class MomentSpec:
    """<prod_{l<K} d^D/dlam^D det(lam_l - X)> on M x M matrices at scale N."""

    M: int
    N: Fraction
    K: int
    lambdas: tuple = field(default=())
    D: int = 0

    def __post_init__(self):
        if self.M < 0:
            raise ValueError("matrix size M must be nonnegative")
        if self.K < 0:
            raise ValueError("number of factors K must be nonnegative")
        if self.D < 0:
            raise ValueError("derivative order D must be nonnegative")
        object.__setattr__(self, "N", as_fraction(self.N))
        if self.N <= 0:
            raise ValueError("scale N must be positive")
        lams = tuple(as_fraction(x) for x in self.lambdas)
        if len(lams) != self.K:
            raise ValueError(f"expected {self.K} lambda values, got {len(lams)}")
        object.__setattr__(self, "lambdas", lams)

    @classmethod
    def equal(cls, M: int, K: int, lam=0, N=None, D: int = 0) -> "MomentSpec":
        """K factors at the same lam; N defaults to M + K/2 rounded up, i.e.
        the convention M = N - k for an even power 2k."""
        if N is None:
            N = M + (K + 1) // 2
        return cls(M, N, K, (lam,) * K, D)


def _check_scale(N) -> Fraction:
    n = as_fraction(N)
    if n <= 0:
        raise ValueError("scale N must be positive")
    return n


def hermite_monic(n: int, N) -> MonicHermite:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    nn = _check_scale(N)
    x = Polynomial.x()
    prev, cur = Polynomial([1]), x
    if n == 0:
        return MonicHermite(0, nn, prev)
    for k in range(1, n):
        prev, cur = cur, x * cur - prev * (Fraction(k) / nn)
    return MonicHermite(n, nn, cur)


def hermite_values(n_max: int, N, x) -> list:
    """[H_0(x), ..., H_{n_max}(x)] by the three-term recurrence (exact for
    rational x, mpmath for mpf x)."""
    nn = _check_scale(N)
    vals = [Fraction(1) if not isinstance(x, mpmath.mpf) else mpmath.mpf(1)]
    if n_max >= 1:
        vals.append(x)
    for k in range(1, n_max):
        vals.append(x * vals[k] - (k / nn if isinstance(x, mpmath.mpf) else Fraction(k) / nn) * vals[k - 1])
    return vals


def hermite_at_zero(n: int, N) -> Fraction:
    """H_{2m}(0) = (-1)^m (2m-1)!!/N^m, H_{odd}(0) = 0."""
    if n % 2:
        return Fraction(0)
    m = n // 2
    return Fraction((-1) ** m * double_factorial(2 * m - 1)) / _check_scale(N) ** m


def hermite_derivative_at_zero(n: int, k: int, N) -> Fraction:
    """H_n^{(k)}(0) from H_n' = n H_{n-1}."""
    if k > n:
        return Fraction(0)
    return falling(n, k) * hermite_at_zero(n - k, N)


def _groups(lambdas: Sequence[Fraction]) -> list[tuple[Fraction, int]]:
    out: dict[Fraction, int] = {}
    for v in lambdas:
        out[v] = out.get(v, 0) + 1
    return list(out.items())


def _confluent_rows(groups, columns: int, value_of):
    """Rows d^k/dx^k f_j (v) / k! for each (v, m) group and k < m.

    ``value_of(v)`` returns a function (j, k) -> f_j^{(k)}(v)/k!.
    """
    rows = []
    for v, m in groups:
        f = value_of(v)
        for k in range(m):
            rows.append([f(j, k) for j in range(columns)])
    return rows


def charpoly_moment(spec: MomentSpec) -> Fraction:
    """Exact <prod_l det(lam_l - X)>; D > 0 is delegated to derivative_moment."""
    if spec.D:
        return derivative_moment(spec)
    M, K, N = spec.M, spec.K, spec.N
    if K == 0:
        return Fraction(1)
    groups = _groups(spec.lambdas)
    top = M + K - 1

    def hermite_rows(v):
        h = hermite_values(top, N, v)
        return lambda j, k: comb(M + j, k) * h[M + j - k] if k <= M + j else Fraction(0)

    def monomial_rows(v):
        return lambda j, k: comb(j, k) * v ** (j - k) if k <= j else Fraction(0)

    num = exact_det(_confluent_rows(groups, K, hermite_rows))
    den = exact_det(_confluent_rows(groups, K, monomial_rows))
    return Fraction(num) / den


F_moment = charpoly_moment


# closed forms at lam = 0 ------------------------------------------------------

def _check_even(M: int, name: str = "M") -> None:
    if M < 0 or M % 2:
        raise ValueError(f"{name} must be a nonnegative even integer, got {M}")


def _universal_c(K: int, D: int = 0) -> int:
    return 2 ** ((D * K + K * (K - 1)) // 2) * prod(factorial(l) for l in range(K))


def center_factors(M: int, K: int) -> tuple[int, int]:
    """(I1, I2): C (M+2K-3)!!...(M-1)!! and C (M+2K-1)!!...(M+1)!!."""
    _check_even(M)
    c = _universal_c(K)
    return (c * prod(double_factorial(M - 1 + 2 * l) for l in range(K)),
            c * prod(double_factorial(M + 1 + 2 * l) for l in range(K)))


def center_factors_gamma(M: int, K: int) -> tuple[Fraction, Fraction]:
    """Same factors from the Gamma-ratio form,
    C 2^{-K(M+K-3)/2} prod_{l=1}^{K} Gamma(M+2l-2)/Gamma(M/2+l-1) and
    C 2^{-K(M+K-1)/2} prod_{l=1}^{K} Gamma(M+2l)/Gamma(M/2+l)."""
    _check_even(M)
    if M == 0:
        raise ValueError("the Gamma form needs M >= 2 (Gamma pole at M/2 + l - 1 = 0)")
    c = _universal_c(K)
    h = M // 2
    i1 = Fraction(c) * prod(Fraction(factorial(M + 2 * l - 3), factorial(h + l - 2)) for l in range(1, K + 1))
    i2 = Fraction(c) * prod(Fraction(factorial(M + 2 * l - 1), factorial(h + l - 1)) for l in range(1, K + 1))
    return i1 / Fraction(2) ** Fraction(K * (M + K - 3), 2), i2 / Fraction(2) ** Fraction(K * (M + K - 1), 2)


def _sf(n: int) -> int:
    return prod(factorial(l) for l in range(n))


def center_moment_closed(M: int, K: int, N=None) -> Fraction:
    """F_{2K}(0) = I1 I2 / (N^{KM} prod_{l<2K} l!); N defaults to M + K."""
    if K < 1:
        raise ValueError("K must be positive")
    i1, i2 = center_factors(M, K)
    n = _check_scale(M + K if N is None else N)
    return Fraction(i1 * i2, _sf(2 * K)) / n ** (K * M)


def deriv_moment_det(M: int, D: int, K: int, N=None, lam=0) -> Fraction:
    """det[p^{(D+i)}_{M+j}(lam) / i!]_{i,j < 2K} (the derivative-row determinant).

    At D = 0 this is F_{2K}(lam).  For D > 0 it is NOT the moment
    <[d^D det(lam - X)]^{2K}>; see derivative_moment for that.
    """
    if D < 0:
        raise ValueError("D must be nonnegative")
    n = _check_scale(M + K if N is None else N)
    v = as_fraction(lam)
    size = 2 * K
    h = hermite_values(M + size, n, v)
    rows = [[Fraction(falling(M + j, D + i), factorial(i)) * h[M + j - D - i] if D + i <= M + j else Fraction(0)
             for j in range(size)] for i in range(size)]
    return Fraction(exact_det(rows))


def deriv_moment_factors(M: int, D: int, K: int, printed: bool = False) -> tuple[int, int]:
    """(I1, I2) of the derivative determinant at lam = 0, D even.

    I1 = prod (M-1+2l)!! * prod_l (M/2+l)_{falling D/2} * 2^{(DK+K(K-1))/2} prod l!
    and I2 has (M+1+2l)!! with the SAME falling bracket.  ``printed=True``
    uses the shifted bracket (M/2+l+1)_{falling D/2} in I2, which disagrees
    with the determinant for D > 0.
    """
    _check_even(M)
    _check_even(D, "D")
    if D > M:
        raise ValueError("need D <= M")
    c = _universal_c(K, D)
    h, d = M // 2, D // 2
    br1 = prod(falling(h + l, d) for l in range(K))
    br2 = prod(falling(h + l + (1 if printed else 0), d) for l in range(K))
    return (prod(double_factorial(M - 1 + 2 * l) for l in range(K)) * br1 * c,
            prod(double_factorial(M + 1 + 2 * l) for l in range(K)) * br2 * c)


def deriv_moment_closed(M: int, D: int, K: int, N=None, printed: bool = False) -> Fraction:
    """I1 I2 / (N^{K(M-D)} prod_{l<2K} l!); equals deriv_moment_det at lam = 0."""
    if K < 1:
        raise ValueError("K must be positive")
    i1, i2 = deriv_moment_factors(M, D, K, printed)
    n = _check_scale(M + K if N is None else N)
    return Fraction(i1 * i2, _sf(2 * K)) / n ** (K * (M - D))


# true derivative moments ------------------------------------------------------

@lru_cache(maxsize=None)
def kostka(shape: tuple[int, ...], part: int, letters: int) -> int:
    """Number of semistandard tableaux of ``shape`` with content (part^letters)."""
    shape = tuple(x for x in shape if x)
    if sum(shape) != part * letters:
        return 0
    if letters == 0:
        return 1
    if len(shape) > letters:
        return 0
    # strip the largest letter: a horizontal strip of size ``part``
    total = 0

    def strips(i, rest, nu):
        nonlocal total
        if i == len(shape):
            if rest == 0:
                total += kostka(tuple(nu), part, letters - 1)
            return
        lower = shape[i + 1] if i + 1 < len(shape) else 0
        for take in range(0, min(rest, shape[i] - lower) + 1):
            strips(i + 1, rest - take, nu + [shape[i] - take])

    strips(0, part, [])
    return total


def derivative_moment(spec: MomentSpec) -> Fraction:
    """Exact <prod_l d^D/dlam^D det(lam - X)> with every lam_l equal.

    Each factor only sees its own lam_l, so the moment is
    prod_l d^D/dlam_l^D of det[p_{M+j}(lam_l)]/Delta(lam) at coincidence.
    Expanding p_{M+j}(lam + u) = sum_i C_ij u^i, Cauchy-Binet gives a sum of
    det(C[S, :]) times Schur polynomials s_mu(S)(u), and the coefficient of
    prod u_l^D in s_mu is the Kostka number K_{mu, (D^K)}.
    """
    M, K, D, N = spec.M, spec.K, spec.D, spec.N
    if K == 0:
        return Fraction(1)
    if len(set(spec.lambdas)) != 1:
        raise ValueError("derivative moments are implemented for equal arguments only")
    lam = spec.lambdas[0]
    if D > M:
        return Fraction(0)
    top = M + K - 1
    h = hermite_values(top, N, lam)
    # C[i][j] = coefficient of u^i in H_{M+j}(lam + u) = H^{(i)}_{M+j}(lam)/i!
    C = [[comb(M + j, i) * h[M + j - i] if i <= M + j else Fraction(0) for j in range(K)]
         for i in range(top + 1)]
    target = K * D + K * (K - 1) // 2
    total = Fraction(0)
    for S in combinations(range(top + 1), K):
        if sum(S) != target:
            continue
        shape = tuple(sorted((s - k for k, s in enumerate(S)), reverse=True))
        kn = kostka(shape, D, K)
        if kn:
            total += kn * Fraction(exact_det([C[s] for s in S]))
    return total * factorial(D) ** K


# asymptotics ------------------------------------------------------------------

def semicircle_density(lam):
    with _workdps(DEFAULT_DIGITS):
        x = to_mp(lam)
        return mpmath.sqrt(max(4 - x * x, 0)) / (2 * mpmath.pi)


def bulk_asymptotic_ratio(lam, K: int, N_list: Iterable[int], digits: int = DEFAULT_DIGITS) -> list:
    """r(N) = F_{2K}(lam) e^{-NK lam^2/2} / [(2 pi N rho)^{K^2} e^{-NK} gamma_K], M = N - K."""
    v = as_fraction(lam)
    if abs(v) >= 2:
        raise DomainError(f"lam = {lam} is not inside the band (-2, 2)")
    if K < 1:
        raise ValueError("K must be positive")
    g = gamma_k(K)
    out = []
    for N in N_list:
        M = N - K
        if M < 0:
            raise ValueError(f"N = {N} too small for K = {K}")
        exact = charpoly_moment(MomentSpec.equal(M, 2 * K, v, N=N))
        with _workdps(digits):
            x = to_mp(v)
            rho = mpmath.sqrt(4 - x * x) / (2 * mpmath.pi)
            denom = (2 * mpmath.pi * N * rho) ** (K * K) * mpmath.exp(-N * K) * to_mp(g)
            out.append(to_mp(exact) * mpmath.exp(-N * K * x * x / 2) / denom)
    return out


def _hermite_edge_once(N: int, delta: int, y1, y2, dps: int, weighted: bool):
    with mpmath.workdps(dps):
        s = mpmath.mpf(N) ** (-mpmath.mpf(2) / 3)
        x1 = 2 + to_mp(y1) * s
        x2 = 2 + to_mp(y2) * s
        n = N + delta
        h1 = hermite_values(n, N, x1)[n]
        h2 = hermite_values(n, N, x2)[n]
        if h2 == 0:
            raise PrecisionError("denominator vanishes (Ai(y2) = 0 region)")
        ratio = h1 / h2
        if weighted:
            ratio *= mpmath.exp(-N * (x1 - x2))
        return ratio


def hermite_edge_shape(N: int, delta: int, y1, y2, digits: int = DEFAULT_DIGITS,
                       weighted: bool = True):
    """H_{N+delta}(2 + y1 N^{-2/3}) / H_{N+delta}(2 + y2 N^{-2/3}), times e^{-N(x1 - x2)}.

    The weight removes the edge saddle factor e^{N x} of H_n(x) near x = 2;
    the remaining shape tends to Ai(y1)/Ai(y2).  ``weighted=False`` returns
    the bare ratio, which diverges like e^{(y1 - y2) N^{1/3}}.  The result is
    computed twice at different precisions; disagreement beyond 10^-digits
    raises PrecisionError.
    """
    if N < 1 or N + delta < 0:
        raise ValueError("need N >= 1 and N + delta >= 0")
    a = _hermite_edge_once(N, delta, y1, y2, digits + 10, weighted)
    b = _hermite_edge_once(N, delta, y1, y2, digits + 25, weighted)
    with _workdps(digits):
        if abs(a - b) > abs(b) * mpmath.mpf(10) ** (-digits):
            raise PrecisionError("Hermite recurrence lost precision", achieved_bound=abs(a - b) / abs(b))
        return +b


def airy_ratio(y1, y2, digits: int = DEFAULT_DIGITS):
    """Ai(y1)/Ai(y2) from the exact-coefficient Maclaurin series."""
    with _workdps(digits):
        den = airy_series(y2, digits + 5)
        if den == 0:
            raise PrecisionError("Ai(y2) vanishes")
        return airy_series(y1, digits + 5) / den


def edge_moment_scaling(K: int, N_list: Iterable[int], exponent=None,
                        digits: int = DEFAULT_DIGITS) -> list:
    """e^{-NK} F_{2K}(2) / N^{exponent} with F exact at M = N - K.

    At lam = 2 the bulk weight e^{NK lam^2/2} e^{-NK} is e^{NK}; it is removed
    so the sequence can settle.  The default exponent is 2K^2/3, the power at
    which it does settle numerically (slowly, with N^{-1/3}-type corrections).
    """
    if K < 1:
        raise ValueError("K must be positive")
    e = Fraction(2 * K * K, 3) if exponent is None else as_fraction(exponent)
    out = []
    for N in N_list:
        M = N - K
        exact = charpoly_moment(MomentSpec.equal(M, 2 * K, 2, N=N))
        with _workdps(digits):
            out.append(to_mp(exact) * mpmath.exp(-N * K) / mpmath.power(N, to_mp(e)))
    return out


def edge_reference_constant(K: int, digits: int = DEFAULT_DIGITS):
    """(2 pi)^K d_{2K-1} / prod_{l<2K} l!, the measured limit of edge_moment_scaling."""
    with _workdps(digits):
        return (2 * mpmath.pi) ** K * airy_hankel_numeric(2 * K - 1, digits + 2) / _sf(2 * K)
