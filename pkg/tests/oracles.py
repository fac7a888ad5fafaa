"""Independent brute-force oracles used by the tests.

Nothing here goes through the determinant formulas of the package: moments
are computed by expanding det(lam - A - G) over the matrix entries and taking
Gaussian expectations monomial by monomial.
"""

from fractions import Fraction
from itertools import permutations
from math import comb, prod

import mpmath


def _double_factorial(n):
    return prod(range(n, 0, -2)) if n > 0 else 1


def _sign(perm):
    s, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        s *= (-1) ** (length - 1)
    return s


# polynomials: dict {exponent tuple: (re, im)} with Fraction parts

def _mul(p, q):
    out = {}
    for e1, (a, b) in p.items():
        for e2, (c, d) in q.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            re, im = out.get(e, (0, 0))
            out[e] = (re + a * c - b * d, im + a * d + b * c)
    return {e: v for e, v in out.items() if v != (0, 0)}


def _add(p, q, scale=1):
    out = dict(p)
    for e, (c, d) in q.items():
        re, im = out.get(e, (0, 0))
        out[e] = (re + scale * c, im + scale * d)
    return {e: v for e, v in out.items() if v != (0, 0)}


def gaussian_entry_moment(M, N, lambdas, source=None, derivative=0):
    """E prod_l d^D/dlam^D det(lam_l - A - G) by expansion over entries.

    G is Hermitian: G_ii ~ N(0, 1/N), Re/Im G_ij ~ N(0, 1/(2N)).  A = diag(source).
    Meant for M <= 3 and a handful of factors.
    """
    N = Fraction(N)
    source = [Fraction(a) for a in (source or [0] * M)]
    pairs = [(i, j) for i in range(M) for j in range(i + 1, M)]
    nvar = M + 2 * len(pairs)
    var_of = {}
    for i in range(M):
        var_of[("u", i)] = i
    for k, pr in enumerate(pairs):
        var_of[("x",) + pr] = M + 2 * k
        var_of[("y",) + pr] = M + 2 * k + 1
    variance = [1 / N] * M + [1 / (2 * N)] * (2 * len(pairs))

    def mono(index, coeff):
        e = [0] * nvar
        e[index] = 1
        return {tuple(e): coeff}

    zero = (0,) * nvar
    lam_power = nvar  # an extra slot tracks powers of lam

    def entry(i, j):
        # (lam - A - G)_ij as a polynomial in the entries and lam
        if i == j:
            p = {zero + (0,): (-source[i], 0), zero + (1,): (1, 0)}
            u = mono(var_of[("u", i)], (-1, 0))
            return _add(p, {k + (0,): v for k, v in u.items()})
        a, b, conj = (i, j, 1) if i < j else (j, i, -1)
        x = mono(var_of[("x", a, b)], (-1, 0))
        y = mono(var_of[("y", a, b)], (0, -conj))
        return {k + (0,): v for k, v in _add(x, y).items()}

    det = {}
    for perm in permutations(range(M)):
        term = {zero + (0,): (_sign(perm), 0)}
        for i in range(M):
            term = _mul(term, entry(i, perm[i]))
        det = _add(det, term)

    total = {zero: (Fraction(1), 0)}
    for lam in lambdas:
        lam = Fraction(lam)
        factor = {}
        for e, (re, im) in det.items():
            k = e[lam_power]
            if k < derivative:
                continue
            c = prod(range(k - derivative + 1, k + 1)) * lam ** (k - derivative)
            factor = _add(factor, {e[:lam_power]: (re * c, im * c)})
        total = _mul(total, factor)

    re_sum, im_sum = Fraction(0), Fraction(0)
    for e, (re, im) in total.items():
        if any(k % 2 for k in e):
            continue
        w = prod(_double_factorial(k - 1) * variance[v] ** (k // 2) for v, k in enumerate(e))
        re_sum += re * w
        im_sum += im * w
    assert im_sum == 0
    return re_sum


def two_eigenvalue_F2(N):
    """<(x1 x2)^2 (x1 - x2)^2> / <(x1 - x2)^2> for x1, x2 iid N(0, 1/N): the
    eigenvalue integral of det(X)^2 over 2 x 2 Gaussian Hermitian X."""
    N = Fraction(N)

    def m(k):
        return 0 if k % 2 else _double_factorial(k - 1) / N ** (k // 2)

    # expand (x1 - x2)^2 = x1^2 - 2 x1 x2 + x2^2
    num = m(4) * m(2) - 2 * m(3) * m(3) + m(2) * m(4)
    den = m(2) * m(0) - 2 * m(1) * m(1) + m(0) * m(2)
    return num / den


def airy_contour_moment(n, dps=40):
    """m_n = (1/2 pi) int z^n e^{i z^3/3} dz along the rays arg z = 5pi/6 -> pi/6,
    where the integrand decays like e^{-r^3/3}."""
    with mpmath.workdps(dps):
        total = 0
        for theta, sgn in ((mpmath.pi / 6, 1), (5 * mpmath.pi / 6, -1)):
            w = mpmath.expj(theta)
            f = lambda r, w=w: (r * w) ** n * mpmath.exp(1j * (r * w) ** 3 / 3) * w
            total += sgn * mpmath.quad(f, [0, 2, 6, mpmath.inf])
        return total / (2 * mpmath.pi)


def _shifted_gaussian_moment(k, mean, var):
    # E[x^k] for x ~ N(mean, var)
    return sum(comb(k, 2 * j) * mean ** (k - 2 * j) * var ** j * _double_factorial(2 * j - 1)
               for j in range(k // 2 + 1))


def hciz_two_by_two_moment(a1, a2, N, lambdas):
    """E prod_l det(lam_l - X) for 2 x 2 X = diag(a1, a2) + G through the
    eigenvalue density.  With the M = 2 HCIZ integral the joint density of the
    eigenvalues is proportional to
        (x1 - x2) [e^{N(a1 x1 + a2 x2)} - e^{N(a2 x1 + a1 x2)}] e^{-N(x1^2 + x2^2)/2},
    i.e. a difference of two shifted Gaussians weighted by (x1 - x2)."""
    N = Fraction(N)
    a1, a2 = Fraction(a1), Fraction(a2)
    var = 1 / N
    # f(x1, x2) = (x1 - x2) prod_l (lam - x1)(lam - x2) as {(i, j): coeff}
    f = {(1, 0): Fraction(1), (0, 1): Fraction(-1)}
    for lam in lambdas:
        lam = Fraction(lam)
        factor = {(0, 0): lam * lam, (1, 0): -lam, (0, 1): -lam, (1, 1): Fraction(1)}
        out = {}
        for (i, j), c in f.items():
            for (p, q), d in factor.items():
                out[(i + p, j + q)] = out.get((i + p, j + q), 0) + c * d
        f = out

    def average(poly, m1, m2):
        return sum(c * _shifted_gaussian_moment(i, m1, var) * _shifted_gaussian_moment(j, m2, var)
                   for (i, j), c in poly.items())

    one = {(1, 0): Fraction(1), (0, 1): Fraction(-1)}
    num = average(f, a1, a2) - average(f, a2, a1)
    den = average(one, a1, a2) - average(one, a2, a1)
    return num / den
