from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charpoly_moments.numerics import (
    DomainError,
    GaussianRational,
    I,
    Polynomial,
    RationalFunction,
    StructuralError,
    airy_constants,
    barnes_g,
    barnes_g_bounded,
    cofactor_det,
    dirac_det,
    dirac_det_product,
    double_factorial,
    euler_gamma,
    exact_det,
    gamma_fn,
    harmonic_fredholm,
    harmonic_fredholm_product,
    laplacian_det,
    to_mp,
    vandermonde,
)
from charpoly_moments.bulk_kernels import gamma_k

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def close(a, b, tol):
    return abs(mpmath.mpf(a) - mpmath.mpf(b)) <= tol


# exact rings ---------------------------------------------------------------

@given(st.lists(st.lists(fractions, min_size=4, max_size=4), min_size=4, max_size=4))
@settings(max_examples=150, deadline=None)
def test_bareiss_matches_cofactor_4x4(rows):
    assert exact_det(rows) == cofactor_det(rows)


@given(st.lists(st.lists(st.tuples(fractions, fractions), min_size=3, max_size=3), min_size=3, max_size=3))
@settings(max_examples=60, deadline=None)
def test_bareiss_gaussian_rationals(rows):
    m = [[GaussianRational(a, b) for a, b in row] for row in rows]
    assert exact_det(m) == cofactor_det(m)


def test_det_examples():
    eye = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    assert exact_det(eye) == 1
    assert exact_det([[1, 2, 3], [4, 5, 6], [1, 2, 3]]) == 0
    assert exact_det([]) == 1
    with pytest.raises(StructuralError):
        exact_det([[1, 2], [3]])


def test_det_needs_pivot_swap():
    assert exact_det([[0, 1], [1, 0]]) == -1
    assert exact_det([[0, 0, 1], [0, 1, 0], [1, 0, 0]]) == -1


def test_gaussian_rational_ring():
    z = GaussianRational(Fraction(1, 2), 3)
    assert z * z.conjugate() == z.norm()
    assert (z / z) == 1
    assert I * I == -1
    assert (z ** -2) * z ** 2 == 1


def test_rational_function_canonical():
    a = RationalFunction.variable()
    r = (a * a - 1) / (a - 1)
    assert r == a + 1
    assert r.den.coeffs == (Fraction(1),)
    s = 1 / (2 * a) + Fraction(1, 3)
    assert s(Fraction(3)) == Fraction(1, 6) + Fraction(1, 3)
    assert s.den.lead() > 0
    with pytest.raises(ZeroDivisionError):
        RationalFunction(1, 0)


@given(fractions, fractions, fractions)
def test_rational_function_field_axioms(p, q, r):
    a = RationalFunction.variable()
    f = (a + p) / (a * a + 1)
    g = (q * a - r) / (a + 2)
    h = f * g + g
    assert h - g == f * g
    if g:
        assert (h / g) * g == h


def test_polynomial_divmod():
    x = Polynomial.x()
    p = x**3 - 2 * x + 5
    q, r = p.divmod(x - 1)
    assert q * (x - 1) + r == p
    assert r.degree <= 0


def test_small_helpers():
    assert double_factorial(-1) == 1 and double_factorial(7) == 105
    assert vandermonde([1, 2, 4]) == (2 - 1) * (4 - 1) * (4 - 2)


# special functions ------------------------------------------------------------

def test_gamma_examples():
    with mpmath.workdps(40):
        assert close(gamma_fn(5), 24, 1e-30)
        assert close(gamma_fn(Fraction(1, 2)), mpmath.sqrt(mpmath.pi), 1e-29)
        assert close(gamma_fn(Fraction(1, 4)) * gamma_fn(Fraction(3, 4)), mpmath.pi * mpmath.sqrt(2), 1e-29)
        assert close(gamma_fn(Fraction(-1, 2)), -2 * mpmath.sqrt(mpmath.pi), 1e-29)
    for pole in (0, -1, -3, Fraction(-2)):
        with pytest.raises(DomainError):
            gamma_fn(pole)


@given(st.floats(min_value=0.01, max_value=10, allow_nan=False))
@settings(max_examples=50, deadline=None)
def test_gamma_recurrence(x):
    digits = 30
    with mpmath.workdps(digits + 5):
        lhs = gamma_fn(mpmath.mpf(x) + 1, digits)
        rhs = mpmath.mpf(x) * gamma_fn(x, digits)
        assert abs(lhs / rhs - 1) < mpmath.mpf(10) ** (-digits + 5)


def test_euler_gamma():
    assert mpmath.nstr(euler_gamma(10), 10) == "0.5772156649"
    assert mpmath.nstr(euler_gamma(1), 1) == "0.6"
    assert mpmath.nstr(euler_gamma(30), 10) == mpmath.nstr(euler_gamma(10), 10)


def test_barnes_examples():
    for z, v in ((1, 1), (2, 1), (3, 1), (5, 12), (7, 34560)):
        assert close(barnes_g(z), v, 1e-25 * max(1, v))
    with mpmath.workdps(35):
        ratio = barnes_g(mpmath.mpf(5) / 2) / barnes_g(mpmath.mpf(3) / 2)
        assert abs(ratio - gamma_fn(Fraction(3, 2))) < mpmath.mpf(10) ** -25


@pytest.mark.parametrize("z", [mpmath.mpf(k) / 7 - 2 + mpmath.mpf(1) / 11 for k in range(1, 41, 2)])
def test_barnes_functional_equation(z):
    digits = 30
    with mpmath.workdps(digits + 5):
        lhs = barnes_g(z + 1, digits)
        rhs = gamma_fn(z, digits) * barnes_g(z, digits)
        assert abs(lhs - rhs) <= mpmath.mpf(10) ** (-digits + 5) * max(1, abs(rhs))


@pytest.mark.parametrize("z", ["0.5", "1.7", "-0.3", "4.25", "-2.5", "9.1"])
def test_barnes_matches_mpmath_oracle(z):
    with mpmath.workdps(40):
        oracle = mpmath.barnesg(mpmath.mpf(z))
        assert abs(barnes_g(mpmath.mpf(z)) - oracle) < mpmath.mpf(10) ** -28 * max(1, abs(oracle))


def test_barnes_bound_reported():
    b = barnes_g_bounded(mpmath.mpf("3.3"))
    assert b.error_bound >= 0
    assert b.error_bound < mpmath.mpf(10) ** -30


def test_dirac_examples():
    assert close(dirac_det(0), 1, 1e-30)
    with mpmath.workdps(35):
        val = mpmath.exp(4 * (1 + euler_gamma())) / dirac_det(-2)
        assert abs(val - mpmath.mpf(1) / 12) < mpmath.mpf(10) ** -25
        for K in range(1, 6):
            v = mpmath.exp(K * K * (1 + euler_gamma())) / dirac_det(-K)
            g = gamma_k(K)
            assert abs(v - mpmath.mpf(g.numerator) / g.denominator) < mpmath.mpf(10) ** -25 * v
    with pytest.raises(DomainError):
        dirac_det(Fraction(1, 2))


@pytest.mark.parametrize("z", [-1, -2, -3])
def test_dirac_closed_vs_product(z):
    closed = dirac_det(z)
    prod = dirac_det_product(z)
    assert abs(closed - prod.value) <= max(prod.error_bound, mpmath.mpf(10) ** -28 * abs(closed))


def test_laplacian_factorizes():
    # prod over the spectrum of (1 + 1/c^2) splits into Delta+(i) Delta+(-i)
    with mpmath.workdps(35):
        lap = laplacian_det(-1)
        split = dirac_det_product(1j).value * dirac_det_product(-1j).value
        assert abs(mpmath.im(split)) < mpmath.mpf(10) ** -25
        assert abs(lap.value - mpmath.re(split)) < mpmath.mpf(10) ** -25


def test_precision_monotone():
    for f in (lambda d: gamma_fn(Fraction(1, 3), d), lambda d: barnes_g(mpmath.mpf("2.7"), d),
              lambda d: dirac_det(-2, d)):
        lo, hi = f(15), f(30)
        assert mpmath.nstr(lo, 12) == mpmath.nstr(hi, 12)
        assert abs(lo - hi) < mpmath.mpf(10) ** -14 * abs(hi)


def test_airy_constants():
    c1, c2 = airy_constants(30)
    with mpmath.workdps(30):
        assert abs(c1 - mpmath.airyai(0)) < mpmath.mpf(10) ** -28
        assert abs(c2 - mpmath.airyai(0, derivative=1)) < mpmath.mpf(10) ** -28
    assert mpmath.nstr(c1, 9) == "0.355028054"
    assert str(c2 * c2)[:11] == "0.066987483"
    assert mpmath.nstr(c2, 10) == "-0.2588194038"


def test_harmonic_fredholm():
    with mpmath.workdps(35):
        g = euler_gamma(35)
        for lam, target in ((Fraction(-1, 2), mpmath.sqrt(mpmath.pi)),
                            (Fraction(-3, 2), mpmath.sqrt(mpmath.pi) / 2),
                            (Fraction(-7, 2), gamma_fn(Fraction(7, 2)))):
            v = mpmath.exp(g * to_mp(lam)) / harmonic_fredholm(lam)
            assert abs(v - target) < mpmath.mpf(10) ** -28
    assert harmonic_fredholm(1) == 0
    assert harmonic_fredholm(0) == 0


@pytest.mark.parametrize("lam", [Fraction(-1, 2), Fraction(-5, 2), Fraction(7, 3)])
def test_harmonic_closed_vs_product(lam):
    b = harmonic_fredholm_product(lam)
    assert abs(harmonic_fredholm(lam) - b.value) <= max(b.error_bound, mpmath.mpf(10) ** -28)
