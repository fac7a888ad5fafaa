import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charpoly_moments.airy_edge import (
    AiryPolynomial,
    ConsistencyError,
    airy_hankel_det,
    airy_hankel_numeric,
    airy_moment_closed,
    airy_moments,
    airy_series,
    edge_gamma,
    hankel_matrix,
)
from charpoly_moments.numerics import GaussianRational, I, airy_constants
from charpoly_moments.verify import AIRY_PRINTED, printed_digit_match
from oracles import airy_contour_moment

C1, C2 = AiryPolynomial.c1(), AiryPolynomial.c2()


def test_moment_examples():
    m = airy_moments(10)
    assert m[0] == C1
    assert m[1] == C2 * (-I)
    assert m[2] == 0
    assert m[3] == C1 * I
    assert m[4] == 2 * C2
    assert m[6] == -4 * C1
    assert m[10] == -80 * C2


def test_recurrence_matches_closed_form():
    m = airy_moments(30)
    for n in range(31):
        assert m[n] == airy_moment_closed(n)


def test_moment_sequence_shape():
    m = airy_moments(30)
    for n in range(31):
        if n % 3 == 2:
            assert not m[n]
        else:
            assert len(m[n].terms) == 1
            (mono, c), = m[n].terms.items()
            assert mono == ((1, 0) if n % 3 == 0 else (0, 1))
            assert c.re.denominator == 1 and c.im.denominator == 1


@pytest.mark.parametrize("n", range(9))
def test_moments_against_contour_integral(n):
    with mpmath.workdps(40):
        c1, c2 = airy_constants(35)
        re, im = airy_moments(n)[n].evaluate(c1, c2)
        assert abs(mpmath.mpc(re, im) - airy_contour_moment(n)) < mpmath.mpf(10) ** -28


def test_hankel_structure():
    mat = hankel_matrix(airy_moments(10), 5)
    for i in range(6):
        for j in range(6):
            for k in range(6):
                if 0 <= i + j - k < 6:
                    assert mat[i][j] == mat[k][i + j - k]
    with pytest.raises(ValueError):
        hankel_matrix(airy_moments(3), 5)


def test_hankel_det_examples():
    assert airy_hankel_det(0) == C1
    assert airy_hankel_det(1) == C2 * C2
    d3 = -8 * C1 * C2 * C2 * C2 - 3 * C1 * C1 * C1 * C1
    assert airy_hankel_det(3) == d3
    c2_6 = C2 * C2 * C2 * C2 * C2 * C2
    c1_3 = C1 * C1 * C1
    d5 = -2160 * c2_6 - 1952 * c1_3 * C2 * C2 * C2 - 432 * c1_3 * c1_3
    assert airy_hankel_det(5) == d5
    assert str(airy_hankel_det(1)) == "C2^2"


def test_hankel_dets_real_and_nonzero():
    c1, c2 = airy_constants(30)
    signs = []
    for n in range(10):
        d = airy_hankel_det(n)
        assert d.is_real()
        re, im = d.evaluate(c1, c2)
        assert im == 0 and abs(re) > 0
        signs.append(1 if re > 0 else -1)
    assert len(signs) == 10


@pytest.mark.parametrize("n", range(6))
def test_hankel_numeric_against_contour_oracle(n):
    # determinant of contour-integrated moments, in complex floating point
    with mpmath.workdps(40):
        mom = [airy_contour_moment(k) for k in range(2 * n + 1)]
        det = mpmath.det(mpmath.matrix([[mom[i + j] for j in range(n + 1)] for i in range(n + 1)]))
        assert abs(mpmath.im(det)) < mpmath.mpf(10) ** -28
        assert abs(mpmath.re(det) - airy_hankel_numeric(n)) < mpmath.mpf(10) ** -27


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_printed_digits_reproduced(n):
    assert printed_digit_match(airy_hankel_numeric(n), AIRY_PRINTED[n])[0]


def test_edge_gamma():
    assert printed_digit_match(edge_gamma(1), "0.066987483")[0]
    assert printed_digit_match(edge_gamma(2), "0.001580882")[0]
    assert edge_gamma(3) == airy_hankel_numeric(5)
    assert mpmath.nstr(edge_gamma(3), 12) == "9.07583240709e-5"
    with pytest.raises(ValueError):
        edge_gamma(0)


def test_imaginary_part_guard():
    assert issubclass(ConsistencyError, ArithmeticError)
    poly = AiryPolynomial({(1, 0): GaussianRational(0, 1)})
    assert not poly.is_real()


small = st.integers(min_value=-5, max_value=5)


@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.tuples(small, small), max_size=4),
       st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.tuples(small, small), min_size=1, max_size=3))
@settings(max_examples=60, deadline=None)
def test_exact_division_roundtrip(a, b):
    pa = AiryPolynomial({k: GaussianRational(*v) for k, v in a.items()})
    pb = AiryPolynomial({k: GaussianRational(*v) for k, v in b.items()})
    if pb:
        assert (pa * pb) / pb == pa


def test_inexact_division_raises():
    with pytest.raises(ArithmeticError):
        C1 / C2


@pytest.mark.parametrize("y", ["0", "-1", "0.5", "-2.25", "1.5"])
def test_airy_series_against_mpmath(y):
    with mpmath.workdps(30):
        assert abs(airy_series(mpmath.mpf(y)) - mpmath.airyai(mpmath.mpf(y))) < mpmath.mpf(10) ** -27
