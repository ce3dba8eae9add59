from fractions import Fraction

import numpy as np
import pytest
from scipy.special import eval_legendre

from ocp_moments.diagrams import (
    coulomb_v,
    h3_closed,
    h_approx,
    h_approx_exact,
    h_from_moments,
    i2_from_h1,
    i4_approx,
    i6_approx,
    kernel_K,
    legendre_product_coeff,
    m1_closed,
    m1_series,
    m2_series,
    m3_closed,
    m3_series,
    percent_error,
)
from ocp_moments.error import ConvergenceError
from ocp_moments.sphere import i_hat2_exact, i_hat_gamma2_closed, i_hat_many

NODES, WEIGHTS = np.polynomial.legendre.leggauss(64)


def quadrature_coeff(l, lp, lpp):
    integrand = (
        eval_legendre(l, NODES) * eval_legendre(lp, NODES) * eval_legendre(lpp, NODES)
    )
    return (2 * lpp + 1) / 2 * float(np.sum(WEIGHTS * integrand))


def test_coulomb_and_kernel():
    assert coulomb_v(1) == Fraction(3, 4)
    assert kernel_K(2, 2, 1) == Fraction(-6, 8)
    with pytest.raises(ValueError):
        coulomb_v(0)


def test_legendre_product_examples():
    assert legendre_product_coeff(0, 1, 1) == 1
    assert legendre_product_coeff(1, 1, 2) == Fraction(2, 3)
    assert legendre_product_coeff(1, 1, 0) == Fraction(1, 3)
    assert legendre_product_coeff(5, 1, 3) == 0
    assert legendre_product_coeff(2, 3, 4) == 0


@pytest.mark.parametrize("lpp", [0, 1, 2, 3, 4, 5])
def test_legendre_product_against_quadrature(lpp):
    for l in range(21):
        for lp in range(21):
            expected = quadrature_coeff(l, lp, lpp)
            got = float(legendre_product_coeff(l, lp, lpp))
            assert got == pytest.approx(expected, abs=1e-10)


def test_closed_forms():
    assert m1_closed(4, 2) == Fraction(3, 4)
    assert m3_closed(2, 2) == Fraction(49, 24)
    assert h3_closed(2, 2) == Fraction(1, 2)


@pytest.mark.parametrize("Gamma", [2, 4, 6, 8])
@pytest.mark.parametrize("N", [2, 5, 12])
def test_series_match_closed_forms(N, Gamma):
    tol = 1e-10
    m1 = m1_series(N, Gamma, tol)
    assert m1.value == pytest.approx(float(m1_closed(N, Gamma)), abs=10 * tol)
    m3 = m3_series(N, Gamma, tol)
    assert m3.value == pytest.approx(float(m3_closed(N, Gamma)), abs=10 * tol)


def test_m2_series_converges():
    coarse = m2_series(2, 2, 1e-8)
    fine = m2_series(2, 2, 1e-10)
    assert fine.terms > coarse.terms
    assert 0 < fine.value - coarse.value <= coarse.tail_bound


def test_series_term_limit():
    with pytest.raises(ConvergenceError):
        m1_series(3, 8, 1e-14)


@pytest.mark.parametrize("N, Gamma", [(2, 2), (3, 4), (5, 6), (12, 8)])
def test_h3_closed_form(N, Gamma):
    assert h_approx_exact(N, Gamma, 3) == h3_closed(N, Gamma)


@pytest.mark.parametrize("N, Gamma", [(1, 2), (2, 4), (7, 6), (30, 8)])
def test_sum_rule_from_h1(N, Gamma):
    h1 = h_approx_exact(N, Gamma, 1)
    assert i2_from_h1(N, Gamma, h1) == i_hat2_exact(N, Gamma)


def test_h_from_moments_inverts_sum_rule():
    N, Gamma = 3, 4
    h1 = h_approx_exact(N, Gamma, 1)
    moments = {0: Fraction(-1), 1: i_hat2_exact(N, Gamma)}
    assert h_from_moments(N, Gamma, 1, moments) == h1


def test_h_from_moments_gamma2(table):
    N = 3
    moments = {m.n: m.value for m in i_hat_many(table(N, 2), range(4))}
    for l in (1, 2, 3):
        assert isinstance(h_from_moments(N, 2, l, moments), Fraction)
    with pytest.raises(ValueError):
        h_from_moments(N, 2, 4, moments)


def test_h_approx_orders():
    assert h_approx(4, 4, 1) == float(h_approx_exact(4, 4, 1))
    with pytest.raises(ValueError):
        h_approx(4, 4, 4)


GAMMA2_TABLE = [
    (2, -0.6317574181, 5.236, -0.752415111),
    (3, -0.8700339821, 3.330, -1.337880192),
    (4, -1.042131679, 2.300, -1.864218645),
    (5, -1.170437198, 1.683, -2.312761744),
    (6, -1.26919496, 1.285, -2.689601017),
    (7, -1.347327155, 1.013, -3.00618709),
    (8, -1.410579495, 0.819, -3.27362061),
    (9, -1.462780494, 0.675, -3.501250962),
    (10, -1.50656529, 0.567, -3.69658924),
    (11, -1.543801073, 0.482, -3.865574853),
    (12, -1.57584505, 0.415, -4.012891553),
    (13, -1.603706117, 0.361, -4.142245077),
    (14, -1.628149088, 0.317, -4.256585403),
    (15, -1.649763932, 0.281, -4.358278405),
    (16, -1.669012791, 0.250, -4.449236580),
    (17, -1.686262682, 0.225, -4.531018304),
    (18, -1.701808689, 0.203, -4.604903343),
    (19, -1.715890707, 0.184, -4.671950573),
    (20, -1.72870573, 0.167, -4.733042400),
    (21, -1.740417020, 0.153, -4.788919165),
    (22, -1.751160988, 0.140, -4.840206004),
    (23, -1.761052508, 0.129, -4.88743397),
    (24, -1.770188989, 0.120, -4.931056780),
    (25, -1.778653568, 0.111, -4.971464120),
    (26, -1.786517625, 0.103, -5.008992411),
    (27, -1.793842793, 0.096, -5.043933457),
    (28, -1.800682557, 0.090, -5.076541501),
    (29, -1.807083561, 0.084, -5.107039000),
    (30, -1.813086665, 0.079, -5.135621381),
    (31, -1.818727815, 0.074, -5.16246097),
    (32, -1.824038756, 0.070, -5.187710286),
]


@pytest.mark.parametrize("N, i4, i4_pct, i6", GAMMA2_TABLE)
def test_gamma2_diagram_table(N, i4, i4_pct, i6):
    approx4 = i4_approx(N, 2, tol=1e-12)
    assert approx4 == pytest.approx(i4, abs=1e-8)
    assert i6_approx(N, 2, tol=1e-12) == pytest.approx(i6, abs=1e-7)
    exact4 = i_hat_gamma2_closed(N, 2)
    assert percent_error(exact4, approx4) == pytest.approx(i4_pct, abs=0.01)


def test_i4_approx_reference():
    assert i4_approx(2, 4) == pytest.approx(-0.686993, abs=1e-6)
    assert i4_approx(3, 6) == pytest.approx(2.12597868844099, abs=1e-8)


def test_i6_approx_strong_coupling():
    assert i6_approx(3, 8, tol=1e-11) == pytest.approx(-127.1369698, abs=1e-5)


def test_percent_error():
    assert percent_error(Fraction(-2, 3), -0.6317574181) == pytest.approx(5.2364, abs=1e-3)
    assert percent_error(0, 1.0) is None
