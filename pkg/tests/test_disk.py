from fractions import Fraction

import numpy as np
import pytest

from ocp_moments.disk import (
    cumulant_r2,
    cumulant_r2_fd,
    char_fn_r2,
    elementary_symmetric,
    m_first_exact,
    m_gamma2_closed,
    m_gamma2_series,
    m_moment,
    m_moments,
    mean_o1_prediction,
    mu_tilde_histogram,
    z_soft,
)


def two_particle_m2(Gamma):
    # <|r1|^4 + |r2|^4> for two particles, in closed form
    return Fraction(4, Gamma**2) + Fraction(7, 4 * Gamma) + Fraction(1, 8)


def test_z_soft(table):
    assert z_soft(table(2, 2)) == 1
    assert z_soft(table(2, 4)) == 4


def test_m_moment_two_particles(table):
    record = m_moment(table(2, 4), 2)
    assert record.value == Fraction(13, 16)
    assert record.decimal.text == "0.8125"


@pytest.mark.parametrize("Gamma", [2, 4, 6, 8])
def test_m_moment_two_particle_closed_form(table, Gamma):
    assert m_moment(table(2, Gamma), 2).value == two_particle_m2(Gamma)


def test_m_moment_reference_value(table):
    record = m_moment(table(3, 8), 4)
    assert record.decimal.text == "0.359389450389748"
    # published as ...747, one unit in the last place below the exact value
    assert abs(record.value - Fraction("0.359389450389747")) <= Fraction(1, 10**15)


@pytest.mark.parametrize("N, Gamma", [(1, 4), (2, 6), (3, 4), (4, 6), (4, 8)])
def test_exact_low_moments(table, N, Gamma):
    m0, m1 = m_moments(table(N, Gamma), [0, 1])
    assert m0.value == N
    assert m1.value == m_first_exact(N, Gamma)


@pytest.mark.parametrize("N", range(1, 9))
def test_gamma2_closed_form(table, N):
    for n, record in enumerate(m_moments(table(N, 2), range(5))):
        assert record.value == m_gamma2_closed(N, n)


def test_gamma2_closed_values():
    assert m_gamma2_closed(2, 1) == Fraction(3, 2)
    assert m_gamma2_closed(5, 0) == 5
    assert m_gamma2_closed(4, 2) == Fraction(5, 2)


def test_elementary_symmetric():
    assert elementary_symmetric([1, 2, 3], 3) == [1, 6, 11, 6]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_gamma2_series_is_exact_at_full_order(n):
    for N in (3, 10, 100):
        assert m_gamma2_series(N, n, n) == m_gamma2_closed(N, n)


def test_gamma2_series_leading_term():
    assert m_gamma2_series(1000, 3, 0) == Fraction(1000, 4)


def test_char_fn():
    assert char_fn_r2(5, 4, 0.0) == pytest.approx(1.0)
    k = np.linspace(-3, 3, 7)
    assert np.all(np.abs(char_fn_r2(5, 4, k)) <= 1.0 + 1e-12)


@pytest.mark.parametrize("N, Gamma", [(2, 2), (5, 4), (10, 6)])
def test_cumulants(N, Gamma):
    assert cumulant_r2(N, Gamma, 1) == m_first_exact(N, Gamma)
    assert cumulant_r2_fd(N, Gamma, 1) == pytest.approx(
        float(m_first_exact(N, Gamma)), rel=1e-8
    )
    assert cumulant_r2_fd(N, Gamma, 2) == pytest.approx(
        float(cumulant_r2(N, Gamma, 2)), rel=1e-6
    )


def test_second_cumulant_large_N():
    assert float(cumulant_r2(10**6, 4, 2)) == pytest.approx(0.25, rel=1e-5)


def test_cumulant_order():
    with pytest.raises(ValueError):
        cumulant_r2(3, 4, 0)
    with pytest.raises(ValueError):
        cumulant_r2_fd(3, 4, 3)


def test_mean_o1_prediction():
    assert mean_o1_prediction(10, 2, 2) == m_first_exact(10, 2)
    assert mean_o1_prediction(10, 4, 2) == 5
    assert mean_o1_prediction(4, 2, 4) == Fraction(4, 3) + 1


def test_mu_tilde_histogram(table):
    density, edges = mu_tilde_histogram(table(4, 4), bins=10)
    assert len(edges) == 11
    assert np.sum(density * np.diff(edges)) == pytest.approx(1.0)
