import math
from fractions import Fraction

import pytest

from ocp_moments.disk import m_gamma2_closed
from ocp_moments.error import ResourceLimitError
from ocp_moments.numeric import factorial
from ocp_moments.perturbation import (
    CalITable,
    calI,
    calI_asymptotic,
    calJ_difference,
    calJ_quadrature,
    m_moment_linearized,
    m_moment_slope,
    m_tilde,
    m_tilde_limits,
    m_tilde_split,
)


def test_calI_values():
    assert calI(0, 0) == Fraction(1, 2)
    assert calI(1, 0) == Fraction(3, 4)
    assert calI(0, 1) == Fraction(1, 4)


def test_table_matches_sum_formula():
    table = CalITable(15)
    for k1 in range(16):
        for k2 in range(16):
            assert table.value(k1, k2) == calI(k1, k2)


def check_table(max_k):
    table = CalITable(max_k)
    for k1 in range(max_k + 1):
        for k2 in range(max_k + 1):
            assert table.ratio(k1, k2) + table.ratio(k2, k1) == 1
            if k1 < max_k:
                step = table.value(k1 + 1, k2) - (k1 + 1) * table.value(k1, k2)
                assert step == Fraction(factorial(k1 + k2 + 1), 2 ** (k1 + k2 + 2))


def test_table_symmetry_and_recurrence():
    check_table(60)


@pytest.mark.slow
def test_table_symmetry_and_recurrence_large():
    check_table(200)


def test_asymptotic_form():
    table = CalITable(400)
    assert table.ratio(100, 100) == Fraction(1, 2)
    assert calI_asymptotic(100, 100) == 0.5
    assert float(table.ratio(200, 50)) == pytest.approx(1.0, abs=1e-6)
    assert float(table.ratio(50, 200)) == pytest.approx(0.0, abs=1e-6)

    def worst(total):
        return max(
            abs(float(table.ratio(k1, total - k1)) - calI_asymptotic(k1, total - k1))
            for k1 in range(total + 1)
        )

    assert worst(400) <= 0.05
    assert worst(400) < worst(50)


@pytest.mark.parametrize("N", [1, 2, 3, 8, 32, 64])
def test_m_tilde_first_moment(N):
    mt = m_tilde(N, 1)
    assert mt.m1 == Fraction(1, 2)
    assert mt.m2 == 0
    assert mt.m3 == 0


def test_m_tilde_zeroth_moment():
    mt = m_tilde(5, 0)
    assert (mt.m1, mt.m2, mt.m3) == (0, 0, 0)


@pytest.mark.parametrize("n", [2, 3])
def test_m2_m3_cancel_for_low_moments(n):
    for N in range(1, 13):
        mt = m_tilde(N, n)
        assert mt.m2 + mt.m3 == 0


def test_m_tilde_two_particles():
    mt = m_tilde(2, 2)
    assert mt.m1 == Fraction(23, 16)
    assert mt.m2 == Fraction(-1, 16)
    assert mt.m3 == Fraction(1, 16)
    m1a, m1b = m_tilde_split(2, 2)
    assert m1a + m1b == mt.m1


def test_slope_matches_two_particle_closed_form():
    # M(Gamma) = 4/Gamma^2 + 7/(4 Gamma) + 1/8 for two particles
    slope = Fraction(-8, 8) + Fraction(-7, 16)
    assert m_moment_slope(2, 2) == slope


@pytest.mark.parametrize("n", [2, 3, 4])
def test_fast_path_agrees_with_exact(n):
    exact = m_tilde(40, n, exact=True)
    fast = m_tilde(40, n, exact=False)
    for a, b in [(exact.m1, fast.m1), (exact.m2, fast.m2), (exact.m3, fast.m3)]:
        assert isinstance(b, float)
        assert b == pytest.approx(float(a), rel=1e-9, abs=1e-12)


def test_large_N_approach():
    limit = float(m_tilde_limits(4)[0] + m_tilde_limits(4)[1])
    gaps = [abs(float(m_tilde(N, 4).m1) - limit) for N in (16, 64, 256)]
    assert gaps[2] < gaps[0]


def test_particle_limit():
    with pytest.raises(ResourceLimitError) as info:
        m_tilde(20, 2, particle_limit=10)
    assert info.value.exit_code == 3
    assert info.value.context == "N=20 n=2"
    assert m_tilde(10, 2, particle_limit=10).m1 == m_tilde(10, 2).m1


def test_limits():
    m1a, m1b, m2, m3 = m_tilde_limits(3)
    assert m1a + m1b == Fraction(3, 2)
    assert m2 + m3 == 0


def test_linearized():
    assert m_moment_linearized(5, 3, 2) == m_gamma2_closed(5, 3)
    for N in (2, 5, 9):
        assert m_moment_slope(N, 1) == Fraction(-1, 2)
        assert m_moment_linearized(N, 1, 4) == m_gamma2_closed(N, 1) - 1


@pytest.mark.parametrize("k1", [0, 1, 3, 7, 12])
@pytest.mark.parametrize("k2", [0, 2, 5, 12])
@pytest.mark.parametrize("n", [1, 2, 4])
def test_calJ_difference_against_quadrature(k1, k2, n):
    exact = calJ_difference(k1, k2, n)
    ratio = math.perm(k1 + n, n)
    whole = calJ_quadrature(k1 + n, k2)
    numeric = whole - ratio * calJ_quadrature(k1, k2)
    assert numeric == pytest.approx(float(exact), rel=1e-8, abs=1e-11 * abs(whole))
