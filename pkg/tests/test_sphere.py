from fractions import Fraction

import pytest

from ocp_moments.sphere import (
    complete_homogeneous,
    density_constancy_check,
    i_hat,
    i_hat2_exact,
    i_hat2_series,
    i_hat_gamma2_closed,
    i_hat_gamma2_series,
    i_hat_many,
    partition_identity_gap,
    thermo_reference,
    z_sphere,
)


def test_z_sphere(table):
    assert z_sphere(table(2, 2)) == 1
    assert z_sphere(table(2, 4)) == 6


def test_i_hat_two_particles(table):
    record = i_hat(table(2, 4), 2)
    assert record.value == Fraction(-16, 15)
    assert record.decimal.text == "-1.06666666666667"
    assert (record.N, record.Gamma, record.n) == (2, 4, 2)


def test_i_hat_zeroth_moment(table):
    for N, Gamma in [(2, 4), (3, 6), (4, 8)]:
        assert i_hat(table(N, Gamma), 0).value == -1


def test_i_hat_rejects_negative_order(table):
    with pytest.raises(ValueError):
        i_hat(table(2, 4), -1)


@pytest.mark.parametrize(
    "N, Gamma, n, text",
    [
        (3, 4, 2, "-0.73469387755102"),
        (3, 4, 3, "3.30612244897959"),
        (4, 4, 2, "-0.552915766738661"),
        (4, 4, 3, "5.1605471562275"),
        (5, 4, 2, "-0.437781621713968"),
        (4, 6, 2, "1.77112299465241"),
        (3, 8, 3, "103.537190082645"),
        (3, 8, 4, "1073.4573622182"),
    ],
)
def test_i_hat_reference_values(table, N, Gamma, n, text):
    assert i_hat(table(N, Gamma), n).decimal.text == text


FOURTH_MOMENT_GAMMA4 = [
    (2, "-1.06666666666667"),
    (3, "-0.73469387755102"),
    (4, "-0.552915766738661"),
    (5, "-0.437781621713968"),
    pytest.param(6, "-0.361584090880502", marks=pytest.mark.slow),
    pytest.param(7, "-0.307439760694233", marks=pytest.mark.slow),
    pytest.param(8, "-0.267158562552772", marks=pytest.mark.slow),
    pytest.param(9, "-0.236094785664912", marks=pytest.mark.slow),
    pytest.param(10, "-0.211435346122364", marks=pytest.mark.slow),
]


@pytest.mark.parametrize("N, text", FOURTH_MOMENT_GAMMA4)
def test_fourth_moment_gamma4_table(table, N, text):
    assert i_hat(table(N, 4), 2).decimal.text == text


def test_i_hat_three_particles_gamma6(table):
    i4, i6 = i_hat_many(table(3, 6), [2, 3])
    assert i4.value == Fraction(3, 2)
    assert i6.value == Fraction(162, 5)


@pytest.mark.slow
def test_i_hat_six_particles(table):
    assert i_hat(table(6, 4), 4).decimal.text == "40.3968590167648"


@pytest.mark.parametrize("Gamma", [2, 4, 6, 8])
@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_sum_rule(table, N, Gamma):
    assert i_hat(table(N, Gamma), 1).value == i_hat2_exact(N, Gamma)


@pytest.mark.parametrize("N", range(1, 9))
def test_gamma2_closed_form(table, N):
    for n, record in enumerate(i_hat_many(table(N, 2), range(5))):
        assert record.value == i_hat_gamma2_closed(N, n)


def test_gamma2_closed_values():
    assert i_hat_gamma2_closed(2, 2) == Fraction(-2, 3)
    assert i_hat_gamma2_closed(2, 3) == Fraction(-4, 5)
    assert i_hat_gamma2_closed(7, 0) == -1


@pytest.mark.parametrize("N, Gamma", [(2, 4), (3, 4), (3, 6), (4, 4), (4, 8)])
def test_exact_identities(table, N, Gamma):
    assert density_constancy_check(table(N, Gamma)) == 0
    assert partition_identity_gap(table(N, Gamma)) == 0


def test_fourth_moment_tends_to_bulk_value(table):
    values = [i_hat(table(N, 4), 2).value for N in range(2, 8)]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert all(v < 0 for v in values)
    assert thermo_reference(4) == (0, 6)


def test_i_hat2_exact():
    assert i_hat2_exact(2, 4) == -1
    assert i_hat2_exact(1, 6) == Fraction(-3, 2)
    assert abs(i_hat2_exact(10**6, 6) + 1) < Fraction(1, 10**5)


def test_i_hat2_series():
    N, Gamma = 50, 6
    exact = i_hat2_exact(N, Gamma)
    x = Fraction(4 - Gamma, Gamma * N)
    for order in range(1, 6):
        assert abs(i_hat2_series(N, Gamma, order) - exact) <= 2 * abs(x) ** (order + 1)


def test_complete_homogeneous():
    assert complete_homogeneous([1, 2], 3) == [1, 3, 7, 15]


def test_i_hat_gamma2_series():
    assert i_hat_gamma2_series(10, 2, 2) == -2 * (1 - Fraction(3, 10) + Fraction(7, 100))
    N = 1000
    for n in (2, 3, 4):
        gap = abs(i_hat_gamma2_series(N, n, 3) - i_hat_gamma2_closed(N, n))
        assert gap < Fraction(10**6, N**4)
