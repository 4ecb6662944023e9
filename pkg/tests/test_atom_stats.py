import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ddc_rates import ExponentialSum, PreparedState, brute_force_statistics, c_atoms, chi_atom, derivative

GG, SYM, ASYM, EE = (
    PreparedState.GROUND_GROUND,
    PreparedState.SYMMETRIC_BELL,
    PreparedState.ANTISYMMETRIC_BELL,
    PreparedState.EXCITED_EXCITED,
)
ATOM_PAIRS = [("A", "A"), ("A", "B"), ("B", "A"), ("B", "B")]
LAGS = np.linspace(-20.0, 20.0, 32)


def test_bell_chi_vanishes_identically():
    for state in (SYM, ASYM):
        for atom in "AB":
            es = chi_atom(state, atom, 1.0)
            assert es.is_zero
            assert es(0.37) == 0


def test_excited_chi_quarter_period():
    w = 1.7
    assert chi_atom(EE, "A", w)(math.pi / (2 * w)) == pytest.approx(0.25j, abs=1e-16)


def test_ground_chi_at_coincidence():
    assert chi_atom(GG, "B", 1.0)(0.0) == 0


def test_c_atoms_examples():
    assert c_atoms(ASYM, "A", "B", 1.0)(0.0) == pytest.approx(-0.25)
    assert c_atoms(SYM, "A", "A", 1.0)(0.0) == pytest.approx(0.25)
    assert c_atoms(GG, "A", "B", 1.0).is_zero


def test_derivative_examples():
    w = 2.0
    d = derivative(ExponentialSum.of([(1 / 8, w)]))
    assert d.terms == ((1j * w / 8, w),)
    assert derivative(ExponentialSum()).is_zero
    assert derivative(c_atoms(SYM, "A", "A", w))(0.0) == 0


def test_increment_is_accurate_near_zero():
    es = ExponentialSum.of([(0.3, 2.0), (0.7j, -1.1)])
    s = 1e-9
    # exact: 0.3 (e^{2is} - 1) + 0.7i (e^{-1.1is} - 1)
    expected = 0.3 * (2j * s - 2 * s * s) + 0.7j * (-1.1j * s - 0.605 * s * s)
    assert es.increment(s) == pytest.approx(expected, rel=1e-9)
    np.testing.assert_allclose(es.increment(LAGS), es(LAGS) - es(0.0), atol=1e-15)


@pytest.mark.parametrize("state", list(PreparedState))
@pytest.mark.parametrize("omega0", [1.0, 0.35])
def test_brute_force_matches_chi(state, omega0):
    for atom in "AB":
        closed = chi_atom(state, atom, omega0)
        for s in LAGS / omega0:
            assert abs(brute_force_statistics(state, atom, atom, s, omega0, "chi") - closed(s)) <= 1e-14


@pytest.mark.parametrize("state", list(PreparedState))
@pytest.mark.parametrize("xi, xi_prime", ATOM_PAIRS)
def test_brute_force_matches_C(state, xi, xi_prime):
    closed = c_atoms(state, xi, xi_prime, 1.0)
    for s in LAGS:
        assert abs(brute_force_statistics(state, xi, xi_prime, s, 1.0, "C") - closed(s)) <= 1e-14


@pytest.mark.parametrize("state", [GG, EE])
def test_product_state_cross_functions_vanish(state):
    for s in LAGS:
        for which in ("C", "chi"):
            assert brute_force_statistics(state, "A", "B", s, 1.0, which) == 0


@given(st.sampled_from(list(PreparedState)), st.sampled_from(ATOM_PAIRS), st.floats(-10, 10), st.floats(-10, 10))
def test_brute_force_is_stationary(state, atoms, s, tau_prime):
    a = brute_force_statistics(state, *atoms, s, 1.0, "C", tau_prime=tau_prime)
    b = brute_force_statistics(state, *atoms, s, 1.0, "C")
    assert abs(a - b) <= 1e-14


@given(st.sampled_from(list(PreparedState)), st.floats(-20, 20))
def test_brute_force_derivative(state, s):
    h = 1e-5
    fd = (
        brute_force_statistics(state, "A", "A", s + h, 1.0, "chi")
        - brute_force_statistics(state, "A", "A", s - h, 1.0, "chi")
    ) / (2 * h)
    exact = brute_force_statistics(state, "A", "A", s, 1.0, "chi", differentiate=True)
    assert abs(fd - exact) < 1e-9
    assert abs(exact - chi_atom(state, "A", 1.0).derivative()(s)) <= 1e-14


@given(st.sampled_from(list(PreparedState)), st.sampled_from(ATOM_PAIRS), st.floats(-30, 30))
def test_parities_in_lag(state, atoms, s):
    chi = chi_atom(state, atoms[0], 1.0)
    C = c_atoms(state, *atoms, 1.0)
    assert chi(s) == pytest.approx(-chi(-s), abs=1e-15)
    assert C(s) == pytest.approx(C(-s), abs=1e-15)


def test_ground_is_minus_excited_termwise():
    for atom in "AB":
        assert chi_atom(GG, atom, 1.3).terms == (-chi_atom(EE, atom, 1.3)).terms
