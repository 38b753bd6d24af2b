import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from layerlab import (
    BETA_REFERENCE,
    SQRT2,
    DomainError,
    InteractionConstants,
    compute_beta,
    double_well,
    heteroclinic,
    nonlinearity,
    profile_derivative,
    profile_second_derivative,
    shrinking_sphere,
)


def test_heteroclinic_values():
    assert heteroclinic(0.0) == 0.0
    assert heteroclinic(SQRT2) == pytest.approx(math.tanh(1.0), rel=1e-15)
    assert heteroclinic(50.0) == pytest.approx(1.0, abs=1e-15)
    assert heteroclinic(-50.0) == pytest.approx(-1.0, abs=1e-15)


def test_heteroclinic_is_odd_and_increasing():
    s = np.linspace(-8.0, 8.0, 201)
    w = heteroclinic(s)
    assert np.allclose(w + heteroclinic(-s), 0.0, atol=1e-16)
    assert np.all(np.diff(w) > 0)


@given(st.floats(-30.0, 30.0))
def test_profile_solves_its_ode(s):
    # w'' + (1 - w^2) w = 0 pointwise
    w = heteroclinic(s)
    residual = profile_second_derivative(s) + nonlinearity(w)
    assert abs(residual) < 1e-14


@given(st.floats(-10.0, 10.0))
def test_derivative_matches_equipartition(s):
    # first integral: w' = sqrt(2 F(w))
    w = heteroclinic(s)
    assert profile_derivative(s) == pytest.approx(
        math.sqrt(2.0 * double_well(w)), rel=1e-12, abs=1e-15
    )


@pytest.mark.parametrize("s", [-3.0, -0.7, 0.0, 0.4, 2.5])
def test_derivatives_match_finite_differences(s):
    # h trades truncation against cancellation noise (eps / h^2 for fd2)
    h = 1e-4
    fd1 = (heteroclinic(s + h) - heteroclinic(s - h)) / (2 * h)
    fd2 = (heteroclinic(s + h) - 2 * heteroclinic(s) + heteroclinic(s - h)) / h**2
    assert profile_derivative(s) == pytest.approx(fd1, abs=5e-9)
    assert profile_second_derivative(s) == pytest.approx(fd2, abs=5e-7)


def test_nonlinearity_and_well():
    assert nonlinearity(0.0) == 0.0
    assert nonlinearity(1.0) == 0.0
    assert nonlinearity(-1.0) == 0.0
    assert nonlinearity(0.5) == pytest.approx(0.375)
    assert double_well(0.0) == pytest.approx(0.25)
    assert double_well(1.0) == 0.0
    # f = -F'
    u = np.linspace(-1.5, 1.5, 41)
    h = 1e-6
    fd = (double_well(u + h) - double_well(u - h)) / (2 * h)
    assert np.allclose(nonlinearity(u), -fd, atol=1e-9)


def test_compute_beta_closed_forms():
    c = compute_beta(1e-12)
    # int (w')^2 = 2 sqrt(2) / 3, int e^{sqrt2 x}(1-w^2)w' = 8/3
    assert c.i_kinetic == pytest.approx(2.0 * SQRT2 / 3.0, abs=1e-12)
    assert c.i_tail == pytest.approx(8.0 / 3.0, abs=1e-12)
    assert c.beta == pytest.approx(BETA_REFERENCE, rel=1e-12)
    assert BETA_REFERENCE == pytest.approx(12.0 * math.sqrt(2.0), rel=1e-16)


def test_compute_beta_refinement_consistency():
    coarse = compute_beta(1e-7)
    fine = compute_beta(1e-13)
    assert coarse.beta == pytest.approx(fine.beta, abs=1e-6)


def test_compute_beta_against_scipy():
    ik, _ = quad(lambda s: profile_derivative(s) ** 2, -40, 40, epsabs=1e-14)
    it, _ = quad(
        lambda x: math.exp(SQRT2 * x)
        * (1 - heteroclinic(x) ** 2)
        * profile_derivative(x),
        -40,
        40,
        epsabs=1e-14,
    )
    c = compute_beta(1e-12)
    assert c.i_kinetic == pytest.approx(ik, abs=1e-12)
    assert c.i_tail == pytest.approx(it, abs=1e-11)


@pytest.mark.parametrize("tol", [0.0, -1e-9, 1e-5, 1.0])
def test_compute_beta_rejects_bad_tolerance(tol):
    with pytest.raises(DomainError):
        compute_beta(tol)


def test_interaction_constants_validation():
    with pytest.raises(DomainError):
        InteractionConstants(beta=-1.0, i_kinetic=1.0, i_tail=1.0)
    with pytest.raises(DomainError):
        # internally inconsistent triple
        InteractionConstants(beta=1.0, i_kinetic=1.0, i_tail=1.0)


def test_shrinking_sphere_values_and_law():
    assert shrinking_sphere(2, -1.0) == pytest.approx(SQRT2, rel=1e-15)
    assert shrinking_sphere(3, -2.0) == pytest.approx(math.sqrt(8.0), rel=1e-15)
    t = np.linspace(-9.0, -1.0, 33)
    rho = shrinking_sphere(4, t)
    h = 1e-6
    drho = (shrinking_sphere(4, t + h) - shrinking_sphere(4, t - h)) / (2 * h)
    assert np.allclose(drho, -3.0 / rho, atol=1e-8)


def test_shrinking_sphere_domain():
    with pytest.raises(DomainError):
        shrinking_sphere(1, -1.0)
    with pytest.raises(DomainError):
        shrinking_sphere(2.5, -1.0)
    with pytest.raises(DomainError):
        shrinking_sphere(2, 0.0)
    with pytest.raises(DomainError):
        shrinking_sphere(2, np.array([-1.0, 1.0]))
