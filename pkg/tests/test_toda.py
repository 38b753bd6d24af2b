import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from layerlab import (
    SQRT2,
    CollisionError,
    DomainError,
    LayerState,
    OrderingViolation,
    asymptotic_separation,
    first_approximation,
    integrate_toda,
    layer_coefficients,
    reduction_matrices,
    solve_eta,
    toda_constants,
    toda_rhs,
    verify_lemma52_residual,
)

# Frozen with scipy DOP853 (rtol 1e-13, atol 1e-15) on the tau = log(-t)
# form of the gap ODE; independent of the integrator under test.
ETA_ORACLE = {
    -10.0: 1.456590905599325,
    -100.0: 2.772811596868828,
    -1000.0: 4.178824430350254,
    -1e6: 8.634265312326511,
}


class TestEta:
    def test_values_against_oracle(self, eta):
        for t, ref in ETA_ORACLE.items():
            assert eta.eta(t) == pytest.approx(ref, abs=5e-10)

    def test_initial_condition(self, eta):
        assert eta.eta(-1.0) == pytest.approx(0.0, abs=1e-12)

    def test_nonnegative_and_monotone(self, eta):
        t = -np.logspace(0.0, 6.0, 400)  # descending toward -1e6
        vals = eta.eta(t)
        assert np.all(vals >= -1e-12)
        assert np.all(np.diff(vals) >= -1e-12)  # grows with |t|

    def test_eta_prime_matches_ode(self, eta):
        t = -1e3
        ref = -(eta.eta(t) / (2 * t) + math.exp(-SQRT2 * eta.eta(t)))
        assert eta.eta_prime(t) == pytest.approx(ref, rel=1e-7)
        assert eta.eta_prime(t) == pytest.approx(-6.234523040480168e-04, rel=1e-6)

    def test_midpoint_residual_within_budget(self, eta):
        _, resid = eta.residual_at_midpoints()
        assert np.max(np.abs(resid)) <= 10 * eta.rel_tol

    def test_upper_bound_margin(self, eta):
        assert eta.upper_bound_margin() <= 1e-9

    def test_asymptotic_deviation(self, eta):
        ref = ETA_ORACLE[-1e6] - (math.log(1e6) - math.log(math.log(1e6))) / SQRT2
        assert eta.asymptotic_deviation(-1e6) == pytest.approx(ref, abs=1e-8)
        assert abs(eta.asymptotic_deviation(-1e6)) < 2.0

    def test_domain_checks(self, eta):
        with pytest.raises(DomainError):
            eta.eta(-0.5)
        with pytest.raises(DomainError):
            eta.eta(-1e7)
        with pytest.raises(DomainError):
            solve_eta(5.0, 1e-10)
        with pytest.raises(DomainError):
            solve_eta(1e3, 1e-6)

    def test_vectorized_eta(self, eta):
        t = np.array([-10.0, -100.0])
        v = eta.eta(t)
        assert v.shape == (2,)
        assert v[0] == pytest.approx(ETA_ORACLE[-10.0], abs=1e-9)


def test_asymptotic_separation_values():
    assert asymptotic_separation(-math.e) == pytest.approx(1.0 / SQRT2, rel=1e-14)
    t = -1e6
    ref = (math.log(1e6) - math.log(math.log(1e6))) / SQRT2
    assert asymptotic_separation(t) == pytest.approx(ref, rel=1e-15)
    with pytest.raises(DomainError):
        asymptotic_separation(-1.0)


class TestConstants:
    def test_b1_closed_form(self, consts):
        tc = toda_constants(2, consts.beta)
        # b_1 = log(2 beta) / sqrt2 with beta = 12 sqrt2
        assert tc.b[0] == pytest.approx(math.log(24 * SQRT2) / SQRT2, rel=1e-12)
        assert tc.b[0] == pytest.approx(2.49228795028205, abs=1e-12)
        assert tc.gamma[0] == pytest.approx(-tc.b[0] / 2, rel=1e-14)

    @pytest.mark.parametrize("k", range(1, 11))
    def test_palindrome_and_antisymmetry(self, k, consts):
        tc = toda_constants(k, consts.beta)
        assert tc.b.shape == (k - 1,)
        assert np.array_equal(tc.b, tc.b[::-1])
        assert np.allclose(tc.gamma, -tc.gamma[::-1], atol=1e-12)
        if k % 2 == 1:
            assert tc.gamma[k // 2] == 0.0

    def test_k4_values(self, consts):
        tc = toda_constants(4, consts.beta)
        ell = np.array([3.0, 4.0, 3.0])
        ref = -np.log(ell / (2 * consts.beta)) / SQRT2
        assert np.allclose(tc.b, ref, rtol=1e-14)

    def test_gamma_consistent_with_b(self, consts):
        # gaps of the gamma ladder reproduce b exactly
        for k in (2, 3, 5, 8):
            tc = toda_constants(k, consts.beta)
            assert np.allclose(np.diff(tc.gamma), tc.b, atol=1e-12)

    def test_validation(self, consts):
        with pytest.raises(DomainError):
            toda_constants(0, consts.beta)
        with pytest.raises(DomainError):
            toda_constants(2, -1.0)


class TestLayerState:
    def test_basic(self):
        st_ = LayerState(t=-4.0, rho=[1.0, 3.0, 7.0])
        assert st_.k == 3
        assert np.allclose(st_.gaps, [2.0, 4.0])

    def test_rejects_disorder(self):
        with pytest.raises(OrderingViolation):
            LayerState(t=-1.0, rho=[3.0, 1.0])
        with pytest.raises(OrderingViolation):
            LayerState(t=-1.0, rho=[-1.0, 1.0])
        with pytest.raises(DomainError):
            LayerState(t=1.0, rho=[1.0])


class TestFirstApproximation:
    def test_fan_layout(self, consts, eta):
        tc = toda_constants(3, consts.beta)
        st_ = first_approximation(3, 2, tc, eta, -1e3)
        zeta = math.sqrt(2 * 1e3)
        # middle layer sits on the sphere radius exactly
        assert st_.rho[1] == pytest.approx(zeta, rel=1e-13)
        assert np.allclose(np.diff(st_.rho), eta.eta(-1e3) + tc.b, atol=1e-12)

    def test_coefficients(self):
        assert np.allclose(layer_coefficients(2), [-0.5, 0.5])
        assert np.allclose(layer_coefficients(5), [-2, -1, 0, 1, 2])

    def test_ordering_violation_near_zero(self, consts, eta):
        tc = toda_constants(5, consts.beta)
        with pytest.raises(OrderingViolation):
            first_approximation(5, 2, tc, eta, -1.0)

    def test_k_mismatch(self, consts, eta):
        tc = toda_constants(2, consts.beta)
        with pytest.raises(DomainError):
            first_approximation(3, 2, tc, eta, -1e3)


class TestLemma52:
    @pytest.mark.parametrize("k", [2, 4])
    def test_residual_small(self, k, consts, eta):
        tc = toda_constants(k, consts.beta)
        t = -np.logspace(2, 5, 40)
        resid = verify_lemma52_residual(k, tc, eta, t)
        # identity up to the eta interpolant; far below the 1e-6/|t| gate
        assert resid < 1e-10

    def test_residual_detects_wrong_constants(self, consts, eta):
        tc = toda_constants(2, consts.beta)
        bad = toda_constants(2, 0.9 * consts.beta)
        good = verify_lemma52_residual(2, tc, eta, [-1e3])
        wrong = verify_lemma52_residual(
            2,
            type(tc)(k=2, beta=consts.beta, b=bad.b, gamma=bad.gamma),
            eta,
            [-1e3],
        )
        assert wrong > 100 * good


class TestReduction:
    @pytest.mark.parametrize("k", range(2, 11))
    def test_eigenvalues_of_c(self, k):
        mats = reduction_matrices(k)
        ref = 2.0 - 2.0 * np.cos(np.arange(1, k) * math.pi / k)
        got = np.sort(np.linalg.eigvalsh(mats.C))
        assert np.allclose(got, np.sort(ref), atol=1e-12)

    @pytest.mark.parametrize("k", range(2, 11))
    def test_c_acts_as_two_on_a(self, k):
        mats = reduction_matrices(k)
        assert np.allclose(mats.C @ mats.a, 2.0 * np.ones(k - 1), atol=1e-10)

    @pytest.mark.parametrize("k", [2, 5, 10])
    def test_structure(self, k):
        mats = reduction_matrices(k)
        assert np.allclose(mats.B @ mats.B_inv, np.eye(k), atol=1e-12)
        assert np.allclose(mats.C_half @ mats.C_half, mats.C, atol=1e-12)
        assert np.allclose(
            mats.C_half @ mats.C_half_inv, np.eye(k - 1), atol=1e-12
        )
        # A is similar to diag(a) C: same spectrum, all positive
        ref = np.sort(np.linalg.eigvals(np.diag(mats.a) @ mats.C).real)
        assert np.allclose(np.sort(mats.eigenvalues), ref, atol=1e-10)
        assert np.all(mats.eigenvalues > 0)

    def test_k2_explicit(self):
        mats = reduction_matrices(2)
        assert mats.C.shape == (1, 1)
        assert mats.C[0, 0] == 2.0
        assert mats.a[0] == 1.0
        assert mats.eigenvalues[0] == pytest.approx(2.0, rel=1e-14)

    def test_rejects_k1(self):
        with pytest.raises(DomainError):
            reduction_matrices(1)


class TestIntegrateToda:
    def test_k1_exact_solution(self, consts):
        # single layer: rho' = -(n-1)/rho, rho(t)^2 = rho0^2 - 2(n-1)(t-t0)
        st0 = LayerState(t=-10.0, rho=[3.0])
        traj = integrate_toda(1, 3, consts.beta, st0, -100.0, rel_tol=1e-12)
        exact = math.sqrt(9.0 - 4.0 * (-100.0 - (-10.0)))
        assert traj.radii[-1, 0] == pytest.approx(exact, rel=1e-10)
        assert traj.status == "finished"
        mid = traj.sample(-50.0)
        assert mid.rho[0] == pytest.approx(math.sqrt(9.0 + 4.0 * 40.0), rel=1e-9)

    def test_k2_backward_against_oracle(self, consts, eta):
        tc = toda_constants(2, consts.beta)
        st0 = first_approximation(2, 2, tc, eta, -1e2)
        traj = integrate_toda(2, 2, consts.beta, st0, -1e5, rel_tol=1e-11)
        # scipy DOP853 rtol 1e-13 from the same seed
        r3 = traj.sample(-1e3).rho
        assert r3[0] == pytest.approx(41.720123041895, abs=5e-7)
        assert r3[1] == pytest.approx(48.144489445955, abs=5e-7)
        r5 = traj.sample(-1e5).rho
        assert r5[0] == pytest.approx(442.594990999042, abs=5e-5)
        assert r5[1] == pytest.approx(452.037927421928, abs=5e-5)

    def test_gaps_grow_backward(self, consts, eta):
        tc = toda_constants(2, consts.beta)
        st0 = first_approximation(2, 2, tc, eta, -1e2)
        traj = integrate_toda(2, 2, consts.beta, st0, -1e4)
        g = traj.gaps()[:, 0]
        # a small relaxation dip near the seed, then monotone opening
        assert np.min(g) > g[0] - 0.1
        assert np.all(np.diff(g[len(g) // 2 :]) > 0)
        # total growth tracks the gap ODE increment
        d_eta = eta.eta(-1e4) - eta.eta(-1e2)
        assert g[-1] - g[0] == pytest.approx(d_eta, abs=0.5)

    def test_forward_collision_attaches_partial(self, consts, eta):
        tc = toda_constants(2, consts.beta)
        st0 = first_approximation(2, 2, tc, eta, -1e2)
        with pytest.raises(CollisionError) as exc:
            integrate_toda(2, 2, consts.beta, st0, -0.5)
        assert exc.value.t is not None
        part = exc.value.partial
        assert part.status == "collided"
        assert part.times[-1] > -1e2
        assert len(part) > 2

    def test_trajectory_indexing(self, consts):
        st0 = LayerState(t=-10.0, rho=[3.0])
        traj = integrate_toda(1, 2, consts.beta, st0, -20.0)
        assert len(traj) == len(traj.times)
        first = traj[0]
        # seed time round-trips through tau = log(-t) up to float dust
        assert first.t == pytest.approx(-10.0, rel=1e-14)
        assert first.rho[0] == 3.0

    def test_validation(self, consts):
        st0 = LayerState(t=-10.0, rho=[3.0])
        with pytest.raises(DomainError):
            integrate_toda(2, 2, consts.beta, st0, -20.0)
        with pytest.raises(DomainError):
            integrate_toda(1, 2, consts.beta, st0, 5.0)
        with pytest.raises(DomainError):
            integrate_toda(1, 2, consts.beta, st0, -10.0)


def test_toda_rhs_structure(consts):
    # two layers: curvature pulls inward, interaction pushes apart
    rho = np.array([10.0, 14.0])
    out = toda_rhs(rho, 2, consts.beta)
    att = consts.beta * math.exp(-SQRT2 * 4.0)
    assert out[0] == pytest.approx(-1.0 / 10.0 + att, rel=1e-14)
    assert out[1] == pytest.approx(-1.0 / 14.0 - att, rel=1e-14)


@settings(max_examples=25, deadline=None)
@given(
    k=st.integers(2, 6),
    scale=st.floats(0.5, 3.0),
)
def test_rhs_interaction_cancels_in_sum(k, scale):
    # neighbor terms are equal and opposite: total drift is pure curvature
    rho = 20.0 + scale * np.arange(k) ** 1.5 + np.arange(k)
    out = toda_rhs(rho, 2, 12 * SQRT2)
    assert np.sum(out) == pytest.approx(np.sum(-1.0 / rho), abs=1e-12)
