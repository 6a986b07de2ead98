import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cavent.entanglement import (
    IllConditioned,
    NonPhysical,
    StepSizeError,
    UnstableSystem,
    integrate_covariance,
    physicality_check,
    solve_lyapunov,
    symplectic_eigenvalue,
)

import oracles


def test_vacuum_boundary_exact():
    verdict = symplectic_eigenvalue(0.5 * np.eye(4))
    assert abs(verdict.two_eta - 1.0) <= 1e-12
    assert not verdict.entangled


@pytest.mark.parametrize("n", [0.5, 1.0, 5.0])
def test_thermal_product_closed_form(n):
    verdict = symplectic_eigenvalue((n + 0.5) * np.eye(4))
    assert abs(verdict.two_eta - (2.0 * n + 1.0)) <= 1e-12
    assert not verdict.entangled


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
def test_two_mode_squeezed_vacuum_closed_form(r):
    verdict = symplectic_eigenvalue(oracles.tmsv_covariance(r))
    assert abs(verdict.two_eta - math.exp(-2.0 * r)) <= 1e-10
    assert verdict.entangled


def test_asymmetric_thermal_product_takes_min():
    # product of two thermal states: 2 eta = 2 min(N_a, N_b) + 1
    v = np.diag([0.5 + 0.2, 0.5 + 0.2, 0.5 + 7.0, 0.5 + 7.0])
    verdict = symplectic_eigenvalue(v)
    assert verdict.two_eta == pytest.approx(1.4, rel=1e-12)


@given(
    na=st.floats(min_value=0.0, max_value=50.0),
    nb=st.floats(min_value=0.0, max_value=50.0),
)
@settings(max_examples=60, deadline=None)
def test_product_states_never_entangled(na, nb):
    # the Sigma~ discriminant carries a few ulps of Sigma~^2, so occupations
    # closer than ~1e-3 relative (but not exactly equal, which stays exact in
    # binary arithmetic) put the splitting below its resolution; see the
    # near-degenerate test below for what happens inside that sliver
    assume(na == nb or abs(na - nb) > 1e-3 * (1.0 + na + nb))
    v = np.diag([na + 0.5, na + 0.5, nb + 0.5, nb + 0.5])
    verdict = symplectic_eigenvalue(v)
    assert verdict.two_eta >= 1.0 - 1e-12
    assert verdict.two_eta == pytest.approx(2.0 * min(na, nb) + 1.0, rel=1e-10)


def test_near_degenerate_product_within_noise_floor():
    # occupations split by less than ~sqrt(eps) are unresolvable: the
    # discriminant's rounding noise (~eps * Sigma~^2) either shifts two_eta
    # by up to ~sqrt(eps) * (1 + na + nb) or drives the radicand below the
    # corruption threshold; neither outcome may stray past that floor
    cases = [
        (0.0, 1e-8),
        (0.0, 1.3231879729454297e-08),
        (3.0, 3.0 + 1e-7),
        (20.0, 20.0 + 3e-6),
        (49.0, 49.0 + 1e-5),
    ]
    for na, nb in cases:
        scale = 1.0 + na + nb
        v = np.diag([na + 0.5, na + 0.5, nb + 0.5, nb + 0.5])
        try:
            verdict = symplectic_eigenvalue(v)
        except NonPhysical:
            continue
        assert verdict.two_eta >= 1.0 - 1e-7 * scale
        assert verdict.two_eta <= 2.0 * max(na, nb) + 1.0 + 1e-7 * scale


def _local_rotation(theta_a: float, theta_b: float) -> np.ndarray:
    def rot(th):
        c, s = math.cos(th), math.sin(th)
        return np.array([[c, s], [-s, c]])

    out = np.zeros((4, 4))
    out[:2, :2] = rot(theta_a)
    out[2:, 2:] = rot(theta_b)
    return out


@pytest.mark.parametrize("theta_a,theta_b", [(math.pi / 7, -1.3), (math.pi / 2, 0.4), (math.pi, math.pi)])
def test_local_rotation_invariance(theta_a, theta_b):
    v = oracles.tmsv_covariance(1.0)
    r = _local_rotation(theta_a, theta_b)
    base = symplectic_eigenvalue(v).two_eta
    rotated = symplectic_eigenvalue(r @ v @ r.T).two_eta
    assert abs(rotated - base) <= 1e-10


def test_added_local_noise_weakens_entanglement():
    v = oracles.tmsv_covariance(1.0)
    base = symplectic_eigenvalue(v).two_eta
    noisy = symplectic_eigenvalue(v + 0.1 * np.eye(4)).two_eta
    assert noisy > base


def test_nonphysical_covariance_rejected():
    # cross correlations exceeding the marginals: not a covariance matrix
    v = np.array(
        [
            [0.5, 0.0, 0.8, 0.0],
            [0.0, 0.5, 0.0, 0.8],
            [0.8, 0.0, 0.7, 0.0],
            [0.0, 0.8, 0.0, 0.7],
        ]
    )
    with pytest.raises(NonPhysical):
        symplectic_eigenvalue(v)


def test_lyapunov_residual_certificate():
    rng = np.random.default_rng(20260815)
    for _ in range(20):
        a, d = oracles.random_stable_pair(rng)
        v = solve_lyapunov(a, d)
        residual = np.max(np.abs(a @ v + v @ a.T + d))
        assert residual < 1e-9 * np.max(np.abs(d))
        assert np.array_equal(v, v.T)


def test_lyapunov_agrees_with_integrator():
    rng = np.random.default_rng(5)
    for _ in range(10):
        a, d = oracles.random_stable_pair(rng)
        v = solve_lyapunov(a, d)
        decay = -float(np.max(np.linalg.eigvals(a).real))
        dt = 0.05 / float(np.linalg.norm(a, np.inf))
        v_ode = integrate_covariance(a, d, np.zeros((4, 4)), 20.0 / decay, dt)
        assert np.max(np.abs(v - v_ode)) < 1e-6


def test_lyapunov_solution_is_physical_for_hamiltonian_drift():
    # drift generated by the model's own Hamiltonian + damping, with the
    # matching vacuum-floor diffusion: the stationary state must be a
    # genuine quantum covariance
    from cavent.core import ModeSpec
    from cavent.dynamics import complex_drift, to_quadrature
    from cavent.steadystate import EffectiveParams, SystemParams

    oc = ModeSpec(omega=1e15, kappa=1.0, pump_omega=1e15, pump_power=0.0)
    mw = ModeSpec(omega=1e10, kappa=0.7, pump_omega=1e10, pump_power=0.0)
    params = SystemParams(oc=oc, mw=mw, delta_c=0.0, delta_w=0.0, q_oc=0.0, temperature=0.0)
    eff = EffectiveParams(delta_c_eff=0.4, delta_w_eff=-0.2, g_bs=0.3 + 0.1j, g_tm=0.05)
    a = to_quadrature(complex_drift(eff, params))
    d = np.diag([1.0, 1.0, 0.7, 0.7])  # kappa (2N+1) at N = 0
    v = solve_lyapunov(a, d)
    ok, diag = physicality_check(v)
    assert ok, diag


def test_lyapunov_rejects_unstable_drift():
    rng = np.random.default_rng(9)
    a = oracles.random_unstable_matrix(rng)
    with pytest.raises(UnstableSystem):
        solve_lyapunov(a, np.eye(4))


def test_lyapunov_uncertifiable_residual_raises():
    # stiff non-normal drift: the Kronecker solve cannot meet its bound
    a = np.array(
        [
            [-1e-9, 1e9, 0.0, 0.0],
            [0.0, -1e-9, 0.0, 0.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
        ]
    )
    with pytest.raises(IllConditioned):
        solve_lyapunov(a, np.eye(4))


def test_integrator_step_size_guard():
    a = -np.eye(4)
    with pytest.raises(StepSizeError):
        integrate_covariance(a, np.eye(4), np.zeros((4, 4)), t_end=1.0, dt=0.2)
    with pytest.raises(ValueError):
        integrate_covariance(a, np.eye(4), np.zeros((4, 4)), t_end=-1.0, dt=0.01)


def test_integrator_output_symmetric():
    rng = np.random.default_rng(13)
    a, d = oracles.random_stable_pair(rng)
    dt = 0.05 / float(np.linalg.norm(a, np.inf))
    v = integrate_covariance(a, d, np.zeros((4, 4)), 5.0, dt)
    assert np.array_equal(v, v.T)


def test_physicality_check_rejects_squeezed_below_vacuum():
    v = np.diag([0.1, 0.1, 0.5, 0.5])  # "variance" below vacuum in both quadratures
    ok, diag = physicality_check(v)
    assert not ok
    assert diag["nu_minus"] < 0.5 - 1e-9


def test_physicality_check_accepts_valid_states():
    for v in (0.5 * np.eye(4), oracles.tmsv_covariance(0.8), np.diag([1.0, 1.0, 3.0, 3.0])):
        ok, diag = physicality_check(v)
        assert ok, diag
        assert diag["nu_plus"] >= diag["nu_minus"]


def test_verdict_fields_consistent():
    verdict = symplectic_eigenvalue(oracles.tmsv_covariance(0.5))
    assert verdict.two_eta == pytest.approx(2.0 * verdict.eta_minus, rel=1e-15)
    assert verdict.entangled == (verdict.two_eta < 1.0)
    assert verdict.det_v == pytest.approx(1.0 / 16.0, rel=1e-10)
