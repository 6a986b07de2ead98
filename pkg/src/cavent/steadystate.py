"""Coupled mean-field steady state of the two driven cavities.

The mean fields obey

    0 = -(i Delta_c + kappa_c) alpha + i q_oc alpha |beta|^2 + E_c
    0 = -(i Delta_w + kappa_w) beta  + i q_oc beta |alpha|^2 + E_w

solved by a damped fixed-point iteration of the explicit form

    alpha = E_c / (kappa_c + i(Delta_c - q_oc |beta|^2))
    beta  = E_w / (kappa_w + i(Delta_w - q_oc |alpha|^2)).
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ModeSpec, drive_amplitude

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 10_000
DAMPING = 0.5


class NonConvergence(Exception):
    """Fixed-point iteration exhausted max_iter; mean field not certified.

    Signals a bistable or runaway mean-field regime the linearized theory
    cannot certify. Carries the last residual magnitudes and iteration count.
    """

    def __init__(self, last_residual: tuple[float, float], iterations: int):
        self.last_residual = last_residual
        self.iterations = iterations
        super().__init__(
            f"steady state not converged after {iterations} iterations "
            f"(|res_a|={last_residual[0]:.3e}, |res_b|={last_residual[1]:.3e})"
        )


@dataclass(frozen=True)
class SystemParams:
    """All physical inputs of one operating point."""

    oc: ModeSpec
    mw: ModeSpec
    delta_c: float  # rad/s
    delta_w: float  # rad/s
    q_oc: float  # rad/s, cross-Kerr rate
    temperature: float  # K

    def __post_init__(self) -> None:
        if self.q_oc < 0:
            raise ValueError(f"q_oc must be >= 0, got {self.q_oc}")
        if self.temperature < 0:
            raise ValueError(f"temperature must be >= 0, got {self.temperature}")


@dataclass(frozen=True)
class SteadyState:
    alpha: complex
    beta: complex
    residual_a: complex
    residual_b: complex
    iterations: int


@dataclass(frozen=True)
class EffectiveParams:
    """Linearization inputs derived from the mean fields."""

    delta_c_eff: float  # Delta_c - q_oc |beta|^2
    delta_w_eff: float  # Delta_w - q_oc |alpha|^2
    g_bs: complex  # q_oc * alpha * conj(beta): beam-splitter coupling
    g_tm: complex  # q_oc * alpha * beta: two-mode-squeezing coupling


def residual(alpha: complex, beta: complex, params: SystemParams) -> tuple[complex, complex]:
    """Left-hand sides of the steady-state equations at (alpha, beta)."""
    e_c = drive_amplitude(params.oc)
    e_w = drive_amplitude(params.mw)
    res_a = (
        -(1j * params.delta_c + params.oc.kappa) * alpha
        + 1j * params.q_oc * alpha * abs(beta) ** 2
        + e_c
    )
    res_b = (
        -(1j * params.delta_w + params.mw.kappa) * beta
        + 1j * params.q_oc * beta * abs(alpha) ** 2
        + e_w
    )
    return res_a, res_b


def solve_steady_state(
    params: SystemParams,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> SteadyState:
    """Damped fixed-point solve from the decoupled initial guess.

    The returned state is certified: both residuals are below
    tol * max(1, |E|). Only the branch reached from the decoupled guess is
    reported; non-convergence raises instead of returning an uncertified root.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    e_c = drive_amplitude(params.oc)
    e_w = drive_amplitude(params.mw)
    alpha = e_c / (params.oc.kappa + 1j * params.delta_c)
    beta = e_w / (params.mw.kappa + 1j * params.delta_w)
    lim_a = tol * max(1.0, abs(e_c))
    lim_b = tol * max(1.0, abs(e_w))
    for iteration in range(1, max_iter + 1):
        new_alpha = e_c / (
            params.oc.kappa + 1j * (params.delta_c - params.q_oc * abs(beta) ** 2)
        )
        new_beta = e_w / (
            params.mw.kappa + 1j * (params.delta_w - params.q_oc * abs(alpha) ** 2)
        )
        alpha = (1.0 - DAMPING) * alpha + DAMPING * new_alpha
        beta = (1.0 - DAMPING) * beta + DAMPING * new_beta
        res_a, res_b = residual(alpha, beta, params)
        if abs(res_a) <= lim_a and abs(res_b) <= lim_b:
            return SteadyState(alpha, beta, res_a, res_b, iteration)
    raise NonConvergence((abs(res_a), abs(res_b)), max_iter)


def effective_params(state: SteadyState, params: SystemParams) -> EffectiveParams:
    """Effective detunings and the two linearized coupling amplitudes."""
    return EffectiveParams(
        delta_c_eff=params.delta_c - params.q_oc * abs(state.beta) ** 2,
        delta_w_eff=params.delta_w - params.q_oc * abs(state.alpha) ** 2,
        g_bs=params.q_oc * state.alpha * state.beta.conjugate(),
        g_tm=params.q_oc * state.alpha * state.beta,
    )
