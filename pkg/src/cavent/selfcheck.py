"""Fast built-in physicality and oracle battery behind `cavent check`.

Each check recomputes a quantity with a known closed form or an independent
method and compares at a stated tolerance. This is a smoke battery for
installed copies, not the full test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import complex_drift, diffusion, stability, to_quadrature
from .entanglement import (
    integrate_covariance,
    physicality_check,
    solve_lyapunov,
    symplectic_eigenvalue,
)
from .steadystate import SystemParams, effective_params, residual, solve_steady_state
from .config import build_point, default_config
from .photodiode import photocurrent
from .sweep import run_point


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _vacuum() -> CheckResult:
    verdict = symplectic_eigenvalue(0.5 * np.eye(4))
    err = abs(verdict.two_eta - 1.0)
    return CheckResult("vacuum boundary", err < 1e-12, f"|2eta - 1| = {err:.2e}")


def _thermal_product() -> CheckResult:
    # product state optical vacuum x MW thermal: 2 eta = 2 min(N_c, N_w) + 1
    v = np.diag([0.5, 0.5, 5.5, 5.5])
    verdict = symplectic_eigenvalue(v)
    err = abs(verdict.two_eta - 1.0)
    return CheckResult("thermal product", err < 1e-12, f"|2eta - 1| = {err:.2e}")


def _tmsv() -> CheckResult:
    r = 1.0
    ch, sh = 0.5 * math.cosh(2 * r), 0.5 * math.sinh(2 * r)
    v = np.block(
        [[ch * np.eye(2), sh * np.diag([1.0, -1.0])], [sh * np.diag([1.0, -1.0]), ch * np.eye(2)]]
    )
    verdict = symplectic_eigenvalue(v)
    err = abs(verdict.two_eta - math.exp(-2 * r))
    return CheckResult("two-mode squeezing", err < 1e-10, f"error = {err:.2e}")


def _random_stable_pair(rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    a = rng.normal(size=(4, 4))
    a -= (np.max(np.linalg.eigvals(a).real) + rng.uniform(0.5, 2.0)) * np.eye(4)
    c = rng.normal(size=(4, 4))
    d = c @ c.T + 0.1 * np.eye(4)
    return a, d


def _lyapunov_residuals() -> CheckResult:
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(5):
        a, d = _random_stable_pair(rng)
        v = solve_lyapunov(a, d)
        res = np.max(np.abs(a @ v + v @ a.T + d)) / np.max(np.abs(d))
        worst = max(worst, float(res))
    return CheckResult("lyapunov residual", worst < 1e-9, f"worst rel residual = {worst:.2e}")


def _integrator_agreement() -> CheckResult:
    rng = np.random.default_rng(11)
    a, d = _random_stable_pair(rng)
    v = solve_lyapunov(a, d)
    decay = -float(np.max(np.linalg.eigvals(a).real))
    dt = 0.05 / float(np.linalg.norm(a, np.inf))
    v_ode = integrate_covariance(a, d, np.zeros((4, 4)), 20.0 / decay, dt)
    err = float(np.max(np.abs(v - v_ode)) / np.max(np.abs(v)))
    return CheckResult("integrator agreement", err < 1e-6, f"rel error = {err:.2e}")


def _decoupled_pipeline() -> CheckResult:
    cfg = default_config()
    cfg["coupling"]["g_scale"] = 0.0
    cfg["point"]["temperature"] = 0.0
    r = run_point(build_point(cfg))
    if r.two_eta is None:
        return CheckResult("decoupled pipeline", False, f"status = {r.status}")
    err = abs(r.two_eta - 1.0)
    return CheckResult("decoupled pipeline", err < 1e-9, f"|2eta - 1| = {err:.2e}")


def _steady_state_certificate() -> CheckResult:
    cfg = default_config()
    cfg["coupling"]["g_scale"] = 1.0
    point = build_point(cfg)
    params = SystemParams(
        oc=point.oc,
        mw=point.mw,
        delta_c=point.delta_c,
        delta_w=point.delta_w,
        q_oc=1.0e-12,
        temperature=point.temperature,
    )
    state = solve_steady_state(params)
    res_a, res_b = residual(state.alpha, state.beta, params)
    eff = effective_params(state, params)
    drift = to_quadrature(complex_drift(eff, params))
    report = stability(drift)
    v = solve_lyapunov(drift, diffusion(params))
    ok, diag = physicality_check(v)
    detail = (
        f"|res| = ({abs(res_a):.1e}, {abs(res_b):.1e}), "
        f"max Re = {report.max_real_part:.3e}, nu_minus = {diag['nu_minus']:.6f}"
    )
    return CheckResult("coupled steady state", report.stable and ok, detail)


def _photocurrent_monotone() -> CheckResult:
    cfg = default_config()
    cfg["coupling"]["g_scale"] = 0.0
    point = build_point(cfg)
    temps = [80.0, 180.0, 250.0, 298.0]
    currents = [
        photocurrent(point.drive, point.material, t, point.n_abs) for t in temps
    ]
    ok = all(a >= b for a, b in zip(currents, currents[1:])) and currents[0] > 0
    return CheckResult(
        "photocurrent ordering", ok, "I(80K) >= ... >= I(298K): " + ("yes" if ok else "no")
    )


CHECKS = (
    _vacuum,
    _thermal_product,
    _tmsv,
    _lyapunov_residuals,
    _integrator_agreement,
    _decoupled_pipeline,
    _steady_state_certificate,
    _photocurrent_monotone,
)


def run_all() -> list[CheckResult]:
    results = []
    for check in CHECKS:
        try:
            results.append(check())
        except Exception as exc:  # a crash is a failed check, not a crash of `check`
            results.append(CheckResult(check.__name__.strip("_"), False, f"raised {exc!r}"))
    return results
