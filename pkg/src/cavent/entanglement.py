"""Steady-state covariance matrix and the Gaussian separability verdict.

The stationary second moments of the quadrature fluctuations solve the
Lyapunov equation A V + V A^T + D = 0. The solver is the transparent
16-unknown Kronecker linear system (4x4 problem; auditability beats
asymptotics); a fixed-step RK4 integrator of dV/dt = A V + V A^T + D ships
alongside it as the independent oracle.

Separability is decided by the smaller symplectic eigenvalue of the
partially transposed covariance matrix: with blocks [A, C; C^T, B],
Sigma~ = det A + det B - 2 det C and

    eta_minus = sqrt( (Sigma~ - sqrt(Sigma~^2 - 4 det V)) / 2 ),

the modes are entangled iff 2 * eta_minus < 1 (vacuum variance 1/2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import stability

LYAP_RESIDUAL_TOL = 1e-9
SYMMETRY_TOL = 1e-10
NONPHYSICAL_TOL = 1e-12


class UnstableSystem(Exception):
    """No stationary covariance exists: the drift has a non-decaying mode."""


class IllConditioned(Exception):
    """The Lyapunov solve could not certify its residual bound."""


class StepSizeError(Exception):
    """RK4 step too large for the drift's fastest scale."""


class NonPhysical(Exception):
    """Covariance matrix violates the uncertainty structure beyond tolerance."""


@dataclass(frozen=True)
class EntanglementVerdict:
    eta_minus: float
    two_eta: float
    entangled: bool
    sigma_tilde: float
    det_v: float


def solve_lyapunov(a: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Unique symmetric V with A V + V A^T + D = 0 for strictly stable A.

    Certified: the max-abs residual is below 1e-9 * ||D||_max, else
    IllConditioned is raised (always raised for marginally stable drifts
    that miss the bound). Output is explicitly symmetrized; asymmetry beyond
    1e-10 relative is an error rather than silently repaired.
    """
    report = stability(a)
    if not report.stable:
        raise UnstableSystem(
            f"max Re(eigenvalue) = {report.max_real_part:+.6e} >= 0: no stationary state"
        )
    n = a.shape[0]
    eye = np.eye(n)
    m = np.kron(eye, a) + np.kron(a, eye)
    v = np.linalg.solve(m, -d.reshape(-1)).reshape(n, n)
    asym = float(np.max(np.abs(v - v.T)))
    scale = max(1.0, float(np.max(np.abs(v))))
    if asym > SYMMETRY_TOL * scale:
        raise IllConditioned(f"solution asymmetry {asym:.3e} exceeds tolerance")
    v = 0.5 * (v + v.T)
    residual = float(np.max(np.abs(a @ v + v @ a.T + d)))
    bound = LYAP_RESIDUAL_TOL * float(np.max(np.abs(d)))
    if residual > bound:
        detail = "marginally stable drift; " if report.marginally_stable else ""
        raise IllConditioned(
            f"{detail}residual {residual:.3e} exceeds bound {bound:.3e}"
        )
    return v


def integrate_covariance(
    a: np.ndarray, d: np.ndarray, v0: np.ndarray, t_end: float, dt: float
) -> np.ndarray:
    """Fixed-step RK4 integration of dV/dt = A V + V A^T + D from v0.

    Requires dt < 0.1/||A||_inf; V is re-symmetrized after every step.
    Serves as the independent oracle for solve_lyapunov.
    """
    norm = float(np.linalg.norm(a, np.inf))
    if norm > 0 and not dt < 0.1 / norm:
        raise StepSizeError(f"dt = {dt:.3e} must be < 0.1/||A|| = {0.1 / norm:.3e}")
    if t_end <= 0:
        raise ValueError(f"t_end must be positive, got {t_end}")

    def rhs(v: np.ndarray) -> np.ndarray:
        return a @ v + v @ a.T + d

    v = np.array(v0, dtype=float, copy=True)
    steps = int(np.ceil(t_end / dt))
    for _ in range(steps):
        k1 = rhs(v)
        k2 = rhs(v + 0.5 * dt * k1)
        k3 = rhs(v + 0.5 * dt * k2)
        k4 = rhs(v + dt * k3)
        v = v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        v = 0.5 * (v + v.T)
    return v


def _blocks(v: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return v[:2, :2], v[2:, 2:], v[:2, 2:]


def _det2(m: np.ndarray) -> float:
    return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def _det4(v: np.ndarray) -> float:
    """4x4 determinant by Laplace expansion over the first two rows.

    One rounding per product keeps diagonal and block-sparse covariances
    exact; LU-based dets carry enough noise to flip the sign of the
    discriminant when the two symplectic eigenvalues coincide."""

    def minor(r0, r1, c0, c1):
        return v[r0, c0] * v[r1, c1] - v[r0, c1] * v[r1, c0]

    return float(
        minor(0, 1, 0, 1) * minor(2, 3, 2, 3)
        - minor(0, 1, 0, 2) * minor(2, 3, 1, 3)
        + minor(0, 1, 0, 3) * minor(2, 3, 1, 2)
        + minor(0, 1, 1, 2) * minor(2, 3, 0, 3)
        - minor(0, 1, 1, 3) * minor(2, 3, 0, 2)
        + minor(0, 1, 2, 3) * minor(2, 3, 0, 1)
    )


def _small_root(sigma: float, det_v: float, inner: float) -> float:
    """Smaller root of x^2 - sigma x + det_v = 0, without the subtractive
    cancellation of the textbook (sigma - sqrt(inner))/2 form."""
    sqrt_inner = float(np.sqrt(max(inner, 0.0)))
    denom = sigma + sqrt_inner
    if denom <= 0.0:
        return max(0.5 * (sigma - sqrt_inner), 0.0)
    return max(2.0 * det_v / denom, 0.0)


def symplectic_eigenvalue(v: np.ndarray) -> EntanglementVerdict:
    """Partial-transpose symplectic eigenvalue and the 2*eta verdict."""
    block_a, block_b, block_c = _blocks(v)
    sigma_tilde = _det2(block_a) + _det2(block_b) - 2.0 * _det2(block_c)
    det_v = _det4(v)
    inner = sigma_tilde * sigma_tilde - 4.0 * det_v
    if inner < -NONPHYSICAL_TOL:
        raise NonPhysical(f"Sigma~^2 - 4 det V = {inner:.3e} < 0: corrupted covariance")
    eta_minus = float(np.sqrt(_small_root(sigma_tilde, det_v, inner)))
    two_eta = 2.0 * eta_minus
    return EntanglementVerdict(
        eta_minus=eta_minus,
        two_eta=two_eta,
        entangled=two_eta < 1.0,
        sigma_tilde=sigma_tilde,
        det_v=det_v,
    )


_OMEGA = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)


def physicality_check(v: np.ndarray) -> tuple[bool, dict]:
    """True iff V is symmetric and both symplectic eigenvalues of V itself
    (no partial transpose) are >= 1/2 - 1e-9.

    The eigenvalues come from the spectrum of Omega V (+-i nu pairs); the
    determinant route loses ~sqrt(eps) exactly at pure states, where the
    two nus coincide at 1/2 and this guard matters most."""
    asym = float(np.max(np.abs(v - v.T)))
    nus = np.sort(np.abs(np.linalg.eigvals(_OMEGA @ v).imag))
    nu_minus = float(nus[0])
    nu_plus = float(nus[-1])
    ok = asym <= SYMMETRY_TOL * max(1.0, float(np.max(np.abs(v)))) and nu_minus >= 0.5 - 1e-9
    return ok, {"asymmetry": asym, "nu_minus": nu_minus, "nu_plus": nu_plus}
