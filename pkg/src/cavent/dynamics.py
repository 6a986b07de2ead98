"""Linearized fluctuation dynamics: drift matrix in the complex and
quadrature bases, thermal diffusion matrix, and the stability verdict.

Basis orders: complex (da, da+, db, db+); quadratures (X_a, P_a, X_b, P_b)
with X = (a + a+)/sqrt(2), P = -i(a - a+)/sqrt(2) (vacuum variance 1/2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import thermal_occupation
from .steadystate import EffectiveParams, SystemParams

# per-mode basis change (X, P) <- (a, a+)
_S2 = np.array([[1.0, 1.0], [-1.0j, 1.0j]]) / np.sqrt(2.0)
_S = np.block(
    [[_S2, np.zeros((2, 2))], [np.zeros((2, 2)), _S2]]
)
_S_INV = np.linalg.inv(_S)

IMAG_RESIDUE_TOL = 1e-10


class BasisError(Exception):
    """Quadrature transform left a non-negligible imaginary part: the
    complex drift violates its conjugation structure upstream."""


class EigenFailure(Exception):
    """Eigenvalue computation on non-finite input."""


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    max_real_part: float
    eigenvalues: tuple[complex, complex, complex, complex]
    marginally_stable: bool


def complex_drift(eff: EffectiveParams, params: SystemParams) -> np.ndarray:
    """4x4 complex drift over (da, da+, db, db+).

    da/dt  = (-kappa_c - i dce) da + i g_bs db + i g_tm db+
    db/dt  = (-kappa_w - i dwe) db + i conj(g_bs) da + i g_tm da+
    plus the conjugate rows; dce/dwe are the effective detunings.
    """
    kc, kw = params.oc.kappa, params.mw.kappa
    dce, dwe = eff.delta_c_eff, eff.delta_w_eff
    gbs, gtm = eff.g_bs, eff.g_tm
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = -kc - 1j * dce
    m[0, 2] = 1j * gbs
    m[0, 3] = 1j * gtm
    m[1, 1] = -kc + 1j * dce
    m[1, 2] = -1j * np.conj(gtm)
    m[1, 3] = -1j * np.conj(gbs)
    m[2, 0] = 1j * np.conj(gbs)
    m[2, 1] = 1j * gtm
    m[2, 2] = -kw - 1j * dwe
    m[3, 0] = -1j * np.conj(gtm)
    m[3, 1] = -1j * gbs
    m[3, 3] = -kw + 1j * dwe
    return m


def to_quadrature(cd: np.ndarray) -> np.ndarray:
    """Similarity transform S A S^-1 into the real quadrature basis.

    Raises BasisError if the imaginary residue exceeds 1e-10 * ||A||; the
    result is then hard-cast to real.
    """
    m = _S @ cd @ _S_INV
    scale = np.max(np.abs(m))
    residue = np.max(np.abs(m.imag))
    if scale > 0 and residue > IMAG_RESIDUE_TOL * scale:
        raise BasisError(
            f"imaginary residue {residue:.3e} exceeds {IMAG_RESIDUE_TOL:.0e} * ||A||"
        )
    return np.ascontiguousarray(m.real)


def diffusion(params: SystemParams) -> np.ndarray:
    """Diagonal quadrature-basis diffusion from independent thermal baths.

    D = diag(kc(2Nc+1), kc(2Nc+1), kw(2Nw+1), kw(2Nw+1)); every entry is at
    least the corresponding kappa (vacuum floor).
    """
    n_c = thermal_occupation(params.oc.omega, params.temperature)
    n_w = thermal_occupation(params.mw.omega, params.temperature)
    d_c = params.oc.kappa * (2.0 * n_c + 1.0)
    d_w = params.mw.kappa * (2.0 * n_w + 1.0)
    return np.diag([d_c, d_c, d_w, d_w])


MARGINAL_BAND = 1e-9


def stability(qd: np.ndarray) -> StabilityReport:
    """Eigenvalue stability of the real drift: stable iff max Re < 0 strictly.

    Points with max Re in [-1e-9 * ||A||, 0) are additionally flagged
    marginally stable (the covariance solve is poorly conditioned there).
    """
    if not np.all(np.isfinite(qd)):
        raise EigenFailure("drift matrix contains non-finite entries")
    eigs = np.linalg.eigvals(qd)
    max_re = float(np.max(eigs.real))
    scale = float(np.max(np.abs(qd)))
    marginal = -MARGINAL_BAND * scale <= max_re < 0.0
    return StabilityReport(
        stable=max_re < 0.0,
        max_real_part=max_re,
        eigenvalues=tuple(eigs),
        marginally_stable=marginal,
    )
