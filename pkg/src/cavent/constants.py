"""Physical constants (CODATA 2018 exact/recommended values) and unit helpers.

Everything downstream works in SI with angular frequencies in rad/s; the eV
conversions live here and at the CLI boundary only.
"""

from __future__ import annotations

import math

HBAR = 1.054571817e-34  # J s
KB = 1.380649e-23  # J/K (exact)
E_CHARGE = 1.602176634e-19  # C (exact)
M0_ELECTRON = 9.1093837015e-31  # kg

EV = E_CHARGE  # 1 eV in joules


def ev_to_omega(energy_ev: float) -> float:
    """Angular frequency (rad/s) of a photon with the given energy in eV."""
    if energy_ev <= 0:
        raise ValueError(f"energy must be positive, got {energy_ev}")
    return energy_ev * EV / HBAR


def omega_to_ev(omega: float) -> float:
    """Photon energy in eV for an angular frequency in rad/s."""
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega}")
    return omega * HBAR / EV


def ghz_to_omega(f_ghz: float) -> float:
    """Angular frequency for an ordinary frequency given in GHz."""
    return 2.0 * math.pi * f_ghz * 1e9
