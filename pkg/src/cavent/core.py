"""Mode descriptions, thermal occupation and cavity drive amplitudes."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import HBAR, KB


@dataclass(frozen=True)
class ModeSpec:
    """One cavity mode: resonance, amplitude decay rate, pump frequency/power.

    kappa is the amplitude decay rate (the input-noise prefactor is
    sqrt(2*kappa)); all frequencies are angular (rad/s).
    """

    omega: float
    kappa: float
    pump_omega: float
    pump_power: float

    def __post_init__(self) -> None:
        if self.omega <= 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.kappa <= 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        if self.pump_omega <= 0:
            raise ValueError(f"pump_omega must be positive, got {self.pump_omega}")
        if self.pump_power < 0:
            raise ValueError(f"pump_power must be >= 0, got {self.pump_power}")


def thermal_occupation(omega: float, temperature: float) -> float:
    """Bose-Einstein mean photon number N = 1/(exp(hbar w / kB T) - 1).

    Returns exactly 0 at T = 0 and underflows cleanly to 0 for
    hbar*omega >> kB*T.
    """
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega}")
    if temperature < 0:
        raise ValueError(f"temperature must be >= 0, got {temperature}")
    if temperature == 0.0:
        return 0.0
    x = HBAR * omega / (KB * temperature)
    if x > 700.0:  # exp would overflow; N is < 1e-304 anyway
        return 0.0
    return 1.0 / math.expm1(x)


def drive_amplitude(mode: ModeSpec) -> float:
    """Drive amplitude E = sqrt(2 kappa P / hbar w_pump) in rad/s.

    Standard input-output conversion from pump power to the coherent drive
    appearing in the mean-field equations; E scales as sqrt(P).
    """
    return math.sqrt(2.0 * mode.kappa * mode.pump_power / (HBAR * mode.pump_omega))
