"""Golden-rule photodetector model: interband transition rate, the coupling
rate it induces between the cavities, and the photocurrent.

The absolute rate of the golden-rule expression carries the device geometry
the hardware would fix; the library therefore exposes it two ways:

- ``transition_rate_raw``: the literal rate expression (spectral shape,
  temperature factor and intensity dependence are exact),
- ``coupling_rate``: that rate normalized at a fixed reference point
  (1.2 eV photon, 80 K, unit intensity) times the configurable scale
  ``g_scale`` in rad/s, which is what enters the Hamiltonian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .constants import E_CHARGE, EV, HBAR, KB, M0_ELECTRON

REF_PHOTON_EV = 1.2
REF_TEMPERATURE = 80.0


@dataclass(frozen=True)
class TemperatureModel:
    """Thermally activated escape factor f(T) = 1/(1 + C exp(-E_act/kB T))."""

    e_act: float = 0.20 * EV  # activation energy, J
    prefactor: float = 1.0e4

    def __post_init__(self) -> None:
        if self.e_act <= 0:
            raise ValueError(f"e_act must be positive, got {self.e_act}")
        if self.prefactor < 0:
            raise ValueError(f"prefactor must be >= 0, got {self.prefactor}")


@dataclass(frozen=True)
class DetectorMaterial:
    """Interband absorber parameters; defaults model a Si photodiode."""

    e_gap: float = 1.1 * EV  # J
    mu_eff: float = 0.15 * M0_ELECTRON  # reduced e-h mass, kg
    p_cv_sq: float = 1.6e-48  # |P_cv|^2, (kg m/s)^2  (Kane energy ~ 21.6 eV)
    gamma_l: float = 0.05 * EV / HBAR  # Lorentzian full linewidth, rad/s
    line_center: float = 1.1 * EV / HBAR  # omega_eg, rad/s (gap-centered)
    temp_model: TemperatureModel = field(default_factory=TemperatureModel)

    def __post_init__(self) -> None:
        if self.e_gap <= 0:
            raise ValueError(f"e_gap must be positive, got {self.e_gap}")
        if self.mu_eff <= 0:
            raise ValueError(f"mu_eff must be positive, got {self.mu_eff}")
        if self.p_cv_sq < 0:
            raise ValueError(f"p_cv_sq must be >= 0, got {self.p_cv_sq}")
        if self.gamma_l <= 0:
            raise ValueError(f"gamma_l must be positive, got {self.gamma_l}")


@dataclass(frozen=True)
class OpticalDrive:
    """Incident light on the detector: frequency and intensity-like A0^2.

    omega_c is the incident (pump) optical frequency. A0^2 is proportional
    to intensity; by convention a0_sq = c_drive * P_c, so the rate stays
    exactly linear in pump power.
    """

    omega_c: float
    a0_sq: float

    def __post_init__(self) -> None:
        if self.omega_c <= 0:
            raise ValueError(f"omega_c must be positive, got {self.omega_c}")
        if self.a0_sq < 0:
            raise ValueError(f"a0_sq must be >= 0, got {self.a0_sq}")

    @classmethod
    def from_power(cls, omega_c: float, power: float, c_drive: float = 1.0) -> "OpticalDrive":
        return cls(omega_c=omega_c, a0_sq=c_drive * power)


def lorentzian(omega: float, center: float, gamma_l: float) -> float:
    """Unit-area Lorentzian (gamma_l/2pi)/((w-w0)^2 + (gamma_l/2)^2), in s."""
    if gamma_l <= 0:
        raise ValueError(f"gamma_l must be positive, got {gamma_l}")
    d = omega - center
    return (gamma_l / (2.0 * math.pi)) / (d * d + 0.25 * gamma_l * gamma_l)


def joint_dos(photon_energy: float, mat: DetectorMaterial) -> float:
    """Joint density of states (1/2pi^2)(2 mu/hbar^2)^{3/2} sqrt(E - E_gap).

    Zero at and below the gap (continuous at the edge); units 1/(J m^3).
    """
    if photon_energy <= 0:
        raise ValueError(f"photon_energy must be positive, got {photon_energy}")
    excess = photon_energy - mat.e_gap
    if excess <= 0.0:
        return 0.0
    pref = (2.0 * mat.mu_eff / (HBAR * HBAR)) ** 1.5 / (2.0 * math.pi**2)
    return pref * math.sqrt(excess)


def temperature_factor(temperature: float, model: TemperatureModel) -> float:
    """f(T) in (0, 1], non-increasing; f(0) = 1 exactly."""
    if temperature < 0:
        raise ValueError(f"temperature must be >= 0, got {temperature}")
    if temperature == 0.0 or model.prefactor == 0.0:
        return 1.0
    return 1.0 / (1.0 + model.prefactor * math.exp(-model.e_act / (KB * temperature)))


def rate_per_intensity(omega_c: float, mat: DetectorMaterial, temperature: float) -> float:
    """Golden-rule transition rate at unit intensity (A0^2 = 1).

    rate/A0^2 = (2pi/hbar)(e^2 / 4 m0^2)|P_cv|^2 g_J(hbar w_c) L(w_c) f(T).
    Exactly zero below the gap (the DOS factor vanishes).
    """
    g_j = joint_dos(HBAR * omega_c, mat)
    if g_j == 0.0:
        return 0.0
    line = lorentzian(omega_c, mat.line_center, mat.gamma_l)
    f_t = temperature_factor(temperature, mat.temp_model)
    pref = (2.0 * math.pi / HBAR) * (E_CHARGE**2 / (4.0 * M0_ELECTRON**2))
    return pref * mat.p_cv_sq * g_j * line * f_t


def transition_rate_raw(drive: OpticalDrive, mat: DetectorMaterial, temperature: float) -> float:
    """Golden-rule transition rate before any normalization.

    The intensity enters as one final multiplication, so the rate (and
    everything downstream) is exactly proportional to A0^2, bit for bit.
    """
    return rate_per_intensity(drive.omega_c, mat, temperature) * drive.a0_sq


def reference_rate(mat: DetectorMaterial) -> float:
    """Normalization point: unit intensity, 1.2 eV photon, 80 K."""
    ref_drive = OpticalDrive(omega_c=REF_PHOTON_EV * EV / HBAR, a0_sq=1.0)
    rate = transition_rate_raw(ref_drive, mat, REF_TEMPERATURE)
    if rate <= 0.0:
        raise ValueError(
            "reference transition rate is zero; the material gap must lie "
            f"below the {REF_PHOTON_EV} eV reference photon energy"
        )
    return rate


def coupling_rate(
    drive: OpticalDrive, mat: DetectorMaterial, temperature: float, g_scale: float
) -> float:
    """Hamiltonian cross-Kerr rate q_oc = g_scale * rate/rate(reference).

    g_scale carries the rad/s dimension; the normalized rate keeps the
    spectral and temperature shape of the golden-rule model and stays exactly
    linear in A0^2 (the reference is evaluated at fixed unit intensity).
    """
    if g_scale < 0:
        raise ValueError(f"g_scale must be >= 0, got {g_scale}")
    return g_scale * transition_rate_raw(drive, mat, temperature) / reference_rate(mat)


def photocurrent_per_intensity(
    omega_c: float, mat: DetectorMaterial, temperature: float, n_abs: float
) -> float:
    """Photocurrent slope dI/dA0^2: elementary charge times the unit-intensity
    rate over n_abs effective absorbers."""
    if n_abs <= 0:
        raise ValueError(f"n_abs must be positive, got {n_abs}")
    return E_CHARGE * rate_per_intensity(omega_c, mat, temperature) * n_abs


def photocurrent(
    drive: OpticalDrive, mat: DetectorMaterial, temperature: float, n_abs: float
) -> float:
    """I = e * rate * n_abs; exactly linear in the drive intensity (a single
    final multiplication by A0^2). Dark current is neglected."""
    return photocurrent_per_intensity(drive.omega_c, mat, temperature, n_abs) * drive.a0_sq


def photocurrent_spectrum(
    energies_ev: list[float],
    temperatures: list[float],
    mat: DetectorMaterial,
    a0_sq: float,
    n_abs: float,
) -> list[tuple[float, float, float]]:
    """Row-major (energy, T, I) table; one row per grid point."""
    if not energies_ev or not temperatures:
        raise ValueError("energy and temperature grids must be non-empty")
    rows = []
    for energy in energies_ev:
        drive = OpticalDrive(omega_c=energy * EV / HBAR, a0_sq=a0_sq)
        for temp in temperatures:
            rows.append((energy, temp, photocurrent(drive, mat, temp, n_abs)))
    return rows
