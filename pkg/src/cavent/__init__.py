"""Optoelectronic cavity-cavity entanglement: steady states, linearized
fluctuation dynamics, stationary covariances and separability sweeps for an
optical cavity coupled to a microwave LC mode through a photodetector."""

from .constants import ev_to_omega, ghz_to_omega, omega_to_ev
from .core import ModeSpec, drive_amplitude, thermal_occupation
from .photodiode import (
    DetectorMaterial,
    OpticalDrive,
    TemperatureModel,
    coupling_rate,
    joint_dos,
    lorentzian,
    photocurrent,
    photocurrent_per_intensity,
    photocurrent_spectrum,
    rate_per_intensity,
    temperature_factor,
)
from .steadystate import (
    EffectiveParams,
    NonConvergence,
    SteadyState,
    SystemParams,
    effective_params,
    solve_steady_state,
)
from .dynamics import (
    BasisError,
    StabilityReport,
    complex_drift,
    diffusion,
    stability,
    to_quadrature,
)
from .entanglement import (
    EntanglementVerdict,
    IllConditioned,
    NonPhysical,
    StepSizeError,
    UnstableSystem,
    integrate_covariance,
    physicality_check,
    solve_lyapunov,
    symplectic_eigenvalue,
)
from .sweep import (
    Axis,
    PointResult,
    PointSpec,
    SweepSpec,
    Tolerances,
    run_point,
    run_sweep,
    write_csv,
)
from .calibration import (
    CalibrationFailure,
    CalibrationRecord,
    calibrate_defaults,
    load_shipped_record,
    shipped_q_scale,
)
from .config import ConfigError, build_point, default_config, load_config

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "BasisError",
    "CalibrationFailure",
    "CalibrationRecord",
    "ConfigError",
    "DetectorMaterial",
    "EffectiveParams",
    "EntanglementVerdict",
    "IllConditioned",
    "ModeSpec",
    "NonConvergence",
    "NonPhysical",
    "OpticalDrive",
    "PointResult",
    "PointSpec",
    "StabilityReport",
    "SteadyState",
    "StepSizeError",
    "SweepSpec",
    "SystemParams",
    "TemperatureModel",
    "Tolerances",
    "UnstableSystem",
    "build_point",
    "calibrate_defaults",
    "complex_drift",
    "coupling_rate",
    "default_config",
    "diffusion",
    "drive_amplitude",
    "effective_params",
    "ev_to_omega",
    "ghz_to_omega",
    "integrate_covariance",
    "joint_dos",
    "load_config",
    "load_shipped_record",
    "lorentzian",
    "omega_to_ev",
    "photocurrent",
    "photocurrent_per_intensity",
    "photocurrent_spectrum",
    "physicality_check",
    "rate_per_intensity",
    "run_point",
    "run_sweep",
    "shipped_q_scale",
    "solve_lyapunov",
    "solve_steady_state",
    "stability",
    "symplectic_eigenvalue",
    "temperature_factor",
    "thermal_occupation",
    "to_quadrature",
    "write_csv",
]
