"""Layered run configuration: defaults < file < --set overrides < flags.

The schema is a nested mapping with SI leaves (angular frequencies in rad/s,
powers in W, energies labelled _ev in eV). Unknown keys are a hard error;
a typo never silently reverts a parameter to its default. The fully
resolved mapping is echoed into every output directory and is itself a
valid --config input that reproduces the run byte for byte.
"""

from __future__ import annotations

import copy
import math

import numpy as np
import yaml

from .constants import ev_to_omega
from .core import ModeSpec
from .photodiode import DetectorMaterial, OpticalDrive, TemperatureModel
from .sweep import Axis, PointSpec, Tolerances
from .constants import EV, HBAR, M0_ELECTRON


class ConfigError(Exception):
    """Invalid configuration input (unknown key, bad type, bad value)."""


_TWO_PI = 2.0 * math.pi

DEFAULTS: dict = {
    "oc": {
        "omega": ev_to_omega(1.1),  # rad/s, resonance at the detector gap
        "kappa": _TWO_PI * 1.0e6,  # rad/s
        "pump_energy_ev": 1.2,
        "pump_power": 0.010,  # W
    },
    "mw": {
        "omega": _TWO_PI * 1.0e10,  # rad/s
        "kappa": _TWO_PI * 1.0e6,  # rad/s
        "pump_power": 0.010,  # W
    },
    "detector": {
        "gap_ev": 1.1,
        "line_center_ev": 1.1,
        "linewidth_ev": 0.05,
        "mu_eff_m0": 0.15,
        "p_cv_sq": 1.6e-48,
        "quench_prefactor": 1.0e4,
        "activation_ev": 0.20,
        "n_abs": 1.0e10,
        "c_drive": 1.0,
    },
    "coupling": {
        "g_scale": None,  # null -> shipped calibration record
    },
    "point": {
        "delta_c_over_w": 0.0,
        "delta_w_over_w": 0.0,
        "temperature": 298.0,
    },
    "solver": {
        "ss_tol": 1.0e-12,
        "ss_max_iter": 10_000,
        "stiff_ratio_max": 4.5e6,
    },
    "spectrum": {
        "energy_min_ev": 0.8,
        "energy_max_ev": 1.6,
        "energy_points": 161,
        "temperatures": [80.0, 180.0, 250.0, 273.0, 298.0, 310.0],
    },
    "sweep": {
        "workers": 1,
        "axes": [],  # list of {name, values} or {name, start, stop, points}
    },
    "calibration": {
        "grid_lo": 1.0e-8,
        "grid_hi": 1.0e4,
        "grid_points": 49,
        "margin": 1.0e-6,
        "wing": 0.5,
        "temperatures": [80.0, 180.0, 250.0, 273.0, 298.0],
    },
}


def default_config() -> dict:
    return copy.deepcopy(DEFAULTS)


def _merge(dst: dict, src: dict, prefix: str = "") -> None:
    for key, value in src.items():
        dotted = f"{prefix}{key}"
        if key not in dst:
            raise ConfigError(f"unknown config key: {dotted}")
        current = dst[key]
        if isinstance(current, dict):
            if not isinstance(value, dict):
                raise ConfigError(f"config key {dotted} is a section, not a value")
            _merge(current, value, dotted + ".")
        else:
            if isinstance(value, dict):
                raise ConfigError(f"config key {dotted} is a value, not a section")
            dst[key] = value


def load_config(path: str | None = None) -> dict:
    """Defaults merged with an optional YAML file; unknown keys raise."""
    cfg = default_config()
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = yaml.safe_load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        except yaml.YAMLError as exc:
            raise ConfigError(f"cannot parse config file {path}: {exc}") from exc
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ConfigError(f"config file {path} must contain a mapping")
        _merge(cfg, data)
    return cfg


def apply_overlay(cfg: dict, overlay: dict) -> None:
    """Merge a known-key overlay (e.g. a figure preset) into cfg in place."""
    _merge(cfg, overlay)


def apply_set_overrides(cfg: dict, assignments: list[str]) -> None:
    """Apply dotted-path overrides of the form section.key=value.

    Values are parsed as YAML scalars (numbers, booleans, null, strings,
    inline lists), so --set mw.kappa=6.283e6 and --set coupling.g_scale=null
    both do the obvious thing.
    """
    for raw in assignments:
        path, sep, text = raw.partition("=")
        if not sep or not path:
            raise ConfigError(f"malformed --set {raw!r}; expected dotted.path=value")
        try:
            value = yaml.safe_load(text) if text != "" else None
        except yaml.YAMLError as exc:
            raise ConfigError(f"cannot parse value in --set {raw!r}: {exc}") from exc
        if isinstance(value, str):
            # YAML 1.1 wants 6.283e+6; accept the bare-exponent spelling too
            try:
                value = float(value)
            except ValueError:
                pass
        node = cfg
        parts = path.split(".")
        for part in parts[:-1]:
            if not isinstance(node, dict) or part not in node:
                raise ConfigError(f"unknown config key: {path}")
            node = node[part]
        leaf = parts[-1]
        if not isinstance(node, dict) or leaf not in node:
            raise ConfigError(f"unknown config key: {path}")
        if isinstance(node[leaf], dict):
            raise ConfigError(f"config key {path} is a section, not a value")
        node[leaf] = value


def _number(cfg: dict, *path: str) -> float:
    node = cfg
    for part in path:
        node = node[part]
    if isinstance(node, bool) or not isinstance(node, (int, float)):
        raise ConfigError(f"config key {'.'.join(path)} must be a number, got {node!r}")
    return float(node)


def _integer(cfg: dict, *path: str) -> int:
    value = _number(cfg, *path)
    if value != int(value):
        raise ConfigError(f"config key {'.'.join(path)} must be an integer, got {value!r}")
    return int(value)


def _number_list(cfg: dict, *path: str) -> list[float]:
    node = cfg
    for part in path:
        node = node[part]
    if not isinstance(node, (list, tuple)) or not node:
        raise ConfigError(f"config key {'.'.join(path)} must be a non-empty list")
    out = []
    for item in node:
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise ConfigError(f"config key {'.'.join(path)} must contain numbers only")
        out.append(float(item))
    return out


def resolve_g_scale(cfg: dict) -> float:
    """coupling.g_scale, falling back to the shipped calibration record."""
    value = cfg["coupling"]["g_scale"]
    if value is None:
        from .calibration import load_shipped_record

        try:
            return load_shipped_record().q_scale
        except (FileNotFoundError, ValueError) as exc:
            raise ConfigError(
                "coupling.g_scale is null and no shipped calibration record is "
                f"available ({exc}); set coupling.g_scale or run `cavent calibrate`"
            ) from exc
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"config key coupling.g_scale must be a number or null, got {value!r}")
    return float(value)


def resolve_config(cfg: dict) -> dict:
    """Deep copy with every deferred value (g_scale) made concrete."""
    resolved = copy.deepcopy(cfg)
    resolved["coupling"]["g_scale"] = resolve_g_scale(cfg)
    return resolved


def build_material(cfg: dict) -> DetectorMaterial:
    det = cfg["detector"]
    if not isinstance(det, dict):
        raise ConfigError("config key detector must be a section")
    try:
        return DetectorMaterial(
            e_gap=_number(cfg, "detector", "gap_ev") * EV,
            mu_eff=_number(cfg, "detector", "mu_eff_m0") * M0_ELECTRON,
            p_cv_sq=_number(cfg, "detector", "p_cv_sq"),
            gamma_l=_number(cfg, "detector", "linewidth_ev") * EV / HBAR,
            line_center=_number(cfg, "detector", "line_center_ev") * EV / HBAR,
            temp_model=TemperatureModel(
                e_act=_number(cfg, "detector", "activation_ev") * EV,
                prefactor=_number(cfg, "detector", "quench_prefactor"),
            ),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def build_point(cfg: dict) -> PointSpec:
    """Fully resolved operating point from a config mapping."""
    try:
        oc = ModeSpec(
            omega=_number(cfg, "oc", "omega"),
            kappa=_number(cfg, "oc", "kappa"),
            pump_omega=ev_to_omega(_number(cfg, "oc", "pump_energy_ev")),
            pump_power=_number(cfg, "oc", "pump_power"),
        )
        mw_omega = _number(cfg, "mw", "omega")
        mw = ModeSpec(
            omega=mw_omega,
            kappa=_number(cfg, "mw", "kappa"),
            pump_omega=mw_omega,
            pump_power=_number(cfg, "mw", "pump_power"),
        )
        c_drive = _number(cfg, "detector", "c_drive")
        drive = OpticalDrive.from_power(oc.pump_omega, oc.pump_power, c_drive)
        return PointSpec(
            oc=oc,
            mw=mw,
            delta_c=_number(cfg, "point", "delta_c_over_w") * mw_omega,
            delta_w=_number(cfg, "point", "delta_w_over_w") * mw_omega,
            temperature=_number(cfg, "point", "temperature"),
            material=build_material(cfg),
            drive=drive,
            g_scale=resolve_g_scale(cfg),
            n_abs=_number(cfg, "detector", "n_abs"),
            c_drive=c_drive,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def build_tolerances(cfg: dict) -> Tolerances:
    return Tolerances(
        ss_tol=_number(cfg, "solver", "ss_tol"),
        ss_max_iter=_integer(cfg, "solver", "ss_max_iter"),
        stiff_ratio_max=_number(cfg, "solver", "stiff_ratio_max"),
    )


def build_axes(cfg: dict) -> tuple[Axis, ...]:
    """sweep.axes entries to Axis objects; empty config list means the
    default single delta_w_over_w scan."""
    entries = cfg["sweep"]["axes"]
    if not isinstance(entries, list):
        raise ConfigError("config key sweep.axes must be a list")
    if not entries:
        values = tuple(float(v) for v in np.linspace(-1.0, 1.0, 201))
        return (Axis("delta_w_over_w", values),)
    axes = []
    for i, entry in enumerate(entries):
        label = f"sweep.axes[{i}]"
        if not isinstance(entry, dict) or "name" not in entry:
            raise ConfigError(f"{label} must be a mapping with a name")
        name = entry["name"]
        extra = set(entry) - {"name", "values", "start", "stop", "points"}
        if extra:
            raise ConfigError(f"unknown config key: {label}.{sorted(extra)[0]}")
        if "values" in entry:
            if not isinstance(entry["values"], list) or not entry["values"]:
                raise ConfigError(f"{label}.values must be a non-empty list")
            values = tuple(float(v) for v in entry["values"])
        elif {"start", "stop", "points"} <= set(entry):
            points = int(entry["points"])
            if points < 2:
                raise ConfigError(f"{label}.points must be >= 2")
            values = tuple(
                float(v) for v in np.linspace(float(entry["start"]), float(entry["stop"]), points)
            )
        else:
            raise ConfigError(f"{label} needs either values or start/stop/points")
        try:
            axes.append(Axis(str(name), values))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    return tuple(axes)


def build_spectrum_grid(cfg: dict) -> tuple[list[float], list[float]]:
    """(energies_ev, temperatures) for the photocurrent spectrum command."""
    lo = _number(cfg, "spectrum", "energy_min_ev")
    hi = _number(cfg, "spectrum", "energy_max_ev")
    n = _integer(cfg, "spectrum", "energy_points")
    if not lo < hi:
        raise ConfigError("spectrum.energy_min_ev must be below spectrum.energy_max_ev")
    if n < 2:
        raise ConfigError("spectrum.energy_points must be >= 2")
    energies = [float(v) for v in np.linspace(lo, hi, n)]
    return energies, _number_list(cfg, "spectrum", "temperatures")


def dump_config(cfg: dict) -> str:
    return yaml.safe_dump(cfg, sort_keys=False)


def echo_config(cfg: dict, path) -> None:
    """Write the resolved config next to the run outputs."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_config(resolve_config(cfg)))
