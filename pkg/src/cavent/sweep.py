"""Per-point pipeline and deterministic grid sweeps.

run_point composes the full chain for one operating point:
coupling rate -> steady state -> drift -> quadratures -> diffusion ->
stability -> covariance -> separability verdict. Physically unstable or
non-convergent points come back as flagged rows, never exceptions.

run_sweep evaluates a 1- or 2-axis grid in row-major axis order; grid points
are independent and may run on a thread pool, but rows are gathered by index
so the output is byte-identical for any worker count.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .constants import ev_to_omega
from .core import ModeSpec
from .dynamics import complex_drift, diffusion, stability, to_quadrature
from .entanglement import IllConditioned, solve_lyapunov, symplectic_eigenvalue
from .photodiode import DetectorMaterial, OpticalDrive, coupling_rate, photocurrent
from .steadystate import (
    NonConvergence,
    SystemParams,
    effective_params,
    solve_steady_state,
)

AXIS_NAMES = (
    "delta_w_over_w",
    "delta_c_over_w",
    "T",
    "P_c",
    "P_w",
    "photon_energy_ev",
    "q_scale",
)

LINEARIZATION_THRESHOLD = 10.0
STIFF_RATIO_MAX = 4.5e6  # eps * ratio stays below the 1e-9 verdict scale

STATUS_OK = "ok"
STATUS_NO_CONVERGENCE = "no_convergence"
STATUS_UNSTABLE = "unstable"
STATUS_MARGINAL = "marginal"
STATUS_ILL_CONDITIONED = "ill_conditioned"


@dataclass(frozen=True)
class Tolerances:
    ss_tol: float = 1e-12
    ss_max_iter: int = 10_000
    stiff_ratio_max: float = STIFF_RATIO_MAX


@dataclass(frozen=True)
class PointSpec:
    """One fully resolved operating point."""

    oc: ModeSpec
    mw: ModeSpec
    delta_c: float
    delta_w: float
    temperature: float
    material: DetectorMaterial
    drive: OpticalDrive
    g_scale: float
    n_abs: float
    c_drive: float = 1.0


@dataclass(frozen=True)
class PointResult:
    delta_c: float
    delta_w: float
    temperature: float
    p_c: float
    p_w: float
    g_scale: float
    q_oc: float
    photocurrent: float
    alpha: complex | None
    beta: complex | None
    linearization_valid: bool | None
    stable: bool | None
    marginally_stable: bool | None
    two_eta: float | None
    entangled: bool | None
    status: str


@dataclass(frozen=True)
class Axis:
    name: str
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.name not in AXIS_NAMES:
            raise ValueError(f"unknown axis {self.name!r}; known: {AXIS_NAMES}")
        if len(self.values) == 0:
            raise ValueError(f"axis {self.name!r} has no values")
        if not all(np.isfinite(v) for v in self.values):
            raise ValueError(f"axis {self.name!r} has non-finite values")


@dataclass(frozen=True)
class SweepSpec:
    base: PointSpec
    axes: tuple[Axis, ...]
    tolerances: Tolerances = Tolerances()

    def __post_init__(self) -> None:
        if not 1 <= len(self.axes) <= 2:
            raise ValueError(f"sweeps take 1 or 2 axes, got {len(self.axes)}")


def apply_axis(point: PointSpec, name: str, value: float) -> PointSpec:
    """Return the point with one registry parameter replaced."""
    if name == "delta_w_over_w":
        return replace(point, delta_w=value * point.mw.omega)
    if name == "delta_c_over_w":
        return replace(point, delta_c=value * point.mw.omega)
    if name == "T":
        return replace(point, temperature=value)
    if name == "P_c":
        drive = OpticalDrive(point.drive.omega_c, point.c_drive * value)
        return replace(point, oc=replace(point.oc, pump_power=value), drive=drive)
    if name == "P_w":
        return replace(point, mw=replace(point.mw, pump_power=value))
    if name == "photon_energy_ev":
        drive = OpticalDrive(ev_to_omega(value), point.drive.a0_sq)
        return replace(point, drive=drive)
    if name == "q_scale":
        return replace(point, g_scale=value)
    raise ValueError(f"unknown axis {name!r}")


def run_point(point: PointSpec, tol: Tolerances = Tolerances()) -> PointResult:
    """Evaluate the full pipeline at one operating point; never raises for
    physically degenerate points (they come back flagged)."""
    q_oc = coupling_rate(point.drive, point.material, point.temperature, point.g_scale)
    current = photocurrent(point.drive, point.material, point.temperature, point.n_abs)
    params = SystemParams(
        oc=point.oc,
        mw=point.mw,
        delta_c=point.delta_c,
        delta_w=point.delta_w,
        q_oc=q_oc,
        temperature=point.temperature,
    )
    base = dict(
        delta_c=point.delta_c,
        delta_w=point.delta_w,
        temperature=point.temperature,
        p_c=point.oc.pump_power,
        p_w=point.mw.pump_power,
        g_scale=point.g_scale,
        q_oc=q_oc,
        photocurrent=current,
    )
    try:
        state = solve_steady_state(params, tol=tol.ss_tol, max_iter=tol.ss_max_iter)
    except NonConvergence:
        return PointResult(
            **base,
            alpha=None,
            beta=None,
            linearization_valid=None,
            stable=None,
            marginally_stable=None,
            two_eta=None,
            entangled=None,
            status=STATUS_NO_CONVERGENCE,
        )
    eff = effective_params(state, params)
    drift = to_quadrature(complex_drift(eff, params))
    report = stability(drift)
    lin_ok = abs(state.alpha) > LINEARIZATION_THRESHOLD and abs(state.beta) > LINEARIZATION_THRESHOLD
    base.update(
        alpha=state.alpha,
        beta=state.beta,
        linearization_valid=lin_ok,
        stable=report.stable,
        marginally_stable=report.marginally_stable,
    )
    if not report.stable:
        return PointResult(**base, two_eta=None, entangled=None, status=STATUS_UNSTABLE)
    d = diffusion(params)
    try:
        v = solve_lyapunov(drift, d)
    except IllConditioned:
        return PointResult(**base, two_eta=None, entangled=None, status=STATUS_ILL_CONDITIONED)
    verdict = symplectic_eigenvalue(v)
    stiffness = float(np.max(np.abs(drift))) / min(point.oc.kappa, point.mw.kappa)
    if stiffness > tol.stiff_ratio_max:
        status = STATUS_ILL_CONDITIONED
    elif report.marginally_stable:
        status = STATUS_MARGINAL
    else:
        status = STATUS_OK
    return PointResult(
        **base, two_eta=verdict.two_eta, entangled=verdict.entangled, status=status
    )


def grid_points(spec: SweepSpec) -> list[PointSpec]:
    """Row-major expansion of the axes over the base point."""
    points = []
    if len(spec.axes) == 1:
        axis = spec.axes[0]
        for value in axis.values:
            points.append(apply_axis(spec.base, axis.name, value))
    else:
        outer, inner = spec.axes
        for ov in outer.values:
            outer_point = apply_axis(spec.base, outer.name, ov)
            for iv in inner.values:
                points.append(apply_axis(outer_point, inner.name, iv))
    return points


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[PointResult]:
    """One PointResult per grid point, in deterministic row-major order."""
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    points = grid_points(spec)
    if workers == 1:
        return [run_point(p, spec.tolerances) for p in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(run_point, p, spec.tolerances) for p in points]
        return [f.result() for f in futures]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


CSV_COLUMNS = (
    "delta_c_rad_s",
    "delta_w_rad_s",
    "temperature_k",
    "p_c_w",
    "p_w_w",
    "g_scale_rad_s",
    "q_oc_rad_s",
    "photocurrent_a",
    "alpha_re",
    "alpha_im",
    "beta_re",
    "beta_im",
    "linearization_valid",
    "stable",
    "marginally_stable",
    "two_eta",
    "entangled",
    "status",
)


def result_row(r: PointResult) -> list[str]:
    return [
        _fmt(r.delta_c),
        _fmt(r.delta_w),
        _fmt(r.temperature),
        _fmt(r.p_c),
        _fmt(r.p_w),
        _fmt(r.g_scale),
        _fmt(r.q_oc),
        _fmt(r.photocurrent),
        _fmt(None if r.alpha is None else r.alpha.real),
        _fmt(None if r.alpha is None else r.alpha.imag),
        _fmt(None if r.beta is None else r.beta.real),
        _fmt(None if r.beta is None else r.beta.imag),
        _fmt(r.linearization_valid),
        _fmt(r.stable),
        _fmt(r.marginally_stable),
        _fmt(r.two_eta),
        _fmt(r.entangled),
        r.status,
    ]


def results_to_csv(results: list[PointResult]) -> str:
    """RFC-4180 CSV with LF line endings and 17-significant-digit floats."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in results:
        writer.writerow(result_row(r))
    return buf.getvalue()


def write_csv(results: list[PointResult], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(results_to_csv(results))
