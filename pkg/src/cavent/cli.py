"""Command-line front end.

Exit codes: 0 success, 1 runtime error, 2 configuration error,
3 calibration failure. Diagnostics go to stderr; stdout carries nothing
except the human-readable report of `point`.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from pathlib import Path

import numpy as np

from .calibration import (
    CalibrationFailure,
    calibrate_defaults,
    render_record,
)
from .config import (
    ConfigError,
    apply_overlay,
    apply_set_overrides,
    build_axes,
    build_point,
    build_spectrum_grid,
    build_tolerances,
    echo_config,
    load_config,
)
from .dynamics import complex_drift, stability, to_quadrature
from .photodiode import photocurrent_spectrum
from .presets import SPECTRUM_PRESETS, SWEEP_PRESETS, preset_overlay
from .steadystate import NonConvergence, SystemParams, effective_params, solve_steady_state
from .sweep import SweepSpec, run_point, run_sweep, write_csv
from . import selfcheck


def _use_color(stream) -> bool:
    if os.environ.get("CAVENT_NO_COLOR"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def _style(text: str, code: str, stream) -> str:
    if not _use_color(stream):
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def _warn(message: str) -> None:
    print(f"cavent: {message}", file=sys.stderr)


def _load(args) -> dict:
    cfg = load_config(args.config)
    if getattr(args, "preset", None):
        apply_overlay(cfg, preset_overlay(args.preset))
    if args.set:
        apply_set_overrides(cfg, args.set)
    if getattr(args, "workers", None) is not None:
        if args.workers < 1:
            raise ConfigError(f"--workers must be >= 1, got {args.workers}")
        cfg["sweep"]["workers"] = args.workers
    return cfg


def _prepare_out(cfg: dict, args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    echo_config(cfg, out / "resolved_config.yaml")
    return out


def _fmt(value: float) -> str:
    return format(value, ".17g")


def cmd_photocurrent(args) -> int:
    cfg = _load(args)
    energies, temps = build_spectrum_grid(cfg)
    if args.temps:
        temps = [float(t) for t in args.temps]
        cfg["spectrum"]["temperatures"] = temps
    point = _point_for_photocurrent(cfg)
    out = _prepare_out(cfg, args)
    rows = photocurrent_spectrum(energies, temps, point.material, point.drive.a0_sq, point.n_abs)
    csv_path = out / "photocurrent.csv"
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("photon_energy_ev", "temperature_k", "photocurrent_a"))
        for energy, temp, current in rows:
            writer.writerow((_fmt(energy), _fmt(temp), _fmt(current)))
    _warn(f"wrote {csv_path}")
    if args.plot:
        from .plotting import plot_spectrum

        err = plot_spectrum(rows, out / "photocurrent.svg")
        if err:
            _warn(err)
        else:
            _warn(f"wrote {out / 'photocurrent.svg'}")
    return 0


def _point_for_photocurrent(cfg: dict):
    # the spectrum does not involve the coupling scale; tolerate a missing
    # calibration record by pinning g_scale before the build
    if cfg["coupling"]["g_scale"] is None:
        cfg = {**cfg, "coupling": {"g_scale": 0.0}}
    return build_point(cfg)


def cmd_entangle(args) -> int:
    cfg = _load(args)
    spec = SweepSpec(
        base=build_point(cfg),
        axes=build_axes(cfg),
        tolerances=build_tolerances(cfg),
    )
    out = _prepare_out(cfg, args)
    results = run_sweep(spec, workers=int(cfg["sweep"]["workers"]))
    csv_path = out / "entangle.csv"
    write_csv(results, csv_path)
    _warn(f"wrote {csv_path} ({len(results)} rows)")
    if args.plot:
        from .plotting import plot_sweep

        err = plot_sweep(results, spec, out / "entangle.svg")
        if err:
            _warn(err)
        else:
            _warn(f"wrote {out / 'entangle.svg'}")
    return 0


def cmd_point(args) -> int:
    cfg = _load(args)
    point = build_point(cfg)
    tol = build_tolerances(cfg)
    out = _prepare_out(cfg, args)
    result = run_point(point, tol)
    write_csv([result], out / "point.csv")

    w = point.mw.omega
    lines = [
        "operating point",
        f"  delta_c = {result.delta_c:.6e} rad/s ({result.delta_c / w:+.4f} omega_w)",
        f"  delta_w = {result.delta_w:.6e} rad/s ({result.delta_w / w:+.4f} omega_w)",
        f"  T = {result.temperature:g} K, P_c = {result.p_c:g} W, P_w = {result.p_w:g} W",
        "coupling",
        f"  q_oc = {result.q_oc:.6e} rad/s",
        f"  photocurrent = {result.photocurrent:.6e} A",
    ]
    if result.status == "no_convergence":
        lines += ["mean fields", "  steady state did not converge; no linearization"]
    else:
        assert result.alpha is not None and result.beta is not None
        params = SystemParams(
            oc=point.oc,
            mw=point.mw,
            delta_c=point.delta_c,
            delta_w=point.delta_w,
            q_oc=result.q_oc,
            temperature=point.temperature,
        )
        try:
            state = solve_steady_state(params, tol=tol.ss_tol, max_iter=tol.ss_max_iter)
            report = stability(to_quadrature(complex_drift(effective_params(state, params), params)))
        except NonConvergence:  # racing the run_point call cannot happen; be safe
            report = None
        lines += [
            "mean fields",
            f"  alpha = {result.alpha.real:+.6e}{result.alpha.imag:+.6e}j  (|alpha| = {abs(result.alpha):.4e})",
            f"  beta  = {result.beta.real:+.6e}{result.beta.imag:+.6e}j  (|beta| = {abs(result.beta):.4e})",
            f"  linearization_valid = {str(result.linearization_valid).lower()}",
            "stability",
        ]
        if report is not None:
            lines.append(f"  max Re lambda = {report.max_real_part:+.6e} /s")
            for ev in report.eigenvalues:
                lines.append(f"    lambda = {ev.real:+.6e} {ev.imag:+.6e}j")
    verdict_line = _verdict_line(result)
    lines += ["verdict", "  " + verdict_line, f"  status = {result.status}"]
    print("\n".join(lines))
    return 0


def _verdict_line(result) -> str:
    if result.status == "no_convergence":
        return "no certified mean field; no 2eta"
    if result.status == "unstable":
        return "no stationary state (unstable linearized dynamics)"
    if result.two_eta is None:
        return f"covariance solve not certified ({result.status}); no 2eta"
    color_stream = sys.stdout
    if result.two_eta < 1.0:
        tag = _style("entangled", "32", color_stream)
    elif math.isclose(result.two_eta, 1.0, rel_tol=0.0, abs_tol=1e-9):
        tag = "separable (boundary)"
    else:
        tag = "separable"
    return f"2eta = {result.two_eta:.6f}, {tag}"


def cmd_calibrate(args) -> int:
    cfg = _load(args)
    if cfg["coupling"]["g_scale"] is None:
        cfg["coupling"]["g_scale"] = 1.0  # placeholder; calibrate scans it
    base = build_point(cfg)
    tol = build_tolerances(cfg)
    cal = cfg["calibration"]
    grid = tuple(
        float(x)
        for x in np.logspace(
            math.log10(float(cal["grid_lo"])),
            math.log10(float(cal["grid_hi"])),
            int(cal["grid_points"]),
        )
    )
    out = _prepare_out(cfg, args)
    record_path = out / "calibration.txt"
    try:
        record = calibrate_defaults(
            base,
            grid=grid,
            temperatures=tuple(float(t) for t in cal["temperatures"]),
            margin=float(cal["margin"]),
            wing=float(cal["wing"]),
            tol=tol,
        )
    except CalibrationFailure as exc:
        record_path.write_text(render_record(exc.record), encoding="utf-8")
        _warn(f"wrote {record_path}")
        _warn(str(exc))
        return 3
    record_path.write_text(render_record(record), encoding="utf-8")
    _warn(f"wrote {record_path}")
    _warn(f"calibrated q_scale = {record.q_scale:.6g} rad/s")
    return 0


def cmd_check(args) -> int:
    results = selfcheck.run_all()
    failed = 0
    for r in results:
        tag = _style("PASS", "32", sys.stderr) if r.ok else _style("FAIL", "31", sys.stderr)
        print(f"{tag} {r.name}: {r.detail}", file=sys.stderr)
        failed += 0 if r.ok else 1
    if failed:
        _warn(f"{failed}/{len(results)} checks failed")
        return 1
    _warn(f"all {len(results)} checks passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavent",
        description="Cavity entanglement via a photodetector-varactor link: "
        "steady states, fluctuation spectra and separability sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, presets=None):
        p.add_argument("--config", default=None, help="YAML config file")
        p.add_argument("--out", default="cavent_out", help="output directory")
        p.add_argument(
            "--set",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="dotted-path config override, e.g. --set mw.kappa=6.283e6",
        )
        if presets is not None:
            p.add_argument("--preset", choices=presets, default=None)

    p = sub.add_parser("photocurrent", help="detector response vs photon energy")
    common(p, presets=list(SPECTRUM_PRESETS))
    p.add_argument("--temps", nargs="+", type=float, default=None, metavar="K")
    p.add_argument("--plot", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(func=cmd_photocurrent)

    p = sub.add_parser("entangle", help="two_eta sweep over detuning/temperature/power")
    common(p, presets=list(SWEEP_PRESETS))
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--plot", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(func=cmd_entangle)

    p = sub.add_parser("point", help="full report for a single operating point")
    common(p)
    p.set_defaults(func=cmd_point)

    p = sub.add_parser("calibrate", help="search g_scale against the entanglement clauses")
    common(p)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("check", help="run the built-in physicality/oracle battery")
    p.set_defaults(func=cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        _warn(f"config error: {exc}")
        return 2
    except CalibrationFailure as exc:  # raised outside cmd_calibrate's handler
        _warn(str(exc))
        return 3
    except Exception as exc:
        _warn(f"error: {exc}")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
