"""Static SVG renderings of sweep tables. Optional: matplotlib is imported
lazily and any plotting failure degrades to CSV-only output (the caller gets
an error string to warn with, never an exception)."""

from __future__ import annotations

import math

from .sweep import PointResult, SweepSpec

_AXIS_LABELS = {
    "delta_w_over_w": "MW detuning delta_w / omega_w",
    "delta_c_over_w": "OC detuning delta_c / omega_w",
    "T": "temperature (K)",
    "P_c": "optical pump power (W)",
    "P_w": "MW pump power (W)",
    "photon_energy_ev": "photon energy (eV)",
    "q_scale": "coupling scale g_scale (rad/s)",
}

_CURVE_UNITS = {
    "T": "K",
    "P_c": "W",
    "P_w": "W",
}


def _backend():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def plot_spectrum(rows, path) -> str | None:
    """One photocurrent line per temperature; returns an error message or
    None on success. rows are (energy_ev, temperature, current) tuples."""
    try:
        plt = _backend()
        temps = sorted({t for _, t, _ in rows})
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        for t in temps:
            xs = [e for e, tt, _ in rows if tt == t]
            ys = [i for _, tt, i in rows if tt == t]
            ax.plot(xs, ys, label=f"T = {t:g} K")
        ax.set_xlabel("photon energy (eV)")
        ax.set_ylabel("photocurrent (A)")
        ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(path, format="svg")
        plt.close(fig)
        return None
    except Exception as exc:  # degrade to CSV-only, never fail the run
        return f"plotting skipped: {exc}"


def plot_sweep(results: list[PointResult], spec: SweepSpec, path) -> str | None:
    """two_eta vs the inner axis, one line per outer-axis value, with the
    separability boundary marked at two_eta = 1."""
    try:
        plt = _backend()
        inner = spec.axes[-1]
        xs = list(inner.values)
        n_inner = len(xs)
        if len(spec.axes) == 1:
            groups = [("", results)]
        else:
            outer = spec.axes[0]
            unit = _CURVE_UNITS.get(outer.name, "")
            groups = []
            for i, ov in enumerate(outer.values):
                chunk = results[i * n_inner : (i + 1) * n_inner]
                label = f"{outer.name} = {ov:g}" + (f" {unit}" if unit else "")
                groups.append((label, chunk))
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        for label, chunk in groups:
            ys = [r.two_eta if r.two_eta is not None else math.nan for r in chunk]
            ax.plot(xs, ys, label=label or None)
        ax.axhline(1.0, color="0.4", linestyle="--", linewidth=0.8)
        ax.set_xlabel(_AXIS_LABELS.get(inner.name, inner.name))
        ax.set_ylabel("2 eta (separability boundary at 1)")
        if len(groups) > 1:
            ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(path, format="svg")
        plt.close(fig)
        return None
    except Exception as exc:
        return f"plotting skipped: {exc}"
