"""Figure presets: one command per published sweep.

Each preset is a plain config overlay (known keys only), so preset runs and
hand-written configs go through exactly the same resolution path. The outer
axis is the curve family (one plotted line per value), the inner axis is
the x-axis of the plot.
"""

from __future__ import annotations

DETUNING_AXIS = {"name": "delta_w_over_w", "start": -1.0, "stop": 1.0, "points": 201}

PRESETS: dict[str, dict] = {
    # photocurrent spectrum, one curve per operating temperature
    "fig2": {
        "spectrum": {
            "energy_min_ev": 0.8,
            "energy_max_ev": 1.6,
            "energy_points": 161,
            "temperatures": [80.0, 180.0, 250.0, 273.0, 298.0, 310.0],
        },
    },
    # two_eta vs MW detuning, one curve per temperature
    "fig3": {
        "point": {"delta_c_over_w": 0.0},
        "sweep": {
            "axes": [
                {"name": "T", "values": [80.0, 180.0, 250.0, 273.0, 298.0, 310.0]},
                dict(DETUNING_AXIS),
            ],
        },
    },
    # two_eta vs MW detuning, one curve per OC detuning, room temperature
    "fig4": {
        "point": {"temperature": 298.0},
        "sweep": {
            "axes": [
                {"name": "delta_c_over_w", "values": [0.0, 0.1, -0.5, 0.7]},
                dict(DETUNING_AXIS),
            ],
        },
    },
    # two_eta vs MW detuning, one curve per optical pump power
    "fig5": {
        "point": {"temperature": 298.0, "delta_c_over_w": 0.0},
        "sweep": {
            "axes": [
                {"name": "P_c", "values": [0.010, 0.100, 1.000]},
                dict(DETUNING_AXIS),
            ],
        },
    },
}

SPECTRUM_PRESETS = ("fig2",)
SWEEP_PRESETS = ("fig3", "fig4", "fig5")


def preset_overlay(name: str) -> dict:
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; known: {sorted(PRESETS)}")
    import copy

    return copy.deepcopy(PRESETS[name])
