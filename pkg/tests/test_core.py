import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cavent.constants import EV, HBAR, KB, ev_to_omega, ghz_to_omega, omega_to_ev
from cavent.core import ModeSpec, drive_amplitude, thermal_occupation

import oracles

TWO_PI = 2.0 * math.pi
W_MW = TWO_PI * 1.0e10


def test_unit_conversions_roundtrip():
    assert ev_to_omega(1.2) == pytest.approx(1823120938571412.5, rel=1e-15)
    assert ev_to_omega(1.1) == pytest.approx(1671194193690461.8, rel=1e-15)
    assert omega_to_ev(ev_to_omega(0.93)) == pytest.approx(0.93, rel=1e-14)
    assert ghz_to_omega(10.0) == pytest.approx(W_MW, rel=1e-15)


@pytest.mark.parametrize("bad", [0.0, -1.0])
def test_unit_conversions_reject_nonpositive(bad):
    with pytest.raises(ValueError):
        ev_to_omega(bad)
    with pytest.raises(ValueError):
        omega_to_ev(bad)


# frozen against the plain 1/(exp(x)-1) evaluation in oracles.py
MW_OCCUPATIONS = {
    80.0: 166.19345300961123,
    180.0: 374.55936663685264,
    250.0: 520.4156383771226,
    273.0: 568.33984891244711,
    298.0: 620.43138446265266,
    310.0: 645.43532223081797,
}


@pytest.mark.parametrize("temp,expected", sorted(MW_OCCUPATIONS.items()))
def test_thermal_occupation_frozen_values(temp, expected):
    assert thermal_occupation(W_MW, temp) == pytest.approx(expected, rel=1e-12)


def test_thermal_occupation_zero_temperature_exact():
    assert thermal_occupation(W_MW, 0.0) == 0.0
    assert thermal_occupation(ev_to_omega(1.1), 0.0) == 0.0


def test_thermal_occupation_optical_negligible():
    # 1.1 eV photons at room temperature: occupation far below any tolerance
    assert thermal_occupation(ev_to_omega(1.1), 298.0) < 1e-18


def test_thermal_occupation_underflow_guard():
    assert thermal_occupation(ev_to_omega(1.1), 0.05) == 0.0


def test_thermal_occupation_rejects_negative_temperature():
    with pytest.raises(ValueError):
        thermal_occupation(W_MW, -1.0)


@given(
    temp=st.floats(min_value=1.0, max_value=400.0),
    omega=st.floats(min_value=1e9, max_value=1e12),
)
@settings(max_examples=60, deadline=None)
def test_thermal_occupation_matches_plain_form(temp, omega):
    # the plain exp(x)-1 oracle loses ~eps/x relative accuracy for small x,
    # so the comparison tolerance must carry that conditioning
    x = HBAR * omega / (KB * temp)
    assert thermal_occupation(omega, temp) == pytest.approx(
        oracles.bose(omega, temp), rel=max(1e-12, 4.0 * 2.3e-16 / x)
    )


@given(omega=st.floats(min_value=1e9, max_value=1e12))
@settings(max_examples=40, deadline=None)
def test_thermal_occupation_monotone_in_temperature(omega):
    temps = [10.0, 50.0, 120.0, 298.0, 350.0]
    values = [thermal_occupation(omega, t) for t in temps]
    assert all(a < b for a, b in zip(values, values[1:]))


@given(temp=st.floats(min_value=200.0, max_value=400.0))
@settings(max_examples=40, deadline=None)
def test_thermal_occupation_high_temperature_expansion(temp):
    # kT >> hbar*w regime: N = kT/(hbar w) - 1/2 + O(hbar w / kT)
    n = thermal_occupation(W_MW, temp)
    approx = KB * temp / (HBAR * W_MW) - 0.5
    assert abs(n - approx) / n < 1e-4


LEDGER_KAPPA = TWO_PI * 1.0e6


def test_drive_amplitude_frozen_values():
    oc = ModeSpec(ev_to_omega(1.1), LEDGER_KAPPA, ev_to_omega(1.2), 0.010)
    mw = ModeSpec(W_MW, LEDGER_KAPPA, W_MW, 0.010)
    assert drive_amplitude(oc) == pytest.approx(808461070092.22485, rel=1e-12)
    assert drive_amplitude(mw) == pytest.approx(137713627272520.94, rel=1e-12)


def test_drive_amplitude_scales_as_sqrt_power():
    base = ModeSpec(W_MW, LEDGER_KAPPA, W_MW, 0.010)
    quad = ModeSpec(W_MW, LEDGER_KAPPA, W_MW, 0.040)
    assert drive_amplitude(quad) == pytest.approx(2.0 * drive_amplitude(base), rel=1e-14)


def test_drive_amplitude_zero_power():
    assert drive_amplitude(ModeSpec(W_MW, LEDGER_KAPPA, W_MW, 0.0)) == 0.0


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(omega=0.0, kappa=1.0, pump_omega=1.0, pump_power=1.0),
        dict(omega=1.0, kappa=0.0, pump_omega=1.0, pump_power=1.0),
        dict(omega=1.0, kappa=1.0, pump_omega=-2.0, pump_power=1.0),
        dict(omega=1.0, kappa=1.0, pump_omega=1.0, pump_power=-0.1),
    ],
)
def test_mode_spec_validation(kwargs):
    with pytest.raises(ValueError):
        ModeSpec(**kwargs)


def test_constants_are_si():
    assert EV == pytest.approx(1.602176634e-19, rel=0.0)
    assert KB == pytest.approx(1.380649e-23, rel=0.0)
