import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cavent.constants import EV, HBAR
from cavent.photodiode import (
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
    transition_rate_raw,
)

MAT = DetectorMaterial()
GAMMA_L = 0.05 * EV / HBAR
CENTER = 1.1 * EV / HBAR


def test_lorentzian_peak_value():
    # unit-area Lorentzian peaks at 2/(pi*gamma)
    assert lorentzian(CENTER, CENTER, GAMMA_L) == pytest.approx(
        8.3806149189391645e-15, rel=1e-12
    )
    assert lorentzian(CENTER, CENTER, GAMMA_L) == pytest.approx(
        2.0 / (math.pi * GAMMA_L), rel=1e-14
    )


def test_lorentzian_half_width():
    # value at center +- gamma/2 is half the peak
    half = lorentzian(CENTER + GAMMA_L / 2.0, CENTER, GAMMA_L)
    assert half == pytest.approx(0.5 * lorentzian(CENTER, CENTER, GAMMA_L), rel=1e-12)


def test_lorentzian_unit_area():
    # analytic integral over [c-W, c+W] is (2/pi) atan(2W/gamma)
    w = 400.0 * GAMMA_L
    analytic = (2.0 / math.pi) * math.atan(2.0 * w / GAMMA_L)
    n = 200001
    xs = [CENTER - w + 2.0 * w * k / (n - 1) for k in range(n)]
    ys = [lorentzian(x, CENTER, GAMMA_L) for x in xs]
    h = xs[1] - xs[0]
    trapz = h * (sum(ys) - 0.5 * (ys[0] + ys[-1]))
    assert trapz == pytest.approx(analytic, rel=1e-6)
    assert analytic == pytest.approx(1.0, abs=1e-2)


@given(delta=st.floats(min_value=-30.0, max_value=30.0))
@settings(max_examples=50, deadline=None)
def test_lorentzian_symmetric(delta):
    d = delta * GAMMA_L
    assert lorentzian(CENTER + d, CENTER, GAMMA_L) == pytest.approx(
        lorentzian(CENTER - d, CENTER, GAMMA_L), rel=1e-12
    )


def test_joint_dos_zero_at_and_below_gap():
    assert joint_dos(MAT.e_gap, MAT) == 0.0
    assert joint_dos(0.5 * MAT.e_gap, MAT) == 0.0


def test_joint_dos_sqrt_scaling():
    # g(E_gap + 4x) / g(E_gap + x) = 2 exactly in the sqrt model
    x = 0.01 * EV
    assert joint_dos(MAT.e_gap + 4.0 * x, MAT) == pytest.approx(
        2.0 * joint_dos(MAT.e_gap + x, MAT), rel=1e-12
    )


def test_joint_dos_mass_scaling():
    heavy = DetectorMaterial(mu_eff=4.0 * MAT.mu_eff)
    e = MAT.e_gap + 0.05 * EV
    assert joint_dos(e, heavy) == pytest.approx(8.0 * joint_dos(e, MAT), rel=1e-12)


def test_temperature_factor_limits():
    model = TemperatureModel()
    assert temperature_factor(0.0, model) == 1.0
    assert temperature_factor(80.0, model) == pytest.approx(0.99999999748490409, rel=1e-12)
    assert temperature_factor(298.0, model) == pytest.approx(0.19433678067582799, rel=1e-12)
    assert temperature_factor(310.0, model) == pytest.approx(0.15141388959821492, rel=1e-12)


def test_temperature_factor_midpoint():
    # f = 1/2 exactly where C exp(-E_act/kT) = 1, i.e. T = E_act/(kB ln C)
    model = TemperatureModel()
    t_half = 251.9889092667745
    assert temperature_factor(t_half, model) == pytest.approx(0.5, rel=1e-10)


@given(t=st.floats(min_value=150.0, max_value=400.0))
@settings(max_examples=50, deadline=None)
def test_temperature_factor_bounded_and_decreasing(t):
    # above ~150 K the quench term is resolvable and the decrease is strict
    model = TemperatureModel()
    f1 = temperature_factor(t, model)
    f2 = temperature_factor(t + 10.0, model)
    assert 0.0 < f2 < f1 <= 1.0


def test_temperature_factor_saturates_cold():
    # activation term underflows: factor pins to exactly 1
    model = TemperatureModel()
    assert temperature_factor(1.0, model) == 1.0
    assert temperature_factor(50.0, model) == 1.0


def test_temperature_factor_disabled_prefactor():
    model = TemperatureModel(prefactor=0.0)
    assert temperature_factor(298.0, model) == 1.0


def test_rate_below_gap_is_zero():
    drive = OpticalDrive(omega_c=0.9 * EV / HBAR, a0_sq=1.0)
    assert transition_rate_raw(drive, MAT, 80.0) == 0.0
    assert photocurrent(drive, MAT, 80.0, 1e10) == 0.0


def test_rate_linear_in_intensity_bitwise():
    slope = rate_per_intensity(1.2 * EV / HBAR, MAT, 80.0)
    for a0_sq in (0.01, 0.1, 1.0, 7.25):
        drive = OpticalDrive(omega_c=1.2 * EV / HBAR, a0_sq=a0_sq)
        assert transition_rate_raw(drive, MAT, 80.0) == slope * a0_sq


def test_photocurrent_linear_in_intensity_bitwise():
    slope = photocurrent_per_intensity(1.2 * EV / HBAR, MAT, 298.0, 1e10)
    for a0_sq in (0.01, 0.1, 1.0):
        drive = OpticalDrive(omega_c=1.2 * EV / HBAR, a0_sq=a0_sq)
        assert photocurrent(drive, MAT, 298.0, 1e10) == slope * a0_sq


def test_rate_linear_in_momentum_matrix_element():
    drive = OpticalDrive(omega_c=1.2 * EV / HBAR, a0_sq=1.0)
    doubled = DetectorMaterial(p_cv_sq=2.0 * MAT.p_cv_sq)
    assert transition_rate_raw(drive, doubled, 80.0) == pytest.approx(
        2.0 * transition_rate_raw(drive, MAT, 80.0), rel=1e-14
    )


def test_from_power_convention():
    drive = OpticalDrive.from_power(1.2 * EV / HBAR, 0.010, c_drive=1.0)
    assert drive.a0_sq == 0.010
    drive = OpticalDrive.from_power(1.2 * EV / HBAR, 0.010, c_drive=3.0)
    assert drive.a0_sq == pytest.approx(0.030, rel=1e-15)


def test_coupling_rate_reference_normalization():
    # at the reference point (1.2 eV, 80 K, unit intensity) q_oc equals g_scale
    drive = OpticalDrive(omega_c=1.2 * EV / HBAR, a0_sq=1.0)
    assert coupling_rate(drive, MAT, 80.0, 123.0) == pytest.approx(123.0, rel=1e-14)


def test_coupling_rate_temperature_ordering():
    drive = OpticalDrive(omega_c=1.2 * EV / HBAR, a0_sq=1.0)
    rates = [coupling_rate(drive, MAT, t, 1.0) for t in (80.0, 180.0, 250.0, 298.0)]
    assert all(a > b for a, b in zip(rates, rates[1:]))
    assert all(r > 0 for r in rates)


def test_coupling_rate_rejects_negative_scale():
    drive = OpticalDrive(omega_c=1.2 * EV / HBAR, a0_sq=1.0)
    with pytest.raises(ValueError):
        coupling_rate(drive, MAT, 80.0, -1.0)


def test_reference_rate_needs_gap_below_reference():
    wide_gap = DetectorMaterial(e_gap=1.3 * EV, line_center=1.3 * EV / HBAR)
    drive = OpticalDrive(omega_c=1.2 * EV / HBAR, a0_sq=1.0)
    with pytest.raises(ValueError):
        coupling_rate(drive, wide_gap, 80.0, 1.0)


def test_spectrum_peak_location_and_temperature_independence():
    energies = [0.8 + 0.005 * k for k in range(161)]
    temps = [80.0, 180.0, 250.0, 298.0]
    rows = photocurrent_spectrum(energies, temps, MAT, a0_sq=0.01, n_abs=1e10)
    argmax = {}
    for t in temps:
        curve = [(e, i) for e, tt, i in rows if tt == t]
        argmax[t] = max(range(len(curve)), key=lambda k: curve[k][1])
    assert len(set(argmax.values())) == 1
    peak_ev = energies[argmax[80.0]]
    # analytic maximum of sqrt(E - gap) * Lorentzian: gap + (hbar gamma/2)/sqrt(3)
    assert abs(peak_ev - 1.1144337567297407) <= 0.005


def test_spectrum_pointwise_temperature_ordering():
    energies = [0.8 + 0.01 * k for k in range(81)]
    temps = [80.0, 180.0, 250.0, 298.0]
    rows = photocurrent_spectrum(energies, temps, MAT, a0_sq=0.01, n_abs=1e10)
    by_t = {t: [i for _, tt, i in rows if tt == t] for t in temps}
    for hot, cold in zip(temps[1:], temps[:-1]):
        assert all(h <= c for h, c in zip(by_t[hot], by_t[cold]))


def test_spectrum_row_major_order():
    rows = photocurrent_spectrum([1.0, 1.2], [80.0, 298.0], MAT, a0_sq=1.0, n_abs=1e10)
    assert [(e, t) for e, t, _ in rows] == [(1.0, 80.0), (1.0, 298.0), (1.2, 80.0), (1.2, 298.0)]


def test_spectrum_rejects_empty_grids():
    with pytest.raises(ValueError):
        photocurrent_spectrum([], [80.0], MAT, 1.0, 1e10)
    with pytest.raises(ValueError):
        photocurrent_spectrum([1.2], [], MAT, 1.0, 1e10)
