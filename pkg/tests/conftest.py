from __future__ import annotations

import math

import pytest

from cavent.config import default_config

# (number, label, passed, detail) rows filled in by test_acceptance.py
ACCEPTANCE_RESULTS: list[tuple[int, str, bool, str]] = []


@pytest.fixture
def record_criterion():
    def _record(number: int, label: str, passed: bool, detail: str) -> None:
        ACCEPTANCE_RESULTS.append((number, label, passed, detail))

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number, label, passed, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d} [{status}] {label}: {detail}")


@pytest.fixture
def ledger_cfg():
    """Default config with the coupling scale pinned explicitly so unit
    tests never depend on the shipped calibration record."""
    cfg = default_config()
    cfg["coupling"]["g_scale"] = 1e-8
    return cfg


TWO_PI = 2.0 * math.pi
