"""Calibration of the default coupling prefactor.

The coupling prefactor g_scale absorbs every microscopic constant the
transition-rate model does not pin down. Calibration scans a log grid of
candidates and demands two things at the pinned defaults (10 mW pumps,
1 MHz linewidths, 10 GHz microwave mode):

  (a) the zero-detuning point is entangled (two_eta < 1 - margin) at
      80, 180, 250, 273 and 298 K, with clean conditioning, and
  (b) two_eta at |delta_w| = 0.5 omega_w is non-decreasing in temperature.

When no candidate satisfies both, calibration fails loudly but still
records the nearest miss: candidates are ranked lexicographically by
(number of failed subclauses, summed violation), so the record always
pins down a reproducible default and by how much it falls short.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, replace

import numpy as np

from .sweep import (
    STATUS_OK,
    PointSpec,
    Tolerances,
    apply_axis,
    run_point,
)

DEFAULT_GRID = tuple(float(x) for x in np.logspace(-8.0, 4.0, 49))
DEFAULT_TEMPERATURES = (80.0, 180.0, 250.0, 273.0, 298.0)
DEFAULT_MARGIN = 1e-6
DEFAULT_WING = 0.5
# penalty charged per subclause that cannot even be evaluated (unstable,
# non-convergent or ill-conditioned point); dominates any finite miss
UNEVALUABLE_PENALTY = 1.0

STATUS_CALIBRATED = "calibrated"
STATUS_NEAREST_MISS = "failed-nearest-miss"


class CalibrationFailure(Exception):
    """No candidate met both clauses; .record holds the nearest miss."""

    def __init__(self, message: str, record: "CalibrationRecord"):
        super().__init__(message)
        self.record = record


@dataclass(frozen=True)
class CandidateScore:
    q_scale: float
    failed_subclauses: int
    violation_sum: float
    center_two_eta: tuple[float | None, ...]

    def key(self) -> tuple:
        # larger q_scale wins ties: it is the physically bolder default
        return (self.failed_subclauses, self.violation_sum, -self.q_scale)


@dataclass(frozen=True)
class CalibrationRecord:
    status: str
    q_scale: float
    failed_subclauses: int
    violation_sum: float
    margin: float
    wing: float
    grid_lo: float
    grid_hi: float
    grid_points: int
    temperatures: tuple[float, ...]
    center_two_eta: tuple[float | None, ...]

    @property
    def succeeded(self) -> bool:
        return self.status == STATUS_CALIBRATED


def _score_candidate(
    base: PointSpec,
    q_scale: float,
    temperatures: tuple[float, ...],
    margin: float,
    wing: float,
    tol: Tolerances,
) -> CandidateScore:
    point = apply_axis(base, "q_scale", q_scale)
    point = replace(point, delta_c=0.0, delta_w=0.0)
    failures = 0
    violation = 0.0

    centers: list[float | None] = []
    for t in temperatures:
        r = run_point(apply_axis(point, "T", t), tol)
        if r.status != STATUS_OK or r.two_eta is None:
            failures += 1
            violation += UNEVALUABLE_PENALTY
            centers.append(None)
            continue
        centers.append(r.two_eta)
        miss = r.two_eta - (1.0 - margin)
        if miss >= 0.0:
            failures += 1
            violation += miss

    for sign in (-1.0, 1.0):
        wing_vals: list[float | None] = []
        for t in temperatures:
            p = apply_axis(point, "delta_w_over_w", sign * wing)
            r = run_point(apply_axis(p, "T", t), tol)
            wing_vals.append(r.two_eta if r.status == STATUS_OK else None)
        for lo, hi in zip(wing_vals, wing_vals[1:]):
            if lo is None or hi is None:
                failures += 1
                violation += UNEVALUABLE_PENALTY
            elif hi < lo:
                failures += 1
                violation += lo - hi

    return CandidateScore(
        q_scale=q_scale,
        failed_subclauses=failures,
        violation_sum=violation,
        center_two_eta=tuple(centers),
    )


def calibrate_defaults(
    base: PointSpec,
    grid: tuple[float, ...] = DEFAULT_GRID,
    temperatures: tuple[float, ...] = DEFAULT_TEMPERATURES,
    margin: float = DEFAULT_MARGIN,
    wing: float = DEFAULT_WING,
    tol: Tolerances = Tolerances(),
) -> CalibrationRecord:
    """Scan the candidate grid; return a record on success, raise
    CalibrationFailure (record attached) when every candidate misses."""
    if len(grid) == 0:
        raise ValueError("empty calibration grid")
    scores = [
        _score_candidate(base, q, temperatures, margin, wing, tol) for q in grid
    ]
    best = min(scores, key=CandidateScore.key)
    status = STATUS_CALIBRATED if best.failed_subclauses == 0 else STATUS_NEAREST_MISS
    record = CalibrationRecord(
        status=status,
        q_scale=best.q_scale,
        failed_subclauses=best.failed_subclauses,
        violation_sum=best.violation_sum,
        margin=margin,
        wing=wing,
        grid_lo=min(grid),
        grid_hi=max(grid),
        grid_points=len(grid),
        temperatures=temperatures,
        center_two_eta=best.center_two_eta,
    )
    if not record.succeeded:
        raise CalibrationFailure(
            "no candidate g_scale met the entanglement clauses; nearest miss "
            f"q_scale={best.q_scale:.6g} fails {best.failed_subclauses} subclauses "
            f"(summed violation {best.violation_sum:.6g})",
            record,
        )
    return record


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def render_record(record: CalibrationRecord) -> str:
    """Key-value text form, terminated by a sha256 line over the body."""
    lines = [
        "cavent-calibration: 1",
        f"status: {record.status}",
        f"q_scale: {_fmt(record.q_scale)}",
        f"failed_subclauses: {record.failed_subclauses}",
        f"violation_sum: {_fmt(record.violation_sum)}",
        f"margin: {_fmt(record.margin)}",
        f"wing: {_fmt(record.wing)}",
        f"grid_lo: {_fmt(record.grid_lo)}",
        f"grid_hi: {_fmt(record.grid_hi)}",
        f"grid_points: {record.grid_points}",
        "temperatures: " + ",".join(_fmt(t) for t in record.temperatures),
        "center_two_eta: " + ",".join(_fmt(v) for v in record.center_two_eta),
    ]
    body = "\n".join(lines) + "\n"
    digest = hashlib.sha256(body.encode("utf-8")).hexdigest()
    return body + f"content_hash: sha256:{digest}\n"


def parse_record(text: str) -> CalibrationRecord:
    """Inverse of render_record; raises ValueError on tampered content."""
    lines = text.splitlines()
    if not lines or not lines[-1].startswith("content_hash: sha256:"):
        raise ValueError("calibration record missing content_hash line")
    body = "\n".join(lines[:-1]) + "\n"
    expected = lines[-1].split("sha256:", 1)[1].strip()
    actual = hashlib.sha256(body.encode("utf-8")).hexdigest()
    if actual != expected:
        raise ValueError("calibration record hash mismatch")
    fields: dict[str, str] = {}
    for line in lines[:-1]:
        key, _, value = line.partition(": ")
        fields[key] = value
    if fields.get("cavent-calibration") != "1":
        raise ValueError("unrecognized calibration record version")

    def _floats(key: str) -> tuple[float | None, ...]:
        raw = fields[key]
        if raw == "":
            return ()
        return tuple(None if tok == "" else float(tok) for tok in raw.split(","))

    return CalibrationRecord(
        status=fields["status"],
        q_scale=float(fields["q_scale"]),
        failed_subclauses=int(fields["failed_subclauses"]),
        violation_sum=float(fields["violation_sum"]),
        margin=float(fields["margin"]),
        wing=float(fields["wing"]),
        grid_lo=float(fields["grid_lo"]),
        grid_hi=float(fields["grid_hi"]),
        grid_points=int(fields["grid_points"]),
        temperatures=tuple(float(t) for t in fields["temperatures"].split(",")),
        center_two_eta=_floats("center_two_eta"),
    )


def load_shipped_record() -> CalibrationRecord:
    """The calibration record frozen into the package at build time."""
    from importlib import resources

    text = resources.files("cavent").joinpath("data/calibration.txt").read_text("utf-8")
    return parse_record(text)


def shipped_q_scale() -> float:
    return load_shipped_record().q_scale
