"""Normalization, trend statistics and result files.

Files are a pure function of their inputs: no timestamps, no host data, floats
written with ``repr`` so parsing a file back recovers every value exactly.
"""
import csv
from dataclasses import dataclass, field
import io
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import stats

from ._types import MetricValue
from .engine import PARAMETERS, MetricsSeries
from .exceptions import ArgumentError, EmissionError
from .network import LAYERS


CSV_HEADER = (
    "mode",
    "replicate",
    "step",
    "layer",
    "aspl",
    "tspc",
    "tne",
    "aspl_norm",
    "tspc_norm",
    "tne_norm",
)
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class NormalizedColumn:
    values: Tuple[Optional[float], ...]
    raw_min: Optional[float]
    raw_max: Optional[float]
    constant: bool


@dataclass
class NormalizedSeries:
    """Min-max normalized copy of every parameter of every layer of one series"""

    mode: str
    replicate: int
    columns: Dict[Tuple[str, str], NormalizedColumn] = field(default_factory=dict)

    def column(self, layer: str, parameter: str) -> NormalizedColumn:
        return self.columns[(layer, parameter)]


@dataclass(frozen=True)
class ChaosReport:
    parameter: str
    replicate: int
    onset: Optional[int]
    early_dispersion: float
    late_dispersion: float
    window: int

    def as_dict(self) -> Dict[str, Any]:
        return {
            "parameter": self.parameter,
            "replicate": self.replicate,
            "onset": self.onset,
            "early_dispersion": self.early_dispersion,
            "late_dispersion": self.late_dispersion,
            "window": self.window,
        }


@dataclass
class ScenarioReport:
    config: Dict[str, Any]
    series: List[MetricsSeries]
    normalized: List[NormalizedSeries]
    chaos: List[ChaosReport]

    @property
    def mode(self) -> str:
        return self.series[0].mode.value if self.series else str(self.config.get("mode"))


def normalize_values(values: Sequence[MetricValue]) -> NormalizedColumn:
    """Rescale to [0, 1] by min-max; absent values stay absent.

    A constant column maps to all zeros and is flagged.
    """
    present = [float(v) for v in values if v is not None]
    if not present:
        return NormalizedColumn(tuple(None for _ in values), None, None, True)

    low, high = min(present), max(present)
    if high == low:
        scaled = tuple(None if v is None else 0.0 for v in values)
        return NormalizedColumn(scaled, low, high, True)

    span = high - low
    scaled = tuple(None if v is None else (float(v) - low) / span for v in values)
    return NormalizedColumn(scaled, low, high, False)


def normalize(series: MetricsSeries) -> NormalizedSeries:
    if not series.records:
        raise ArgumentError("cannot normalize an empty series")
    normalized = NormalizedSeries(mode=series.mode.value, replicate=series.replicate)
    for layer in LAYERS:
        for parameter in PARAMETERS:
            normalized.columns[(layer, parameter)] = normalize_values(
                series.values(layer, parameter)
            )
    return normalized


def _first_difference_std(values: np.ndarray) -> float:
    if len(values) < 2:
        return 0.0
    return float(np.std(np.diff(values)))


def chaos_index(
    values: Sequence[float],
    window: int,
    *,
    factor: float = 2.0,
    steps: Optional[Sequence[int]] = None,
    parameter: str = "",
    replicate: int = 0,
) -> ChaosReport:
    """Detect where a series turns erratic.

    Dispersion is the standard deviation of first differences inside a
    window. The onset is the first step whose trailing window is more than
    `factor` times as dispersed as the initial window, provided that holds for
    at least half a window of consecutive steps.

    Args:
        values (Sequence[float]):
            The series, ordered by step.
        window (int):
            Number of first differences per window, at least 3.
        factor (float):
            Dispersion ratio treated as chaotic.
        steps (Sequence[int]):
            Step labels of `values`; positions are used when omitted.

    Returns:
        :class:`ChaosReport`
    """
    if window < 3:
        raise ArgumentError(f"window must be at least 3, got {window}")
    if len(values) < 2 * window:
        raise ArgumentError(f"need at least {2 * window} values, got {len(values)}")
    if steps is not None and len(steps) != len(values):
        raise ArgumentError("steps and values differ in length")

    series = np.asarray(values, dtype=float)
    diffs = np.diff(series)
    baseline = float(np.std(diffs[:window]))
    late = float(np.std(diffs[-window:]))
    # relative floor keeps the detector invariant under v -> a*v + b
    floor = 1e-9 * float(np.ptp(series))
    sustain = math.ceil(window / 2)

    onset = None
    run_start, run_length = None, 0
    for end in range(window - 1, len(diffs)):
        rolling = float(np.std(diffs[end - window + 1:end + 1]))
        if rolling > factor * baseline and rolling > floor:
            if run_length == 0:
                run_start = end
            run_length += 1
            if run_length >= sustain:
                position = run_start + 1
                onset = steps[position] if steps is not None else position
                break
        else:
            run_length = 0

    return ChaosReport(
        parameter=parameter,
        replicate=replicate,
        onset=onset,
        early_dispersion=baseline,
        late_dispersion=late,
        window=window,
    )


def dispersion_ratio(values: Sequence[MetricValue]) -> float:
    """First-difference dispersion of the last third over that of the first third"""
    present = np.asarray([float(v) for v in values if v is not None])
    third = len(present) // 3
    if third < 2:
        raise ArgumentError(f"need at least 6 values, got {len(present)}")
    early = _first_difference_std(present[:third])
    late = _first_difference_std(present[-third:])
    if early == 0:
        return math.inf if late > 0 else 1.0
    return late / early


def spearman_trend(values: Sequence[MetricValue], steps: Optional[Sequence[int]] = None) -> float:
    """Spearman rank correlation of a series against its step index"""
    if steps is None:
        steps = list(range(len(values)))
    pairs = [(s, float(v)) for s, v in zip(steps, values) if v is not None]
    if len(pairs) < 2:
        raise ArgumentError("need at least two values for a trend")
    xs, ys = zip(*pairs)
    result = stats.spearmanr(xs, ys)
    return float(result[0])


def chaos_reports(series: MetricsSeries, window: int, factor: float) -> List[ChaosReport]:
    """Run the chaos detector on every parameter with enough values"""
    reports = []
    for layer in LAYERS:
        for parameter in PARAMETERS:
            pairs = [
                (step, value)
                for step, value in zip(series.steps, series.values(layer, parameter))
                if value is not None
            ]
            if len(pairs) < 2 * window:
                continue
            steps, values = zip(*pairs)
            reports.append(
                chaos_index(
                    [float(v) for v in values],
                    window,
                    factor=factor,
                    steps=steps,
                    parameter=f"{layer}.{parameter}",
                    replicate=series.replicate,
                )
            )
    return reports


def build_report(
    series: Sequence[MetricsSeries], config: Dict[str, Any], window: int, factor: float
) -> ScenarioReport:
    ordered = sorted(series, key=lambda s: s.replicate)
    present = [s for s in ordered if s.records]
    return ScenarioReport(
        config=config,
        series=ordered,
        normalized=[normalize(s) for s in present],
        chaos=[report for s in present for report in chaos_reports(s, window, factor)],
    )


def _cell(value: MetricValue) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def _rows(report: ScenarioReport) -> List[List[str]]:
    normalized = {n.replicate: n for n in report.normalized}
    rows = []
    for series in report.series:
        norm = normalized.get(series.replicate)
        for index, record in enumerate(series.records):
            for layer in LAYERS:
                metrics = record.layer(layer)
                row = [series.mode.value, str(series.replicate), str(record.step), layer]
                row += [_cell(metrics.get(p)) for p in PARAMETERS]
                row += [
                    _cell(norm.column(layer, p).values[index]) if norm else ""
                    for p in PARAMETERS
                ]
                rows.append(row)
    return rows


def to_csv(reports: Sequence[ScenarioReport]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for report in reports:
        writer.writerows(_rows(report))
    return buffer.getvalue()


def _report_json(report: ScenarioReport) -> Dict[str, Any]:
    normalized = {n.replicate: n for n in report.normalized}
    series_out = []
    for series in report.series:
        norm = normalized.get(series.replicate)
        records = []
        for index, record in enumerate(series.records):
            entry = record.as_dict()
            if norm is not None:
                for layer in LAYERS:
                    for p in PARAMETERS:
                        entry["layers"][layer][f"{p}_norm"] = norm.column(layer, p).values[index]
            records.append(entry)
        series_out.append(
            {
                "mode": series.mode.value,
                "replicate": series.replicate,
                "truncated": series.truncated,
                "averaged": series.averaged,
                "records": records,
            }
        )

    normalization = [
        {
            "replicate": norm.replicate,
            "layer": layer,
            "parameter": p,
            "raw_min": column.raw_min,
            "raw_max": column.raw_max,
            "constant": column.constant,
        }
        for norm in report.normalized
        for (layer, p), column in sorted(norm.columns.items())
    ]
    return {
        "config": report.config,
        "series": series_out,
        "normalization": normalization,
        "chaos": [c.as_dict() for c in report.chaos],
    }


def to_json(reports: Sequence[ScenarioReport]) -> str:
    if len(reports) == 1:
        body: Any = _report_json(reports[0])
    else:
        body = {"scenarios": [_report_json(r) for r in reports]}
    return json.dumps(body, sort_keys=True, indent=2, allow_nan=False) + "\n"


def emit(
    reports: Union[ScenarioReport, Sequence[ScenarioReport]],
    fmt: str,
    path: Union[str, Path],
) -> Path:
    """Write one or more scenario reports as CSV or JSON.

    Args:
        reports (ScenarioReport | Sequence[ScenarioReport]):
            What to write. Several reports share one file, in the given order.
        fmt (str):
            Either "csv" or "json".
        path (str | Path):
            Destination file. Missing parent directories are created.

    Returns:
        Path: The written file.

    Raises:
        EmissionError: the file could not be written.
    """
    if isinstance(reports, ScenarioReport):
        reports = [reports]
    if fmt not in FORMATS:
        raise ArgumentError(f"unknown output format {fmt!r}")

    body = to_csv(reports) if fmt == "csv" else to_json(reports)
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(body)
    except OSError as _err:
        raise EmissionError(f"unable to write results ({_err.strerror})", str(path)) from _err
    return path


def _number(text: str) -> MetricValue:
    if text == "":
        return None
    try:
        return int(text)
    except ValueError:
        return float(text)


def read_csv(path: Union[str, Path]) -> List[Dict[str, Any]]:
    """Parse an emitted CSV file back into typed rows"""
    try:
        with open(path, encoding="utf-8", newline="") as handle:
            rows = list(csv.DictReader(handle))
    except OSError as _err:
        raise EmissionError(f"unable to read results ({_err.strerror})", str(path)) from _err

    parsed = []
    for row in rows:
        entry: Dict[str, Any] = {
            "mode": row["mode"],
            "replicate": int(row["replicate"]),
            "step": int(row["step"]),
            "layer": row["layer"],
        }
        for column in CSV_HEADER[4:]:
            entry[column] = _number(row[column])
        parsed.append(entry)
    return parsed


def summarize(report: ScenarioReport) -> str:
    """One line: steps completed, truncation, L2 ASPL chaos onset"""
    cfg = report.config
    done = min((len(s) for s in report.series), default=0)
    truncated = [s.replicate for s in report.series if s.truncated]
    line = f"{report.mode}: {done}/{cfg.get('failures')} steps"
    line += f", {len(report.series)} replicate(s)"
    line += f", truncated replicates {truncated}" if truncated else ", no truncation"

    onsets = [c for c in report.chaos if c.parameter == "L2.aspl" and c.onset is not None]
    if onsets:
        first = onsets[0]
        line += f", L2 ASPL chaos onset at step {first.onset} (replicate {first.replicate})"
    else:
        line += ", no L2 ASPL chaos onset"
    return line
