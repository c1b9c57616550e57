import json

import pytest

from mlcn_sim.exceptions import ArgumentError, EmissionError
from mlcn_sim.engine import MetricsSeries
from mlcn_sim.reporting import (
    CSV_HEADER,
    build_report,
    chaos_index,
    dispersion_ratio,
    emit,
    normalize,
    normalize_values,
    read_csv,
    spearman_trend,
    summarize,
    to_json,
)

from .helpers import get_series


def jumpy(length: int = 20) -> list:
    """A unit ramp that turns into +-10 oscillation at position 10"""
    ramp = list(range(10))
    return ramp + [20 if i % 2 == 0 else 0 for i in range(length - 10)]


def report(steps: int = 3, replicates: int = 1):
    series = [get_series(steps, replicate=r) for r in range(replicates)]
    return build_report(series, series[0].config, 5, 2.0)


def test_normalize_values():
    column = normalize_values([2, 4, 6])
    assert column.values == (0.0, 0.5, 1.0)
    assert (column.raw_min, column.raw_max, column.constant) == (2.0, 6.0, False)

    flat = normalize_values([5, 5, 5])
    assert flat.values == (0.0, 0.0, 0.0)
    assert flat.constant

    sparse = normalize_values([None, 1.0, 3.0])
    assert sparse.values == (None, 0.0, 1.0)
    assert normalize_values([None, None]).values == (None, None)


def test_normalize_idempotent():
    once = normalize_values([3.0, 9.0, 4.5, 7.0])
    assert normalize_values(once.values).values == once.values


def test_normalize_series():
    normalized = normalize(get_series(4))
    tne = normalized.column("L1", "tne")
    assert tne.values[0] == 1.0
    assert tne.values[-1] == 0.0
    assert normalized.column("L3", "aspl").constant

    with pytest.raises(ArgumentError):
        normalize(MetricsSeries(get_series().mode, {}, 0))


def test_chaos_index_linear():
    assert chaos_index([float(v) for v in range(20)], 5).onset is None
    assert chaos_index([4.0] * 20, 5).onset is None


def test_chaos_index_onset():
    values = jumpy()
    result = chaos_index(values, 5, parameter="L2.aspl")
    assert result.onset == 10
    assert result.early_dispersion == 0.0
    assert result.late_dispersion > 0
    assert result.parameter == "L2.aspl"

    steps = list(range(1, 21))
    assert chaos_index(values, 5, steps=steps).onset == 11


def test_chaos_index_affine_invariant():
    values = jumpy()
    scaled = [0.01 * v - 3.0 for v in values]
    assert chaos_index(scaled, 5).onset == chaos_index(values, 5).onset
    normalized = normalize_values(values).values
    assert chaos_index(normalized, 5).onset == chaos_index(values, 5).onset


def test_chaos_index_errors():
    with pytest.raises(ArgumentError):
        chaos_index([1.0] * 9, 5)
    with pytest.raises(ArgumentError):
        chaos_index([1.0] * 20, 2)
    with pytest.raises(ArgumentError):
        chaos_index([1.0] * 20, 5, steps=[1, 2])


def test_dispersion_ratio():
    assert dispersion_ratio(jumpy(30)) == float("inf")
    assert dispersion_ratio(list(range(12))) == 1.0
    with pytest.raises(ArgumentError):
        dispersion_ratio([1, 2, 3, 4, 5])


def test_spearman_trend():
    assert spearman_trend([9, 7, 4, 2, 1]) == pytest.approx(-1.0)
    assert spearman_trend([1, None, 3, 8], steps=[1, 2, 3, 4]) == pytest.approx(1.0)
    with pytest.raises(ArgumentError):
        spearman_trend([1.0])


def test_emit_csv(tmp_path):
    path = emit(report(), "csv", tmp_path / "out" / "debc.csv")
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 1 + 9
    assert lines[1].startswith("debc,0,1,L1,")
    # absent L3 path metrics stay empty
    assert lines[3].split(",")[4:6] == ["", ""]


def test_emit_csv_round_trip(tmp_path):
    series = get_series(3)
    path = emit(report(), "csv", tmp_path / "debc.csv")
    rows = read_csv(path)
    assert [(r["replicate"], r["step"], r["layer"]) for r in rows][:3] == [
        (0, 1, "L1"),
        (0, 1, "L2"),
        (0, 1, "L3"),
    ]
    for row in rows:
        metrics = series.records[row["step"] - 1].layer(row["layer"])
        assert (row["aspl"], row["tspc"], row["tne"]) == (metrics.aspl, metrics.tspc, metrics.tne)
        for column in ("aspl_norm", "tspc_norm", "tne_norm"):
            assert row[column] is None or 0.0 <= row[column] <= 1.0


def test_emit_deterministic(tmp_path):
    for fmt in ("csv", "json"):
        first = emit(report(replicates=2), fmt, tmp_path / f"a.{fmt}").read_bytes()
        second = emit(report(replicates=2), fmt, tmp_path / f"b.{fmt}").read_bytes()
        assert first == second


def test_emit_json(tmp_path):
    path = emit(report(steps=12), "json", tmp_path / "debc.json")
    body = json.loads(path.read_text(encoding="utf-8"))
    assert body["config"]["failures"] == 12
    assert body["config"]["mlcn"]["n"] == 100
    records = body["series"][0]["records"]
    assert [r["step"] for r in records] == list(range(1, 13))
    assert records[0]["layers"]["L3"]["aspl"] is None
    assert records[0]["layers"]["L1"]["tne_norm"] == 1.0
    assert {c["parameter"] for c in body["chaos"]} >= {"L1.tne", "L2.aspl"}

    both = json.loads(to_json([report(), report()]))
    assert len(both["scenarios"]) == 2


def test_emit_errors(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x", encoding="utf-8")
    with pytest.raises(EmissionError) as exc_info:
        emit(report(), "csv", blocker / "out.csv")
    assert exc_info.value.path == str(blocker / "out.csv")

    with pytest.raises(ArgumentError):
        emit(report(), "xml", tmp_path / "out.xml")


def test_summarize():
    line = summarize(report())
    assert line.startswith("debc: 3/3 steps, 1 replicate(s), no truncation")
