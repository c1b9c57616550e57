from typing import List, Optional, Sequence

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from mlcn_sim.config import Mode, ScenarioConfig
from mlcn_sim.engine import LayerMetrics, MetricsRecord, MetricsSeries
from mlcn_sim.graph import Graph
from mlcn_sim.network import LayeredNetwork


PROPERTY_SETTINGS = settings(
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


def _pairs(n: int) -> List[tuple]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


@st.composite
def graphs(draw: st.DrawFn, min_n: int = 1, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = _pairs(n)
    if not pairs:
        return Graph(n)
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=2 * n))
    return Graph(n, edges)


@st.composite
def layered_networks(draw: st.DrawFn, max_n: int = 10) -> LayeredNetwork:
    n = draw(st.integers(min_value=2, max_value=max_n))
    dead = draw(st.sets(st.integers(min_value=0, max_value=n - 1), max_size=n // 3))
    pairs = [(u, v) for u, v in _pairs(n) if u not in dead and v not in dead]

    def _layer(max_size: int) -> Graph:
        if not pairs:
            return Graph(n, dead=dead)
        edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_size))
        return Graph(n, edges, dead=dead)

    return LayeredNetwork(_layer(n), _layer(2 * n), _layer(3 * n))


def record(
    step: int,
    aspl: Sequence[Optional[float]],
    tspc: Sequence[Optional[int]],
    tne: Sequence[int],
) -> MetricsRecord:
    layers = tuple(LayerMetrics(a, s, e) for a, s, e in zip(aspl, tspc, tne))
    return MetricsRecord(step=step, layers=layers)  # type: ignore[arg-type]


def get_series(steps: int = 3, replicate: int = 0) -> MetricsSeries:
    """A hand-made DEBC series with shrinking layers and no L3 path metrics"""
    records = [
        record(
            step,
            aspl=(2.0 + 0.25 * step, 1.5 + 0.5 * step, None),
            tspc=(100 - 7 * step, 300 - 20 * step, None),
            tne=(20 - step, 40 - 3 * step, 90 - 5 * step),
        )
        for step in range(1, steps + 1)
    ]
    config = ScenarioConfig(failures=steps).as_dict()
    return MetricsSeries(Mode.DEBC, config, replicate, records)
