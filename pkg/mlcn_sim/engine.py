"""Centrality-ordered failure scenarios.

Static modes (SEBC, SNBC) build a fresh network for every K, rank L1 once and
fail the top K as a batch. Dynamic modes (DEBC, DNBC) build one network per
replicate and fail the current top-ranked L1 edge or node one at a time,
re-ranking after every failure and redrawing L2 and L3 in between.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import logging
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from ._types import Edge, MetricValue, Vertex
from .centrality import edge_betweenness, node_betweenness, top_ranked
from .config import Mode, ScenarioConfig
from .exceptions import ArgumentError, GenerationError
from .graph import path_census
from .network import (
    LAYERS,
    LayerStreams,
    LayeredNetwork,
    build_network,
    regenerate_upper,
    remove_l1_edges,
    remove_nodes,
)
from .seeding import stream


PARAMETERS = ("aspl", "tspc", "tne")


@dataclass(frozen=True)
class LayerMetrics:
    aspl: Optional[float]
    tspc: MetricValue
    tne: MetricValue

    def get(self, parameter: str) -> MetricValue:
        if parameter not in PARAMETERS:
            raise ArgumentError(f"unknown parameter {parameter!r}")
        return getattr(self, parameter)


@dataclass(frozen=True)
class MetricsRecord:
    """Post-failure measurements of all three layers after `step` failures"""

    step: int
    layers: Tuple[LayerMetrics, LayerMetrics, LayerMetrics]
    removed: Tuple = ()

    def layer(self, name: str) -> LayerMetrics:
        return self.layers[LAYERS.index(name)]

    def as_dict(self) -> Dict[str, Any]:
        return {
            "step": self.step,
            "removed": [list(r) if isinstance(r, tuple) else r for r in self.removed],
            "layers": {
                name: {p: metrics.get(p) for p in PARAMETERS}
                for name, metrics in zip(LAYERS, self.layers)
            },
        }


@dataclass
class MetricsSeries:
    mode: Mode
    config: Dict[str, Any]
    replicate: int
    records: List[MetricsRecord] = field(default_factory=list)
    truncated: bool = False
    averaged: int = 1

    @property
    def steps(self) -> List[int]:
        return [record.step for record in self.records]

    def values(self, layer: str, parameter: str) -> List[MetricValue]:
        return [record.layer(layer).get(parameter) for record in self.records]

    def __len__(self) -> int:
        return len(self.records)


def layer_streams(seed: int, replicate: int, k: int) -> LayerStreams:
    return LayerStreams(
        l1=stream(seed, replicate, k, "l1"),
        l2=stream(seed, replicate, k, "l2"),
        l3=stream(seed, replicate, k, "l3"),
    )


def measure(net: LayeredNetwork, l3_paths: bool = True) -> Tuple[LayerMetrics, ...]:
    """ASPL, TSPC and TNE of every layer, ASPL absent when undefined"""
    metrics = []
    for name, layer in zip(LAYERS, net.layers):
        if name == "L3" and not l3_paths:
            metrics.append(LayerMetrics(aspl=None, tspc=None, tne=layer.tne))
            continue
        census = path_census(layer)
        metrics.append(LayerMetrics(aspl=census.aspl, tspc=census.tspc, tne=layer.tne))
    return tuple(metrics)


def fail_top_edges(net: LayeredNetwork, k: int) -> Tuple[LayeredNetwork, List[Edge]]:
    """Rank L1 edges by betweenness once and fail the top `k` as a batch"""
    doomed = top_ranked(edge_betweenness(net.l1), k)
    return remove_l1_edges(net, doomed), doomed


def fail_top_nodes(net: LayeredNetwork, k: int) -> Tuple[LayeredNetwork, List[Vertex]]:
    """Rank live vertices by L1 betweenness once and fail the top `k` as a batch"""
    doomed = top_ranked(node_betweenness(net.l1), k)
    return remove_nodes(net, doomed), doomed


def _build(
    cfg: ScenarioConfig, replicate: int, k: int, logger: Optional[logging.Logger]
) -> LayeredNetwork:
    try:
        return build_network(cfg.mlcn, layer_streams(cfg.seed, replicate, k), logger)
    except GenerationError as _err:
        raise GenerationError(_err.args[0], _err.gate, replicate=replicate, k=k) from _err


def static_record(
    cfg: ScenarioConfig,
    replicate: int,
    k: int,
    logger: Optional[logging.Logger] = None,
) -> Optional[MetricsRecord]:
    """Build a fresh network and fail its top `k` L1 edges or nodes in one go.

    Returns:
        MetricsRecord | None: None when L1 has fewer than `k` candidates.
    """
    net = _build(cfg, replicate, k, logger)
    if cfg.mode.node_failures:
        if len(net.live_vertices) < k:
            return None
        net, removed = fail_top_nodes(net, k)
    else:
        if net.l1.tne < k:
            return None
        net, removed = fail_top_edges(net, k)
    return MetricsRecord(step=k, layers=measure(net, cfg.l3_paths), removed=tuple(removed))


def _require(cfg: ScenarioConfig, mode: Mode):
    if cfg.mode is not mode:
        raise ArgumentError(f"scenario configured for {cfg.mode.value}, not {mode.value}")


def _run_static(
    cfg: ScenarioConfig, replicate: int, logger: Optional[logging.Logger]
) -> MetricsSeries:
    series = MetricsSeries(cfg.mode, cfg.as_dict(), replicate)
    for k in range(1, cfg.failures + 1):
        record = static_record(cfg, replicate, k, logger)
        if record is None:
            series.truncated = True
            break
        series.records.append(record)
    return series


def _run_dynamic(
    cfg: ScenarioConfig, replicate: int, logger: Optional[logging.Logger]
) -> MetricsSeries:
    if logger is None:
        logger = logging.getLogger()

    series = MetricsSeries(cfg.mode, cfg.as_dict(), replicate)
    net = _build(cfg, replicate, 1, logger)
    for step in range(1, cfg.failures + 1):
        if cfg.mode.node_failures:
            if len(net.live_vertices) < 2:
                series.truncated = True
                break
            net, removed = fail_top_nodes(net, 1)
        else:
            if net.l1.tne == 0:
                series.truncated = True
                break
            net, removed = fail_top_edges(net, 1)

        series.records.append(
            MetricsRecord(step=step, layers=measure(net, cfg.l3_paths), removed=tuple(removed))
        )
        logger.debug(
            "- %s replicate %d step %d failed %s", cfg.mode.value, replicate, step, removed
        )

        if step < cfg.failures:
            streams = layer_streams(cfg.seed, replicate, step + 1)
            net = regenerate_upper(net, cfg.mlcn, streams)
    return series


def run_sebc(
    cfg: ScenarioConfig, replicate: int = 0, logger: Optional[logging.Logger] = None
) -> MetricsSeries:
    """Static edge betweenness failures, one record per K in ``1..failures``"""
    _require(cfg, Mode.SEBC)
    return _run_static(cfg, replicate, logger)


def run_debc(
    cfg: ScenarioConfig, replicate: int = 0, logger: Optional[logging.Logger] = None
) -> MetricsSeries:
    """Dynamic edge betweenness failures, one record per failed edge"""
    _require(cfg, Mode.DEBC)
    return _run_dynamic(cfg, replicate, logger)


def run_snbc(
    cfg: ScenarioConfig, replicate: int = 0, logger: Optional[logging.Logger] = None
) -> MetricsSeries:
    """Static node betweenness failures, one record per K in ``1..failures``"""
    _require(cfg, Mode.SNBC)
    return _run_static(cfg, replicate, logger)


def run_dnbc(
    cfg: ScenarioConfig, replicate: int = 0, logger: Optional[logging.Logger] = None
) -> MetricsSeries:
    """Dynamic node betweenness failures, one record per failed node"""
    _require(cfg, Mode.DNBC)
    return _run_dynamic(cfg, replicate, logger)


RUNNERS: Dict[Mode, Callable[..., MetricsSeries]] = {
    Mode.SEBC: run_sebc,
    Mode.DEBC: run_debc,
    Mode.SNBC: run_snbc,
    Mode.DNBC: run_dnbc,
}


def _replicate_task(args: Tuple[ScenarioConfig, int]) -> MetricsSeries:
    cfg, replicate = args
    return RUNNERS[cfg.mode](cfg, replicate)


def _static_task(args: Tuple[ScenarioConfig, int, int]) -> Optional[MetricsRecord]:
    cfg, replicate, k = args
    return static_record(cfg, replicate, k)


def mean_series(series: Sequence[MetricsSeries]) -> MetricsSeries:
    """Average replicates step by step, skipping absent values"""
    if not series:
        raise ArgumentError("no series to average")

    by_step: Dict[int, List[MetricsRecord]] = {}
    for one in series:
        for record in one.records:
            by_step.setdefault(record.step, []).append(record)

    def _mean(values: List[MetricValue]) -> Optional[float]:
        present = [float(v) for v in values if v is not None]
        return sum(present) / len(present) if present else None

    records = []
    for step in sorted(by_step):
        group = by_step[step]
        layers = tuple(
            LayerMetrics(
                *(_mean([r.layers[i].get(p) for r in group]) for p in PARAMETERS)
            )
            for i in range(len(LAYERS))
        )
        records.append(MetricsRecord(step=step, layers=layers))  # type: ignore[arg-type]

    first = series[0]
    return MetricsSeries(
        mode=first.mode,
        config=first.config,
        replicate=0,
        records=records,
        truncated=any(one.truncated for one in series),
        averaged=len(series),
    )


class FailureEngine:
    """Runs every replicate of a scenario and merges them deterministically

    Args:
        config (:class:`~mlcn_sim.config.ScenarioConfig`):
            The scenario to run.
        workers (int):
            Worker processes. With 1 everything runs in-process.
        logger (:class:`logging.Logger`):
            The logging instance to use. Defaults to the root logger.
    """

    def __init__(
        self,
        config: ScenarioConfig,
        *,
        workers: int = 1,
        logger: Optional[logging.Logger] = None,
    ):
        if logger is None:
            logger = logging.getLogger()
        self.logger = logger

        if workers < 1:
            raise ArgumentError(f"workers must be at least 1, got {workers}")
        self.config = config
        self.workers = workers

    def run(self) -> List[MetricsSeries]:
        """Run all replicates.

        Returns:
            List[MetricsSeries]: One series per replicate, ordered by replicate.
        """
        cfg = self.config
        self.logger.info(
            "running %s: %d failures, %d replicates, seed %d",
            cfg.mode.value,
            cfg.failures,
            cfg.replicates,
            cfg.seed,
        )
        if self.workers == 1:
            results = [
                RUNNERS[cfg.mode](cfg, replicate, self.logger)
                for replicate in range(cfg.replicates)
            ]
        elif cfg.mode.dynamic:
            results = self._map(_replicate_task, [(cfg, r) for r in range(cfg.replicates)])
        else:
            results = self._run_static_parallel()

        for series in results:
            if series.truncated:
                self.logger.warning(
                    "replicate %d truncated after %d of %d failures",
                    series.replicate,
                    len(series),
                    cfg.failures,
                )
        self.logger.info("finished %s", cfg.mode.value)
        return sorted(results, key=lambda s: s.replicate)

    def _map(self, func, tasks: List) -> List:
        with ProcessPoolExecutor(max_workers=self.workers) as executor:
            return list(executor.map(func, tasks))

    def _run_static_parallel(self) -> List[MetricsSeries]:
        cfg = self.config
        tasks = [
            (cfg, replicate, k)
            for replicate in range(cfg.replicates)
            for k in range(1, cfg.failures + 1)
        ]
        records = self._map(_static_task, tasks)

        results = []
        for replicate in range(cfg.replicates):
            series = MetricsSeries(cfg.mode, cfg.as_dict(), replicate)
            chunk = records[replicate * cfg.failures:(replicate + 1) * cfg.failures]
            for record in chunk:
                if record is None:
                    series.truncated = True
                    break
                series.records.append(record)
            results.append(series)
        return results
