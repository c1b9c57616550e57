"""Monte-Carlo check of the generation parameters.

Used to pick defaults: how often a raw L1 draw passes the hop-count gate,
how many edges each layer ends up with, and whether the L1 < L2 < L3 edge
ordering holds often enough.
"""
from collections import Counter
from dataclasses import dataclass, field
import logging
from typing import Any, Dict, Optional

import networkx as nx
import numpy as np

from .config import MlcnConfig
from .exceptions import ArgumentError
from .graph import degree_histogram, gen_er_min_degree, hop_histogram
from .network import LAYERS, build_l2, build_l3, gaussian_gate, service_hop_histogram
from .seeding import stream


ORDERING_THRESHOLD = 0.95


@dataclass
class CalibrationReport:
    samples: int
    gate_pass_rate: float
    gate_failures: Dict[str, int]
    mean_tne: Dict[str, float]
    ordering_rate: float
    degree_histograms: Dict[str, Dict[int, float]] = field(default_factory=dict)
    hop_histogram: Dict[int, float] = field(default_factory=dict)
    service_hop_histogram: Dict[int, float] = field(default_factory=dict)

    @property
    def ordering_ok(self) -> bool:
        return self.ordering_rate >= ORDERING_THRESHOLD

    def as_dict(self) -> Dict[str, Any]:
        def _keys(histogram: Dict[int, float]) -> Dict[str, float]:
            return {str(k): v for k, v in sorted(histogram.items())}

        return {
            "samples": self.samples,
            "gate_pass_rate": self.gate_pass_rate,
            "gate_failures": dict(sorted(self.gate_failures.items())),
            "mean_tne": self.mean_tne,
            "ordering_rate": self.ordering_rate,
            "ordering_ok": self.ordering_ok,
            "degree_histograms": {k: _keys(v) for k, v in self.degree_histograms.items()},
            "hop_histogram": _keys(self.hop_histogram),
            "service_hop_histogram": _keys(self.service_hop_histogram),
        }


def _mean_histogram(total: Counter, samples: int) -> Dict[int, float]:
    return {k: total[k] / samples for k in sorted(total)}


class Calibrator:
    """Draws `samples` independent networks and tallies their statistics

    Args:
        config (:class:`~mlcn_sim.config.MlcnConfig`):
            The generation parameters under test.
        seed (int):
            Master seed of the sample draws.
        logger (:class:`logging.Logger`):
            The logging instance to use. Defaults to the root logger.
    """

    def __init__(
        self,
        config: MlcnConfig,
        seed: int = 0,
        logger: Optional[logging.Logger] = None,
    ):
        if logger is None:
            logger = logging.getLogger()
        self.logger = logger
        self.config = config
        self.seed = seed

    def run(self, samples: int) -> CalibrationReport:
        if samples < 1:
            raise ArgumentError(f"samples must be at least 1, got {samples}")

        cfg = self.config
        passed = 0
        ordered = 0
        failures: Counter = Counter()
        tne_totals = np.zeros(len(LAYERS))
        degree_totals: Dict[str, Counter] = {name: Counter() for name in LAYERS}
        hop_total: Counter = Counter()
        service_total: Counter = Counter()

        for sample in range(samples):
            l1 = gen_er_min_degree(
                cfg.n,
                cfg.l1_p,
                stream(self.seed, sample, 0, "l1"),
                max_attempts=cfg.er_attempts,
                logger=self.logger,
            )
            histogram = hop_histogram(l1)
            reason = "connected" if not nx.is_connected(l1.nx) else None
            if reason is None:
                reason = gaussian_gate(histogram, cfg.gauss_max_skew)
            if reason is None:
                passed += 1
            else:
                failures[reason] += 1

            l2 = build_l2(cfg, l1, stream(self.seed, sample, 0, "l2"))
            l3 = build_l3(cfg, l2, stream(self.seed, sample, 0, "l3"))
            counts = [l1.tne, l2.tne, l3.tne]
            tne_totals += counts
            if counts[0] < counts[1] < counts[2]:
                ordered += 1

            for name, layer in zip(LAYERS, (l1, l2, l3)):
                degree_totals[name].update(degree_histogram(layer))
            hop_total.update(histogram.counts)
            service_total.update(service_hop_histogram(l1, l2).counts)
            self.logger.debug("- calibration sample %d: tne %s, gate %s", sample, counts, reason)

        report = CalibrationReport(
            samples=samples,
            gate_pass_rate=passed / samples,
            gate_failures=dict(failures),
            mean_tne={name: float(t / samples) for name, t in zip(LAYERS, tne_totals)},
            ordering_rate=ordered / samples,
            degree_histograms={
                name: _mean_histogram(total, samples) for name, total in degree_totals.items()
            },
            hop_histogram=_mean_histogram(hop_total, samples),
            service_hop_histogram=_mean_histogram(service_total, samples),
        )
        self.logger.info(
            "calibration: gate pass rate %.3f, ordering rate %.3f",
            report.gate_pass_rate,
            report.ordering_rate,
        )
        return report


def calibrate(cfg: MlcnConfig, samples: int, seed: int = 0) -> CalibrationReport:
    return Calibrator(cfg, seed).run(samples)
