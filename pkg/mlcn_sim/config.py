from enum import Enum
from typing import Any, Dict, Optional, Union

from .exceptions import ArgumentError


class Mode(str, Enum):
    SEBC = "sebc"
    DEBC = "debc"
    SNBC = "snbc"
    DNBC = "dnbc"

    @property
    def dynamic(self) -> bool:
        return self in (Mode.DEBC, Mode.DNBC)

    @property
    def node_failures(self) -> bool:
        return self in (Mode.SNBC, Mode.DNBC)

    @classmethod
    def parse(cls, value: Union[str, "Mode"]) -> "Mode":
        try:
            return cls(value.lower() if isinstance(value, str) else value)
        except ValueError:
            raise ArgumentError(f"unknown failure mode {value!r}") from None


class MlcnConfig:
    """Generation parameters of the three-layer network.

    Has defaults calibrated for n=100: the expected edge counts are roughly
    198 (L1), 742 (L2) and 2200 (L3).

    Args:
        n (int):
            Number of vertices shared by all layers.
        l1_p (float):
            Edge probability of the L1 Erdos-Renyi draw.
        l2_p (float):
            Edge probability of the L2 Erdos-Renyi draw.
        l3_m (int):
            Edges attached per new vertex in the L3 preferential attachment draw.
        gauss_max_skew (float):
            Largest accepted absolute skewness of the L1 hop-count histogram.
        gauss_attempts (int):
            Number of L1 candidates tried before giving up.
        er_attempts (int):
            Number of whole-graph resamples allowed when conditioning an
            Erdos-Renyi draw on minimum degree one.
    """

    def __init__(
        self,
        n: int = 100,
        l1_p: float = 0.04,
        l2_p: float = 0.15,
        l3_m: int = 25,
        gauss_max_skew: float = 0.5,
        gauss_attempts: int = 200,
        er_attempts: int = 1000,
    ):
        self._n = n
        self._l1_p = l1_p
        self._l2_p = l2_p
        self._l3_m = l3_m
        self._gauss_max_skew = gauss_max_skew
        self._gauss_attempts = gauss_attempts
        self._er_attempts = er_attempts
        self.validate()

    @classmethod
    def init(cls, **kwargs):
        """Statically initiate class instance"""
        return cls(**kwargs)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "MlcnConfig":
        return cls(**data)

    def validate(self):
        if self._n < 2:
            raise ArgumentError(f"n must be at least 2, got {self._n}")
        for name, p in (("l1_p", self._l1_p), ("l2_p", self._l2_p)):
            if not 0 < p <= 1:
                raise ArgumentError(f"{name} must lie in (0, 1], got {p}")
        if not 1 <= self._l3_m < self._n:
            raise ArgumentError(
                f"l3_m must satisfy 1 <= l3_m < n, got l3_m={self._l3_m} n={self._n}"
            )
        if self._gauss_max_skew < 0:
            raise ArgumentError("gauss_max_skew must be non-negative")
        if self._gauss_attempts < 1 or self._er_attempts < 1:
            raise ArgumentError("rejection budgets must be at least 1")

    @property
    def n(self) -> int:
        return self._n

    @property
    def l1_p(self) -> float:
        return self._l1_p

    @property
    def l2_p(self) -> float:
        return self._l2_p

    @property
    def l3_m(self) -> int:
        return self._l3_m

    @property
    def gauss_max_skew(self) -> float:
        return self._gauss_max_skew

    @property
    def gauss_attempts(self) -> int:
        return self._gauss_attempts

    @property
    def er_attempts(self) -> int:
        return self._er_attempts

    @property
    def expected_edges(self) -> Dict[str, float]:
        """Returns the expected edge count of each layer before any pruning"""
        pairs = self._n * (self._n - 1) / 2
        m = self._l3_m
        return {
            "L1": self._l1_p * pairs,
            "L2": self._l2_p * pairs,
            "L3": float(m * (m + 1) // 2 + (self._n - m - 1) * m),
        }

    @property
    def ordered(self) -> bool:
        """Whether the expected edge counts grow strictly from L1 to L3"""
        expected = self.expected_edges
        return expected["L1"] < expected["L2"] < expected["L3"]

    def as_dict(self) -> Dict[str, Any]:
        return {
            "n": self._n,
            "l1_p": self._l1_p,
            "l2_p": self._l2_p,
            "l3_m": self._l3_m,
            "gauss_max_skew": self._gauss_max_skew,
            "gauss_attempts": self._gauss_attempts,
            "er_attempts": self._er_attempts,
        }


class ScenarioConfig:
    """Everything a failure scenario needs to run reproducibly.

    Args:
        mlcn (:class:`~mlcn_sim.config.MlcnConfig`):
            The network generation parameters. Defaults to `MlcnConfig()`.
        mode (str | :class:`~mlcn_sim.config.Mode`):
            One of sebc, debc, snbc, dnbc.
        failures (int):
            Number of edges or nodes to fail (K).
        seed (int):
            Master seed; every random draw derives from it.
        replicates (int):
            Number of independent runs.
        l3_paths (bool):
            Whether ASPL and TSPC are measured on L3. TNE always is.
        chaos_window (int):
            Window length of the chaos onset detector.
        chaos_factor (float):
            Dispersion ratio the detector treats as chaotic.
    """

    def __init__(
        self,
        mlcn: Optional[MlcnConfig] = None,
        mode: Union[str, Mode] = Mode.DEBC,
        *,
        failures: int = 60,
        seed: int = 0,
        replicates: int = 1,
        l3_paths: bool = True,
        chaos_window: int = 5,
        chaos_factor: float = 2.0,
    ):
        self._mlcn = mlcn if mlcn is not None else MlcnConfig()
        self._mode = Mode.parse(mode)
        self._failures = failures
        self._seed = seed
        self._replicates = replicates
        self._l3_paths = l3_paths
        self._chaos_window = chaos_window
        self._chaos_factor = chaos_factor
        self.validate()

    @classmethod
    def init(cls, mlcn: Optional[MlcnConfig] = None, mode="debc", **kwargs):
        """Statically initiate class instance"""
        return cls(mlcn, mode, **kwargs)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ScenarioConfig":
        """Rebuild a config from its :meth:`as_dict` echo"""
        data = dict(data)
        mlcn = MlcnConfig.from_dict(data.pop("mlcn"))
        mode = data.pop("mode")
        return cls(mlcn, mode, **data)

    def validate(self):
        if self._failures < 1:
            raise ArgumentError(f"failures must be at least 1, got {self._failures}")
        if self._mode.node_failures and self._failures >= self._mlcn.n:
            raise ArgumentError(
                f"node failures must be fewer than n={self._mlcn.n}, got {self._failures}"
            )
        if self._replicates < 1:
            raise ArgumentError("replicates must be at least 1")
        if self._chaos_window < 3:
            raise ArgumentError("chaos_window must be at least 3")
        if self._chaos_factor <= 0:
            raise ArgumentError("chaos_factor must be positive")
        if not self._mlcn.ordered:
            raise ArgumentError(
                "expected edge counts must grow from L1 to L3, got "
                + ", ".join(f"{k}={v:.1f}" for k, v in self._mlcn.expected_edges.items())
            )

    def replace(self, **changes) -> "ScenarioConfig":
        """Returns a copy with the given fields changed"""
        data = self.as_dict()
        data["mlcn"] = self._mlcn.as_dict()
        data.update(changes)
        if isinstance(data["mlcn"], MlcnConfig):
            data["mlcn"] = data["mlcn"].as_dict()
        return ScenarioConfig.from_dict(data)

    @property
    def mlcn(self) -> MlcnConfig:
        return self._mlcn

    @property
    def mode(self) -> Mode:
        return self._mode

    @property
    def failures(self) -> int:
        return self._failures

    @property
    def seed(self) -> int:
        return self._seed

    @property
    def replicates(self) -> int:
        return self._replicates

    @property
    def l3_paths(self) -> bool:
        return self._l3_paths

    @property
    def chaos_window(self) -> int:
        return self._chaos_window

    @property
    def chaos_factor(self) -> float:
        return self._chaos_factor

    def as_dict(self) -> Dict[str, Any]:
        """Returns the config echo embedded in JSON output"""
        return {
            "mlcn": self._mlcn.as_dict(),
            "mode": self._mode.value,
            "failures": self._failures,
            "seed": self._seed,
            "replicates": self._replicates,
            "l3_paths": self._l3_paths,
            "chaos_window": self._chaos_window,
            "chaos_factor": self._chaos_factor,
        }
