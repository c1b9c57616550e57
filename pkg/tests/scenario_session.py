from mlcn_sim import MlcnConfig, ScenarioConfig
from mlcn_sim.config import Mode
from mlcn_sim.engine import RUNNERS


small = MlcnConfig(n=30, l1_p=0.15, l2_p=0.3, l3_m=8, gauss_max_skew=1.0)
_RUNS = {}


def scenario(mode: str = "debc", **kwargs) -> ScenarioConfig:
    kwargs.setdefault("failures", 10)
    kwargs.setdefault("seed", 7)
    return ScenarioConfig(small, mode, **kwargs)


def instance(mode: str = "debc"):
    if mode not in _RUNS:
        _RUNS[mode] = RUNNERS[Mode(mode)](scenario(mode))

    return _RUNS[mode]


def small_args(*extra: str) -> list:
    """CLI flags selecting the small network"""
    return [
        "--nodes", "30",
        "--l1-p", "0.15",
        "--l2-p", "0.3",
        "--l3-m", "8",
        "--gauss-max-skew", "1.0",
        *extra,
    ]
