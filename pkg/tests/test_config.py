import pickle

import pytest

from mlcn_sim.config import MlcnConfig, Mode, ScenarioConfig
from mlcn_sim.exceptions import ArgumentError, EmissionError, GenerationError
from mlcn_sim.seeding import derive_seed, stream


def test_mode_parse():
    assert Mode.parse("DEBC") is Mode.DEBC
    assert Mode.parse(Mode.SNBC) is Mode.SNBC
    assert Mode.DNBC.dynamic and Mode.DNBC.node_failures
    assert not Mode.SEBC.dynamic and not Mode.SEBC.node_failures

    with pytest.raises(ArgumentError):
        Mode.parse("random")


def test_mlcn_defaults():
    cfg = MlcnConfig()
    assert cfg.n == 100
    expected = cfg.expected_edges
    assert expected["L1"] == pytest.approx(198.0)
    assert expected["L2"] == pytest.approx(742.5)
    assert expected["L3"] == 2200.0
    assert cfg.ordered
    assert MlcnConfig.init(n=50).n == 50


def test_mlcn_validation():
    with pytest.raises(ArgumentError):
        MlcnConfig(n=1)
    with pytest.raises(ArgumentError):
        MlcnConfig(l1_p=0.0)
    with pytest.raises(ArgumentError):
        MlcnConfig(l2_p=1.5)
    with pytest.raises(ArgumentError):
        MlcnConfig(n=10, l3_m=10)
    with pytest.raises(ArgumentError):
        MlcnConfig(gauss_attempts=0)


def test_scenario_validation():
    with pytest.raises(ArgumentError):
        ScenarioConfig(failures=0)
    with pytest.raises(ArgumentError):
        ScenarioConfig(MlcnConfig(n=10, l1_p=0.3, l2_p=0.6, l3_m=3), "snbc", failures=10)
    with pytest.raises(ArgumentError):
        ScenarioConfig(replicates=0)
    with pytest.raises(ArgumentError):
        ScenarioConfig(chaos_window=2)
    with pytest.raises(ArgumentError):
        ScenarioConfig(MlcnConfig(l1_p=0.2, l2_p=0.1))

    # edge modes may fail more edges than there are vertices
    assert ScenarioConfig(MlcnConfig(n=30, l1_p=0.15, l2_p=0.3, l3_m=8), "debc", failures=40)


def test_scenario_echo():
    cfg = ScenarioConfig(MlcnConfig(l3_m=30), "snbc", failures=40, seed=9, replicates=5)
    echo = cfg.as_dict()
    assert echo["mode"] == "snbc"
    assert echo["mlcn"]["l3_m"] == 30
    assert ScenarioConfig.from_dict(echo).as_dict() == echo

    changed = cfg.replace(mode="dnbc", seed=10)
    assert changed.mode is Mode.DNBC
    assert changed.seed == 10
    assert changed.mlcn.l3_m == 30


def test_derive_seed():
    assert derive_seed(7, 0, 1, "l1") == derive_seed(7, 0, 1, "l1")
    assert derive_seed(7, 0, 1, "l1") != derive_seed(7, 1, 1, "l1")
    assert derive_seed(7, 0, 1, "l1") != derive_seed(7, 0, 1, "l2")
    assert stream(7, 0, 2, "l3").random() == stream(7, 0, 2, "l3").random()


def test_errors():
    err = GenerationError("no luck", "skewness", replicate=2, k=5)
    assert str(err) == "no luck [gate: skewness] (replicate 2, K=5)"
    assert str(GenerationError("no luck", "connected")) == "no luck [gate: connected]"

    clone = pickle.loads(pickle.dumps(err))
    assert (clone.gate, clone.replicate, clone.k) == ("skewness", 2, 5)

    emission = pickle.loads(pickle.dumps(EmissionError("unable to write", "/x.csv")))
    assert str(emission) == "unable to write: /x.csv"
    assert issubclass(ArgumentError, ValueError)
