from hypothesis import given
import pytest

from mlcn_sim.config import MlcnConfig
from mlcn_sim.engine import layer_streams
from mlcn_sim.exceptions import ArgumentError, GenerationError
from mlcn_sim.fixtures import (
    CHAIN_FAILURE,
    chain_network,
    cycle_graph,
    path_graph,
    star_graph,
    two_components,
)
from mlcn_sim.graph import Graph, HopHistogram
from mlcn_sim.network import (
    LayeredNetwork,
    build_l1,
    build_l2,
    build_l3,
    build_network,
    dependency_violations,
    gaussian_gate,
    propagate_failures,
    regenerate_upper,
    remove_l1_edge,
    remove_node,
    remove_nodes,
    service_hop_histogram,
)
from mlcn_sim.oracle import naive_fixpoint
from mlcn_sim.seeding import stream

from .helpers import PROPERTY_SETTINGS, layered_networks
from .scenario_session import small


def test_layered_network_shares_dead_vertices():
    net = LayeredNetwork(Graph(3, [(0, 1)], dead=[2]), Graph(3, [(1, 2)]), Graph(3))
    assert net.dead == frozenset({2})
    assert net.l2.edges == []
    assert all(not layer.is_live(2) for layer in net.layers)

    with pytest.raises(ArgumentError):
        LayeredNetwork(Graph(3), Graph(3), Graph(4))


def test_gaussian_gate():
    assert gaussian_gate(HopHistogram({1: 10, 2: 3}), 0.5) == "interior-mode"
    assert gaussian_gate(HopHistogram({1: 1, 2: 2, 3: 5}), 0.5) == "interior-mode"
    assert gaussian_gate(HopHistogram({1: 2, 2: 5, 3: 2}), 0.5) is None

    skewed = HopHistogram({1: 1, 2: 10, **{hop: 1 for hop in range(3, 11)}})
    assert gaussian_gate(skewed, 0.5) == "skewness"
    assert gaussian_gate(skewed, 5.0) is None


def test_build_l1_degenerate():
    cfg = MlcnConfig(n=2, l1_p=1.0, l2_p=1.0, l3_m=1, gauss_attempts=3)
    with pytest.raises(GenerationError) as exc_info:
        build_l1(cfg, stream(0, 0, 1, "l1"))
    assert exc_info.value.gate == "interior-mode"


def test_build_l1_deterministic():
    a = build_l1(small, stream(3, 0, 1, "l1"))
    b = build_l1(small, stream(3, 0, 1, "l1"))
    assert a == b
    assert min(a.degree(v) for v in range(small.n)) >= 1


def test_build_l2_prunes_against_l1():
    cfg = MlcnConfig(n=4, l1_p=0.5, l2_p=1.0, l3_m=1)
    assert build_l2(cfg, two_components(), stream(0, 0, 1, "l2")).edges == [(0, 1), (2, 3)]
    assert build_l2(cfg, path_graph(4), stream(0, 0, 1, "l2")).tne == 6


def test_build_l3_prunes_against_l2():
    cfg = MlcnConfig(n=4, l1_p=0.5, l2_p=1.0, l3_m=1)
    assert build_l3(cfg, Graph(4), stream(0, 0, 1, "l3")).tne == 0

    full = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert build_l3(cfg, full, stream(0, 0, 1, "l3")).tne == 3


def test_build_network():
    net = build_network(small, layer_streams(1, 0, 1))
    assert dependency_violations(net) == []
    assert net.l1.tne < net.l2.tne < net.l3.tne
    assert propagate_failures(net) == net
    assert net == build_network(small, layer_streams(1, 0, 1))


def test_regenerate_upper_keeps_l1():
    net = build_network(small, layer_streams(1, 0, 1))
    failed = remove_l1_edge(net, net.l1.edges[0])
    fresh = regenerate_upper(failed, small, layer_streams(1, 0, 2))
    assert fresh.l1 == failed.l1
    assert dependency_violations(fresh) == []


def test_remove_l1_edge_prunes_l2():
    net = LayeredNetwork(path_graph(3), Graph(3, [(0, 2)]), Graph(3))
    after = remove_l1_edge(net, (1, 2))
    assert after.l1.edges == [(0, 1)]
    assert after.l2.edges == []
    # input untouched
    assert net.l2.edges == [(0, 2)]


def test_remove_l1_edge_chord():
    l1 = cycle_graph(4)
    l1.add_edge(0, 2)
    net = LayeredNetwork(l1, Graph(4, [(0, 2)]), Graph(4, [(0, 2)]))
    after = remove_l1_edge(net, (0, 2))
    assert after.l2 == net.l2
    assert after.l3 == net.l3


def test_remove_l1_edge_chain():
    after = remove_l1_edge(chain_network(), CHAIN_FAILURE)
    assert after.l2.edges == [(0, 1)]
    assert after.l3.edges == [(0, 1)]
    assert dependency_violations(after) == []


def test_remove_l1_edge_absent():
    with pytest.raises(ArgumentError):
        remove_l1_edge(chain_network(), (0, 3))


def test_remove_node_counts_incident_edges():
    l1 = star_graph(5)
    l2 = Graph(6, [(0, 1), (0, 2), (3, 4)])
    l3 = Graph(6, [(0, v) for v in range(1, 6)] + [(1, 2), (3, 4)])
    net = LayeredNetwork(l1, l2, l3)
    before = sum(layer.tne for layer in net.layers)
    after = remove_node(net, 0)
    assert before - sum(layer.tne for layer in after.layers) >= 5 + 2 + 5
    assert after.dead == frozenset({0})


def test_remove_node_isolated():
    net = LayeredNetwork(Graph(4, path_graph(3).edges), Graph(4, [(0, 1)]), Graph(4))
    after = remove_node(net, 3)
    assert [layer.edges for layer in after.layers] == [layer.edges for layer in net.layers]
    assert after.dead == frozenset({3})

    with pytest.raises(ArgumentError):
        remove_node(after, 3)


def test_remove_node_star_hub():
    l2 = Graph(4, [(0, 1), (1, 2), (2, 3)])
    l3 = Graph(4, [(0, 2), (1, 3)])
    after = remove_node(LayeredNetwork(star_graph(3), l2, l3), 0)
    assert [layer.tne for layer in after.layers] == [0, 0, 0]
    assert dependency_violations(after) == []


def test_remove_nodes_batch():
    after = remove_nodes(chain_network(), [1, 2])
    assert after.dead == frozenset({1, 2})
    assert [layer.tne for layer in after.layers] == [0, 0, 0]


def test_service_hop_histogram():
    l2 = Graph(4, [(0, 1), (0, 3), (1, 3)])
    assert service_hop_histogram(path_graph(4), l2).counts == {1: 1, 2: 1, 3: 1}


@PROPERTY_SETTINGS
@given(net=layered_networks())
def test_propagation_matches_fixpoint(net: LayeredNetwork):
    once = propagate_failures(net)
    assert once == naive_fixpoint(net)
    assert propagate_failures(once) == once
    assert dependency_violations(once) == []


@pytest.mark.slow
def test_build_l2_edge_count():
    cfg = MlcnConfig()
    counts = [build_network(cfg, layer_streams(seed, 0, 1)).l2.tne for seed in range(200)]
    assert sum(counts) / len(counts) == pytest.approx(0.15 * 4950, rel=0.03)
