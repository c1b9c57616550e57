"""The three-layer network and its bottom-up service dependency.

L2 edges need an L1 path between their endpoints, L3 edges need an L2 path.
Only reachability is modelled: which route carries a connection never
changes a measured parameter, so routes are not materialized.
"""
from dataclasses import dataclass
import logging
import random
from typing import Iterable, List, Optional, Tuple

import networkx as nx

from ._types import Edge, Vertex
from .config import MlcnConfig
from .exceptions import ArgumentError, GenerationError
from .graph import (
    Graph,
    HopHistogram,
    UNREACHABLE,
    bfs_count,
    gen_er,
    gen_er_min_degree,
    gen_scale_free,
    hop_histogram,
)


LAYERS = ("L1", "L2", "L3")


@dataclass
class LayerStreams:
    """One seeded random stream per layer"""

    l1: random.Random
    l2: random.Random
    l3: random.Random


class LayeredNetwork:
    """Three graphs over one vertex set.

    Args:
        l1, l2, l3 (:class:`~mlcn_sim.graph.Graph`):
            The layers, bottom to top. A vertex dead in one layer is killed
            in all of them.
    """

    def __init__(self, l1: Graph, l2: Graph, l3: Graph):
        if not l1.n == l2.n == l3.n:
            raise ArgumentError(f"layer sizes differ: {l1.n}, {l2.n}, {l3.n}")
        self.l1 = l1
        self.l2 = l2
        self.l3 = l3
        for v in sorted(l1.dead | l2.dead | l3.dead):
            for layer in self.layers:
                if layer.is_live(v):
                    layer.kill(v)

    @property
    def n(self) -> int:
        return self.l1.n

    @property
    def layers(self) -> Tuple[Graph, Graph, Graph]:
        return self.l1, self.l2, self.l3

    @property
    def dead(self) -> frozenset:
        return self.l1.dead

    @property
    def live_vertices(self) -> List[Vertex]:
        return self.l1.live_vertices

    def copy(self) -> "LayeredNetwork":
        return LayeredNetwork(self.l1.copy(), self.l2.copy(), self.l3.copy())

    def edge_lists(self) -> Tuple[str, str, str]:
        """Returns each layer in the ``u v`` per line edge-list format"""
        return self.l1.edge_list_text(), self.l2.edge_list_text(), self.l3.edge_list_text()

    def __eq__(self, other) -> bool:
        if not isinstance(other, LayeredNetwork):
            return NotImplemented
        return self.layers == other.layers

    def __repr__(self) -> str:
        return f"LayeredNetwork(l1={self.l1!r}, l2={self.l2!r}, l3={self.l3!r})"


def gaussian_gate(histogram: HopHistogram, max_skew: float) -> Optional[str]:
    """Check that a hop-count histogram looks Gaussian.

    Returns:
        str | None: The name of the failed gate, or None when both pass.
    """
    mode = histogram.mode
    if mode is None or mode == 1 or mode == histogram.max_hop:
        return "interior-mode"
    if abs(histogram.skewness()) > max_skew:
        return "skewness"
    return None


def build_l1(
    cfg: MlcnConfig, rng: random.Random, logger: Optional[logging.Logger] = None
) -> Graph:
    """Draw a connected ER graph whose hop counts pass :func:`gaussian_gate`.

    Raises:
        GenerationError: no candidate passed within `cfg.gauss_attempts`.
    """
    if logger is None:
        logger = logging.getLogger()

    reason = "connected"
    for attempt in range(1, cfg.gauss_attempts + 1):
        candidate = gen_er_min_degree(
            cfg.n, cfg.l1_p, rng, max_attempts=cfg.er_attempts, logger=logger
        )
        if not nx.is_connected(candidate.nx):
            reason = "connected"
        else:
            reason = gaussian_gate(hop_histogram(candidate), cfg.gauss_max_skew)
            if reason is None:
                logger.debug("- l1 accepted after %d attempts (tne=%d)", attempt, candidate.tne)
                return candidate
        logger.debug("- rejected l1 candidate %d: %s", attempt, reason)

    raise GenerationError(
        f"no L1 candidate passed the hop-count gate in {cfg.gauss_attempts} attempts",
        reason,
    )


def prune_unsupported(upper: Graph, lower: Graph) -> int:
    """Remove `upper` edges whose endpoints are disconnected in `lower`.

    Returns:
        int: The number of edges removed.
    """
    labels = lower.component_labels()
    doomed = [(u, v) for u, v in upper.edges if labels[u] != labels[v]]
    for u, v in doomed:
        upper.remove_edge(u, v)
    return len(doomed)


def build_l2(cfg: MlcnConfig, l1: Graph, rng: random.Random) -> Graph:
    """Draw ER(n, l2_p) over the live vertices and prune it against `l1`"""
    l2 = gen_er(cfg.n, cfg.l2_p, rng, live=l1.live_vertices)
    prune_unsupported(l2, l1)
    return l2


def build_l3(cfg: MlcnConfig, l2: Graph, rng: random.Random) -> Graph:
    """Draw a scale-free graph and prune it against `l2`"""
    draw = gen_scale_free(cfg.n, cfg.l3_m, rng)
    edges = (e for e in draw.edges if l2.is_live(e[0]) and l2.is_live(e[1]))
    l3 = Graph(cfg.n, edges, dead=l2.dead)
    prune_unsupported(l3, l2)
    return l3


def build_network(
    cfg: MlcnConfig, streams: LayerStreams, logger: Optional[logging.Logger] = None
) -> LayeredNetwork:
    l1 = build_l1(cfg, streams.l1, logger)
    l2 = build_l2(cfg, l1, streams.l2)
    l3 = build_l3(cfg, l2, streams.l3)
    return LayeredNetwork(l1, l2, l3)


def regenerate_upper(
    net: LayeredNetwork, cfg: MlcnConfig, streams: LayerStreams
) -> LayeredNetwork:
    """Replace L2 and L3 with fresh draws supported by the current L1"""
    l1 = net.l1.copy()
    l2 = build_l2(cfg, l1, streams.l2)
    l3 = build_l3(cfg, l2, streams.l3)
    return LayeredNetwork(l1, l2, l3)


def _propagate(net: LayeredNetwork):
    prune_unsupported(net.l2, net.l1)
    prune_unsupported(net.l3, net.l2)


def propagate_failures(net: LayeredNetwork) -> LayeredNetwork:
    """One bottom-up pruning pass: L2 against L1, then L3 against the pruned L2.

    Dependencies only point upward, so one pass reaches the fixpoint and a
    second application changes nothing.
    """
    result = net.copy()
    _propagate(result)
    return result


def remove_l1_edges(net: LayeredNetwork, edges: Iterable[Edge]) -> LayeredNetwork:
    """Fail a batch of L1 edges, then propagate once"""
    result = net.copy()
    for u, v in edges:
        if not result.l1.has_edge(u, v):
            raise ArgumentError(f"edge ({u}, {v}) is not an L1 edge")
        result.l1.remove_edge(u, v)
    _propagate(result)
    return result


def remove_l1_edge(net: LayeredNetwork, e: Edge) -> LayeredNetwork:
    return remove_l1_edges(net, [e])


def remove_nodes(net: LayeredNetwork, vertices: Iterable[Vertex]) -> LayeredNetwork:
    """Fail a batch of vertices in every layer, then propagate once"""
    result = net.copy()
    for v in vertices:
        if not result.l1.is_live(v):
            raise ArgumentError(f"vertex {v} is already dead or out of range")
        for layer in result.layers:
            layer.kill(v)
    _propagate(result)
    return result


def remove_node(net: LayeredNetwork, v: Vertex) -> LayeredNetwork:
    return remove_nodes(net, [v])


def dependency_violations(net: LayeredNetwork) -> List[Tuple[str, Edge]]:
    """Scan every upper-layer edge for a supporting path in the layer below"""
    violations = []
    for name, upper, lower in (("L2", net.l2, net.l1), ("L3", net.l3, net.l2)):
        labels = lower.component_labels()
        for u, v in upper.edges:
            if labels[u] != labels[v]:
                violations.append((name, (u, v)))
    for v in net.dead:
        for name, layer in zip(LAYERS, net.layers):
            if layer.is_live(v):
                violations.append((name, (v, v)))
    return violations


def service_hop_histogram(l1: Graph, l2: Graph) -> HopHistogram:
    """L1 hop count of the shortest route under each L2 edge"""
    counts: dict = {}
    by_source: dict = {}
    for u, v in l2.edges:
        by_source.setdefault(u, []).append(v)
    for u, targets in sorted(by_source.items()):
        if not l1.is_live(u):
            continue
        dist = bfs_count(l1, u).dist
        for v in targets:
            if dist[v] != UNREACHABLE:
                counts[dist[v]] = counts.get(dist[v], 0) + 1
    return HopHistogram(dict(sorted(counts.items())))
