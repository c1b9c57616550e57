"""Undirected simple graphs, random generators and path metrics.

Every layer of the network is a :class:`Graph` over the dense vertex ids
``0..n-1``. Vertices are never renumbered: failing a node marks it dead and
strips its edges, so per-step records stay joinable by id.
"""
from collections import Counter, deque
from dataclasses import dataclass, field
import logging
import random
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy import stats

from ._types import Edge, Histogram, Vertex
from .exceptions import ArgumentError, GenerationError, UndefinedMetric


UNREACHABLE = -1


def normalize_edge(u: Vertex, v: Vertex) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """An undirected simple graph with stable vertex ids.

    Args:
        n (int):
            Vertex count. Vertices are the ids ``0..n-1``.
        edges (Iterable[Edge]):
            Initial edges. Duplicates collapse into one edge.
        dead (Iterable[int]):
            Vertices that are already failed.
    """

    def __init__(self, n: int, edges: Iterable[Edge] = (), dead: Iterable[Vertex] = ()):
        if n < 0:
            raise ArgumentError(f"vertex count must be non-negative, got {n}")
        self._nx = nx.Graph()
        self._nx.add_nodes_from(range(n))
        self._dead: set = set()
        for v in dead:
            self.kill(v)
        for u, v in edges:
            self.add_edge(u, v)

    @classmethod
    def from_networkx(cls, graph: nx.Graph, n: Optional[int] = None) -> "Graph":
        """Wrap a networkx graph whose nodes are integer ids below `n`"""
        if n is None:
            n = max(graph.nodes, default=-1) + 1
        return cls(n, graph.edges)

    @classmethod
    def from_edge_list(cls, text: str, n: int) -> "Graph":
        """Parse the ``u v`` per line edge-list format"""
        edges = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                u, v = (int(part) for part in line.split())
            except ValueError:
                raise ArgumentError(f"malformed edge on line {lineno}: {line!r}") from None
            edges.append((u, v))
        return cls(n, edges)

    @property
    def n(self) -> int:
        return self._nx.number_of_nodes()

    @property
    def nx(self) -> nx.Graph:
        """The underlying networkx graph. Treat it as read-only."""
        return self._nx

    @property
    def edges(self) -> List[Edge]:
        """Returns all edges as ascending ``(u, v)`` pairs with ``u < v``"""
        return sorted(normalize_edge(u, v) for u, v in self._nx.edges)

    @property
    def tne(self) -> int:
        return self._nx.number_of_edges()

    @property
    def dead(self) -> frozenset:
        return frozenset(self._dead)

    @property
    def live_vertices(self) -> List[Vertex]:
        return [v for v in range(self.n) if v not in self._dead]

    def is_live(self, v: Vertex) -> bool:
        return 0 <= v < self.n and v not in self._dead

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return self._nx.has_edge(u, v)

    def degree(self, v: Vertex) -> int:
        return self._nx.degree[v]

    def neighbors(self, v: Vertex) -> List[Vertex]:
        return sorted(self._nx.adj[v])

    def add_edge(self, u: Vertex, v: Vertex):
        if u == v:
            raise ArgumentError(f"self-loop on vertex {u}")
        for w in (u, v):
            if not self.is_live(w):
                raise ArgumentError(f"vertex {w} is dead or out of range")
        self._nx.add_edge(u, v)

    def remove_edge(self, u: Vertex, v: Vertex):
        if not self._nx.has_edge(u, v):
            raise ArgumentError(f"edge ({u}, {v}) is not in the graph")
        self._nx.remove_edge(u, v)

    def kill(self, v: Vertex) -> int:
        """Mark a vertex dead and drop its incident edges.

        Returns:
            int: The number of edges removed.
        """
        if not self.is_live(v):
            raise ArgumentError(f"vertex {v} is dead or out of range")
        incident = list(self._nx.edges(v))
        self._nx.remove_edges_from(incident)
        self._dead.add(v)
        return len(incident)

    def copy(self) -> "Graph":
        clone = Graph.__new__(Graph)
        clone._nx = self._nx.copy()
        clone._dead = set(self._dead)
        return clone

    def component_labels(self) -> List[int]:
        """Label every vertex with the smallest id of its connected component"""
        labels = list(range(self.n))
        for component in nx.connected_components(self._nx):
            root = min(component)
            for v in component:
                labels[v] = root
        return labels

    def edge_list_text(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._dead == other._dead and self.edges == other.edges

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, tne={self.tne}, dead={len(self._dead)})"


@dataclass(frozen=True)
class SsspResult:
    """Single-source hop distances and shortest-path counts.

    Unreachable vertices carry ``UNREACHABLE`` distance and a zero count.
    """

    source: Vertex
    dist: Tuple[int, ...]
    sigma: Tuple[int, ...]

    def reachable(self, v: Vertex) -> bool:
        return self.sigma[v] > 0


@dataclass(frozen=True)
class HopHistogram:
    counts: Dict[int, int] = field(default_factory=dict)

    @property
    def pairs(self) -> int:
        return sum(self.counts.values())

    @property
    def mode(self) -> Optional[int]:
        """The most populated hop count; ties go to the shorter hop"""
        if not self.counts:
            return None
        return min(self.counts, key=lambda hop: (-self.counts[hop], hop))

    @property
    def max_hop(self) -> Optional[int]:
        return max(self.counts) if self.counts else None

    def sample(self) -> np.ndarray:
        hops = sorted(self.counts)
        return np.repeat(np.array(hops, dtype=float), [self.counts[h] for h in hops])

    def skewness(self) -> float:
        """Sample skewness of the hop distribution, 0 when it has no spread"""
        if len(self.counts) < 2:
            return 0.0
        return float(stats.skew(self.sample()))

    def as_dict(self) -> Dict[str, int]:
        return {str(hop): count for hop, count in sorted(self.counts.items())}


@dataclass(frozen=True)
class PathCensus:
    """Everything one all-sources BFS sweep learns about a graph.

    Pairs are unordered and only reachable pairs of live vertices count.
    """

    pairs: int
    total_hops: int
    tspc: int
    histogram: HopHistogram

    @property
    def aspl(self) -> Optional[float]:
        return self.total_hops / self.pairs if self.pairs else None


def _bfs(adj, n: int, source: Vertex) -> Tuple[List[int], List[int]]:
    dist = [UNREACHABLE] * n
    sigma = [0] * n
    dist[source] = 0
    sigma[source] = 1
    queue = deque([source])
    while queue:
        v = queue.popleft()
        next_hop = dist[v] + 1
        for w in adj[v]:
            if dist[w] == UNREACHABLE:
                dist[w] = next_hop
                queue.append(w)
            if dist[w] == next_hop:
                sigma[w] += sigma[v]
    return dist, sigma


def bfs_count(g: Graph, s: Vertex) -> SsspResult:
    """Breadth-first search from `s` counting shortest paths.

    Args:
        g (:class:`Graph`):
            The graph to search.
        s (int):
            A live source vertex.

    Returns:
        :class:`SsspResult`
    """
    if not g.is_live(s):
        raise ArgumentError(f"source vertex {s} is dead or out of range")
    dist, sigma = _bfs(g.nx.adj, g.n, s)
    return SsspResult(source=s, dist=tuple(dist), sigma=tuple(sigma))


def path_census(g: Graph) -> PathCensus:
    adj = g.nx.adj
    n = g.n
    pairs = 0
    total_hops = 0
    tspc = 0
    counts: Counter = Counter()
    for s in g.live_vertices:
        if not adj[s]:
            continue
        dist, sigma = _bfs(adj, n, s)
        for v in range(s + 1, n):
            d = dist[v]
            if d > 0:
                pairs += 1
                total_hops += d
                tspc += sigma[v]
                counts[d] += 1
    return PathCensus(
        pairs=pairs,
        total_hops=total_hops,
        tspc=tspc,
        histogram=HopHistogram(dict(sorted(counts.items()))),
    )


def aspl(g: Graph) -> float:
    """Mean hop distance over unordered reachable pairs.

    Raises:
        UndefinedMetric: the graph has no reachable pair.
    """
    census = path_census(g)
    if census.aspl is None:
        raise UndefinedMetric("no reachable vertex pair")
    return census.aspl


def tspc(g: Graph) -> int:
    return path_census(g).tspc


def tne(g: Graph) -> int:
    return g.tne


def hop_histogram(g: Graph) -> HopHistogram:
    return path_census(g).histogram


def degree_histogram(g: Graph) -> Histogram:
    counts = Counter(g.degree(v) for v in g.live_vertices)
    return dict(sorted(counts.items()))


def gen_er(
    n: int, p: float, rng: random.Random, live: Optional[Sequence[Vertex]] = None
) -> Graph:
    """Erdos-Renyi G(n, p), optionally drawn over a subset of live vertices only"""
    if live is None:
        live = range(n)
    live = list(live)
    draw = nx.gnp_random_graph(len(live), p, seed=rng)
    dead = set(range(n)) - set(live)
    return Graph(n, ((live[u], live[v]) for u, v in draw.edges), dead=dead)


def gen_er_min_degree(
    n: int,
    p: float,
    rng: random.Random,
    *,
    max_attempts: int = 1000,
    logger: Optional[logging.Logger] = None,
) -> Graph:
    """Erdos-Renyi G(n, p) conditioned on every vertex having an edge.

    The whole graph is resampled until no vertex is isolated, which keeps the
    G(n, p) distribution conditional on that event.

    Raises:
        ArgumentError: n < 2 or p outside (0, 1].
        GenerationError: no sample without isolated vertices within `max_attempts`.
    """
    if n < 2:
        raise ArgumentError(f"n must be at least 2, got {n}")
    if not 0 < p <= 1:
        raise ArgumentError(f"p must lie in (0, 1], got {p}")
    if logger is None:
        logger = logging.getLogger()

    for attempt in range(1, max_attempts + 1):
        g = gen_er(n, p, rng)
        if all(g.degree(v) > 0 for v in range(n)):
            return g
        logger.debug("- er draw %d has isolated vertices, resampling", attempt)

    raise GenerationError(
        f"no ER({n}, {p}) sample without isolated vertices in {max_attempts} attempts",
        "min-degree",
    )


def gen_scale_free(n: int, m: int, rng: random.Random) -> Graph:
    """Barabasi-Albert preferential attachment grown from a clique of m+1 vertices.

    The result has exactly ``m(m+1)/2 + (n-m-1)m`` edges.
    """
    if n < 2:
        raise ArgumentError(f"n must be at least 2, got {n}")
    if not 1 <= m < n:
        raise ArgumentError(f"m must satisfy 1 <= m < n, got m={m} n={n}")
    draw = nx.barabasi_albert_graph(n, m, seed=rng, initial_graph=nx.complete_graph(m + 1))
    return Graph.from_networkx(draw, n)
