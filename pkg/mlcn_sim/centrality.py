"""Exact, unnormalized betweenness centrality of a single layer.

Scores sum over unordered vertex pairs. Edge scores count the endpoint pair
(the pair ``(u, v)`` contributes 1 to edge ``(u, v)``), node scores do not.
Pairs without a path contribute nothing, so scores stay defined while a
layer falls apart.
"""
from typing import Dict, Iterator, List, Tuple

import networkx as nx

from ._types import Edge, RankKey, Vertex
from .graph import Graph, normalize_edge
from .protocols import RankingProt


# Scores equal up to accumulated rounding rank as ties.
SCORE_DECIMALS = 9


class _ScoreMap:
    def __init__(self, scores: Dict):
        self._scores = dict(sorted(scores.items()))

    @property
    def scores(self) -> Dict:
        return dict(self._scores)

    def items(self) -> Iterator[Tuple[RankKey, float]]:
        return iter(self._scores.items())

    def __getitem__(self, key) -> float:
        return self._scores[key]

    def __contains__(self, key) -> bool:
        return key in self._scores

    def __len__(self) -> int:
        return len(self._scores)

    def top(self, k: int) -> List:
        return top_ranked(self, k)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self._scores!r})"


class CentralityMap(_ScoreMap):
    """Node betweenness per live vertex"""

    def __getitem__(self, key: Vertex) -> float:
        return self._scores[key]


class EdgeCentralityMap(_ScoreMap):
    """Edge betweenness per edge, keyed by ``(u, v)`` with ``u < v``"""

    def __getitem__(self, key: Edge) -> float:
        return self._scores[normalize_edge(*key)]

    def __contains__(self, key) -> bool:
        return normalize_edge(*key) in self._scores


def node_betweenness(g: Graph) -> CentralityMap:
    raw = nx.betweenness_centrality(g.nx, normalized=False)
    return CentralityMap({v: float(raw[v]) for v in g.live_vertices})


def edge_betweenness(g: Graph) -> EdgeCentralityMap:
    raw = nx.edge_betweenness_centrality(g.nx, normalized=False)
    return EdgeCentralityMap({normalize_edge(u, v): float(score) for (u, v), score in raw.items()})


def top_ranked(scores: RankingProt, k: int) -> List:
    """Ids ordered by descending score, ties broken by ascending id.

    Args:
        scores (implements :class:`~mlcn_sim.protocols.RankingProt`):
            A node or edge centrality map.
        k (int):
            How many ids to return at most.

    Returns:
        List: ``min(k, len(scores))`` vertex ids or edges.
    """
    if k <= 0:
        return []
    ranked = sorted(
        scores.items(), key=lambda item: (-round(item[1], SCORE_DECIMALS), item[0])
    )
    return [key for key, _ in ranked[:k]]
