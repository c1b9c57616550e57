"""Exhaustive shortest-path enumeration for small graphs.

Exponential in the graph size; meant for graphs of about ten vertices, as a
reference the BFS and betweenness code is checked against. Results are exact
(:class:`fractions.Fraction`).
"""
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from mlcn_sim.graph import Graph, normalize_edge


Path = Tuple[int, ...]


def _simple_paths(g: Graph, source: int, target: int) -> List[Path]:
    found: List[Path] = []
    stack = [(source, (source,))]
    while stack:
        vertex, path = stack.pop()
        if vertex == target:
            found.append(path)
            continue
        for w in g.neighbors(vertex):
            if w not in path:
                stack.append((w, path + (w,)))
    return found


def geodesics(g: Graph, x: int, y: int) -> List[Path]:
    paths = _simple_paths(g, x, y)
    if not paths:
        return []
    shortest = min(len(p) for p in paths)
    return sorted(p for p in paths if len(p) == shortest)


def all_geodesics(g: Graph) -> Dict[Tuple[int, int], List[Path]]:
    """Every shortest path of every unordered reachable pair of live vertices"""
    live = g.live_vertices
    result = {}
    for i, x in enumerate(live):
        for y in live[i + 1:]:
            paths = geodesics(g, x, y)
            if paths:
                result[(x, y)] = paths
    return result


def brute_sigma(g: Graph, s: int) -> List[int]:
    return [1 if v == s else len(geodesics(g, s, v)) for v in range(g.n)]


def brute_aspl(g: Graph) -> Optional[Fraction]:
    pairs = all_geodesics(g)
    if not pairs:
        return None
    total = sum(len(paths[0]) - 1 for paths in pairs.values())
    return Fraction(total, len(pairs))


def brute_tspc(g: Graph) -> int:
    return sum(len(paths) for paths in all_geodesics(g).values())


def brute_node_betweenness(g: Graph) -> Dict[int, Fraction]:
    scores = {v: Fraction(0) for v in g.live_vertices}
    for (x, y), paths in all_geodesics(g).items():
        for v in scores:
            if v in (x, y):
                continue
            through = sum(1 for p in paths if v in p)
            scores[v] += Fraction(through, len(paths))
    return scores


def brute_edge_betweenness(g: Graph) -> Dict[Tuple[int, int], Fraction]:
    scores = {e: Fraction(0) for e in g.edges}
    for paths in all_geodesics(g).values():
        share = Fraction(1, len(paths))
        for p in paths:
            for u, v in zip(p, p[1:]):
                scores[normalize_edge(u, v)] += share
    return scores
