from mlcn_sim.oracle.paths import (
    all_geodesics,
    brute_aspl,
    brute_edge_betweenness,
    brute_node_betweenness,
    brute_sigma,
    brute_tspc,
)
from mlcn_sim.oracle.propagation import naive_fixpoint, reachable

__all__ = [
    "all_geodesics",
    "brute_aspl",
    "brute_edge_betweenness",
    "brute_node_betweenness",
    "brute_sigma",
    "brute_tspc",
    "naive_fixpoint",
    "reachable",
]
