"""Small hand-checkable graphs with oracle-computed expectations."""
import json
from pathlib import Path
from typing import Any, Callable, Dict, List, Union

from .exceptions import EmissionError
from .graph import Graph
from .network import LayeredNetwork, remove_l1_edge
from .oracle import (
    brute_aspl,
    brute_edge_betweenness,
    brute_node_betweenness,
    brute_tspc,
    naive_fixpoint,
)
from .oracle.paths import all_geodesics


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """Vertex 0 joined to every leaf"""
    return Graph(leaves + 1, ((0, leaf) for leaf in range(1, leaves + 1)))


def two_components() -> Graph:
    return Graph(4, [(0, 1), (2, 3)])


def chain_network() -> LayeredNetwork:
    """Failing L1 edge (1, 2) strands L2 edge (1, 2), which strands L3 edge (0, 2)"""
    return LayeredNetwork(
        path_graph(4),
        Graph(4, [(0, 1), (1, 2)]),
        Graph(4, [(0, 1), (0, 2)]),
    )


GRAPHS: Dict[str, Callable[[], Graph]] = {
    "p3": lambda: path_graph(3),
    "p4": lambda: path_graph(4),
    "c4": lambda: cycle_graph(4),
    "star": lambda: star_graph(3),
    "two_components": two_components,
}

CHAIN_FAILURE = (1, 2)


def _ranked(scores: Dict) -> List:
    return sorted(scores, key=lambda key: (-scores[key], key))


def graph_sidecar(g: Graph) -> Dict[str, Any]:
    """Expected values of one fixture graph, from exhaustive enumeration"""
    aspl = brute_aspl(g)
    nbc = brute_node_betweenness(g)
    ebc = brute_edge_betweenness(g)
    hops: Dict[str, int] = {}
    for paths in all_geodesics(g).values():
        key = str(len(paths[0]) - 1)
        hops[key] = hops.get(key, 0) + 1
    return {
        "n": g.n,
        "tne": g.tne,
        "aspl": None if aspl is None else float(aspl),
        "aspl_fraction": None if aspl is None else str(aspl),
        "tspc": brute_tspc(g),
        "hop_histogram": dict(sorted(hops.items())),
        "node_betweenness": {str(v): float(s) for v, s in nbc.items()},
        "edge_betweenness": {f"{u} {v}": float(s) for (u, v), s in ebc.items()},
        "top_node": _ranked(nbc)[0] if nbc else None,
        "top_edge": list(_ranked(ebc)[0]) if ebc else None,
    }


def chain_sidecar(net: LayeredNetwork) -> Dict[str, Any]:
    after = naive_fixpoint(remove_l1_edge(net, CHAIN_FAILURE))
    return {
        "n": net.n,
        "fail_l1_edge": list(CHAIN_FAILURE),
        "after": {
            name: [list(e) for e in layer.edges]
            for name, layer in zip(("L1", "L2", "L3"), after.layers)
        },
    }


def _write(path: Path, text: str):
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as _err:
        raise EmissionError(f"unable to write fixture ({_err.strerror})", str(path)) from _err


def write_fixtures(out_dir: Union[str, Path]) -> List[Path]:
    """Write every fixture as an edge list plus a JSON sidecar.

    Returns:
        List[Path]: The written files, in writing order.
    """
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as _err:
        raise EmissionError(f"unable to create directory ({_err.strerror})", str(out)) from _err

    written = []
    for name, factory in GRAPHS.items():
        g = factory()
        edges_path = out / f"{name}.edges"
        sidecar_path = out / f"{name}.json"
        _write(edges_path, g.edge_list_text())
        _write(sidecar_path, json.dumps(graph_sidecar(g), sort_keys=True, indent=2) + "\n")
        written += [edges_path, sidecar_path]

    net = chain_network()
    for name, layer in zip(("l1", "l2", "l3"), net.layers):
        layer_path = out / f"chain.{name}.edges"
        _write(layer_path, layer.edge_list_text())
        written.append(layer_path)
    chain_path = out / "chain.json"
    _write(chain_path, json.dumps(chain_sidecar(net), sort_keys=True, indent=2) + "\n")
    written.append(chain_path)
    return written
