"""Naive dependency pruning, repeated until nothing changes."""
from mlcn_sim.graph import Graph
from mlcn_sim.network import LayeredNetwork


def reachable(g: Graph, u: int, v: int) -> bool:
    seen = {u}
    frontier = [u]
    while frontier:
        w = frontier.pop()
        if w == v:
            return True
        for x in g.neighbors(w):
            if x not in seen:
                seen.add(x)
                frontier.append(x)
    return False


def naive_fixpoint(net: LayeredNetwork) -> LayeredNetwork:
    result = net.copy()
    changed = True
    while changed:
        changed = False
        for upper, lower in ((result.l2, result.l1), (result.l3, result.l2)):
            for u, v in upper.edges:
                if not reachable(lower, u, v):
                    upper.remove_edge(u, v)
                    changed = True
    return result
