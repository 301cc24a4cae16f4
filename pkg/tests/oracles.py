"""Independent brute-force oracles for the path-search tests.

These deliberately avoid the library's search machinery: paths are found
by exhaustive DFS enumeration, probabilities are exact Fractions built
from the float edge weights, and the ordering is applied wholesale via
sort. Slow but obviously correct on small graphs.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction


def enumerate_paths(weighted, start: str, targets: set[str]):
    """Every simple path from start to its first target, with exact
    probability; sorted by (probability desc, hops asc, nodes asc)."""
    results: list[tuple[Fraction, int, tuple[str, ...]]] = []

    def walk(node, visited, path, prob):
        if node in targets:
            results.append((prob, len(path) - 1, tuple(path)))
            return  # targets absorb; never continue through one
        for parent in weighted.graph.parents(node):
            if parent in visited:
                continue
            walk(
                parent,
                visited | {parent},
                path + [parent],
                prob * Fraction(*weighted.prob[(node, parent)].as_integer_ratio()),
            )

    if start not in targets:
        walk(start, {start}, [start], Fraction(1))
    results.sort(key=lambda r: (-r[0], r[1], r[2]))
    return results


def random_instance(rng, max_nodes=12, p_edge=0.3, uniform=False):
    """A random weighted digraph plus a (start, targets) query.

    All nodes are categories so any edge direction is legal; self-loops
    are skipped. Probabilities are uniform in [0.05, 0.95], or exactly
    1.0 when `uniform`.
    """
    from taxonet import Node, NodeKind, WcnGraph
    from taxonet.induction import WeightedGraph

    n = rng.randint(4, max_nodes)
    names = [f"n{i:02d}" for i in range(n)]
    nodes = [Node(name, NodeKind.CATEGORY, name) for name in names]
    edges = []
    prob = {}
    for u in names:
        for v in names:
            if u != v and rng.random() < p_edge:
                edges.append((u, v))
                prob[(u, v)] = 1.0 if uniform else rng.uniform(0.05, 0.95)
    weighted = WeightedGraph(WcnGraph(nodes, edges), prob)
    start = rng.choice(names)
    pool = [x for x in names if x != start]
    targets = set(rng.sample(pool, rng.randint(1, min(3, len(pool)))))
    return weighted, start, targets


def bfs_min_hops(graph, start: str, targets: set[str]) -> int | None:
    """Hop count of the shortest path to any target; targets absorb."""
    if start in targets:
        return 0
    queue = deque([(start, 0)])
    seen = {start}
    while queue:
        node, hops = queue.popleft()
        for parent in graph.parents(node):
            if parent in seen:
                continue
            if parent in targets:
                return hops + 1
            seen.add(parent)
            queue.append((parent, hops + 1))
    return None
