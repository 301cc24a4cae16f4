"""Phase 3: weigh network edges and extend the taxonomy by path search.

Every edge gets an is-a probability from the kind-matched classifier (or
1.0 under the uniform baseline). For each node still lacking a hypernym,
the k most probable simple paths to the projected taxonomy's node set are
found, and their edges join the output. A path's probability is the
product of its edge probabilities; ties break on fewer hops, then on the
lexicographically smallest node sequence, making results total-ordered.

Comparing float products (or summed -log costs) can invert genuinely equal
probabilities through rounding, so path comparisons here use exact dyadic
arithmetic: every float is num / 2**exp with integers, products stay
exact, and the tie rules fire exactly when values are mathematically
equal. Maximizing the product is then provably identical to minimizing
the -log sum.

The k-best search is a deviation (spur) search over loopless paths. Its
1-best subroutine runs a value-only Dijkstra from the target set over
reversed edges, then reconstructs the lexicographically smallest optimal
path greedily forward; target nodes are absorbing, so no path passes
through one target on the way to another.
"""

from __future__ import annotations

import heapq
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .classifier import LinearEdgeModel, predict_proba
from .errors import EmptyProjectedTaxonomy, ProjectedEdgeNotInGraph
from .graph import EdgeKind, NodeKind, Provenance, TaxoEdge, Taxonomy, WcnGraph, edge_kind


@dataclass(frozen=True)
class InductionConfig:
    k: int = 1               # paths per uncovered node
    epsilon: float = 1e-6    # probability clamp floor
    uniform: bool = False    # baseline: every edge weight 1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must be in (0, 1)")


class Dyadic:
    """Exact nonnegative dyadic rational: num / 2**exp.

    Floats are dyadic, so conversion is lossless; products and comparisons
    never round. Not normalized (no gcd), which keeps multiplication to a
    single integer multiply.
    """

    __slots__ = ("num", "exp")

    def __init__(self, num: int, exp: int):
        self.num = num
        self.exp = exp

    @classmethod
    def from_float(cls, x: float) -> "Dyadic":
        if x < 0.0:
            raise ValueError("negative probability")
        num, den = x.as_integer_ratio()
        return cls(num, den.bit_length() - 1)

    def __mul__(self, other: "Dyadic") -> "Dyadic":
        return Dyadic(self.num * other.num, self.exp + other.exp)

    def _aligned(self, other: "Dyadic") -> tuple[int, int]:
        if self.exp >= other.exp:
            return self.num, other.num << (self.exp - other.exp)
        return self.num << (other.exp - self.exp), other.num

    def __eq__(self, other):
        if not isinstance(other, Dyadic):
            return NotImplemented
        a, b = self._aligned(other)
        return a == b

    def __lt__(self, other: "Dyadic") -> bool:
        a, b = self._aligned(other)
        return a < b

    def __gt__(self, other: "Dyadic") -> bool:
        a, b = self._aligned(other)
        return a > b

    def __float__(self) -> float:
        return float(Fraction(self.num, 1 << self.exp))

    def __repr__(self):
        return f"Dyadic({self.num}, {self.exp})"


_ONE = Dyadic(1, 0)


class _Cost:
    """Path value ordered by probability descending, then hops ascending."""

    __slots__ = ("prob", "hops")

    def __init__(self, prob: Dyadic, hops: int):
        self.prob = prob
        self.hops = hops

    def extend(self, p: Dyadic) -> "_Cost":
        return _Cost(self.prob * p, self.hops + 1)

    def __eq__(self, other):
        if not isinstance(other, _Cost):
            return NotImplemented
        return self.hops == other.hops and self.prob == other.prob

    def __lt__(self, other: "_Cost") -> bool:
        if self.prob != other.prob:
            return self.prob > other.prob
        return self.hops < other.hops

    def __repr__(self):
        return f"_Cost({float(self.prob)}, hops={self.hops})"


@dataclass(frozen=True)
class ScoredPath:
    nodes: tuple[str, ...]
    probability: float
    hops: int

    def edges(self) -> list[tuple[str, str]]:
        return list(zip(self.nodes, self.nodes[1:]))


class WeightedGraph:
    """A category network plus one is-a probability per edge."""

    def __init__(self, graph: WcnGraph, prob: dict[tuple[str, str], float]):
        for child, parent in graph.edges():
            p = prob.get((child, parent))
            if p is None:
                raise ValueError(f"edge without probability: {child!r} -> {parent!r}")
            if not 0.0 < p <= 1.0:
                raise ValueError(f"edge probability out of (0, 1]: {p}")
        self.graph = graph
        self.prob = prob
        self._rev: dict[str, list[str]] = {}
        for child, parent in graph.edges():
            self._rev.setdefault(parent, []).append(child)

    def parents(self, node: str) -> list[str]:
        return self.graph.parents(node)

    def children_of(self, node: str) -> list[str]:
        return self._rev.get(node, [])


def weigh_edges(
    graph: WcnGraph,
    model_ec: LinearEdgeModel,
    model_cc: LinearEdgeModel,
    cfg: InductionConfig = InductionConfig(),
) -> WeightedGraph:
    """Score every edge with its kind's classifier, clamped to [eps, 1-eps].

    With cfg.uniform the classifiers are ignored and every edge gets 1.0.
    """
    prob: dict[tuple[str, str], float] = {}
    for child, parent in graph.edges():
        if cfg.uniform:
            p = 1.0
        else:
            kind = edge_kind(graph, child, parent)
            model = model_ec if kind is EdgeKind.ENTITY_TO_CATEGORY else model_cc
            raw = predict_proba(model, graph.title(child), graph.title(parent))
            p = min(max(raw, cfg.epsilon), 1.0 - cfg.epsilon)
        prob[(child, parent)] = p
    return WeightedGraph(graph, prob)


class _PathFinder:
    """k-best simple paths from one start to an absorbing target set."""

    def __init__(self, weighted: WeightedGraph, targets: frozenset[str]):
        self.weighted = weighted
        self.targets = targets
        self._edge_prob: dict[tuple[str, str], Dyadic] = {
            e: Dyadic.from_float(p) for e, p in weighted.prob.items()
        }
        self._base_dist: dict[str, _Cost] | None = None

    def base_dist(self) -> dict[str, _Cost]:
        if self._base_dist is None:
            self._base_dist = self._dist(frozenset(), frozenset())
        return self._base_dist

    def _dist(
        self, banned_nodes: frozenset[str], banned_edges: frozenset[tuple[str, str]]
    ) -> dict[str, _Cost]:
        """Best (probability, hops) from every node to the target set.

        Dijkstra over reversed edges; values only. Dropping a node into a
        cycle always costs hops, so walk-optima equal simple-path optima
        and no simplicity bookkeeping is needed here.
        """
        dist: dict[str, _Cost] = {}
        heap: list[tuple[_Cost, str]] = []
        for t in sorted(self.targets):
            if t not in banned_nodes:
                heap.append((_Cost(_ONE, 0), t))
        heapq.heapify(heap)
        while heap:
            cost, node = heapq.heappop(heap)
            if node in dist:
                continue
            dist[node] = cost
            for child in self.weighted.children_of(node):
                # Targets absorb: a path never continues through one.
                if child in dist or child in self.targets or child in banned_nodes:
                    continue
                if (child, node) in banned_edges:
                    continue
                heapq.heappush(heap, (cost.extend(self._edge_prob[(child, node)]), child))
        return dist

    def _best_path(
        self,
        start: str,
        banned_nodes: frozenset[str],
        banned_edges: frozenset[tuple[str, str]],
        dist: dict[str, _Cost] | None = None,
    ) -> tuple[_Cost, tuple[str, ...]] | None:
        """Total-order minimum path from start, or None if unreachable.

        Walks forward from start along cost-tight edges, picking the
        smallest node id at each step; that yields the lexicographic
        minimum among the (probability, hops)-optimal paths, and any
        tight walk is automatically simple.
        """
        if dist is None:
            dist = self._dist(banned_nodes, banned_edges)
        total = dist.get(start)
        if total is None:
            return None
        nodes = [start]
        remaining = total
        current = start
        while current not in self.targets:
            step = None
            for parent in self.weighted.parents(current):
                if parent in banned_nodes or (current, parent) in banned_edges:
                    continue
                d = dist.get(parent)
                if d is None or d.hops + 1 != remaining.hops:
                    continue
                if step is not None and parent >= step[0]:
                    continue
                if d.prob * self._edge_prob[(current, parent)] == remaining.prob:
                    step = (parent, d)
            if step is None:  # cannot happen when dist[start] is finite
                raise RuntimeError(f"no cost-tight edge out of {current!r}")
            nodes.append(step[0])
            current, remaining = step
        return total, tuple(nodes)

    def top_k(self, start: str, k: int) -> list[ScoredPath]:
        first = self._best_path(start, frozenset(), frozenset(), dist=self.base_dist())
        if first is None:
            return []
        accepted = [first]
        candidates: list[tuple[_Cost, tuple[str, ...]]] = []
        seen = {first[1]}
        while len(accepted) < k:
            base_cost, base_nodes = accepted[-1]
            prefix = [_ONE]
            for child, parent in zip(base_nodes, base_nodes[1:]):
                prefix.append(prefix[-1] * self._edge_prob[(child, parent)])
            for j in range(len(base_nodes) - 1):
                root = base_nodes[: j + 1]
                banned_nodes = frozenset(base_nodes[:j])
                banned_edges = frozenset(
                    (p[j], p[j + 1]) for _, p in accepted if p[: j + 1] == root
                )
                spur = self._best_path(base_nodes[j], banned_nodes, banned_edges)
                if spur is None:
                    continue
                spur_cost, spur_nodes = spur
                cand_nodes = root[:-1] + spur_nodes
                if cand_nodes in seen:
                    continue
                seen.add(cand_nodes)
                cand_cost = _Cost(prefix[j] * spur_cost.prob, j + spur_cost.hops)
                heapq.heappush(candidates, (cand_cost, cand_nodes))
            if not candidates:
                break
            accepted.append(heapq.heappop(candidates))
        return [
            ScoredPath(nodes, float(cost.prob), cost.hops) for cost, nodes in accepted
        ]


def top_k_paths(
    weighted: WeightedGraph, start: str, targets: set[str], k: int
) -> list[ScoredPath]:
    """The k most probable simple paths from start to any target.

    Returned in order: probability descending, hops ascending, node
    sequence ascending. Fewer than k paths (possibly none) exist when the
    graph runs out of alternatives.
    """
    if not targets:
        raise ValueError("targets must be nonempty")
    if start in targets:
        raise ValueError("start must not be a target")
    if k < 1:
        raise ValueError("k must be >= 1")
    return _PathFinder(weighted, frozenset(targets)).top_k(start, k)


@dataclass(frozen=True)
class InductionReport:
    entity_coverage: float
    category_coverage: float
    uncovered: list[str]
    edges_added: int
    k: int
    uniform: bool

    def to_dict(self) -> dict:
        return {
            "entity_coverage": self.entity_coverage,
            "category_coverage": self.category_coverage,
            "uncovered": self.uncovered,
            "edges_added": self.edges_added,
            "k": self.k,
            "uniform": self.uniform,
        }


def induce(
    projected: Taxonomy,
    weighted: WeightedGraph,
    cfg: InductionConfig = InductionConfig(),
    threads: int = 1,
) -> tuple[Taxonomy, InductionReport]:
    """Extend the projected taxonomy with best-path edges per uncovered node.

    The target set (all nodes touched by the projected taxonomy) is frozen
    before iteration, so per-node searches are independent and the result
    does not depend on node order or thread count; results merge in
    ascending node id order. An edge found by several paths keeps its
    maximum score.
    """
    if len(projected) == 0:
        raise EmptyProjectedTaxonomy("projected taxonomy has no edges")
    graph = weighted.graph
    for edge in projected.edges():
        if not graph.has_edge(edge.child, edge.parent):
            raise ProjectedEdgeNotInGraph(edge.child, edge.parent)

    targets = frozenset(projected.node_ids())
    finder = _PathFinder(weighted, targets)
    finder.base_dist()  # materialize before any parallel use
    starts = [n for n in graph.node_ids() if not projected.covered(n)]

    def search(start: str) -> list[ScoredPath]:
        if start in targets:
            # A node can appear in the taxonomy only as a parent and still
            # lack a hypernym of its own; it must not be its own target.
            rest = targets - {start}
            if not rest:
                return []
            return _PathFinder(weighted, rest).top_k(start, cfg.k)
        return finder.top_k(start, cfg.k)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(search, starts))
    else:
        results = [search(s) for s in starts]

    edges: dict[tuple[str, str], TaxoEdge] = {
        (e.child, e.parent): e for e in projected.edges()
    }
    for paths in results:
        for path in paths:
            for child, parent in path.edges():
                pair = (child, parent)
                existing = edges.get(pair)
                if existing is None or path.probability > existing.score:
                    edges[pair] = TaxoEdge(child, parent, path.probability, Provenance.INDUCED)

    final = Taxonomy(edges.values())
    report = InductionReport(
        entity_coverage=_coverage(graph, final, NodeKind.ENTITY),
        category_coverage=_coverage(graph, final, NodeKind.CATEGORY),
        uncovered=[n for n in graph.node_ids() if not final.covered(n)],
        edges_added=len(final) - len(projected),
        k=cfg.k,
        uniform=cfg.uniform,
    )
    return final, report


def wcn_baseline(graph: WcnGraph) -> Taxonomy:
    """The unfiltered network itself, as a taxonomy (score 1, induced)."""
    return Taxonomy(
        TaxoEdge(child, parent, 1.0, Provenance.INDUCED) for child, parent in graph.edges()
    )


def _coverage(graph: WcnGraph, taxonomy: Taxonomy, kind: NodeKind) -> float:
    ids = graph.node_ids(kind)
    if not ids:
        return 0.0
    return sum(1 for n in ids if taxonomy.covered(n)) / len(ids)
