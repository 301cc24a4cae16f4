"""Core data types: category network, taxonomies, interlanguage links.

File formats (UTF-8, literal tabs, LF line ends, no header):

    nodes.tsv      id <TAB> kind <TAB> title          kind in {entity, category}
    edges.tsv      child_id <TAB> parent_id           direction: child -> parent
    langlinks.tsv  target_id <TAB> source_id
    taxonomy.tsv   child_id <TAB> parent_id [<TAB> score [<TAB> provenance]]

All structures are immutable after construction and safe to share across
threads. Titles are stored verbatim; normalization is the feature layer's
job.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator

from .errors import (
    DuplicateNodeId,
    ForbiddenEdgeKind,
    MalformedRow,
    NonBijectiveLink,
    SelfLoop,
    UnknownNodeInEdge,
)

logger = logging.getLogger(__name__)


class NodeKind(Enum):
    ENTITY = "entity"
    CATEGORY = "category"


class EdgeKind(Enum):
    ENTITY_TO_CATEGORY = "ec"
    CATEGORY_TO_CATEGORY = "cc"


class Provenance(Enum):
    PROJECTED = "projected"
    INDUCED = "induced"


@dataclass(frozen=True)
class Node:
    id: str
    kind: NodeKind
    title: str


@dataclass(frozen=True)
class TaxoEdge:
    """An accepted is-a edge. Projected edges carry score 1.0."""

    child: str
    parent: str
    score: float = 1.0
    provenance: Provenance = Provenance.PROJECTED

    def __post_init__(self):
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"edge score out of [0,1]: {self.score}")


class WcnGraph:
    """Directed category network: child -> parent means "grouped into".

    Edge lists preserve input order (after dedup); search code relies on
    that order for deterministic tie-breaking. Entity->Entity and
    Category->Entity edges are rejected; cycles among categories are
    allowed.
    """

    def __init__(self, nodes: Iterable[Node], edges: Iterable[tuple[str, str]]):
        self.nodes: dict[str, Node] = {}
        for node in nodes:
            if node.id in self.nodes:
                raise DuplicateNodeId(node.id)
            if not node.id:
                raise ValueError("empty node id")
            if not node.title.strip():
                raise ValueError(f"empty title for node {node.id!r}")
            self.nodes[node.id] = node

        self._parents: dict[str, list[str]] = {}
        seen: set[tuple[str, str]] = set()
        for child, parent in edges:
            if child == parent:
                raise SelfLoop(child)
            if child not in self.nodes or parent not in self.nodes:
                raise UnknownNodeInEdge(child, parent)
            self._check_kinds(child, parent)
            if (child, parent) in seen:
                logger.warning("duplicate edge dropped: %s -> %s", child, parent)
                continue
            seen.add((child, parent))
            self._parents.setdefault(child, []).append(parent)
        self._edge_set = seen

    def _check_kinds(self, child: str, parent: str) -> None:
        ck = self.nodes[child].kind
        pk = self.nodes[parent].kind
        if pk is NodeKind.ENTITY:
            detail = "entity->entity" if ck is NodeKind.ENTITY else "category->entity"
            raise ForbiddenEdgeKind(child, parent, detail)

    def parents(self, child: str) -> list[str]:
        return self._parents.get(child, [])

    def has_edge(self, child: str, parent: str) -> bool:
        return (child, parent) in self._edge_set

    def edges(self) -> Iterator[tuple[str, str]]:
        """All edges, children sorted, parents in stored order."""
        for child in sorted(self._parents):
            for parent in self._parents[child]:
                yield child, parent

    def node_ids(self, kind: NodeKind | None = None) -> list[str]:
        """Node ids in ascending order, optionally filtered by kind."""
        if kind is None:
            return sorted(self.nodes)
        return sorted(n for n, node in self.nodes.items() if node.kind is kind)

    def title(self, node_id: str) -> str:
        return self.nodes[node_id].title

    @property
    def n_edges(self) -> int:
        return len(self._edge_set)


def edge_kind(graph: WcnGraph, child: str, parent: str) -> EdgeKind:
    """Classify an edge by its endpoint kinds."""
    ck = graph.nodes[child].kind
    pk = graph.nodes[parent].kind
    if pk is NodeKind.ENTITY:
        detail = "entity->entity" if ck is NodeKind.ENTITY else "category->entity"
        raise ForbiddenEdgeKind(child, parent, detail)
    if ck is NodeKind.ENTITY:
        return EdgeKind.ENTITY_TO_CATEGORY
    return EdgeKind.CATEGORY_TO_CATEGORY


class Taxonomy:
    """A set of is-a edges with an index for O(1) hypernym lookup."""

    def __init__(self, edges: Iterable[TaxoEdge]):
        self._by_pair: dict[tuple[str, str], TaxoEdge] = {}
        for edge in edges:
            pair = (edge.child, edge.parent)
            if pair in self._by_pair:
                raise ValueError(f"duplicate taxonomy edge: {pair}")
            self._by_pair[pair] = edge
        self._index: dict[str, list[str]] = {}
        for child, parent in sorted(self._by_pair):
            self._index.setdefault(child, []).append(parent)

    def __len__(self) -> int:
        return len(self._by_pair)

    def __contains__(self, pair: tuple[str, str]) -> bool:
        return pair in self._by_pair

    def edges(self) -> list[TaxoEdge]:
        """Edges sorted by (child, parent)."""
        return [self._by_pair[p] for p in sorted(self._by_pair)]

    def edge_pairs(self) -> set[tuple[str, str]]:
        return set(self._by_pair)

    def edge(self, child: str, parent: str) -> TaxoEdge | None:
        return self._by_pair.get((child, parent))

    def hypernyms(self, node_id: str) -> list[str]:
        return self._index.get(node_id, [])

    def covered(self, node_id: str) -> bool:
        """True when the node has at least one hypernym."""
        return node_id in self._index

    def covered_nodes(self) -> set[str]:
        return set(self._index)

    def node_ids(self) -> set[str]:
        """All ids appearing as child or parent of some edge."""
        ids = set(self._index)
        for _, parent in self._by_pair:
            ids.add(parent)
        return ids


class InterlangMap:
    """1:1 partial mapping between target-language and source-language ids."""

    def __init__(self, pairs: Iterable[tuple[str, str]]):
        self._to_source: dict[str, str] = {}
        self._to_target: dict[str, str] = {}
        for target, source in pairs:
            if target in self._to_source:
                raise NonBijectiveLink(target)
            if source in self._to_target:
                raise NonBijectiveLink(source)
            self._to_source[target] = source
            self._to_target[source] = target

    def __len__(self) -> int:
        return len(self._to_source)

    def to_source(self, target_id: str) -> str | None:
        return self._to_source.get(target_id)

    def to_target(self, source_id: str) -> str | None:
        return self._to_target.get(source_id)

    def pairs(self) -> list[tuple[str, str]]:
        return sorted(self._to_source.items())


def _rows(path: Path, n_cols: int) -> Iterator[tuple[int, list[str]]]:
    with open(path, encoding="utf-8", newline="\n") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            cols = line.split("\t")
            if len(cols) != n_cols or any(c == "" for c in cols):
                raise MalformedRow(path, line_no, f"expected {n_cols} nonempty columns, got {line!r}")
            yield line_no, cols


def load_wcn(nodes_file: str | Path, edges_file: str | Path) -> WcnGraph:
    """Load and validate a category network from nodes.tsv + edges.tsv."""
    nodes_file = Path(nodes_file)
    edges_file = Path(edges_file)
    nodes = []
    for line_no, (node_id, kind_str, title) in _rows(nodes_file, 3):
        try:
            kind = NodeKind(kind_str)
        except ValueError:
            raise MalformedRow(nodes_file, line_no, f"unknown node kind {kind_str!r}") from None
        if not title.strip():
            raise MalformedRow(nodes_file, line_no, "empty title")
        nodes.append(Node(node_id, kind, title))
    edges = [(c, p) for _, (c, p) in _rows(edges_file, 2)]
    return WcnGraph(nodes, edges)


def save_wcn(graph: WcnGraph, nodes_file: str | Path, edges_file: str | Path) -> None:
    """Write a graph back out; round-trips through load_wcn."""
    with open(nodes_file, "w", encoding="utf-8", newline="\n") as fh:
        for node_id in sorted(graph.nodes):
            node = graph.nodes[node_id]
            fh.write(f"{node.id}\t{node.kind.value}\t{node.title}\n")
    with open(edges_file, "w", encoding="utf-8", newline="\n") as fh:
        for child, parent in graph.edges():
            fh.write(f"{child}\t{parent}\n")


def load_interlang(path: str | Path) -> InterlangMap:
    """Load langlinks.tsv; an id on either side may appear at most once."""
    return InterlangMap((t, s) for _, (t, s) in _rows(Path(path), 2))


def save_interlang(links: InterlangMap, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for target, source in links.pairs():
            fh.write(f"{target}\t{source}\n")


def load_taxonomy(path: str | Path) -> Taxonomy:
    """Load taxonomy.tsv; score/provenance columns default to 1.0/projected.

    Repeated (child, parent) rows collapse to the maximum score.
    """
    path = Path(path)
    best: dict[tuple[str, str], TaxoEdge] = {}
    with open(path, encoding="utf-8", newline="\n") as fh:
        for line_no, line in enumerate(fh, start=1):
            cols = line.rstrip("\n").split("\t")
            if len(cols) not in (2, 3, 4) or cols[0] == "" or cols[1] == "":
                raise MalformedRow(path, line_no, f"bad taxonomy row {line!r}")
            child, parent = cols[0], cols[1]
            score = 1.0
            provenance = Provenance.PROJECTED
            if len(cols) >= 3:
                try:
                    score = float(cols[2])
                except ValueError:
                    raise MalformedRow(path, line_no, f"bad score {cols[2]!r}") from None
            if len(cols) == 4:
                try:
                    provenance = Provenance(cols[3])
                except ValueError:
                    raise MalformedRow(path, line_no, f"bad provenance {cols[3]!r}") from None
            try:
                edge = TaxoEdge(child, parent, score, provenance)
            except ValueError as exc:
                raise MalformedRow(path, line_no, str(exc)) from None
            pair = (child, parent)
            if pair in best:
                logger.warning("duplicate taxonomy edge %s, keeping max score", pair)
                if edge.score <= best[pair].score:
                    continue
            best[pair] = edge
    return Taxonomy(best.values())


def save_taxonomy(taxonomy: Taxonomy, path: str | Path) -> None:
    """Write taxonomy.tsv sorted by (child, parent), scores at 6 decimals."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for edge in taxonomy.edges():
            fh.write(f"{edge.child}\t{edge.parent}\t{edge.score:.6f}\t{edge.provenance.value}\n")
