"""Phase 2a: build labeled edge datasets from the projected taxonomy.

Projected edges become is-a positives; every other network edge whose
child already has a hypernym in the projected taxonomy becomes a
not-is-a negative. Edges from uncovered children stay unlabeled - nothing
is known about them yet.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .errors import MalformedRow, ProjectedEdgeNotInGraph
from .graph import EdgeKind, Taxonomy, WcnGraph, edge_kind
from .rng import SplitMix64

logger = logging.getLogger(__name__)


class Label(Enum):
    ISA = "isa"
    NOT_ISA = "notisa"


@dataclass(frozen=True)
class LabeledEdge:
    child: str
    parent: str
    label: Label


@dataclass(frozen=True)
class EdgeDataset:
    kind: EdgeKind
    train: list[LabeledEdge]
    validation: list[LabeledEdge]


def label_edges(graph: WcnGraph, projected: Taxonomy) -> list[LabeledEdge]:
    """Label network edges against the projected taxonomy.

    Returns edges sorted by (child, parent) for determinism.
    """
    for edge in projected.edges():
        if not graph.has_edge(edge.child, edge.parent):
            raise ProjectedEdgeNotInGraph(edge.child, edge.parent)
    positives = projected.edge_pairs()
    labeled = []
    for child, parent in graph.edges():
        if (child, parent) in positives:
            labeled.append(LabeledEdge(child, parent, Label.ISA))
        elif projected.covered(child):
            labeled.append(LabeledEdge(child, parent, Label.NOT_ISA))
    labeled.sort(key=lambda e: (e.child, e.parent))
    return labeled


def split_by_kind(
    edges: list[LabeledEdge], graph: WcnGraph
) -> tuple[list[LabeledEdge], list[LabeledEdge]]:
    """Partition into (entity->category, category->category), order kept."""
    entity_edges = []
    category_edges = []
    for edge in edges:
        if edge_kind(graph, edge.child, edge.parent) is EdgeKind.ENTITY_TO_CATEGORY:
            entity_edges.append(edge)
        else:
            category_edges.append(edge)
    return entity_edges, category_edges


def train_val_split(
    edges: list[LabeledEdge], val_fraction: float, seed: int
) -> tuple[list[LabeledEdge], list[LabeledEdge]]:
    """Stratified split: floor(val_fraction * class size) per label class.

    Each class is sorted, shuffled by a stream keyed on (seed, label), and
    its prefix goes to validation; identical seeds give identical splits on
    any platform.
    """
    if not 0.0 <= val_fraction < 1.0:
        raise ValueError("val_fraction must be in [0, 1)")
    train: list[LabeledEdge] = []
    validation: list[LabeledEdge] = []
    for label in Label:
        group = sorted(
            (e for e in edges if e.label is label), key=lambda e: (e.child, e.parent)
        )
        if not group:
            logger.warning("no %s edges to split; validation may miss the class", label.value)
            continue
        rng = SplitMix64.keyed(seed, "split", label.value)
        rng.shuffle(group)
        n_val = int(val_fraction * len(group))
        validation.extend(group[:n_val])
        train.extend(group[n_val:])
    return train, validation


def save_labeled_edges(edges: list[LabeledEdge], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for edge in edges:
            fh.write(f"{edge.child}\t{edge.parent}\t{edge.label.value}\n")


def load_labeled_edges(path: str | Path) -> list[LabeledEdge]:
    path = Path(path)
    edges = []
    with open(path, encoding="utf-8", newline="\n") as fh:
        for line_no, line in enumerate(fh, start=1):
            cols = line.rstrip("\n").split("\t")
            if len(cols) != 3 or "" in cols:
                raise MalformedRow(path, line_no, f"bad labeled edge row {line!r}")
            try:
                label = Label(cols[2])
            except ValueError:
                raise MalformedRow(path, line_no, f"unknown label {cols[2]!r}") from None
            edges.append(LabeledEdge(cols[0], cols[1], label))
    return edges
