"""Evaluation: edge-level precision/recall/coverage, path prefixes, structure.

Edge metrics are computed per sampled node against human judgments:
coverage asks whether any hypernym came back, recall whether a correct
one did, and precision averages the per-node ratio of correct to returned
hypernyms over the nodes that returned anything. Path metrics measure how
far a generalization chain climbs before its first wrong hop; lengths are
counted in nodes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import EmptyGold, EmptyPathSet, EmptyTaxonomy, InsufficientNodes, MalformedRow
from .graph import NodeKind, Taxonomy, WcnGraph
from .labeling import Label
from .rng import SplitMix64


@dataclass(frozen=True)
class GoldEdgeSet:
    sampled_nodes: frozenset[str]
    judgments: dict[tuple[str, str], Label]

    def __post_init__(self):
        for child, _ in self.judgments:
            if child not in self.sampled_nodes:
                raise ValueError(f"judged edge child {child!r} not in sampled nodes")


@dataclass(frozen=True)
class AnnotatedPath:
    """A generalization chain; first_wrong_index marks the first node
    reached via a not-is-a hop (0-based), absent when fully correct."""

    nodes: tuple[str, ...]
    first_wrong_index: int | None = None

    def __post_init__(self):
        if not self.nodes:
            raise ValueError("empty path")
        if self.first_wrong_index is not None and not (
            1 <= self.first_wrong_index < len(self.nodes)
        ):
            raise ValueError(f"first_wrong_index out of range: {self.first_wrong_index}")


@dataclass(frozen=True)
class EdgeMetrics:
    macro_precision: float
    recall: float
    coverage: float
    precision_defined: bool = True
    unjudged_returned: int = 0


@dataclass(frozen=True)
class PathMetrics:
    avg_length: float
    avg_cpp: float
    avg_ratio_cpp: float


def edge_metrics(taxonomy: Taxonomy, gold: GoldEdgeSet) -> EdgeMetrics:
    """Macro-P / R / C over the gold sample.

    A returned hypernym with no judgment counts as not-is-a (and is
    tallied in unjudged_returned). With nothing returned for any node,
    precision is undefined and reported as 0 with the flag cleared.
    """
    if not gold.sampled_nodes:
        raise EmptyGold("no sampled nodes")
    answered = 0
    hit = 0
    precisions = []
    unjudged = 0
    for node in sorted(gold.sampled_nodes):
        returned = taxonomy.hypernyms(node)
        if not returned:
            continue
        answered += 1
        correct = 0
        for parent in returned:
            judgment = gold.judgments.get((node, parent))
            if judgment is None:
                unjudged += 1
            elif judgment is Label.ISA:
                correct += 1
        if correct:
            hit += 1
        precisions.append(correct / len(returned))
    n = len(gold.sampled_nodes)
    return EdgeMetrics(
        macro_precision=sum(precisions) / answered if answered else 0.0,
        recall=hit / n,
        coverage=answered / n,
        precision_defined=answered > 0,
        unjudged_returned=unjudged,
    )


def path_metrics(paths: list[AnnotatedPath]) -> PathMetrics:
    """Average length, correct-prefix length, and prefix ratio (in nodes)."""
    if not paths:
        raise EmptyPathSet("no annotated paths")
    lengths = []
    cpps = []
    ratios = []
    for path in paths:
        length = len(path.nodes)
        cpp = path.first_wrong_index if path.first_wrong_index is not None else length
        lengths.append(length)
        cpps.append(cpp)
        ratios.append(cpp / length)
    n = len(paths)
    return PathMetrics(sum(lengths) / n, sum(cpps) / n, sum(ratios) / n)


def branching_factor(taxonomy: Taxonomy) -> float:
    """Mean hypernym count over nodes that have at least one."""
    if len(taxonomy) == 0:
        raise EmptyTaxonomy("no edges")
    covered = taxonomy.covered_nodes()
    return sum(len(taxonomy.hypernyms(n)) for n in covered) / len(covered)


def sample_eval_nodes(
    graph: WcnGraph, n_entities: int, n_categories: int, seed: int
) -> set[str]:
    """Seeded uniform sample without replacement, per node kind."""
    sample: set[str] = set()
    for kind, count in ((NodeKind.ENTITY, n_entities), (NodeKind.CATEGORY, n_categories)):
        ids = graph.node_ids(kind)
        if count > len(ids):
            raise InsufficientNodes(kind.value, count, len(ids))
        SplitMix64.keyed(seed, "sample", kind.value).shuffle(ids)
        sample.update(ids[:count])
    return sample


def load_gold(edges_path: str | Path, nodes_path: str | Path) -> GoldEdgeSet:
    """Read gold_edges.tsv (child, parent, isa|notisa) + sampled node list."""
    nodes_path = Path(nodes_path)
    with open(nodes_path, encoding="utf-8", newline="\n") as fh:
        sampled = frozenset(line.rstrip("\n") for line in fh if line.rstrip("\n"))
    edges_path = Path(edges_path)
    judgments: dict[tuple[str, str], Label] = {}
    with open(edges_path, encoding="utf-8", newline="\n") as fh:
        for line_no, line in enumerate(fh, start=1):
            cols = line.rstrip("\n").split("\t")
            if len(cols) != 3 or "" in cols:
                raise MalformedRow(edges_path, line_no, f"bad gold row {line!r}")
            try:
                label = Label(cols[2])
            except ValueError:
                raise MalformedRow(edges_path, line_no, f"bad label {cols[2]!r}") from None
            judgments[(cols[0], cols[1])] = label
    return GoldEdgeSet(sampled, judgments)


def save_gold(gold: GoldEdgeSet, edges_path: str | Path, nodes_path: str | Path) -> None:
    with open(nodes_path, "w", encoding="utf-8", newline="\n") as fh:
        for node in sorted(gold.sampled_nodes):
            fh.write(node + "\n")
    with open(edges_path, "w", encoding="utf-8", newline="\n") as fh:
        for (child, parent), label in sorted(gold.judgments.items()):
            fh.write(f"{child}\t{parent}\t{label.value}\n")


def load_paths(path: str | Path) -> list[AnnotatedPath]:
    """Read paths.jsonl: {"nodes": [...], "first_wrong_index": int|null}."""
    path = Path(path)
    paths = []
    with open(path, encoding="utf-8", newline="\n") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                data = json.loads(line)
                paths.append(
                    AnnotatedPath(tuple(data["nodes"]), data.get("first_wrong_index"))
                )
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise MalformedRow(path, line_no, str(exc)) from None
    return paths


def save_paths(paths: list[AnnotatedPath], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for p in paths:
            fh.write(
                json.dumps(
                    {"nodes": list(p.nodes), "first_wrong_index": p.first_wrong_index},
                    ensure_ascii=False,
                )
                + "\n"
            )
