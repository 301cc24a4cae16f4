"""Command-line interface wiring the pipeline end to end.

Subcommands: project, train, induce, evaluate (edges|paths), stats.
Exit codes: 0 success, 2 bad input or usage, 1 internal error. Given the
same flags, seed, and input files, every command writes byte-identical
outputs; all randomness flows from --seed and is echoed in the reports.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .classifier import TrainConfig, load_model, save_model, train_linear, validation_accuracy
from .errors import SingleClassDataset, TaxonetError
from .features import FeatureMode, FeatureSpec, fit_tfidf
from .graph import EdgeKind, load_interlang, load_taxonomy, load_wcn, save_taxonomy
from .induction import InductionConfig, induce, weigh_edges
from .labeling import EdgeDataset, label_edges, split_by_kind, train_val_split
from .metrics import branching_factor, edge_metrics, load_gold, load_paths, path_metrics
from .projection import ProjectionConfig, project
from .rng import SplitMix64

CONFIG_DEFAULTS = {
    "k1": 14,
    "k2": 3,
    "val_fraction": 0.25,
    "seed": 0,
    "mode": "char",
    "ngram_sizes": [2, 3, 4, 5, 6],
    "min_df": 1,
    "epochs": 10,
    "learning_rate": 0.1,
    "l2_lambda": 1e-6,
    "k": 1,
    "epsilon": 1e-6,
    "uniform": False,
}


def _load_config(path: str | None) -> dict:
    cfg = dict(CONFIG_DEFAULTS)
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        unknown = sorted(set(data) - set(cfg))
        if unknown:
            raise TaxonetError(f"unknown config keys: {', '.join(unknown)}")
        cfg.update(data)
    return cfg


def _resolve(args: argparse.Namespace, cfg: dict, key: str):
    value = getattr(args, key, None)
    return cfg[key] if value is None else value


def _write_json(path: str | Path, obj: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2))
        fh.write("\n")


def _cmd_project(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    k1 = _resolve(args, cfg, "k1")
    k2 = _resolve(args, cfg, "k2")
    graph = load_wcn(args.nodes, args.edges)
    links = load_interlang(args.langlinks)
    source = load_taxonomy(args.source_taxonomy)
    taxonomy, report = project(source, graph, links, ProjectionConfig(k1=k1, k2=k2))
    save_taxonomy(taxonomy, args.out)
    report_path = args.report or args.out + ".report.json"
    _write_json(report_path, {**report.to_dict(), "k1": k1, "k2": k2})
    return 0


def _parse_ngram_sizes(raw) -> frozenset[int]:
    if isinstance(raw, str):
        raw = [int(part) for part in raw.split(",") if part]
    return frozenset(raw)


def _cmd_train(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    seed = _resolve(args, cfg, "seed")
    mode = FeatureMode(_resolve(args, cfg, "mode"))
    val_fraction = _resolve(args, cfg, "val_fraction")
    min_df = _resolve(args, cfg, "min_df")
    spec = FeatureSpec(mode=mode, ngram_sizes=_parse_ngram_sizes(_resolve(args, cfg, "ngram_sizes")))
    train_cfg = TrainConfig(
        epochs=_resolve(args, cfg, "epochs"),
        learning_rate=_resolve(args, cfg, "learning_rate"),
        l2_lambda=_resolve(args, cfg, "l2_lambda"),
        seed=seed,
    )

    graph = load_wcn(args.nodes, args.edges)
    projected = load_taxonomy(args.projected)
    labeled = label_edges(graph, projected)
    ec_edges, cc_edges = split_by_kind(labeled, graph)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    for kind, edges, name in (
        (EdgeKind.ENTITY_TO_CATEGORY, ec_edges, "ec"),
        (EdgeKind.CATEGORY_TO_CATEGORY, cc_edges, "cc"),
    ):
        train_edges, val_edges = train_val_split(edges, val_fraction, seed)
        if len({e.label for e in train_edges}) < 2:
            raise SingleClassDataset(
                f"{name}: need both labels to train; check the projected taxonomy"
            )
        dataset = EdgeDataset(kind, train_edges, val_edges)
        node_ids = sorted({n for e in train_edges for n in (e.child, e.parent)})
        tfidf = fit_tfidf([graph.title(n) for n in node_ids], spec, min_df)
        model = train_linear(dataset, tfidf, train_cfg, graph)
        save_model(model, out_dir / f"model.{name}.json")
        _write_json(
            out_dir / f"metrics.{name}.json",
            {
                "train_acc": validation_accuracy(model, train_edges, graph),
                "val_acc": validation_accuracy(model, val_edges, graph) if val_edges else None,
                "n_train": len(train_edges),
                "n_val": len(val_edges),
                "mode": mode.value,
                "seed": seed,
            },
        )
    return 0


def _cmd_induce(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    k = _resolve(args, cfg, "k")
    epsilon = _resolve(args, cfg, "epsilon")
    uniform = _resolve(args, cfg, "uniform")
    graph = load_wcn(args.nodes, args.edges)
    projected = load_taxonomy(args.projected)
    model_ec = load_model(args.model_ec)
    model_cc = load_model(args.model_cc)
    icfg = InductionConfig(k=k, epsilon=epsilon, uniform=uniform)
    weighted = weigh_edges(graph, model_ec, model_cc, icfg)
    taxonomy, report = induce(projected, weighted, icfg, threads=args.threads)
    save_taxonomy(taxonomy, args.out)
    report_path = args.report or args.out + ".report.json"
    _write_json(report_path, report.to_dict())
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    if args.what == "edges":
        taxonomy = load_taxonomy(args.taxonomy)
        gold = load_gold(args.gold, args.nodes_file)
        m = edge_metrics(taxonomy, gold)
        out = {"P": round(m.macro_precision, 4), "R": round(m.recall, 4), "C": round(m.coverage, 4)}
        if not m.precision_defined:
            out["precision_defined"] = False
        if m.unjudged_returned:
            out["unjudged_returned"] = m.unjudged_returned
    else:
        m = path_metrics(load_paths(args.paths))
        out = {
            "AL": round(m.avg_length, 4),
            "ACPP": round(m.avg_cpp, 4),
            "ARCPP": round(m.avg_ratio_cpp, 4),
        }
    print(json.dumps(out, ensure_ascii=False))
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    taxonomy = load_taxonomy(args.taxonomy)
    bf = branching_factor(taxonomy)  # raises EmptyTaxonomy -> exit 2
    covered = sorted(taxonomy.covered_nodes())
    rng = SplitMix64.keyed(args.seed, "stats-depth")
    rng.shuffle(covered)
    max_depth = 0
    for start in covered[: args.sample]:
        depth = 1
        seen = {start}
        node = start
        while True:
            hypernyms = taxonomy.hypernyms(node)
            if not hypernyms:
                break
            # Walk the strongest edge up; ties take the smaller id.
            best = None
            for parent in hypernyms:  # sorted by construction
                score = taxonomy.edge(node, parent).score
                if best is None or score > best[1]:
                    best = (parent, score)
            node = best[0]
            if node in seen:
                break
            seen.add(node)
            depth += 1
        max_depth = max(max_depth, depth)
    print(
        json.dumps(
            {
                "nodes": len(taxonomy.node_ids()),
                "edges": len(taxonomy),
                "branching_factor": round(bf, 4),
                "max_depth_sampled": max_depth,
            }
        )
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="taxonet",
        description="Induce a target-language taxonomy from a category network.",
    )
    parser.add_argument("--version", action="version", version=f"taxonet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("project", help="project a source taxonomy over interlanguage links")
    p.add_argument("--nodes", required=True, help="target nodes.tsv")
    p.add_argument("--edges", required=True, help="target edges.tsv")
    p.add_argument("--langlinks", required=True, help="langlinks.tsv (target_id, source_id)")
    p.add_argument("--source-taxonomy", required=True, help="source-language taxonomy.tsv")
    p.add_argument("--out", required=True, help="output taxonomy.tsv")
    p.add_argument("--report", help="report JSON path (default: <out>.report.json)")
    p.add_argument("--k1", type=int, help="max ancestor height in the source taxonomy (default: 14)")
    p.add_argument("--k2", type=int, help="max projection path length in hops (default: 3)")
    p.add_argument("--config", help="optional JSON config file; flags override it")
    p.set_defaults(func=_cmd_project)

    p = sub.add_parser("train", help="build edge datasets and train both classifiers")
    p.add_argument("--nodes", required=True)
    p.add_argument("--edges", required=True)
    p.add_argument("--projected", required=True, help="projected taxonomy.tsv")
    p.add_argument("--mode", choices=["word", "char"], help="feature mode (default: char)")
    p.add_argument("--out-dir", required=True, help="directory for model and metrics files")
    p.add_argument("--seed", type=int, help="seed for the split and SGD shuffles (default: 0)")
    p.add_argument("--val-fraction", type=float, dest="val_fraction",
                   help="validation fraction per label class (default: 0.25)")
    p.add_argument("--min-df", type=int, dest="min_df",
                   help="minimum document frequency for features (default: 1)")
    p.add_argument("--ngram-sizes", dest="ngram_sizes",
                   help="char n-gram sizes, comma-separated (default: 2,3,4,5,6)")
    p.add_argument("--epochs", type=int, help="SGD epochs (default: 10)")
    p.add_argument("--learning-rate", type=float, dest="learning_rate",
                   help="initial SGD learning rate (default: 0.1)")
    p.add_argument("--l2-lambda", type=float, dest="l2_lambda",
                   help="L2 regularization strength (default: 1e-06)")
    p.add_argument("--config", help="optional JSON config file; flags override it")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("induce", help="extend the projected taxonomy by best-path search")
    p.add_argument("--nodes", required=True)
    p.add_argument("--edges", required=True)
    p.add_argument("--projected", required=True)
    p.add_argument("--model-ec", required=True, dest="model_ec", help="entity-edge model JSON")
    p.add_argument("--model-cc", required=True, dest="model_cc", help="category-edge model JSON")
    p.add_argument("--out", required=True, help="output taxonomy.tsv")
    p.add_argument("--report", help="report JSON path (default: <out>.report.json)")
    p.add_argument("--k", type=int, help="paths per uncovered node (default: 1)")
    p.add_argument("--epsilon", type=float, help="probability clamp floor (default: 1e-06)")
    p.add_argument("--uniform", action=argparse.BooleanOptionalAction,
                   help="set every edge weight to 1 instead of classifier scores")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="search parallelism; output is identical for any value")
    p.add_argument("--config", help="optional JSON config file; flags override it")
    p.set_defaults(func=_cmd_induce)

    p = sub.add_parser("evaluate", help="score a taxonomy against gold annotations")
    esub = p.add_subparsers(dest="what", required=True)
    pe = esub.add_parser("edges", help="macro-precision / recall / coverage")
    pe.add_argument("--taxonomy", required=True)
    pe.add_argument("--gold", required=True, help="gold_edges.tsv")
    pe.add_argument("--nodes-file", required=True, dest="nodes_file", help="sampled_nodes.txt")
    pe.set_defaults(func=_cmd_evaluate, what="edges")
    pp = esub.add_parser("paths", help="average path length / correct prefix stats")
    pp.add_argument("--paths", required=True, help="paths.jsonl")
    pp.set_defaults(func=_cmd_evaluate, what="paths")

    p = sub.add_parser("stats", help="structural statistics of a taxonomy")
    p.add_argument("--taxonomy", required=True)
    p.add_argument("--seed", type=int, default=0, help="seed for depth sampling (default: 0)")
    p.add_argument("--sample", type=int, default=100,
                   help="number of nodes sampled for max depth (default: 100)")
    p.set_defaults(func=_cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TaxonetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
