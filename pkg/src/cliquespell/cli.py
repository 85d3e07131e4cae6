"""Command-line entry point.

Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections import Counter
from dataclasses import replace
from pathlib import Path

from . import corpus as corpus_io
from .ablation import AblationConfigError, report_table, report_tsv, run_ablation
from .classify import ClassifierModel, evaluate, train
from .cluster import ModelFormatError, extract_clusters, load_model, save_model
from .config import ConfigError, PipelineConfig, load_config, with_seed
from .correct import Corrector, audit_rows
from .corpus import CorpusError
from .normalize import TransliterationTable, clean
from .synthetic import InfeasibleSpecError, generate
from .wordgraph import build_graph, count_stats

log = logging.getLogger("cliquespell")

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _existing(path) -> Path:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"input file not found: {p}")
    return p


def _config(args) -> PipelineConfig:
    if args.config is not None:
        _existing(args.config)
    return with_seed(load_config(args.config), getattr(args, "seed", None))


def _read(args):
    return corpus_io.ingest(_existing(args.input), args.format)


def cmd_clean(args) -> int:
    cfg = _config(args)
    data = corpus_io.aggregate_post_metadata(_read(args))
    data = data.map_text(lambda t: clean(t, cfg.cleaning))
    corpus_io.write(data, args.output, args.format)
    log.info("cleaned %d comments -> %s", len(data), args.output)
    return EXIT_OK


def cmd_train_spell(args) -> int:
    cfg = _config(args)
    data = _read(args)
    if args.clean:
        data = data.map_text(lambda t: clean(t, cfg.cleaning))
    stats = count_stats(data, cfg.consonant_profile)
    graph = build_graph(stats, cfg.graph)
    if args.graph_dump:
        Path(args.graph_dump).write_text(graph.dumps(), encoding="utf-8")
    model = extract_clusters(graph, stats, cfg.graph)
    if not len(graph):
        log.warning("no word passed the graph filters; writing an empty model")
    save_model(model, args.model)
    sizes = Counter(len(c.members) for c in model.clusters)
    print(f"nodes={len(graph)} edges={len(graph.edges())} clusters={len(model.clusters)} "
          f"multi_member={sum(n for s, n in sizes.items() if s > 1)}")
    for size in sorted(sizes):
        print(f"  size {size}: {sizes[size]}")
    return EXIT_OK


def cmd_correct(args) -> int:
    cfg = _config(args)
    model = load_model(_existing(args.model))
    if cfg.graph_overridden and cfg.graph.prefix_len != model.config.prefix_len:
        raise ConfigError(
            f"config prefix length k={cfg.graph.prefix_len} does not match the model's k={model.config.prefix_len}"
        )
    corrector = Corrector(model)
    data = _read(args)
    audit = []
    texts = {}
    for c in data:
        texts[c.comment_id], changed = corrector.correct_text_audit(c.text)
        audit.extend(changed)
    out = corpus_io.Corpus(replace(c, text=texts[c.comment_id]) for c in data)
    corpus_io.write(out, args.output, args.format)
    if args.audit:
        Path(args.audit).write_text(audit_rows(audit), encoding="utf-8")
    log.info("corrected %d tokens in %d comments", len(audit), len(out))
    return EXIT_OK


def cmd_train_classifier(args) -> int:
    cfg = _config(args)
    model = train(_read(args), cfg.classifier)
    model.save(args.model)
    log.info("vocabulary size %d", len(model.vocabulary))
    return EXIT_OK


def _load_classifier(path) -> ClassifierModel:
    try:
        return ClassifierModel.load(_existing(path))
    except (KeyError, TypeError, ValueError) as e:
        raise ModelFormatError(f"{path}: malformed classifier model: {e}") from None


def _emit(text: str, path) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_predict(args) -> int:
    model = _load_classifier(args.model)
    data = _read(args)
    probs = model.predict_proba(data.texts) if len(data) else []
    lines = ["comment_id\tprobability\tlabel"]
    lines += [f"{c.comment_id}\t{p:.6f}\t{int(p >= model.threshold)}" for c, p in zip(data, probs)]
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    cfg = _config(args)
    model = _load_classifier(args.model)
    r = evaluate(model, _read(args), cfg.f1_average)
    _emit(
        "f1\tprecision\trecall\ttp\tfp\ttn\tfn\n"
        f"{r.f1:.4f}\t{r.precision:.4f}\t{r.recall:.4f}\t{r.tp}\t{r.fp}\t{r.tn}\t{r.fn}\n",
        args.output,
    )
    return EXIT_OK


def cmd_ablate(args) -> int:
    cfg = _config(args)
    native, english, variants = cfg.native_table, cfg.english_table, list(cfg.variants)
    if args.native_translit_table:
        native = TransliterationTable.load(_existing(args.native_translit_table), "latin", "native")
    if args.english_translit_table:
        english = TransliterationTable.load(_existing(args.english_translit_table), "native", "latin")
        if "english" not in variants:
            variants.append("english")
    rows = run_ablation(
        _read(args),
        variants=variants,
        cleaning=cfg.cleaning,
        native_table=native,
        english_table=english,
        graph=cfg.graph,
        classifier=cfg.classifier,
        validation_fraction=cfg.validation_fraction,
        seed=cfg.seed,
        by_language=cfg.stratify_by_language,
        average=cfg.f1_average,
        profile=cfg.consonant_profile,
    )
    Path(args.output).write_text(report_tsv(rows), encoding="utf-8")
    sys.stdout.write(report_table(rows))
    return EXIT_OK


def cmd_generate(args) -> int:
    cfg = _config(args)
    spec = cfg.synthetic
    overrides = {k: v for k, v in {
        "n_base_words": args.n_base_words,
        "variants_per_word": args.variants_per_word,
        "edit_ops_per_variant": args.edit_ops_per_variant,
        "n_comments": args.n_comments,
        "abusive_ratio": args.abusive_ratio,
        "script": args.script,
    }.items() if v is not None}
    try:
        spec = replace(spec, **overrides)
    except ValueError as e:
        raise ConfigError(str(e)) from None
    result = generate(spec)
    out = Path(args.output)
    corpus_io.write(result.corpus, out, args.format)
    stem = out.with_suffix("")
    Path(f"{stem}.groups.tsv").write_text(result.groups_tsv(), encoding="utf-8")
    if result.table is not None:
        Path(f"{stem}.translit.tsv").write_text(result.table.dumps(), encoding="utf-8")
    n_abusive = sum(result.corpus.labels)
    print(f"comments={len(result.corpus)} abusive={n_abusive} groups={len(result.groups)} "
          f"variant_acceptance={result.variant_acceptance:.3f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cliquespell", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, fn, help, input=True, output=False, model=False):
        p = sub.add_parser(name, help=help)
        p.set_defaults(fn=fn)
        if input:
            p.add_argument("--input", required=True, help="corpus file (.csv or .jsonl)")
        p.add_argument("--config", help="TOML config file")
        p.add_argument("--format", choices=("csv", "jsonl"), help="corpus format (default: from extension)")
        p.add_argument("--seed", type=int)
        if model:
            p.add_argument("--model", required=True)
        if output:
            p.add_argument("--output", required=output == "required")
        return p

    command("clean", cmd_clean, "clean and aggregate a corpus", output="required")
    p = command("train-spell", cmd_train_spell, "train a spell-correction model", model=True)
    p.add_argument("--clean", action="store_true", help="clean texts before counting")
    p.add_argument("--graph-dump", help="write the word graph as an adjacency list")
    p = command("correct", cmd_correct, "spell-correct a corpus", output="required", model=True)
    p.add_argument("--audit", help="TSV of every changed token")
    command("train-classifier", cmd_train_classifier, "train the NB-TF-IDF logistic regression", model=True)
    command("predict", cmd_predict, "score comments", output=True, model=True)
    command("evaluate", cmd_evaluate, "F1 of a classifier on a labelled corpus", output=True, model=True)
    p = command("ablate", cmd_ablate, "run the pipeline ablation", output="required")
    p.add_argument("--native-translit-table")
    p.add_argument("--english-translit-table")
    p = command("generate", cmd_generate, "write a synthetic corpus", input=False, output="required")
    p.add_argument("--n-base-words", type=int)
    p.add_argument("--variants-per-word", type=int)
    p.add_argument("--edit-ops-per-variant", type=int)
    p.add_argument("--n-comments", type=int)
    p.add_argument("--abusive-ratio", type=float)
    p.add_argument("--script", choices=("latin", "deva"))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.fn(args)
    except (UsageError, ConfigError, AblationConfigError, InfeasibleSpecError) as e:
        print(f"cliquespell {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (CorpusError, ModelFormatError, OSError, ValueError) as e:
        print(f"cliquespell {args.command}: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
