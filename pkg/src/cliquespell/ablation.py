"""Pipeline ablation: train and score the classifier on successively more
processed versions of one corpus, over a single fixed split."""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

from .classify import ClassifierConfig, EvalReport, evaluate, train
from .cluster import CorrectionModel, train_model
from .corpus import Corpus, aggregate_post_metadata, stratified_split
from .correct import Corrector
from .normalize import CleaningConfig, TransliterationTable, clean
from .wordgraph import ConsonantProfile, GraphConfig, count_stats

logger = logging.getLogger(__name__)

VARIANT_NAMES = {
    "raw": "Raw Dataset",
    "cleaned": "Cleaned Dataset",
    "native": "Cleaned + Native Transliteration Dataset",
    "spell": "Cleaned + Native Transliteration + Spell-Corrected Dataset",
    "english": "Cleaned + English Transliteration Dataset",
}
DEFAULT_VARIANTS = ("raw", "cleaned", "native", "spell")


class AblationConfigError(ValueError):
    pass


@dataclass(frozen=True)
class AblationRow:
    variant: str
    name: str
    report: EvalReport
    n_clusters: int | None = None


def _transform(variant, cleaning, native_table, english_table):
    if variant == "raw":
        return lambda text: text
    if variant == "cleaned":
        cfg = replace(cleaning, transliteration=None)
    elif variant in ("native", "spell"):
        cfg = replace(cleaning, transliteration=native_table)
    elif variant == "english":
        if english_table is None:
            raise AblationConfigError("the 'english' variant needs an English transliteration table")
        cfg = replace(cleaning, transliteration=english_table)
    else:
        raise AblationConfigError(f"unknown ablation variant {variant!r}")
    return lambda text: clean(text, cfg)


def run_ablation(
    corpus: Corpus,
    variants=DEFAULT_VARIANTS,
    cleaning: CleaningConfig = CleaningConfig(),
    native_table: TransliterationTable | None = None,
    english_table: TransliterationTable | None = None,
    graph: GraphConfig = GraphConfig(),
    classifier: ClassifierConfig = ClassifierConfig(),
    validation_fraction: float = 0.1,
    seed: int = 0,
    by_language: bool = False,
    average: str = "binary",
    profile: ConsonantProfile | None = None,
) -> list[AblationRow]:
    """Score every requested variant on the same stratified split.

    Without a native table the native-transliteration step is the identity.
    The spell-correction model is trained on the transliterated training
    half only and applied to both halves.
    """
    for v in variants:
        if v not in VARIANT_NAMES:
            raise AblationConfigError(f"unknown ablation variant {v!r}")
        if v == "english" and english_table is None:
            raise AblationConfigError("the 'english' variant needs an English transliteration table")
    train_raw, val_raw = stratified_split(aggregate_post_metadata(corpus), validation_fraction, seed, by_language)

    cache: dict[str, tuple[Corpus, Corpus, CorrectionModel | None]] = {}

    def prepared(variant: str):
        if variant not in cache:
            if variant == "spell":
                tr, va, _ = prepared("native")
                model = train_model(count_stats(tr, profile), graph)
                corrector = Corrector(model)
                cache[variant] = (corrector.correct_corpus(tr), corrector.correct_corpus(va), model)
            else:
                fn = _transform(variant, cleaning, native_table, english_table)
                cache[variant] = (train_raw.map_text(fn), val_raw.map_text(fn), None)
        return cache[variant]

    rows = []
    for v in variants:
        tr, va, model = prepared(v)
        clf = train(tr, classifier)
        report = evaluate(clf, va, average)
        logger.info("%s: F1 %.4f", VARIANT_NAMES[v], report.f1)
        rows.append(AblationRow(v, VARIANT_NAMES[v], report, len(model.clusters) if model else None))
    return rows


def report_tsv(rows: list[AblationRow]) -> str:
    lines = ["model\tval_f1\tprecision\trecall\ttp\tfp\ttn\tfn"]
    for r in rows:
        e = r.report
        lines.append(f"{r.name}\t{e.f1:.4f}\t{e.precision:.4f}\t{e.recall:.4f}\t{e.tp}\t{e.fp}\t{e.tn}\t{e.fn}")
    return "\n".join(lines) + "\n"


def report_table(rows: list[AblationRow]) -> str:
    width = max([len("Model")] + [len(r.name) for r in rows])
    out = [f"{'Model':<{width}}  Val. F1", f"{'-' * width}  -------"]
    out += [f"{r.name:<{width}}  {r.report.f1:.4f}" for r in rows]
    return "\n".join(out) + "\n"
