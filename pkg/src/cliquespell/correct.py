"""Inference-time correction: replace a word by the parent of the
prefix-matching cluster whose anchors it resembles most."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

from .cluster import Cluster, CorrectionModel
from .corpus import Corpus
from .wordgraph import grapheme_prefix, indel_distance, tokenize


@dataclass(frozen=True)
class CorrectionOutcome:
    original: str
    corrected: str
    matched_cluster: str | None = None
    score: float = 0.0

    @property
    def changed(self) -> bool:
        return self.corrected != self.original


class Corrector:
    """A correction model plus a read-only prefix index over its parents."""

    def __init__(self, model: CorrectionModel):
        self.model = model
        self.k = model.config.prefix_len
        self.threshold = model.config.similarity_threshold
        index: dict[str, list[Cluster]] = defaultdict(list)
        for cl in model.clusters:
            p = grapheme_prefix(cl.parent, self.k)
            if p is not None:
                index[p].append(cl)
        self._index = dict(index)

    def candidates(self, word: str) -> list[Cluster]:
        p = grapheme_prefix(word, self.k)
        return self._index.get(p, []) if p is not None else []

    def correct_word(self, word: str) -> CorrectionOutcome:
        best = None
        for cl in self.candidates(word):
            # association score: best anchor similarity, kept as (matched, total) for exact comparison
            num, den = max((_ratio(word, a) for a in cl.anchor_words), key=lambda nd: nd[0] / nd[1])
            if 100 * num < self.threshold * den:
                continue
            key = (-num / den, -cl.parent_frequency, cl.parent)
            if best is None or key < best[0]:
                best = (key, cl, num, den)
        if best is None:
            return CorrectionOutcome(word, word)
        _, cl, num, den = best
        return CorrectionOutcome(word, cl.parent, cl.parent, 100.0 * (1 - (den - num) / den))

    def correct_text(self, text: str) -> str:
        return " ".join(self.correct_word(w).corrected for w in tokenize(text))

    def correct_text_audit(self, text: str) -> tuple[str, list[CorrectionOutcome]]:
        outcomes = [self.correct_word(w) for w in tokenize(text)]
        return " ".join(o.corrected for o in outcomes), [o for o in outcomes if o.changed]

    def correct_corpus(self, corpus: Corpus) -> Corpus:
        return corpus.map_text(self.correct_text)


def _ratio(a: str, b: str) -> tuple[int, int]:
    total = len(a) + len(b)
    return total - indel_distance(a, b), total


def _as_corrector(model) -> Corrector:
    return model if isinstance(model, Corrector) else Corrector(model)


def correct_word(word: str, model: CorrectionModel | Corrector) -> CorrectionOutcome:
    return _as_corrector(model).correct_word(word)


def correct_text(text: str, model: CorrectionModel | Corrector) -> str:
    return _as_corrector(model).correct_text(text)


def correct_corpus(corpus: Corpus, model: CorrectionModel | Corrector) -> Corpus:
    return _as_corrector(model).correct_corpus(corpus)


def audit_rows(outcomes: Iterable[CorrectionOutcome]) -> str:
    return "".join(
        f"{o.original}\t{o.corrected}\t{o.matched_cluster}\t{o.score:.2f}\n" for o in outcomes
    )
