"""Logistic regression over Naive-Bayes-scaled TF-IDF features, and F1
evaluation."""

from __future__ import annotations

import json
import logging
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy import optimize, sparse
from scipy.special import expit, log_expit

from .corpus import Corpus
from .wordgraph import tokenize

logger = logging.getLogger(__name__)

CLASSIFIER_VERSION = "1"


class ConvergenceWarning(UserWarning):
    pass


def ngrams(tokens: Sequence[str], n_gram_range: tuple[int, int]) -> list[str]:
    lo, hi = n_gram_range
    return [" ".join(tokens[i : i + n]) for n in range(lo, hi + 1) for i in range(len(tokens) - n + 1)]


def _texts(data) -> list[str]:
    return data.texts if isinstance(data, Corpus) else list(data)


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]
    document_frequency: tuple[int, ...]
    n_gram_range: tuple[int, int] = (1, 2)
    n_documents: int = 0

    @cached_property
    def index(self) -> dict[str, int]:
        return {t: i for i, t in enumerate(self.terms)}

    @cached_property
    def idf(self) -> np.ndarray:
        df = np.asarray(self.document_frequency, dtype=float)
        return np.log((1 + self.n_documents) / (1 + df)) + 1

    def __len__(self) -> int:
        return len(self.terms)


def fit_vocabulary(corpus, n_gram_range: tuple[int, int] = (1, 2), min_df: int = 2) -> Vocabulary:
    texts = _texts(corpus)
    if not texts:
        raise ValueError("cannot fit a vocabulary on an empty corpus")
    lo, hi = n_gram_range
    if not 1 <= lo <= hi:
        raise ValueError(f"invalid n_gram_range {n_gram_range}")
    df: dict[str, int] = {}
    for text in texts:
        for term in set(ngrams(tokenize(text), n_gram_range)):
            df[term] = df.get(term, 0) + 1
    terms = sorted(t for t, n in df.items() if n >= min_df)
    if not terms:
        raise ValueError(f"empty vocabulary (min_df={min_df}, n_gram_range={n_gram_range})")
    return Vocabulary(tuple(terms), tuple(df[t] for t in terms), (lo, hi), len(texts))


def tfidf_matrix(texts: Sequence[str], vocabulary: Vocabulary) -> sparse.csr_matrix:
    """Rows are L2-normalised raw-count TF times smoothed IDF."""
    index = vocabulary.index
    indptr, indices, data = [0], [], []
    for text in texts:
        counts: dict[int, int] = {}
        for term in ngrams(tokenize(text), vocabulary.n_gram_range):
            j = index.get(term)
            if j is not None:
                counts[j] = counts.get(j, 0) + 1
        cols = sorted(counts)
        indices.extend(cols)
        data.extend(counts[j] for j in cols)
        indptr.append(len(indices))
    X = sparse.csr_matrix(
        (np.asarray(data, dtype=float), np.asarray(indices, dtype=np.int64), np.asarray(indptr)),
        shape=(len(texts), len(vocabulary)),
    )
    X = X @ sparse.diags(vocabulary.idf)
    X = sparse.csr_matrix(X)
    norms = np.sqrt(np.asarray(X.multiply(X).sum(axis=1)).ravel())
    norms[norms == 0] = 1.0
    return sparse.csr_matrix(sparse.diags(1 / norms) @ X)


def _nb_ratios(X: sparse.spmatrix, y: np.ndarray, alpha: float = 1.0) -> np.ndarray:
    if not (y == 1).any() or not (y == 0).any():
        raise ValueError("Naive-Bayes ratios need both classes present")
    p = alpha + np.asarray(X[y == 1].sum(axis=0)).ravel()
    q = alpha + np.asarray(X[y == 0].sum(axis=0)).ravel()
    return np.log((p / p.sum()) / (q / q.sum()))


def nb_log_ratios(corpus: Corpus, vocabulary: Vocabulary, alpha: float = 1.0) -> np.ndarray:
    """Per-term log-count ratio of abusive vs non-abusive TF-IDF mass."""
    X = tfidf_matrix(corpus.texts, vocabulary)
    return _nb_ratios(X, np.asarray(corpus.labels), alpha)


@dataclass(frozen=True)
class ClassifierConfig:
    n_gram_range: tuple[int, int] = (1, 2)
    min_df: int = 2
    nb_alpha: float = 1.0
    l2: float = 1e-4
    max_iter: int = 1000
    tol: float = 1e-6
    threshold: float = 0.5


@dataclass
class ClassifierModel:
    vocabulary: Vocabulary
    r: np.ndarray
    weights: np.ndarray
    bias: float
    threshold: float = 0.5
    loss_history: list[float] = field(default_factory=list, repr=False, compare=False)

    @property
    def idf(self) -> np.ndarray:
        return self.vocabulary.idf

    def features(self, texts: Sequence[str]) -> sparse.csr_matrix:
        return sparse.csr_matrix(tfidf_matrix(texts, self.vocabulary).multiply(self.r))

    def decision_function(self, texts: Sequence[str]) -> np.ndarray:
        return self.features(texts) @ self.weights + self.bias

    def predict_proba(self, texts: Sequence[str]) -> np.ndarray:
        return expit(self.decision_function(texts))

    def predict_labels(self, texts: Sequence[str]) -> np.ndarray:
        return (self.predict_proba(texts) >= self.threshold).astype(int)

    def to_dict(self) -> dict:
        v = self.vocabulary
        return {
            "version": CLASSIFIER_VERSION,
            "n_gram_range": list(v.n_gram_range),
            "n_documents": v.n_documents,
            "vocabulary": list(v.terms),
            "document_frequency": list(v.document_frequency),
            "idf": v.idf.tolist(),
            "r": self.r.tolist(),
            "weights": self.weights.tolist(),
            "bias": float(self.bias),
            "threshold": self.threshold,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ClassifierModel":
        if str(data.get("version")) != CLASSIFIER_VERSION:
            raise ValueError(f"unsupported classifier model version {data.get('version')!r}")
        vocab = Vocabulary(
            tuple(data["vocabulary"]),
            tuple(data["document_frequency"]),
            tuple(data["n_gram_range"]),
            int(data["n_documents"]),
        )
        r = np.asarray(data["r"], dtype=float)
        w = np.asarray(data["weights"], dtype=float)
        if not len(r) == len(w) == len(vocab):
            raise ValueError("classifier weight vectors do not match the vocabulary size")
        return cls(vocab, r, w, float(data["bias"]), float(data["threshold"]))

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), ensure_ascii=False) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path) -> "ClassifierModel":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def tfidf_vector(text: str, model: ClassifierModel | Vocabulary) -> sparse.csr_matrix:
    vocab = model.vocabulary if isinstance(model, ClassifierModel) else model
    return tfidf_matrix([text], vocab)


def _logistic_loss(params: np.ndarray, X, y_signed: np.ndarray, l2: float):
    w, b = params[:-1], params[-1]
    z = X @ w + b
    n = len(y_signed)
    loss = -log_expit(y_signed * z).sum() / n + 0.5 * l2 * w.dot(w)
    g = -y_signed * expit(-y_signed * z) / n
    grad = np.empty_like(params)
    grad[:-1] = X.T @ g + l2 * w
    grad[-1] = g.sum()
    return loss, grad


def fit_logistic(X, y: np.ndarray, l2: float = 1e-4, max_iter: int = 1000, tol: float = 1e-6):
    """L2-regularised logistic regression by L-BFGS from a zero start.

    Returns ``(weights, bias, loss_history)``.
    """
    y_signed = np.where(np.asarray(y) == 1, 1.0, -1.0)
    x0 = np.zeros(X.shape[1] + 1)
    history = [_logistic_loss(x0, X, y_signed, l2)[0]]

    def record(intermediate_result):
        history.append(float(intermediate_result.fun))

    res = optimize.minimize(
        _logistic_loss,
        x0,
        args=(X, y_signed, l2),
        jac=True,
        method="L-BFGS-B",
        callback=record,
        options={"maxiter": max_iter, "gtol": tol, "ftol": 0.0},
    )
    if np.abs(res.jac).max() > tol:
        msg = f"logistic regression stopped with gradient norm {np.abs(res.jac).max():.2e} ({res.message})"
        if res.nit >= max_iter:
            warnings.warn(msg, ConvergenceWarning, stacklevel=2)
        else:
            logger.debug(msg)
    return res.x[:-1].copy(), float(res.x[-1]), history


def train(corpus: Corpus, config: ClassifierConfig = ClassifierConfig()) -> ClassifierModel:
    y = np.asarray(corpus.labels)
    if len(set(y.tolist())) < 2:
        raise ValueError("training needs both abusive and non-abusive comments")
    vocab = fit_vocabulary(corpus, config.n_gram_range, config.min_df)
    X = tfidf_matrix(corpus.texts, vocab)
    r = _nb_ratios(X, y, config.nb_alpha)
    Xr = sparse.csr_matrix(X.multiply(r))
    w, b, history = fit_logistic(Xr, y, config.l2, config.max_iter, config.tol)
    return ClassifierModel(vocab, r, w, b, config.threshold, history)


def predict(text: str, model: ClassifierModel) -> tuple[float, int]:
    p = float(model.predict_proba([text])[0])
    return p, int(p >= model.threshold)


@dataclass(frozen=True)
class EvalReport:
    f1: float
    precision: float
    recall: float
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def n(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


def f1_from_counts(tp: int, fp: int, fn: int) -> tuple[float, float, float]:
    """(precision, recall, f1); each is 0 when its denominator is 0."""
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    # 2tp/(2tp+fp+fn) equals the harmonic mean and rounds only once
    f1 = 2 * tp / (2 * tp + fp + fn) if tp else 0.0
    return precision, recall, f1


def report_from_predictions(labels: Sequence[int], predictions: Sequence[int], average: str = "binary") -> EvalReport:
    y = np.asarray(labels)
    yhat = np.asarray(predictions)
    tp = int(((y == 1) & (yhat == 1)).sum())
    fp = int(((y == 0) & (yhat == 1)).sum())
    tn = int(((y == 0) & (yhat == 0)).sum())
    fn = int(((y == 1) & (yhat == 0)).sum())
    precision, recall, f1 = f1_from_counts(tp, fp, fn)
    if average == "macro":
        f1 = (f1 + f1_from_counts(tn, fn, fp)[2]) / 2
    elif average != "binary":
        raise ValueError(f"unknown F1 averaging {average!r}")
    return EvalReport(f1, precision, recall, tp, fp, tn, fn)


def evaluate(model: ClassifierModel, corpus: Corpus, average: str = "binary") -> EvalReport:
    preds = model.predict_labels(corpus.texts) if len(corpus) else []
    return report_from_predictions(corpus.labels, preds, average)
