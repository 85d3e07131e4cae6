"""Corpus-adaptive spell correction by word-graph clique clustering, with a
cleaning pipeline and an NB-TF-IDF logistic-regression probe for
code-mixed abusive-comment detection."""

from .classify import ClassifierConfig, ClassifierModel, EvalReport, evaluate, predict, train
from .cluster import Cluster, CorrectionModel, extract_clusters, load_model, maximum_clique, save_model
from .corpus import Comment, Corpus, aggregate_post_metadata, ingest, stratified_split
from .correct import CorrectionOutcome, Corrector, correct_corpus, correct_text, correct_word
from .normalize import CleaningConfig, TransliterationTable, clean, transliterate
from .wordgraph import GraphConfig, WordGraph, build_graph, count_stats, similarity, tokenize

__version__ = "0.1.0"

__all__ = [
    "ClassifierConfig", "ClassifierModel", "EvalReport", "evaluate", "predict", "train",
    "Cluster", "CorrectionModel", "extract_clusters", "load_model", "maximum_clique", "save_model",
    "Comment", "Corpus", "aggregate_post_metadata", "ingest", "stratified_split",
    "CorrectionOutcome", "Corrector", "correct_corpus", "correct_text", "correct_word",
    "CleaningConfig", "TransliterationTable", "clean", "transliterate",
    "GraphConfig", "WordGraph", "build_graph", "count_stats", "similarity", "tokenize",
]
