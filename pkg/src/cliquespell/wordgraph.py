"""Word statistics, indel similarity and the prefix-gated word graph."""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

import regex

logger = logging.getLogger(__name__)

_GRAPHEME = regex.compile(r"\X")


def graphemes(text: str) -> list[str]:
    return _GRAPHEME.findall(text)


def grapheme_prefix(word: str, k: int) -> str | None:
    """First ``k`` grapheme clusters of ``word``, or None if it is shorter."""
    gs = graphemes(word)
    if len(gs) < k:
        return None
    return "".join(gs[:k])


def tokenize(text: str) -> list[str]:
    return text.casefold().split()


# --- consonants -------------------------------------------------------------


class ConsonantProfile:
    """Per-script consonant code point sets."""

    def __init__(self, scripts: Mapping[str, Iterable[int]]):
        self.scripts = {tag: frozenset(cps) for tag, cps in scripts.items()}
        self.all = frozenset().union(*self.scripts.values()) if self.scripts else frozenset()

    @classmethod
    def parse(cls, text: str, source: str = "<string>") -> "ConsonantProfile":
        scripts = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip() or line.startswith("#"):
                continue
            try:
                tag, ranges = line.split("\t")
                cps = set()
                for part in ranges.split(","):
                    lo, _, hi = part.strip().partition("-")
                    cps.update(range(int(lo, 16), int(hi or lo, 16) + 1))
            except ValueError:
                raise ValueError(f"{source}:{lineno}: expected 'script<TAB>XXXX-YYYY,...'") from None
            scripts[tag.strip()] = cps
        return cls(scripts)

    @classmethod
    def load(cls, path) -> "ConsonantProfile":
        return cls.parse(Path(path).read_text(encoding="utf-8"), str(path))

    @classmethod
    def default(cls) -> "ConsonantProfile":
        return _default_profile()

    def consonants_for(self, script: str | None) -> frozenset:
        if script is None:
            return self.all
        if script not in self.scripts:
            logger.warning("no consonant profile for script %r; counting Latin consonants", script)
            return self.scripts.get("latin", _LATIN)
        return self.scripts[script]


_LATIN = frozenset(map(ord, "bcdfghjklmnpqrstvwxyz"))


@lru_cache(maxsize=1)
def _default_profile() -> ConsonantProfile:
    text = resources.files("cliquespell").joinpath("data/consonants.tsv").read_text(encoding="utf-8")
    return ConsonantProfile.parse(text, "consonants.tsv")


def count_consonants(word: str, profile: ConsonantProfile | None = None, script: str | None = None) -> int:
    """Count graphemes whose base code point is a consonant.

    With ``script=None`` every script in the profile is consulted.
    """
    consonants = (profile or ConsonantProfile.default()).consonants_for(script)
    return sum(1 for g in graphemes(word) if ord(g[0]) in consonants)


# --- similarity -------------------------------------------------------------


def lcs_length(a: str, b: str) -> int:
    """Longest common subsequence length, bit-parallel over ``b``."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return 0
    masks: dict[str, int] = {}
    for i, ch in enumerate(b):
        masks[ch] = masks.get(ch, 0) | (1 << i)
    full = (1 << len(b)) - 1
    v = full
    for ch in a:
        u = v & masks.get(ch, 0)
        v = ((v + u) | (v - u)) & full
    return len(b) - bin(v).count("1")


def indel_distance(a: str, b: str) -> int:
    return len(a) + len(b) - 2 * lcs_length(a, b)


def similarity(a: str, b: str) -> float:
    """Normalized indel similarity in [0, 100] (100 for identical strings)."""
    total = len(a) + len(b)
    if total == 0:
        return 100.0
    return 100.0 * (1 - indel_distance(a, b) / total)


def is_similar(a: str, b: str, threshold: float) -> bool:
    """``similarity(a, b) >= threshold`` decided without rounding error."""
    total = len(a) + len(b)
    if total == 0:
        return threshold <= 100
    return 100 * (total - indel_distance(a, b)) >= threshold * total


# --- graph ------------------------------------------------------------------


@dataclass(frozen=True)
class WordStats:
    word: str
    frequency: int
    abusive_frequency: int
    length: int
    consonants: int


@dataclass(frozen=True)
class GraphConfig:
    min_abusive_frequency: int = 5
    min_length: int = 6
    min_consonants: int = 4
    prefix_len: int = 3
    similarity_threshold: float = 85.0

    def __post_init__(self):
        if min(self.min_abusive_frequency, self.min_length, self.min_consonants) < 0:
            raise ValueError("graph filter thresholds must be >= 0")
        if self.prefix_len < 1:
            raise ValueError("prefix_len must be >= 1")
        if not 0 <= self.similarity_threshold <= 100:
            raise ValueError("similarity_threshold must be in [0, 100]")


def count_stats(texts_and_labels, profile: ConsonantProfile | None = None) -> dict[str, WordStats]:
    """Word frequencies over all comments and over abusive comments.

    Accepts a Corpus or any iterable of ``(text, label)`` pairs.
    """
    freq: Counter = Counter()
    abusive: Counter = Counter()
    for item in texts_and_labels:
        text, label = (item.text, item.label) if hasattr(item, "text") else item
        tokens = tokenize(text)
        freq.update(tokens)
        if label == 1:
            abusive.update(tokens)
    profile = profile or ConsonantProfile.default()
    return {
        w: WordStats(w, freq[w], abusive[w], len(graphemes(w)), count_consonants(w, profile))
        for w in sorted(freq)
    }


class WordGraph:
    """Undirected simple graph over words, with per-word statistics."""

    def __init__(self, adjacency: Mapping[str, Iterable[str]], stats: Mapping[str, WordStats] | None = None):
        adj = {u: set(vs) for u, vs in adjacency.items()}
        for u, vs in list(adj.items()):
            vs.discard(u)
            for v in vs:
                adj.setdefault(v, set()).add(u)
        self.adj = {u: frozenset(adj[u]) for u in sorted(adj)}
        self.stats = dict(stats or {})

    @property
    def nodes(self) -> list[str]:
        return list(self.adj)

    def __len__(self) -> int:
        return len(self.adj)

    def __contains__(self, word) -> bool:
        return word in self.adj

    def edges(self) -> set[tuple[str, str]]:
        return {(u, v) for u, vs in self.adj.items() for v in vs if u < v}

    def frequency(self, word: str) -> int:
        s = self.stats.get(word)
        return s.frequency if s is not None else 0

    def subgraph(self, nodes: Iterable[str]) -> "WordGraph":
        keep = set(nodes)
        return WordGraph({u: self.adj[u] & keep for u in keep}, self.stats)

    def without(self, nodes: Iterable[str]) -> "WordGraph":
        drop = set(nodes)
        return self.subgraph(u for u in self.adj if u not in drop)

    def components(self) -> list[list[str]]:
        """Connected components, each sorted, ordered by smallest member."""
        seen: set[str] = set()
        out = []
        for start in self.adj:
            if start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                u = stack.pop()
                comp.append(u)
                for v in self.adj[u]:
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
            out.append(sorted(comp))
        return sorted(out)

    def dumps(self) -> str:
        return "".join(f"{u}: {','.join(sorted(vs))}\n" for u, vs in self.adj.items())


def eligible(stats: WordStats, config: GraphConfig) -> bool:
    return (
        stats.abusive_frequency >= config.min_abusive_frequency
        and stats.length >= config.min_length
        and stats.consonants >= config.min_consonants
    )


def build_graph(stats: Mapping[str, WordStats], config: GraphConfig = GraphConfig()) -> WordGraph:
    """Connect eligible words sharing their first ``k`` graphemes whose
    similarity reaches the threshold. Only words within one prefix bucket
    are compared."""
    nodes = sorted(w for w, s in stats.items() if eligible(s, config))
    buckets: dict[str, list[str]] = defaultdict(list)
    for w in nodes:
        p = grapheme_prefix(w, config.prefix_len)
        if p is not None:
            buckets[p].append(w)
    adj: dict[str, set[str]] = {w: set() for w in nodes}
    t = config.similarity_threshold
    for words in buckets.values():
        for i, u in enumerate(words):
            for v in words[i + 1 :]:
                if is_similar(u, v, t):
                    adj[u].add(v)
                    adj[v].add(u)
    return WordGraph(adj, {w: stats[w] for w in nodes})
