"""Training-time clustering: repeatedly peel the maximum clique off the
word graph and summarise it by a parent word and its anchor words."""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .wordgraph import GraphConfig, WordGraph, WordStats, build_graph, grapheme_prefix

MODEL_VERSION = "1"
MAX_ANCHORS = 5


class ModelFormatError(ValueError):
    pass


class IncompatibleModelError(ModelFormatError):
    pass


def _frequency(stats: Mapping, word: str) -> int:
    s = stats.get(word, 0)
    return s.frequency if isinstance(s, WordStats) else int(s)


def clique_key(clique: Iterable[str], stats: Mapping) -> tuple:
    """Sort key for cliques: bigger first, then heavier, then lexicographic."""
    members = tuple(sorted(clique))
    return (-len(members), -sum(_frequency(stats, w) for w in members), members)


def _best_in_component(adj: Mapping[str, frozenset], nodes: Iterable[str], stats: Mapping) -> tuple:
    """Best clique key among maximal cliques of the induced subgraph.

    Bron-Kerbosch with Tomita pivoting; a branch is cut when it cannot
    reach the current best size. Equal-size branches are kept so the
    frequency/lexicographic tie-break sees every maximum clique.
    """
    nodes = frozenset(nodes)
    nbrs = {u: adj[u] & nodes for u in nodes}
    best: list = [None]

    def expand(r: tuple, p: frozenset, x: frozenset):
        if not p and not x:
            k = clique_key(r, stats)
            if best[0] is None or k < best[0]:
                best[0] = k
            return
        if best[0] is not None and len(r) + len(p) < -best[0][0]:
            return
        pivot = max(p | x, key=lambda u: (len(p & nbrs[u]), u))
        for v in sorted(p - nbrs[pivot]):
            expand(r + (v,), p & nbrs[v], x & nbrs[v])
            p = p - {v}
            x = x | {v}

    expand((), nodes, frozenset())
    return best[0]


def maximum_clique(graph: WordGraph, stats: Mapping | None = None) -> set[str]:
    """A maximum-cardinality clique, ties broken by total member frequency
    and then by the lexicographically smallest sorted member tuple."""
    if not len(graph):
        raise ValueError("maximum_clique of an empty graph")
    stats = graph.stats if stats is None else stats
    best = min(_best_in_component(graph.adj, comp, stats) for comp in graph.components())
    return set(best[2])


def select_parent(members: Iterable[str], stats: Mapping) -> str:
    members = list(members)
    if not members:
        raise ValueError("select_parent of an empty cluster")
    return min(members, key=lambda w: (-_frequency(stats, w), w))


def select_anchors(members: Iterable[str], parent: str, stats: Mapping) -> list[str]:
    """Top-5 most frequent members whose frequency exceeds a quarter of the
    parent's, most frequent first. The parent always qualifies."""
    members = set(members)
    if parent not in members:
        raise ValueError(f"parent {parent!r} is not a cluster member")
    parent_freq = _frequency(stats, parent)
    ranked = sorted(members, key=lambda w: (-_frequency(stats, w), w))[:MAX_ANCHORS]
    anchors = [w for w in ranked if w == parent or 4 * _frequency(stats, w) > parent_freq]
    if parent not in anchors:
        anchors.insert(0, parent)
    return anchors


@dataclass(frozen=True)
class Cluster:
    members: tuple[str, ...]
    parent: str
    parent_frequency: int
    anchors: tuple[tuple[str, int], ...]
    prefix: str

    @property
    def anchor_words(self) -> list[str]:
        return [w for w, _ in self.anchors]


@dataclass(frozen=True)
class CorrectionModel:
    clusters: tuple[Cluster, ...] = ()
    config: GraphConfig = field(default_factory=GraphConfig)
    version: str = MODEL_VERSION

    def to_dict(self) -> dict:
        c = self.config
        return {
            "version": self.version,
            "config": {
                "k": c.prefix_len,
                "t": c.similarity_threshold,
                "min_abusive_frequency": c.min_abusive_frequency,
                "min_length": c.min_length,
                "min_consonants": c.min_consonants,
            },
            "clusters": [
                {
                    "parent": cl.parent,
                    "parent_frequency": cl.parent_frequency,
                    "prefix": cl.prefix,
                    "anchors": [{"word": w, "frequency": f} for w, f in cl.anchors],
                    "members": list(cl.members),
                }
                for cl in self.clusters
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CorrectionModel":
        if not isinstance(data, dict) or "version" not in data:
            raise ModelFormatError("not a correction model document")
        if str(data["version"]) != MODEL_VERSION:
            raise IncompatibleModelError(
                f"model format version {data['version']!r} is not supported (expected {MODEL_VERSION!r})"
            )
        try:
            c = data["config"]
            config = GraphConfig(
                min_abusive_frequency=int(c["min_abusive_frequency"]),
                min_length=int(c["min_length"]),
                min_consonants=int(c["min_consonants"]),
                prefix_len=int(c["k"]),
                similarity_threshold=float(c["t"]),
            )
            clusters = tuple(
                Cluster(
                    members=tuple(cl["members"]),
                    parent=cl["parent"],
                    parent_frequency=int(cl["parent_frequency"]),
                    anchors=tuple((a["word"], int(a["frequency"])) for a in cl["anchors"]),
                    prefix=cl["prefix"],
                )
                for cl in data["clusters"]
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ModelFormatError(f"malformed correction model: {e!r}") from None
        return cls(clusters, config, MODEL_VERSION)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=1) + "\n"


def make_cluster(members: Iterable[str], stats: Mapping, prefix_len: int = 3) -> Cluster:
    members = sorted(members)
    parent = select_parent(members, stats)
    anchors = select_anchors(members, parent, stats)
    return Cluster(
        members=tuple(members),
        parent=parent,
        parent_frequency=_frequency(stats, parent),
        anchors=tuple((w, _frequency(stats, w)) for w in anchors),
        prefix=grapheme_prefix(parent, prefix_len) or parent,
    )


def extract_clusters(graph: WordGraph, stats: Mapping | None = None, config: GraphConfig | None = None) -> CorrectionModel:
    """Partition the graph by repeatedly removing its maximum clique.

    Only the component a clique came from changes between rounds, so each
    component's best clique is cached in a heap and only the residual
    pieces of the touched component are searched again.
    """
    stats = graph.stats if stats is None else stats
    config = config or GraphConfig()
    adj = graph.adj
    heap = []
    for comp in graph.components():
        heapq.heappush(heap, (_best_in_component(adj, comp, stats), frozenset(comp)))
    clusters = []
    while heap:
        key, comp = heapq.heappop(heap)
        clique = key[2]
        clusters.append(make_cluster(clique, stats, config.prefix_len))
        rest = comp - set(clique)
        if rest:
            for sub in graph.subgraph(rest).components():
                heapq.heappush(heap, (_best_in_component(adj, sub, stats), frozenset(sub)))
    return CorrectionModel(tuple(clusters), config)


def train_model(stats: Mapping[str, WordStats], config: GraphConfig = GraphConfig()) -> CorrectionModel:
    return extract_clusters(build_graph(stats, config), stats, config)


def save_model(model: CorrectionModel, path) -> None:
    Path(path).write_text(model.dumps(), encoding="utf-8")


def load_model(path) -> CorrectionModel:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"{path}: cannot parse model: {e}") from None
    return CorrectionModel.from_dict(data)
