"""Acceptance gate. Each test records exactly one PASS/FAIL line, listed
again in the terminal summary under "acceptance criteria"."""

import os
import random
import subprocess
import sys
import time
from itertools import combinations, product
from fractions import Fraction

import pytest

from cliquespell.ablation import VARIANT_NAMES, run_ablation
from cliquespell.classify import report_from_predictions, evaluate, train
from cliquespell.cluster import maximum_clique, train_model
from cliquespell.corpus import Comment, Corpus, aggregate_post_metadata
from cliquespell.correct import Corrector
from cliquespell.normalize import clean
from cliquespell.synthetic import SyntheticSpec, edit_word, generate
from cliquespell.wordgraph import GraphConfig, WordGraph, WordStats, build_graph, count_stats, graphemes, similarity
from oracles import (
    best_clique_by_enumeration,
    brute_force_edges,
    f1_by_hand,
    first_graphemes,
    similarity_dp,
)

MIXED = "abcdefghijkऀअआकखगघङचछजटठडणतथदनपफबमयरलवशसह्ािीुूेैोौंःéñüßΩжщ"


@pytest.fixture(scope="module")
def recovery():
    synth = generate(SyntheticSpec(n_base_words=10, variants_per_word=4, n_comments=3000, seed=0))
    cleaned = synth.corpus.map_text(clean)
    stats = count_stats(cleaned)
    start = time.perf_counter()
    model = train_model(stats)
    return synth, stats, model, time.perf_counter() - start


def test_reported_numbers_not_reproduced(verdict):
    # absolute F1 targets need a proprietary dataset; what carries over is
    # the variant ladder, so check the report rows are the same four, in order
    names = [VARIANT_NAMES[v] for v in ("raw", "cleaned", "native", "spell")]
    ok = names == ["Raw Dataset", "Cleaned Dataset", "Cleaned + Native Transliteration Dataset",
                   "Cleaned + Native Transliteration + Spell-Corrected Dataset"]
    verdict(ok, "absolute F1 values not reproducible; acceptance is property-based and directional")


def test_similarity_oracle(verdict):
    rng = random.Random(0)
    pairs = [("".join(rng.choices(MIXED, k=rng.randint(1, 15))), "".join(rng.choices(MIXED, k=rng.randint(1, 15))))
             for _ in range(1000)]
    start = time.perf_counter()
    got = [similarity(a, b) for a, b in pairs]
    elapsed = time.perf_counter() - start
    mismatches = sum(g != similarity_dp(a, b) for g, (a, b) in zip(got, pairs))
    verdict(mismatches == 0 and elapsed < 5, f"1000 pairs, {mismatches} mismatches, {elapsed:.3f}s (< 5s)")


def test_clique_oracle(verdict):
    rng = random.Random(1)
    cases = []
    for i in range(200):
        p = (0.2, 0.5, 0.8)[i % 3]
        n = rng.randint(1, 15)
        nodes = [f"v{j:02d}" for j in range(n)]
        edges = {(u, v) for u, v in combinations(nodes, 2) if rng.random() < p}
        freq = {w: rng.randint(1, 5) for w in nodes}
        cases.append((nodes, edges, freq))
    start = time.perf_counter()
    results = []
    for nodes, edges, freq in cases:
        adj = {w: set() for w in nodes}
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        results.append(maximum_clique(WordGraph(adj), freq))
    elapsed = time.perf_counter() - start
    size_bad = same_bad = 0
    for (nodes, edges, freq), got in zip(cases, results):
        want = best_clique_by_enumeration(nodes, edges, freq)
        size_bad += len(got) != len(want)
        same_bad += tuple(sorted(got)) != want
    ok = size_bad == 0 and same_bad == 0 and elapsed < 60
    verdict(ok, f"200 graphs, {size_bad} size / {same_bad} identity mismatches, {elapsed:.2f}s (< 60s)")


def test_graph_construction_oracle(verdict):
    rng = random.Random(2)
    stems = ["bewak", "bewaq", "kutta", "kuttu", "chutiy", "harami", "pagal", "कमीन", "बेवकू"]
    words = set()
    while len(words) < 500:
        w = rng.choice(stems) + "".join(rng.choices("aeioukrtshन्ा", k=rng.randint(0, 6)))
        if rng.random() < 0.4 and len(w) > 3:
            i = rng.randrange(3, len(w))
            w = w[:i] + rng.choice("aeiouxyzि") + w[i + 1:]
        words.add(w)
    words = sorted(words)
    stats = {w: WordStats(w, 10, 10, len(graphemes(w)), 6) for w in words}
    cfg = GraphConfig(min_length=0, min_consonants=0)
    got = build_graph(stats, cfg).edges()
    want = brute_force_edges(words, cfg.prefix_len, cfg.similarity_threshold)
    verdict(got == want, f"{len(words)} words, {len(want)} oracle edges, {len(got ^ want)} differences")


def test_cluster_recovery(verdict, recovery):
    synth, stats, model, elapsed = recovery
    premise = all(len(b) >= 8 and len(v) == 4 for b, v in synth.groups.items())
    premise &= all(stats[w].abusive_frequency >= 5 for vs in synth.groups.values() for w in vs)
    recovered = parent_ok = 0
    in_group = total = 0
    for base, variants in synth.groups.items():
        group = {base, *variants}
        best = max(model.clusters, key=lambda c: len(group & set(c.members)))
        if group <= set(best.members):
            recovered += 1
            parent_ok += best.parent == base
            in_group += len(group)
            total += len(best.members)
    purity = in_group / total if total else 0.0
    rate = recovered / len(synth.groups)
    ok = premise and rate >= 0.9 and purity >= 0.95 and parent_ok == recovered and elapsed < 30
    verdict(ok, f"recovered {recovered}/10 groups, purity {purity:.3f}, true parent in "
                f"{parent_ok}/{recovered}, premise {'met' if premise else 'NOT met'}, {elapsed:.2f}s (< 30s)")


def test_unseen_variant_correction(verdict, recovery):
    synth, stats, model, _ = recovery
    corrector = Corrector(model)
    known = {w for c in model.clusters for w in c.members} | set(stats)
    rng = random.Random(3)
    bases = sorted(synth.groups)
    held_out = []
    while len(held_out) < 100:
        base = rng.choice(bases)
        v = edit_word(base, rng, 1)
        if v not in known and v not in {h for _, h in held_out}:
            held_out.append((base, v))
    correct = crossings = 0
    for base, v in held_out:
        out = corrector.correct_word(v)
        correct += out.corrected == base
        crossings += out.changed and first_graphemes(out.corrected, 3) != first_graphemes(v, 3)
    verdict(correct >= 95 and crossings == 0, f"{correct}/100 corrected to the true parent, {crossings} prefix crossings")


def _random_text(rng):
    pieces = list("aabbkk  @#!?-'.") + ["😀", "👍🏽", "❤️", "‍", "ａ", "क", "्", "ि", "é", "́", "ooo", "!!!"]
    return "".join(rng.choice(pieces) for _ in range(rng.randint(0, 30)))


def _random_corpus(rng, text_fn, n_max=6):
    return Corpus(
        Comment(f"c{i}", rng.choice("PQR"), text_fn(rng), post_likes=rng.randint(0, 9),
                post_reports=rng.randint(0, 9), comment_likes=rng.randint(0, 9), label=rng.randint(0, 1))
        for i in range(rng.randint(0, n_max))
    )


def test_idempotence(verdict, recovery):
    synth, _, model, _ = recovery
    corrector = Corrector(model)
    rng = random.Random(4)
    vocab = sorted(synth.groups) + [v for vs in synth.groups.values() for v in vs] + synth.neutral_words[:50]

    def near_text(r):
        return " ".join(edit_word(w, r, r.randint(0, 2)) if r.random() < 0.5 and len(w) > 3 else w
                        for w in r.choices(vocab, k=r.randint(0, 8)))

    failures = {}
    failures["clean"] = sum(clean(clean(s)) != clean(s) for s in (_random_text(rng) for _ in range(1000)))
    texts = [near_text(rng) for _ in range(1000)]
    failures["correct_text"] = sum(corrector.correct_text(corrector.correct_text(t)) != corrector.correct_text(t)
                                   for t in texts)
    bad = 0
    for _ in range(1000):
        c = _random_corpus(rng, near_text)
        once = corrector.correct_corpus(c)
        bad += corrector.correct_corpus(once) != once
    failures["correct_corpus"] = bad
    bad = 0
    for _ in range(1000):
        c = _random_corpus(rng, _random_text)
        once = aggregate_post_metadata(c)
        bad += aggregate_post_metadata(once) != once
    failures["aggregate_post_metadata"] = bad
    detail = ", ".join(f"{k} {v}/1000 violations" for k, v in failures.items())
    verdict(not any(failures.values()), detail)


def test_ablation_direction(verdict):
    synth = generate(SyntheticSpec(n_base_words=60, n_comments=10000, script="deva", seed=0))
    start = time.perf_counter()
    rows = run_ablation(synth.corpus, native_table=synth.table, seed=0)
    elapsed = time.perf_counter() - start
    f1 = [r.report.f1 for r in rows]
    ordered = all(a <= b for a, b in zip(f1, f1[1:]))
    gain = f1[3] - f1[2]
    ok = ordered and gain >= 0.005 and elapsed < 300 and len(synth.corpus) <= 20000
    verdict(ok, " <= ".join(f"{x:.4f}" for x in f1) + f", spell gain {gain:+.4f} (>= +0.005), "
                f"{len(synth.corpus)} comments, {elapsed:.1f}s (< 300s)")


def test_classifier_sanity(verdict):
    bad = ["tu kutta hai", "kutta kamina", "saala kutta", "kamina saala hai", "tu kamina"]
    good = ["accha video", "bahut accha", "accha laga video", "nice video bhai", "bahut nice"]
    toy = Corpus(Comment(f"c{i}", "P", t, label=int(i < 5)) for i, t in enumerate(bad + good))
    separable = evaluate(train(toy), toy).f1
    grid_bad = 0
    for tp, fp, tn, fn in product(range(4), repeat=4):
        labels = [1] * tp + [0] * fp + [0] * tn + [1] * fn
        preds = [1] * tp + [1] * fp + [0] * tn + [0] * fn
        grid_bad += report_from_predictions(labels, preds).f1 != float(f1_by_hand(tp, fp, fn))
    verdict(separable == 1.0 and grid_bad == 0,
            f"separable toy F1 {separable}, {grid_bad}/256 confusion-grid mismatches against exact arithmetic")


def _cli(args, hashseed, cwd):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    return subprocess.run([sys.executable, "-m", "cliquespell.cli", *args], cwd=cwd, env=env,
                          capture_output=True, text=True, check=True)


def test_determinism(verdict, tmp_path):
    digests = []
    for run, hashseed in enumerate((1, 2)):
        d = tmp_path / f"run{run}"
        d.mkdir()
        steps = [
            ["generate", "--output", "syn.csv", "--n-comments", "1500", "--script", "deva", "--seed", "7"],
            ["clean", "--input", "syn.csv", "--output", "clean.csv", "--config", "cfg.toml"],
            ["train-spell", "--input", "clean.csv", "--model", "spell.json", "--graph-dump", "graph.txt"],
            ["correct", "--input", "clean.csv", "--model", "spell.json", "--output", "corr.csv", "--audit", "audit.tsv"],
            ["train-classifier", "--input", "corr.csv", "--model", "clf.json"],
            ["predict", "--input", "corr.csv", "--model", "clf.json", "--output", "pred.tsv"],
            ["evaluate", "--input", "corr.csv", "--model", "clf.json", "--output", "eval.tsv"],
            ["ablate", "--input", "syn.csv", "--output", "ablation.tsv", "--native-translit-table", "syn.translit.tsv",
             "--seed", "7"],
        ]
        (d / "cfg.toml").write_text('[cleaning]\ntransliteration = "syn.translit.tsv"\n')
        for step in steps:
            _cli(step, hashseed, d)
        digests.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
    a, b = digests
    differing = sorted(k for k in a if a[k] != b.get(k))
    verdict(a.keys() == b.keys() and not differing,
            f"8 commands run twice under different hash seeds, {len(a)} files, "
            f"{len(differing)} differ{': ' + ', '.join(differing) if differing else ''}")
