import random

from hypothesis import given, settings, strategies as st

from cliquespell.cluster import Cluster, CorrectionModel, make_cluster
from cliquespell.corpus import Comment, Corpus
from cliquespell.correct import Corrector, audit_rows, correct_corpus, correct_text, correct_word
from cliquespell.wordgraph import GraphConfig
from oracles import correct_word_brute, first_graphemes


def bewakoof_model():
    freq = {"bewakoof": 50, "bewakoofi": 20, "bewakouf": 15}
    return CorrectionModel((make_cluster(freq, freq),))


def test_unseen_variant_corrected():
    out = correct_word("bewakoufi", bewakoof_model())
    assert out.corrected == "bewakoof"
    assert out.matched_cluster == "bewakoof"
    # closest anchor is bewakouf: 16/17 matched
    assert round(out.score, 1) == 94.1


def test_parent_maps_to_itself():
    out = correct_word("bewakoof", bewakoof_model())
    assert out.corrected == "bewakoof" and out.score == 100.0 and not out.changed


def test_no_prefix_match_passes_through():
    out = correct_word("kamina", bewakoof_model())
    assert out == type(out)("kamina", "kamina")


def test_short_word_passes_through():
    assert correct_word("be", bewakoof_model()).corrected == "be"


def test_below_threshold_passes_through():
    assert correct_word("bewxyzqrt", bewakoof_model()).corrected == "bewxyzqrt"


def test_correct_text():
    assert correct_text("tu bewakoufi hai", bewakoof_model()) == "tu bewakoof hai"


def test_empty_model_is_identity():
    assert correct_text("tu bewakoufi hai", CorrectionModel()) == "tu bewakoufi hai"


def test_correct_corpus_keeps_everything_but_text():
    c = Corpus([Comment("a", "P", "Tu BEWAKOUFI hai", "hindi", 1, 2, 3, 4, 1), Comment("b", "Q", "", label=0)])
    out = correct_corpus(c, bewakoof_model())
    assert out[0].text == "tu bewakoof hai"
    assert out[1].text == ""
    assert [x.comment_id for x in out] == ["a", "b"]
    assert out[0].comment_reports == 2 and out[0].label == 1


def test_tie_goes_to_frequent_parent():
    k = GraphConfig()
    a = Cluster(("kuttaaa",), "kuttaaa", 10, (("kuttaaa", 10),), "kut")
    b = Cluster(("kuttazz",), "kuttazz", 30, (("kuttazz", 30),), "kut")
    model = CorrectionModel((a, b), k)
    # kuttaza scores 12/14 against both anchors
    word = "kuttaza"
    got = correct_word(word, model).corrected
    want, _ = correct_word_brute(word, [("kuttaaa", 10, ["kuttaaa"]), ("kuttazz", 30, ["kuttazz"])], 3, 85)
    assert got == want == "kuttazz"


def test_audit_rows():
    _, changed = Corrector(bewakoof_model()).correct_text_audit("tu bewakoufi hai")
    assert audit_rows(changed) == "bewakoufi\tbewakoof\tbewakoof\t94.12\n"


def _random_model(rng):
    stems = ["bew", "kut", "pag", "bak"]
    clusters, seen = [], set()
    for _ in range(rng.randint(1, 6)):
        stem = rng.choice(stems)
        words = set()
        for _ in range(rng.randint(1, 4)):
            w = stem + "".join(rng.choices("aeiokfrt", k=rng.randint(3, 6)))
            if w not in seen:
                words.add(w)
        if not words:
            continue
        seen |= words
        clusters.append(make_cluster(words, {w: rng.randint(1, 40) for w in words}))
    return CorrectionModel(tuple(clusters), GraphConfig(similarity_threshold=rng.choice([70, 80, 85])))


def test_matches_brute_force_oracle():
    rng = random.Random(21)
    for _ in range(150):
        model = _random_model(rng)
        plain = [(c.parent, c.parent_frequency, c.anchor_words) for c in model.clusters]
        corr = Corrector(model)
        for _ in range(20):
            word = rng.choice(["bew", "kut", "pag", "bak", "xyz", "b"]) + "".join(rng.choices("aeiokfrt", k=rng.randint(0, 7)))
            want, parent = correct_word_brute(word, plain, 3, model.config.similarity_threshold)
            out = corr.correct_word(word)
            assert out.corrected == want
            assert out.matched_cluster == parent
            if out.changed:
                assert first_graphemes(out.corrected, 3) == first_graphemes(word, 3)


words = st.text(alphabet="bewakoufikt ", max_size=40)


@settings(max_examples=200, deadline=None)
@given(words)
def test_correct_text_idempotent(text):
    corr = Corrector(bewakoof_model())
    once = corr.correct_text(text)
    assert corr.correct_text(once) == once


@settings(max_examples=100, deadline=None)
@given(st.lists(words, max_size=8))
def test_correct_corpus_idempotent(texts):
    c = Corpus(Comment(f"c{i}", "P", t) for i, t in enumerate(texts))
    m = bewakoof_model()
    once = correct_corpus(c, m)
    assert correct_corpus(once, m) == once
