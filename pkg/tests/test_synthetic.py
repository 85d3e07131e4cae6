import pytest

from cliquespell.normalize import clean, CleaningConfig
from cliquespell.synthetic import (
    InfeasibleSpecError,
    SyntheticSpec,
    generate,
    max_edit_ops,
    native_table,
)
from cliquespell.wordgraph import similarity
from oracles import first_graphemes


def test_groups_respect_prefix_and_threshold():
    s = generate(SyntheticSpec(n_comments=200, seed=3))
    assert len(s.groups) == 10
    for base, variants in s.groups.items():
        assert 8 <= len(base) <= 11
        assert len(variants) == 4
        members = [base] + variants
        assert len(set(members)) == 5
        for a in members:
            assert first_graphemes(a, 3) == base[:3]
            for b in members:
                assert similarity(a, b) >= 85


def test_label_ratio():
    s = generate(SyntheticSpec(n_comments=101, abusive_ratio=0.3))
    assert sum(s.corpus.labels) == round(0.3 * 101)
    assert sum(generate(SyntheticSpec(n_comments=50, abusive_ratio=0.0)).corpus.labels) == 0


def test_deterministic():
    a = generate(SyntheticSpec(n_comments=100, seed=9, script="deva"))
    b = generate(SyntheticSpec(n_comments=100, seed=9, script="deva"))
    assert a.corpus == b.corpus and a.groups == b.groups
    assert generate(SyntheticSpec(n_comments=100, seed=10)).corpus != generate(SyntheticSpec(n_comments=100, seed=9)).corpus


def test_infeasible_edit_budget():
    assert max_edit_ops(8, 85) == 1
    with pytest.raises(InfeasibleSpecError):
        generate(SyntheticSpec(edit_ops_per_variant=3))


def test_native_table_is_one_to_one():
    t = native_table()
    assert len(t.entries) == 26
    assert len(set(t.entries.values())) == 26
    assert all(len(v) == 1 for v in t.entries.values())


def test_deva_corpus_transliterates_back():
    s = generate(SyntheticSpec(n_comments=300, script="deva", seed=1))
    assert s.table is not None
    cfg = CleaningConfig(transliteration=s.table)
    cleaned = [clean(t, cfg) for t in s.corpus.texts]
    assert not any(ch.isascii() and ch.isalpha() for t in cleaned for ch in t)


def test_bad_spec():
    with pytest.raises(ValueError):
        SyntheticSpec(script="tamil")
    with pytest.raises(ValueError):
        SyntheticSpec(abusive_ratio=1.5)
