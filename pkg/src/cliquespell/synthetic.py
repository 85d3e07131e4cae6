"""Synthetic code-mixed abusive-comment corpora with planted misspelling
groups, surface noise and an optional second script."""

from __future__ import annotations

import random
import string
from dataclasses import dataclass, field

from .corpus import Comment, Corpus
from .normalize import TransliterationTable, transliterate
from .wordgraph import count_consonants, is_similar

VOWELS = "aeiou"
CONSONANTS = "bcdfghjklmnpqrstvwxyz"
SCRIPTS = ("latin", "deva")
EMOJI = ["😀", "😂", "🤬", "😡", "👍🏽", "🙏", "🔥", "❤️", "👨‍👩‍👧", "🇮🇳"]
PUNCT = ["!!!", "?", "...", "!!", "$", "\""]
_MAX_ATTEMPTS = 2000


class InfeasibleSpecError(ValueError):
    pass


@dataclass(frozen=True)
class SyntheticSpec:
    n_base_words: int = 10
    variants_per_word: int = 4
    edit_ops_per_variant: int = 1
    n_comments: int = 2000
    abusive_ratio: float = 0.5
    script: str = "latin"
    seed: int = 0
    min_base_length: int = 8
    max_base_length: int = 11
    n_neutral_words: int = 300
    base_share: float = 0.4  # share of abusive tokens spelled as the base word
    noise_rate: float = 0.2  # share spelled as a fresh one-off misspelling
    decoration_rate: float = 0.25
    native_fraction: float = 0.5
    similarity_threshold: float = 85.0

    def __post_init__(self):
        if self.script not in SCRIPTS:
            raise ValueError(f"script must be one of {SCRIPTS}")
        if not 0 <= self.abusive_ratio <= 1:
            raise ValueError("abusive_ratio must be in [0, 1]")
        if self.n_base_words < 1 or self.n_comments < 0 or self.variants_per_word < 0:
            raise ValueError("counts must be non-negative (and at least one base word)")
        if self.min_base_length > self.max_base_length or self.min_base_length < 4:
            raise ValueError("need 4 <= min_base_length <= max_base_length")
        if self.edit_ops_per_variant < 1:
            raise ValueError("edit_ops_per_variant must be >= 1")
        if self.base_share + self.noise_rate > 1:
            raise ValueError("base_share + noise_rate must not exceed 1")


@dataclass
class SyntheticCorpus:
    corpus: Corpus
    groups: dict[str, list[str]]
    table: TransliterationTable | None
    variant_acceptance: float
    neutral_words: list[str] = field(default_factory=list)

    def groups_tsv(self) -> str:
        return "".join(f"{base}\t{v}\n" for base in sorted(self.groups) for v in self.groups[base])


def native_table() -> TransliterationTable:
    """One Devanagari code point per Latin letter, so lengths, consonant
    counts and similarities survive the round trip."""
    entries = {c: chr(0x0915 + i) for i, c in enumerate(CONSONANTS)}
    entries.update(zip(VOWELS, "अएइओउ"))
    return TransliterationTable(entries, "latin", "deva")


def _has_long_run(word: str) -> bool:
    return any(word[i] == word[i + 1] == word[i + 2] for i in range(len(word) - 2))


def _random_word(rng: random.Random, length: int) -> str:
    out = []
    for i in range(length):
        pool = CONSONANTS if i % 2 == 0 or rng.random() < 0.3 else VOWELS
        out.append(rng.choice(pool))
    return "".join(out)


def edit_word(word: str, rng: random.Random, n_ops: int = 1, protect: int = 3) -> str:
    """Apply random substitutions/insertions after the first ``protect`` characters."""
    chars = list(word)
    for _ in range(n_ops):
        if rng.random() < 0.5 and len(chars) > protect:
            i = rng.randrange(protect, len(chars))
            chars[i] = rng.choice([c for c in string.ascii_lowercase if c != chars[i]])
        else:
            i = rng.randrange(protect, len(chars) + 1)
            chars.insert(i, rng.choice(string.ascii_lowercase))
    return "".join(chars)


def max_edit_ops(min_length: int, threshold: float) -> int:
    """Largest number of substitutions that keeps a word of ``min_length``
    within ``threshold`` similarity of itself (the worst single edit)."""
    ops = 0
    while 100 * (2 * min_length - 2 * (ops + 1)) >= threshold * 2 * min_length:
        ops += 1
    return ops


class _Generator:
    def __init__(self, spec: SyntheticSpec):
        self.spec = spec
        self.rng = random.Random(spec.seed)
        self.attempts = 0
        self.accepted = 0

    def words(self, n: int, lengths: tuple[int, int], used_prefixes: set[str], min_consonants: int = 0) -> list[str]:
        out = []
        for _ in range(n):
            for _ in range(_MAX_ATTEMPTS):
                w = _random_word(self.rng, self.rng.randint(*lengths))
                if w[:3] in used_prefixes or _has_long_run(w) or count_consonants(w) < min_consonants:
                    continue
                used_prefixes.add(w[:3])
                out.append(w)
                break
            else:
                raise InfeasibleSpecError("ran out of distinct word prefixes")
        return out

    def variants(self, base: str) -> list[str]:
        # greedy planting can paint itself into a corner; restart the group when it does
        for _ in range(50):
            group = self._try_variants(base)
            if group is not None:
                return group
        raise InfeasibleSpecError(
            f"could not plant {self.spec.variants_per_word} mutually similar variants of {base!r}"
        )

    def _try_variants(self, base: str) -> list[str] | None:
        spec = self.spec
        group: list[str] = []
        for _ in range(spec.variants_per_word):
            for _ in range(200):
                self.attempts += 1
                v = edit_word(base, self.rng, spec.edit_ops_per_variant)
                if v == base or v in group or _has_long_run(v) or count_consonants(v) < 4:
                    continue
                if not all(is_similar(v, u, spec.similarity_threshold) for u in [base, *group]):
                    continue
                self.accepted += 1
                group.append(v)
                break
            else:
                return None
        return group

    def noisy(self, base: str) -> str:
        for _ in range(_MAX_ATTEMPTS):
            v = edit_word(base, self.rng, self.spec.edit_ops_per_variant)
            if v != base and not _has_long_run(v):
                return v
        return base

    def decorate(self, token: str) -> str:
        rng = self.rng
        kind = rng.randrange(5)
        if kind == 0:
            spots = [i for i in range(len(token)) if (i == 0 or token[i - 1] != token[i])
                     and (i + 1 == len(token) or token[i + 1] != token[i])]
            if spots:
                i = rng.choice(spots)
                return token[:i] + token[i] * rng.randint(3, 5) + token[i + 1 :]
            return token
        if kind == 1:
            return token + rng.choice(PUNCT)
        if kind == 2:
            return rng.choice("#@") + token
        if kind == 3:
            return token + rng.choice(EMOJI)
        # fullwidth Latin folds back under NFKC
        return "".join(chr(ord(c) + 0xFEE0) if "a" <= c <= "z" else c for c in token)


def generate(spec: SyntheticSpec) -> SyntheticCorpus:
    limit = max_edit_ops(spec.min_base_length, spec.similarity_threshold)
    if spec.edit_ops_per_variant > limit:
        raise InfeasibleSpecError(
            f"{spec.edit_ops_per_variant} edits cannot keep a {spec.min_base_length}-letter word "
            f"within similarity {spec.similarity_threshold} (at most {limit})"
        )
    g = _Generator(spec)
    rng = g.rng
    used: set[str] = set()
    bases = g.words(spec.n_base_words, (spec.min_base_length, spec.max_base_length), used, min_consonants=4)
    neutral = g.words(spec.n_neutral_words, (3, 9), used)
    groups = {b: g.variants(b) for b in bases}
    table = native_table() if spec.script == "deva" else None

    n_abusive = round(spec.abusive_ratio * spec.n_comments)
    labels = [1] * n_abusive + [0] * (spec.n_comments - n_abusive)
    rng.shuffle(labels)

    comments = []
    for i, label in enumerate(labels):
        tokens = rng.choices(neutral, k=rng.randint(3, 7))
        if label:
            for _ in range(1 if rng.random() < 0.8 else 2):
                base = rng.choice(bases)
                u = rng.random()
                if u < spec.base_share or not groups[base]:
                    word = base
                elif u < spec.base_share + spec.noise_rate:
                    word = g.noisy(base)
                else:
                    word = rng.choice(groups[base])
                tokens.insert(rng.randint(0, len(tokens)), word)
        else:
            tokens.append(rng.choice(neutral))
        rendered = []
        for tok in tokens:
            if table is not None and rng.random() < spec.native_fraction:
                tok = transliterate(tok, table)
            if rng.random() < spec.decoration_rate:
                tok = g.decorate(tok)
            rendered.append(tok)
        n_posts = max(1, spec.n_comments // 5)
        comments.append(
            Comment(
                comment_id=f"c{i:06d}",
                post_id=f"p{rng.randrange(n_posts):05d}",
                text=" ".join(rendered),
                language="hindi",
                comment_likes=rng.randrange(50),
                comment_reports=rng.randrange(5) + (3 * label if rng.random() < 0.5 else 0),
                post_likes=rng.randrange(500),
                post_reports=rng.randrange(10),
                label=label,
            )
        )
    acceptance = g.accepted / g.attempts if g.attempts else 1.0
    return SyntheticCorpus(Corpus(comments), groups, table, acceptance, neutral)
