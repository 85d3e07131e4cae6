"""Comment cleaning: Unicode normalization, special-character and emoji
removal, repeated-character collapse and table-driven transliteration."""

from __future__ import annotations

import string
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import regex

UNICODE_FORMS = ("NFC", "NFKC")

# Hyphen is handled separately: only hyphens not flanked by word characters are stripped.
DEFAULT_SPECIAL_CHARS = frozenset(string.punctuation) - {"'", "-"}

_WHITESPACE = regex.compile(r"\s+")
_LOOSE_HYPHEN = regex.compile(r"(?<!\w)-|-(?!\w)")
_GRAPHEME = regex.compile(r"\X")
_EMOJI_CORE = regex.compile(r"[\p{Emoji_Presentation}\p{Emoji_Modifier}\u20e3\U000E0020-\U000E007F]")
_PICTOGRAPHIC = regex.compile(r"\p{Extended_Pictographic}")
_EMOJI_JOINERS = regex.compile(r"[\u200d\ufe0e\ufe0f]")
_STRAY_EMOJI_MARKS = regex.compile(r"[\ufe0e\ufe0f\p{Emoji_Modifier}]")


@dataclass(frozen=True)
class TransliterationTable:
    """Greedy longest-match grapheme substitution table."""

    entries: Mapping[str, str]
    source_script: str = "latin"
    target_script: str = "native"
    _max_len: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if any(not src for src in self.entries):
            raise ValueError("transliteration entries must have a non-empty source")
        object.__setattr__(self, "entries", dict(self.entries))
        object.__setattr__(self, "_max_len", max(map(len, self.entries), default=0))

    @classmethod
    def load(cls, path, source_script: str = "latin", target_script: str = "native"):
        """Read a ``source<TAB>target`` file; ``#`` starts a comment line."""
        entries = {}
        text = Path(path).read_text(encoding="utf-8")
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0]:
                raise ValueError(f"{path}:{lineno}: expected 'source<TAB>target'")
            entries[parts[0]] = parts[1]
        return cls(entries, source_script, target_script)

    def dumps(self) -> str:
        lines = [f"# {self.source_script} -> {self.target_script}"]
        lines += [f"{s}\t{t}" for s, t in sorted(self.entries.items())]
        return "\n".join(lines) + "\n"

    def inverse(self) -> "TransliterationTable":
        inv = {}
        for s, t in sorted(self.entries.items()):
            if t:
                inv.setdefault(t, s)
        return TransliterationTable(inv, self.target_script, self.source_script)


@dataclass(frozen=True)
class CleaningConfig:
    unicode_form: str = "NFKC"
    special_chars: frozenset = DEFAULT_SPECIAL_CHARS
    keep_intraword_hyphen: bool = True
    collapse_threshold: int = 2
    transliteration: TransliterationTable | None = None

    def __post_init__(self):
        if self.unicode_form not in UNICODE_FORMS:
            raise ValueError(f"unicode_form must be one of {UNICODE_FORMS}")
        if self.collapse_threshold < 2:
            raise ValueError("collapse_threshold must be >= 2")
        object.__setattr__(self, "special_chars", frozenset(self.special_chars))


def normalize_unicode(text: str, form: str = "NFKC") -> str:
    if form not in UNICODE_FORMS:
        raise ValueError(f"unicode form must be one of {UNICODE_FORMS}")
    return unicodedata.normalize(form, text)


def strip_special_chars(text: str, config: CleaningConfig = CleaningConfig()) -> str:
    special = config.special_chars
    out = "".join(ch for ch in text if ch not in special)
    if config.keep_intraword_hyphen:
        out = _LOOSE_HYPHEN.sub("", out)
    return out


def _is_emoji_cluster(cluster: str) -> bool:
    if _EMOJI_CORE.search(cluster):
        return True
    return bool(_PICTOGRAPHIC.search(cluster) and _EMOJI_JOINERS.search(cluster))


def strip_emoji(text: str) -> str:
    """Remove emoji, including whole ZWJ/modifier/keycap sequences.

    Works per extended grapheme cluster so the joiners inside an emoji
    sequence go with it, while ZWJ used by Indic scripts is left alone.
    """
    kept = [c for c in _GRAPHEME.findall(text) if not _is_emoji_cluster(c)]
    return _STRAY_EMOJI_MARKS.sub("", "".join(kept))


def collapse_runs(text: str, threshold: int = 2) -> str:
    """Replace every run of one character longer than ``threshold`` by a
    single occurrence: ``hellooo`` -> ``hello``."""
    if threshold < 2:
        raise ValueError("threshold must be >= 2")
    pattern = regex.compile(r"(.)\1{%d,}" % threshold, regex.DOTALL)
    return pattern.sub(r"\1", text)


def normalize_whitespace(text: str) -> str:
    return _WHITESPACE.sub(" ", text).strip()


def transliterate(text: str, table: TransliterationTable) -> str:
    if not table.entries:
        return text
    entries, longest = table.entries, table._max_len
    out = []
    i, n = 0, len(text)
    while i < n:
        for size in range(min(longest, n - i), 0, -1):
            target = entries.get(text[i : i + size])
            if target is not None:
                out.append(target)
                i += size
                break
        else:
            out.append(text[i])
            i += 1
    return "".join(out)


def _clean_once(text: str, config: CleaningConfig) -> str:
    text = normalize_unicode(text, config.unicode_form)
    text = strip_special_chars(text, config)
    text = strip_emoji(text)
    text = collapse_runs(text, config.collapse_threshold)
    return normalize_whitespace(text)


def clean(text: str, config: CleaningConfig = CleaningConfig()) -> str:
    """Run the cleaning pipeline, then transliterate if a table is configured.

    The four cleaning steps are repeated until the text stops changing:
    a deletion can leave behind a sequence that is no longer normalized
    (``e@\\u0301`` -> ``e\\u0301``) or a new long run (``a@aa``), and a
    second pass would otherwise alter it.
    """
    for _ in range(8):
        cleaned = _clean_once(text, config)
        if cleaned == text:
            break
        text = cleaned
    if config.transliteration is not None:
        text = transliterate(text, config.transliteration)
    return text
