"""TOML pipeline configuration."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .ablation import DEFAULT_VARIANTS, VARIANT_NAMES
from .classify import ClassifierConfig
from .normalize import CleaningConfig, TransliterationTable
from .synthetic import SyntheticSpec
from .wordgraph import ConsonantProfile, GraphConfig


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    cleaning: CleaningConfig = field(default_factory=CleaningConfig)
    graph: GraphConfig = field(default_factory=GraphConfig)
    classifier: ClassifierConfig = field(default_factory=ClassifierConfig)
    synthetic: SyntheticSpec = field(default_factory=SyntheticSpec)
    consonant_profile: ConsonantProfile | None = None
    f1_average: str = "binary"
    variants: tuple[str, ...] = DEFAULT_VARIANTS
    native_table: TransliterationTable | None = None
    english_table: TransliterationTable | None = None
    validation_fraction: float = 0.1
    stratify_by_language: bool = False
    seed: int = 0
    graph_overridden: bool = False


_GRAPH_KEYS = {"k": "prefix_len", "t": "similarity_threshold"}


def _resolve(base: Path, value: str) -> Path:
    p = Path(value)
    return p if p.is_absolute() else base / p


def _load_table(base: Path, value, source: str, target: str) -> TransliterationTable:
    try:
        return TransliterationTable.load(_resolve(base, value), source, target)
    except OSError as e:
        raise ConfigError(f"cannot read transliteration table {value!r}: {e.strerror}") from None


def _build(cls, section: dict, where: str, rename: dict | None = None, **extra):
    rename = rename or {}
    allowed = {f.name for f in fields(cls)}
    kwargs = {}
    for key, value in section.items():
        name = rename.get(key, key)
        if name not in allowed:
            raise ConfigError(f"[{where}] unknown key {key!r}")
        if isinstance(value, list):
            value = tuple(value)
        kwargs[name] = value
    kwargs.update(extra)
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"[{where}] {e}") from None


def parse_config(data: dict, base: Path = Path(".")) -> PipelineConfig:
    data = dict(data)
    known = {"cleaning", "graph", "classifier", "synthetic", "ablation",
             "seed", "validation_fraction", "stratify_by_language"}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(sorted(unknown))}")

    cleaning = dict(data.get("cleaning", {}))
    translit = cleaning.pop("transliteration", "identity")
    table = None
    if translit not in ("off", "identity", None):
        table = _load_table(base, translit, "latin", "native")
    if "special_chars" in cleaning:
        cleaning["special_chars"] = frozenset(cleaning["special_chars"])
    cleaning_cfg = _build(CleaningConfig, cleaning, "cleaning", transliteration=table)

    graph = dict(data.get("graph", {}))
    profile_path = graph.pop("consonant_profile", None)
    profile = None
    if profile_path is not None:
        try:
            profile = ConsonantProfile.load(_resolve(base, profile_path))
        except OSError as e:
            raise ConfigError(f"cannot read consonant profile {profile_path!r}: {e.strerror}") from None
    graph_cfg = _build(GraphConfig, graph, "graph", _GRAPH_KEYS)

    clf = dict(data.get("classifier", {}))
    average = clf.pop("average", "binary")
    if average not in ("binary", "macro"):
        raise ConfigError("[classifier] average must be 'binary' or 'macro'")
    clf_cfg = _build(ClassifierConfig, clf, "classifier")

    synth_cfg = _build(SyntheticSpec, data.get("synthetic", {}), "synthetic")

    abl = dict(data.get("ablation", {}))
    variants = tuple(abl.pop("variants", DEFAULT_VARIANTS))
    bad = [v for v in variants if v not in VARIANT_NAMES]
    if bad:
        raise ConfigError(f"[ablation] unknown variant(s): {', '.join(bad)}")
    native = abl.pop("native_table", None)
    english = abl.pop("english_table", None)
    if abl:
        raise ConfigError(f"[ablation] unknown key(s): {', '.join(sorted(abl))}")

    try:
        return PipelineConfig(
            cleaning=cleaning_cfg,
            graph=graph_cfg,
            classifier=clf_cfg,
            synthetic=synth_cfg,
            consonant_profile=profile,
            f1_average=average,
            variants=variants,
            native_table=_load_table(base, native, "latin", "native") if native else table,
            english_table=_load_table(base, english, "native", "latin") if english else None,
            validation_fraction=float(data.get("validation_fraction", 0.1)),
            stratify_by_language=bool(data.get("stratify_by_language", False)),
            seed=int(data.get("seed", 0)),
            graph_overridden="graph" in data,
        )
    except (TypeError, ValueError) as e:
        raise ConfigError(str(e)) from None


def load_config(path=None) -> PipelineConfig:
    if path is None:
        return PipelineConfig()
    path = Path(path)
    try:
        data = tomllib.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e.strerror}") from None
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"{path}: {e}") from None
    return parse_config(data, path.parent)


def with_seed(config: PipelineConfig, seed: int | None) -> PipelineConfig:
    if seed is None:
        return config
    return replace(config, seed=seed, synthetic=replace(config.synthetic, seed=seed))
