"""TOML configuration for the CLI and the ablation ladder.

Sections: ``[paths]`` for input/output files, ``[normalizer]`` for the
article/adverb/url settings, ``[features]`` for family toggles plus ``k``,
``[train]`` for c/e/b, and top-level ``collection_year`` and ``seed``.
Ablation spec files carry an ordered ``[[model]]`` array where each entry
names a row and either sets ``baseline = true`` or enables families.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .classifier import TrainParams
from .errors import ConfigurationError
from .features import FeatureConfig
from .normalize import (
    DEFAULT_ARTICLES,
    DEFAULT_DEGREE_ADVERBS,
    DEFAULT_URL_REGEX,
    NormalizerConfig,
)
from .pipeline import AblationSpec

_FAMILIES = ("orthographic", "ngram", "syntactic", "supplementary")


@dataclass(frozen=True)
class CliConfig:
    paths: dict[str, str] = field(default_factory=dict)
    features: FeatureConfig = FeatureConfig()
    train: TrainParams = TrainParams()
    normalizer: NormalizerConfig = NormalizerConfig()
    collection_year: int = 2014
    seed: int = 1
    jobs: int = 1


def _load_toml(path: str | Path) -> dict[str, Any]:
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def _feature_config(section: dict[str, Any], collection_year: int) -> FeatureConfig:
    unknown = set(section) - set(_FAMILIES) - {"k"}
    if unknown:
        raise ConfigurationError(f"unknown feature keys: {sorted(unknown)}")
    return FeatureConfig(
        orthographic=bool(section.get("orthographic", False)),
        ngram=bool(section.get("ngram", False)),
        syntactic=bool(section.get("syntactic", False)),
        supplementary=bool(section.get("supplementary", False)),
        k=int(section.get("k", 10)),
        collection_year=collection_year,
    )


def load_config(path: Optional[str | Path]) -> CliConfig:
    if path is None:
        return CliConfig()
    data = _load_toml(path)
    collection_year = int(data.get("collection_year", 2014))
    seed = int(data.get("seed", 1))
    norm_section = data.get("normalizer", {})
    normalizer = NormalizerConfig(
        articles=frozenset(norm_section.get("articles", DEFAULT_ARTICLES)),
        degree_adverbs=frozenset(
            norm_section.get("degree_adverbs", DEFAULT_DEGREE_ADVERBS)
        ),
        url_regex=norm_section.get("url_regex", DEFAULT_URL_REGEX),
    )
    train_section = data.get("train", {})
    train = TrainParams(
        c=float(train_section.get("c", 0.1)),
        e=float(train_section.get("e", 0.1)),
        b=float(train_section.get("b", 0.0)),
        seed=seed,
    )
    return CliConfig(
        paths={k: str(v) for k, v in data.get("paths", {}).items()},
        features=_feature_config(data.get("features", {}), collection_year),
        train=train,
        normalizer=normalizer,
        collection_year=collection_year,
        seed=seed,
        jobs=int(data.get("jobs", 1)),
    )


def load_ablation_spec(path: str | Path, collection_year: int = 2014) -> AblationSpec:
    data = _load_toml(path)
    collection_year = int(data.get("collection_year", collection_year))
    rows = []
    for entry in data.get("model", []):
        name = entry.get("name")
        if not name:
            raise ConfigurationError("every [[model]] entry needs a name")
        if entry.get("baseline"):
            rows.append((name, None))
            continue
        section = {k: v for k, v in entry.items() if k in _FAMILIES or k == "k"}
        rows.append((name, _feature_config(section, collection_year)))
    if not rows:
        raise ConfigurationError("ablation spec has no [[model]] entries")
    return AblationSpec(tuple(rows))
