"""End-to-end recognition, scoring, and the ablation ladder.

Recognition composes normalize -> identify -> extract -> classify; with no
model the candidate set itself is the prediction (the high-recall
baseline).  Scoring is exact token-span matching against projected gold
spans, micro-averaged over entities.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .candidates import identify, label_candidates
from .classifier import Model, TrainParams, predict_score, train, vectorize
from .corpus import DatasetSplit, TokenSpan, Tweet, project_gold
from .embeddings import EmbeddingTable
from .errors import ConfigurationError, ContractViolation
from .features import DepTree, FeatureConfig, FeatureVector, extract
from .gazetteer import GazetteerEntry, GazetteerIndex
from .normalize import NormalizedTweet, NormalizerConfig, normalize


@dataclass(frozen=True)
class Resources:
    """Side data the feature families draw on."""

    entry_years: dict[str, Optional[int]] = field(default_factory=dict)
    embeddings: Optional[EmbeddingTable] = None
    parses: dict[str, DepTree] = field(default_factory=dict)

    @staticmethod
    def from_entries(
        entries: Sequence[GazetteerEntry],
        embeddings: Optional[EmbeddingTable] = None,
        parses: Optional[dict[str, DepTree]] = None,
    ) -> "Resources":
        return Resources(
            {e.id: e.release_year for e in entries}, embeddings, dict(parses or {})
        )


@dataclass(frozen=True)
class EvalReport:
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f1: float

    @staticmethod
    def from_counts(tp: int, fp: int, fn: int) -> "EvalReport":
        p = tp / (tp + fp) if tp + fp else 0.0
        r = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * p * r / (p + r) if p + r else 0.0
        return EvalReport(tp, fp, fn, p, r, f1)


@dataclass(frozen=True)
class AblationSpec:
    """Ordered ladder of model configurations; None means classifier bypassed."""

    rows: tuple[tuple[str, Optional[FeatureConfig]], ...]

    def __post_init__(self):
        names = [name for name, _ in self.rows]
        if len(names) != len(set(names)):
            raise ConfigurationError("ablation model names must be unique")


@dataclass(frozen=True)
class AblationRow:
    model: str
    eval_set: str
    report: EvalReport


def _candidate_features(
    cand, norm: NormalizedTweet, tweet: Tweet, cfg: FeatureConfig, resources: Resources
) -> FeatureVector:
    tree = resources.parses.get(tweet.id) if cfg.syntactic else None
    if cfg.syntactic and tree is None:
        raise ConfigurationError(f"no dependency parse for tweet {tweet.id!r}")
    return extract(
        cand,
        norm,
        cfg,
        tweet_year=tweet.year,
        entry_year=resources.entry_years.get(cand.entry_id),
        tree=tree,
        table=resources.embeddings,
    )


def recognize(
    tweet: Tweet,
    index: GazetteerIndex,
    model: Optional[Model],
    cfg: FeatureConfig,
    resources: Optional[Resources] = None,
    norm: Optional[NormalizedTweet] = None,
    norm_config: NormalizerConfig = NormalizerConfig(),
) -> list[TokenSpan]:
    """Predicted entity spans for one tweet; no model means baseline mode."""
    if norm is None:
        norm = normalize(tweet, index.vocab, norm_config)
    cands = identify(norm, index)
    if model is None:
        return [c.token_span for c in cands]
    resources = resources or Resources()
    out = []
    for cand in cands:
        fv = _candidate_features(cand, norm, tweet, cfg, resources)
        label, _ = predict_score(model, fv)
        if label > 0:
            out.append(cand.token_span)
    return out


def _count_tweet(
    tweet: Tweet,
    index: GazetteerIndex,
    model: Optional[Model],
    cfg: FeatureConfig,
    resources: Optional[Resources],
    norm_config: NormalizerConfig,
) -> tuple[int, int, int]:
    norm = normalize(tweet, index.vocab, norm_config)
    predicted = set(recognize(tweet, index, model, cfg, resources, norm=norm))
    gold = set(project_gold(tweet, norm))
    tp = len(predicted & gold)
    return tp, len(predicted) - tp, len(tweet.gold) - tp


_WORKER_STATE: dict = {}


def _init_worker(index, model, cfg, resources, norm_config) -> None:
    _WORKER_STATE.update(
        index=index, model=model, cfg=cfg, resources=resources, norm_config=norm_config
    )


def _count_chunk(tweets: list[Tweet]) -> tuple[int, int, int]:
    s = _WORKER_STATE
    tp = fp = fn = 0
    for t in tweets:
        a, b, c = _count_tweet(t, s["index"], s["model"], s["cfg"], s["resources"], s["norm_config"])
        tp, fp, fn = tp + a, fp + b, fn + c
    return tp, fp, fn


def evaluate(
    tweets: Sequence[Tweet],
    index: GazetteerIndex,
    model: Optional[Model],
    cfg: FeatureConfig,
    resources: Optional[Resources] = None,
    norm_config: NormalizerConfig = NormalizerConfig(),
    jobs: int = 1,
) -> EvalReport:
    """Micro-averaged exact-span precision/recall/F1 over a tweet set."""
    tp = fp = fn = 0
    if jobs > 1 and len(tweets) > 1:
        chunks = [list(tweets[i::jobs]) for i in range(jobs)]
        with ProcessPoolExecutor(
            max_workers=jobs,
            initializer=_init_worker,
            initargs=(index, model, cfg, resources, norm_config),
        ) as pool:
            for a, b, c in pool.map(_count_chunk, chunks):
                tp, fp, fn = tp + a, fp + b, fn + c
    else:
        for t in tweets:
            a, b, c = _count_tweet(t, index, model, cfg, resources, norm_config)
            tp, fp, fn = tp + a, fp + b, fn + c
    return EvalReport.from_counts(tp, fp, fn)


PredictedSpan = tuple[int, int, str]  # token span plus its surface text


def _predict_tweet(
    tweet: Tweet,
    index: GazetteerIndex,
    model: Optional[Model],
    cfg: FeatureConfig,
    resources: Optional[Resources],
    norm_config: NormalizerConfig,
) -> tuple[str, list[PredictedSpan]]:
    norm = normalize(tweet, index.vocab, norm_config)
    spans = recognize(tweet, index, model, cfg, resources, norm=norm)
    return tweet.id, [
        (s, e, " ".join(t.display for t in norm.tokens[s:e])) for s, e in spans
    ]


def _predict_chunk(tweets: list[Tweet]) -> list[tuple[str, list[PredictedSpan]]]:
    s = _WORKER_STATE
    return [
        _predict_tweet(t, s["index"], s["model"], s["cfg"], s["resources"], s["norm_config"])
        for t in tweets
    ]


def predict_tweets(
    tweets: Sequence[Tweet],
    index: GazetteerIndex,
    model: Optional[Model],
    cfg: FeatureConfig,
    resources: Optional[Resources] = None,
    norm_config: NormalizerConfig = NormalizerConfig(),
    jobs: int = 1,
) -> list[tuple[str, list[PredictedSpan]]]:
    """Predicted spans per tweet, in corpus order."""
    if jobs > 1 and len(tweets) > 1:
        chunks = [list(tweets[i::jobs]) for i in range(jobs)]
        with ProcessPoolExecutor(
            max_workers=jobs,
            initializer=_init_worker,
            initargs=(index, model, cfg, resources, norm_config),
        ) as pool:
            by_id = {
                tid: spans for chunk in pool.map(_predict_chunk, chunks) for tid, spans in chunk
            }
        return [(t.id, by_id[t.id]) for t in tweets]
    return [
        _predict_tweet(t, index, model, cfg, resources, norm_config) for t in tweets
    ]


def build_training_instances(
    tweets: Sequence[Tweet],
    index: GazetteerIndex,
    cfg: FeatureConfig,
    resources: Resources,
    norm_config: NormalizerConfig = NormalizerConfig(),
) -> list[tuple[FeatureVector, int]]:
    """Candidate-level labeled feature vectors over a tweet set."""
    instances: list[tuple[FeatureVector, int]] = []
    for tweet in tweets:
        norm = normalize(tweet, index.vocab, norm_config)
        cands = identify(norm, index)
        if not cands:
            continue
        gold = project_gold(tweet, norm)
        for lab in label_candidates(cands, gold):
            fv = _candidate_features(lab.candidate, norm, tweet, cfg, resources)
            instances.append((fv, 1 if lab.positive else -1))
    return instances


def train_tweet_model(
    tweets: Sequence[Tweet],
    index: GazetteerIndex,
    cfg: FeatureConfig,
    resources: Resources,
    params: TrainParams = TrainParams(),
    norm_config: NormalizerConfig = NormalizerConfig(),
) -> Model:
    instances = build_training_instances(tweets, index, cfg, resources, norm_config)
    rows, labels, feature_dict = vectorize(instances)
    metadata = {
        "families": ",".join(
            name
            for name in ("orthographic", "ngram", "syntactic", "supplementary")
            if getattr(cfg, name)
        ),
        "supplement_weights": "cosine_clamped_positive",
        "collection_year": str(cfg.collection_year),
        "k": str(cfg.k),
    }
    return train(rows, labels, params, feature_dict, metadata)


def run_ablation(
    split: DatasetSplit,
    index: GazetteerIndex,
    spec: AblationSpec,
    resources: Resources,
    params: TrainParams = TrainParams(),
    norm_config: NormalizerConfig = NormalizerConfig(),
    jobs: int = 1,
) -> list[AblationRow]:
    """Train and score each ladder row on both evaluation sets."""
    out: list[AblationRow] = []
    eval_sets = (("eval1", split.eval_seen), ("eval2", split.eval_unseen))
    for name, cfg in spec.rows:
        if cfg is None:
            model, eval_cfg = None, FeatureConfig()
        else:
            if cfg.supplementary and resources.embeddings is None:
                raise ConfigurationError(f"{name}: supplementary features need embeddings")
            if cfg.syntactic and not resources.parses:
                raise ConfigurationError(f"{name}: syntactic features need dependency parses")
            try:
                model = train_tweet_model(
                    split.train, index, cfg, resources, params, norm_config
                )
            except ConfigurationError as e:
                raise ConfigurationError(f"{name}: {e}") from e
            eval_cfg = cfg
        for set_name, tweets in eval_sets:
            report = evaluate(
                tweets, index, model, eval_cfg, resources, norm_config, jobs=jobs
            )
            out.append(AblationRow(name, set_name, report))
    return out
