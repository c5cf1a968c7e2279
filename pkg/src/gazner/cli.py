"""Command-line entry points: one thin subcommand per pipeline stage."""

from __future__ import annotations

import sys
from functools import wraps
from pathlib import Path
from typing import Optional

import click

from . import __version__
from .candidates import identify
from .classifier import Model, TrainParams, load_model, save_model
from .config import CliConfig, load_ablation_spec, load_config
from .corpus import load_corpus, split_by_movie
from .embeddings import load_embeddings
from .errors import ConfigurationError, GaznerError
from .features import FeatureConfig, load_parses
from .gazetteer import build_index_from_entries, derive_variants, load_gazetteer
from .normalize import normalize
from .pipeline import (
    AblationRow,
    Resources,
    evaluate,
    predict_tweets,
    run_ablation,
    train_tweet_model,
)
from .report import format_table, render_figure, tsv_lines, write_tsv


def _fail_on_errors(fn):
    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except GaznerError as e:
            raise click.ClickException(str(e)) from e

    return wrapper


def _echo_lines(lines, out: Optional[str]) -> None:
    text = "\n".join(lines) + ("\n" if lines else "")
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_resources(gazetteer, embeddings, parses):
    entries = load_gazetteer(gazetteer)
    index = build_index_from_entries(entries)
    table = load_embeddings(embeddings) if embeddings else None
    trees = load_parses(parses) if parses else {}
    return entries, index, Resources.from_entries(entries, table, trees)


def _read_lines(path: Optional[str]) -> Optional[set[str]]:
    if path is None:
        return None
    return {
        line.strip() for line in Path(path).read_text(encoding="utf-8").splitlines() if line.strip()
    }


def _split_or_all(tweets, train_titles_path, eval_ids_path):
    titles = _read_lines(train_titles_path)
    ids = _read_lines(eval_ids_path)
    if titles is None and ids is None:
        return None
    if titles is None:
        raise ConfigurationError("--eval-ids needs --train-titles")
    return split_by_movie(tweets, titles, ids or set())


def _model_feature_config(model: Model, cfg: CliConfig) -> FeatureConfig:
    """Rebuild the feature configuration a model was trained with."""
    families = set(filter(None, model.metadata.get("families", "").split(",")))
    return FeatureConfig(
        orthographic="orthographic" in families,
        ngram="ngram" in families,
        syntactic="syntactic" in families,
        supplementary="supplementary" in families,
        k=int(model.metadata.get("k", cfg.features.k)),
        collection_year=int(
            model.metadata.get("collection_year", cfg.collection_year)
        ),
    )


_corpus_opt = click.option("--corpus", required=True, help="Corpus TSV file")
_gazetteer_opt = click.option("--gazetteer", required=True, help="Gazetteer TSV file")
_config_opt = click.option("--config", "config_path", default=None, help="TOML config file")
_embeddings_opt = click.option("--embeddings", default=None, help="Word vector text file")
_parses_opt = click.option("--parses", default=None, help="Dependency parse file")
_titles_opt = click.option("--train-titles", default=None, help="File of training movie titles")
_ids_opt = click.option("--eval-ids", default=None, help="File of held-out tweet ids")
_jobs_opt = click.option("--jobs", default=None, type=int, help="Tweet-level worker count")


@click.group()
@click.version_option(__version__)
def main():
    """Gazetteer-driven movie-title recognition in tweets."""


@main.command("normalize")
@_corpus_opt
@_gazetteer_opt
@_config_opt
@click.option("--out", default=None, help="Write the dump here instead of stdout")
@_fail_on_errors
def normalize_cmd(corpus, gazetteer, config_path, out):
    """Dump normalized token sequences, one tweet per line."""
    cfg = load_config(config_path)
    entries = load_gazetteer(gazetteer)
    index = build_index_from_entries(entries)
    lines = [
        normalize(t, index.vocab, cfg.normalizer).dump_line() for t in load_corpus(corpus)
    ]
    _echo_lines(lines, out)


@main.command("identify")
@_corpus_opt
@_gazetteer_opt
@_config_opt
@click.option("--out", default=None, help="Write candidates here instead of stdout")
@_fail_on_errors
def identify_cmd(corpus, gazetteer, config_path, out):
    """Dump gazetteer candidates: id, span, match type, surface."""
    cfg = load_config(config_path)
    entries, index, _ = _load_resources(gazetteer, None, None)
    lines = []
    for tweet in load_corpus(corpus):
        norm = normalize(tweet, index.vocab, cfg.normalizer)
        for c in identify(norm, index):
            lines.append(
                f"{tweet.id}\t{c.token_span[0]}\t{c.token_span[1]}\t{c.match_type}\t{c.surface}"
            )
    _echo_lines(lines, out)


@main.command("train")
@_corpus_opt
@_gazetteer_opt
@click.option("--config", "config_path", required=True, help="TOML config with a [features] section")
@click.option("--out", required=True, help="Model file to write")
@_embeddings_opt
@_parses_opt
@_titles_opt
@_ids_opt
@_fail_on_errors
def train_cmd(corpus, gazetteer, config_path, out, embeddings, parses, train_titles, eval_ids):
    """Train a candidate classifier on the training portion of the corpus."""
    cfg = load_config(config_path)
    feats = cfg.features
    if not (feats.orthographic or feats.ngram or feats.syntactic or feats.supplementary):
        raise ConfigurationError("config enables no feature family; nothing to train on")
    tweets = load_corpus(corpus)
    _, index, resources = _load_resources(gazetteer, embeddings, parses)
    split = _split_or_all(tweets, train_titles, eval_ids)
    train_set = split.train if split else tweets
    model = train_tweet_model(train_set, index, feats, resources, cfg.train, cfg.normalizer)
    save_model(model, out)
    click.echo(f"trained on {len(train_set)} tweets; model -> {out}")


@main.command("evaluate")
@_corpus_opt
@_gazetteer_opt
@click.option("--model", "model_path", required=True, help="Trained model file")
@_config_opt
@_embeddings_opt
@_parses_opt
@_titles_opt
@_ids_opt
@click.option("--set", "eval_set", type=click.Choice(["seen", "unseen", "all"]), default="all")
@click.option("--report", "report_path", default=None, help="Write TSV rows (plus figure) here")
@_jobs_opt
@_fail_on_errors
def evaluate_cmd(
    corpus, gazetteer, model_path, config_path, embeddings, parses,
    train_titles, eval_ids, eval_set, report_path, jobs,
):
    """Score the recognizer against gold annotations."""
    cfg = load_config(config_path)
    model = load_model(model_path)
    feats = _model_feature_config(model, cfg)
    tweets = load_corpus(corpus)
    _, index, resources = _load_resources(gazetteer, embeddings, parses)
    split = _split_or_all(tweets, train_titles, eval_ids)
    if eval_set != "all" and split is None:
        raise ConfigurationError("--set seen/unseen needs --train-titles and --eval-ids")
    chosen = {
        "all": split.eval_seen + split.eval_unseen if split else tuple(tweets),
        "seen": split.eval_seen if split else (),
        "unseen": split.eval_unseen if split else (),
    }[eval_set]
    report = evaluate(
        chosen, index, model, feats, resources, cfg.normalizer, jobs=jobs or cfg.jobs
    )
    rows = [AblationRow(Path(model_path).stem, eval_set, report)]
    click.echo(format_table(rows))
    if report_path:
        write_tsv(rows, report_path)
        render_figure(rows, Path(report_path).with_suffix(".png"))


@main.command("ablate")
@_corpus_opt
@_gazetteer_opt
@click.option("--spec", "spec_path", required=True, help="TOML ablation ladder")
@_config_opt
@_embeddings_opt
@_parses_opt
@_titles_opt
@_ids_opt
@click.option("--report", "report_path", default=None, help="Write TSV rows (plus figure) here")
@_jobs_opt
@_fail_on_errors
def ablate_cmd(
    corpus, gazetteer, spec_path, config_path, embeddings, parses,
    train_titles, eval_ids, report_path, jobs,
):
    """Run the model ladder and print a results table."""
    cfg = load_config(config_path)
    spec = load_ablation_spec(spec_path, cfg.collection_year)
    tweets = load_corpus(corpus)
    _, index, resources = _load_resources(gazetteer, embeddings, parses)
    split = _split_or_all(tweets, train_titles, eval_ids)
    if split is None:
        raise ConfigurationError("ablate needs --train-titles and --eval-ids")
    rows = run_ablation(
        split, index, spec, resources, cfg.train, cfg.normalizer, jobs=jobs or cfg.jobs
    )
    click.echo(format_table(rows))
    click.echo("")
    click.echo("\n".join(tsv_lines(rows)))
    if report_path:
        write_tsv(rows, report_path)
        render_figure(rows, Path(report_path).with_suffix(".png"))


@main.command("predict")
@_corpus_opt
@_gazetteer_opt
@click.option("--model", "model_path", required=True, help="Trained model file")
@_config_opt
@_embeddings_opt
@_parses_opt
@click.option("--out", default=None, help="Write predictions here instead of stdout")
@_jobs_opt
@_fail_on_errors
def predict_cmd(corpus, gazetteer, model_path, config_path, embeddings, parses, out, jobs):
    """Emit predicted entity spans: id, token span, surface."""
    cfg = load_config(config_path)
    model = load_model(model_path)
    feats = _model_feature_config(model, cfg)
    _, index, resources = _load_resources(gazetteer, embeddings, parses)
    predictions = predict_tweets(
        load_corpus(corpus), index, model, feats, resources, cfg.normalizer,
        jobs=jobs or cfg.jobs,
    )
    lines = [
        f"{tweet_id}\t{start}\t{end}\t{surface}"
        for tweet_id, spans in predictions
        for start, end, surface in spans
    ]
    _echo_lines(lines, out)


@main.command("gazetteer-reload")
@_gazetteer_opt
@_fail_on_errors
def gazetteer_reload_cmd(gazetteer):
    """Re-read the gazetteer and rebuild the index; the model is untouched."""
    entries = load_gazetteer(gazetteer)
    variants = [v for e in entries for v in derive_variants(e)]
    index = build_index_from_entries(entries)
    click.echo(
        f"reloaded {len(entries)} entries -> {len(variants)} variants, "
        f"vocab {len(index.vocab)} token types"
    )


if __name__ == "__main__":
    main()
