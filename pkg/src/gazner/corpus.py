"""Annotated tweet corpus: loading, splitting, and gold-span projection.

Corpus files are line-oriented UTF-8: ``id <TAB> year <TAB> text <TAB>
span;span;...`` where each span is ``start,end,title`` with character
offsets into the text and the canonical title URL-encoded.  An empty
fourth column means the tweet has no entities.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence
from urllib.parse import quote, unquote

from .errors import ContractViolation, CorpusParseError, ValidationError
from .normalize import NormalizedTweet

log = logging.getLogger(__name__)

TokenSpan = tuple[int, int]


@dataclass(frozen=True)
class GoldSpan:
    start: int
    end: int
    canonical_title: str


@dataclass(frozen=True)
class Tweet:
    id: str
    text: str
    year: int
    gold: tuple[GoldSpan, ...] = ()

    def __post_init__(self):
        if not 1000 <= self.year <= 9999:
            raise ValidationError(f"tweet {self.id}: year {self.year} is not a 4-digit year")
        prev_end = -1
        for g in sorted(self.gold, key=lambda g: g.start):
            if g.start >= g.end:
                raise ValidationError(f"tweet {self.id}: degenerate span {g.start},{g.end}")
            if g.start < 0 or g.end > len(self.text):
                raise ValidationError(
                    f"tweet {self.id}: span {g.start},{g.end} outside text bounds"
                )
            if g.start < prev_end:
                raise ValidationError(f"tweet {self.id}: overlapping gold spans")
            if not self.text[g.start : g.end].strip():
                raise ValidationError(f"tweet {self.id}: whitespace-only span")
            prev_end = g.end

    def titles(self) -> set[str]:
        return {g.canonical_title for g in self.gold}


@dataclass(frozen=True)
class DatasetSplit:
    train: tuple[Tweet, ...]
    eval_seen: tuple[Tweet, ...]
    eval_unseen: tuple[Tweet, ...]
    excluded: tuple[Tweet, ...] = ()


def _parse_spans(column: str, line_no: int) -> tuple[GoldSpan, ...]:
    if not column:
        return ()
    spans = []
    for part in column.split(";"):
        pieces = part.split(",")
        if len(pieces) != 3:
            raise CorpusParseError(f"line {line_no}: bad span field {part!r}")
        try:
            start, end = int(pieces[0]), int(pieces[1])
        except ValueError as e:
            raise CorpusParseError(f"line {line_no}: non-integer span offset in {part!r}") from e
        spans.append(GoldSpan(start, end, unquote(pieces[2])))
    return tuple(spans)


def load_corpus(path: str | Path) -> list[Tweet]:
    """Read a corpus file; record order is preserved."""
    tweets = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != 4:
                raise CorpusParseError(f"line {line_no}: expected 4 tab-separated columns")
            tweet_id, year_s, text, span_col = cols
            try:
                year = int(year_s)
            except ValueError as e:
                raise CorpusParseError(f"line {line_no}: bad year {year_s!r}") from e
            tweets.append(Tweet(tweet_id, text, year, _parse_spans(span_col, line_no)))
    return tweets


def serialize_record(tweet: Tweet) -> str:
    text = " ".join(tweet.text.split()) if ("\t" in tweet.text or "\n" in tweet.text) else tweet.text
    spans = ";".join(
        f"{g.start},{g.end},{quote(g.canonical_title, safe='')}" for g in tweet.gold
    )
    return f"{tweet.id}\t{tweet.year}\t{text}\t{spans}"


def write_corpus(tweets: Iterable[Tweet], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for t in tweets:
            fh.write(serialize_record(t) + "\n")


def convert_upstream(source: str | Path, out_path: str | Path) -> None:
    """Placeholder for converting an externally released dataset layout.

    Released tweet collections come in assorted layouts; map each record to a
    ``Tweet`` and call :func:`write_corpus`.  Not implemented here because no
    single upstream layout is canonical.
    """
    raise NotImplementedError("map the external layout to Tweet records, then write_corpus")


def split_by_movie(
    tweets: Sequence[Tweet],
    train_titles: set[str],
    eval_ids: Optional[set[str]] = None,
) -> DatasetSplit:
    """Partition tweets into train / eval-seen / eval-unseen sets.

    ``eval_ids`` flags tweets held out for evaluation; all others are
    training candidates.  Held-out tweets whose gold titles are all in
    ``train_titles`` form the seen set, those sharing no title with the
    training movies form the unseen set.  Tweets that mix seen and unseen
    titles, or train-flagged tweets citing held-out movies, are excluded
    and reported.
    """
    if not train_titles:
        raise ContractViolation("train_titles must be non-empty")
    eval_ids = eval_ids or set()
    train, seen, unseen, excluded = [], [], [], []
    for t in tweets:
        titles = t.titles()
        if t.id in eval_ids:
            if not titles or titles <= train_titles:
                seen.append(t)
            elif not titles & train_titles:
                unseen.append(t)
            else:
                excluded.append(t)
        else:
            if titles <= train_titles:
                train.append(t)
            else:
                excluded.append(t)
    for t in excluded:
        log.warning("split: excluding tweet %s (mixes seen and unseen titles)", t.id)
    return DatasetSplit(tuple(train), tuple(seen), tuple(unseen), tuple(excluded))


def project_gold(tweet: Tweet, norm: NormalizedTweet) -> list[TokenSpan]:
    """Map gold character spans onto normalized token indices.

    Each gold span becomes the longest contiguous run of tokens whose
    character origins fall entirely inside the span.  Spans with no
    surviving tokens are reported and omitted.
    """
    if norm.source_id != tweet.id:
        raise ContractViolation(
            f"normalized tweet {norm.source_id!r} does not belong to tweet {tweet.id!r}"
        )
    for tok in norm.tokens:
        if tok.origin is not None and tok.origin[1] > len(tweet.text):
            raise ContractViolation(
                f"token origin {tok.origin} outside tweet {tweet.id!r} text"
            )
    out: list[TokenSpan] = []
    for g in sorted(tweet.gold, key=lambda g: g.start):
        inside = [
            i
            for i, tok in enumerate(norm.tokens)
            if tok.origin is not None and g.start <= tok.origin[0] and tok.origin[1] <= g.end
        ]
        if not inside:
            log.warning("tweet %s: gold span %r lost in normalization", tweet.id, g)
            continue
        runs: list[list[int]] = [[inside[0]]]
        for i in inside[1:]:
            if i == runs[-1][-1] + 1:
                runs[-1].append(i)
            else:
                runs.append([i])
        best = max(runs, key=len)
        if len(runs) > 1:
            log.warning("tweet %s: gold span %r projects to split runs", tweet.id, g)
        out.append((best[0], best[-1] + 1))
    return out
