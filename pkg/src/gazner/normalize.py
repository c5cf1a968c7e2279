"""Rule-based tweet normalization.

Three passes over the raw token stream: noise removal (hyperlinks,
punctuation, articles), social-media rewriting (retweet prefixes dropped,
mentions replaced by a generic placeholder), and hashtag handling (trailing
tag soup removed, in-context hashtags segmented against a vocabulary).
Surviving tokens keep their character offsets into the raw text so gold
annotations can be projected afterwards.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Optional, Sequence

from .errors import ContractViolation

if TYPE_CHECKING:
    from .corpus import Tweet

USER_PLACEHOLDER = "#USER#"
MOVIE_PLACEHOLDER = "#MOVIE#"

DEFAULT_ARTICLES = frozenset({"a", "an", "the"})
DEFAULT_DEGREE_ADVERBS = frozenset(
    {"so", "very", "really", "too", "super", "extremely", "pretty", "quite"}
)
DEFAULT_URL_REGEX = r"(?:https?://|www\.)\S+"

_MENTION_RE = re.compile(r"@\w+\Z")
_HASHTAG_BODY_RE = re.compile(r"\w+")
_WORD_RE = re.compile(r"\w+(?:['’-]\w+)*")
_CAMEL_RUN_RE = re.compile(r"\d+|[A-Z]+(?![a-z])|[A-Z][a-z]*|[a-z]+")


@dataclass(frozen=True)
class Token:
    surface: str
    kind: str = "word"  # word | number | hashtag | user_placeholder | movie_placeholder
    origin: Optional[tuple[int, int]] = None  # char range in raw text; None for placeholders

    @property
    def display(self) -> str:
        """Rendering for dumps: hashtag-derived tokens get their '#' back."""
        if self.kind == "hashtag" and not self.surface.startswith("#"):
            return "#" + self.surface
        return self.surface

    def match_key(self) -> str:
        """Lowercased form used for gazetteer matching; hashtags lose their '#'."""
        s = self.surface
        if s.startswith("#") and self.kind == "hashtag":
            s = s[1:]
        return s.lower()


@dataclass(frozen=True)
class NormalizedTweet:
    source_id: str
    tokens: tuple[Token, ...]
    removed_count: int

    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]

    def dump_line(self) -> str:
        return " ".join(t.display for t in self.tokens)


@dataclass(frozen=True)
class NormalizerConfig:
    articles: frozenset[str] = DEFAULT_ARTICLES
    degree_adverbs: frozenset[str] = DEFAULT_DEGREE_ADVERBS
    url_regex: str = DEFAULT_URL_REGEX

    @property
    def url_re(self) -> re.Pattern:
        return re.compile(self.url_regex)


_DEFAULT_CONFIG = NormalizerConfig()


def _is_punct_char(ch: str) -> bool:
    return unicodedata.category(ch)[0] in ("P", "S")


def _classify(surface: str) -> str:
    if surface.startswith("#") and len(surface) > 1 and _HASHTAG_BODY_RE.fullmatch(surface[1:]):
        return "hashtag"
    if surface.isdigit():
        return "number"
    return "word"


def tokenize(text: str, config: NormalizerConfig = _DEFAULT_CONFIG) -> list[Token]:
    """Split raw text into tokens with character offsets.

    Whitespace-delimited chunks are further split at punctuation, except that
    URLs, hashtags, and @-mentions stay atomic and word-internal apostrophes
    and hyphens do not split ("can't", "Blu-Ray").
    """
    url_re = config.url_re
    tokens: list[Token] = []
    for chunk_m in re.finditer(r"\S+", text):
        chunk, base = chunk_m.group(), chunk_m.start()
        if chunk == USER_PLACEHOLDER or chunk == MOVIE_PLACEHOLDER:
            kind = "user_placeholder" if chunk == USER_PLACEHOLDER else "movie_placeholder"
            tokens.append(Token(chunk, kind, (base, base + len(chunk))))
            continue
        pos = 0
        while pos < len(chunk):
            rest = chunk[pos:]
            m = url_re.match(rest)
            if m:
                tokens.append(Token(m.group(), "word", (base + pos, base + pos + m.end())))
                pos += m.end()
                continue
            if rest[0] in "#@" and len(rest) > 1:
                m = _HASHTAG_BODY_RE.match(rest, 1)
                if m:
                    surface = rest[0] + m.group()
                    kind = "hashtag" if rest[0] == "#" else "word"
                    tokens.append(Token(surface, kind, (base + pos, base + pos + m.end())))
                    pos += m.end()
                    continue
            m = _WORD_RE.match(rest)
            if m:
                surface = m.group()
                tokens.append(
                    Token(surface, _classify(surface), (base + pos, base + pos + m.end()))
                )
                pos += m.end()
                continue
            # maximal run of punctuation / symbols
            end = 1
            while end < len(rest) and not (
                rest[end].isalnum() or rest[end] in "#@" or url_re.match(rest, end)
            ):
                end += 1
            tokens.append(Token(rest[:end], "word", (base + pos, base + pos + end)))
            pos += end
    return tokens


def _is_noise(tok: Token, config: NormalizerConfig) -> bool:
    if config.url_re.fullmatch(tok.surface):
        return True
    if tok.surface.lower() in config.articles:
        return True
    body = tok.surface[1:] if tok.surface[0] in "#@" else tok.surface
    return not body or all(_is_punct_char(c) for c in body)


def strip_noise(
    tokens: Sequence[Token], config: NormalizerConfig = _DEFAULT_CONFIG
) -> list[Token]:
    """Drop hyperlinks, pure-punctuation tokens, and English articles."""
    return [t for t in tokens if not _is_noise(t, config)]


def rewrite_social(tokens: Sequence[Token]) -> list[Token]:
    """Drop leading retweet marker + author pairs; replace mentions with #USER#."""
    out = list(tokens)
    while (
        len(out) >= 2
        and out[0].surface == "RT"
        and _MENTION_RE.fullmatch(out[1].surface)
    ):
        out = out[2:]
    return [
        Token(USER_PLACEHOLDER, "user_placeholder", None)
        if _MENTION_RE.fullmatch(t.surface)
        else t
        for t in out
    ]


def hashtag_disposition(
    tokens: Sequence[Token], index: int, config: NormalizerConfig = _DEFAULT_CONFIG
) -> str:
    """Decide whether the hashtag at ``index`` is removed or segmented.

    A hashtag is judged irrelevant to its context (removed) when every token
    from it to the end of the tweet is a hashtag and the token just before it
    is not a degree adverb expecting a complement; all other hashtags are
    segmented.
    """
    if not 0 <= index < len(tokens):
        raise ContractViolation(f"hashtag index {index} out of range")
    if tokens[index].kind != "hashtag":
        raise ContractViolation(f"token at index {index} is not a hashtag")
    trailing = all(t.kind == "hashtag" for t in tokens[index:])
    if not trailing:
        return "segment"
    if index > 0 and tokens[index - 1].surface.lower() in config.degree_adverbs:
        return "segment"
    return "remove"


def camel_runs(body: str) -> list[str]:
    """Split on case and digit boundaries: 'DesolationOfSmaug' -> 3 runs."""
    return _CAMEL_RUN_RE.findall(body)


def segment_hashtag(hashtag: str, vocab: Iterable[str]) -> list[str]:
    """Split a hashtag body into the fewest vocabulary words.

    Dynamic program over the '#'-stripped body: minimize the number of
    segments such that every segment is in ``vocab`` (case-insensitive),
    breaking ties by taking the longest segment first.  When no full cover
    exists, fall back to case/digit boundaries; a body with no boundaries is
    returned whole.
    """
    if not hashtag.startswith("#"):
        raise ContractViolation("segment_hashtag expects a leading '#'")
    body = hashtag[1:]
    if not body:
        return []
    vocab_set = vocab if isinstance(vocab, (set, frozenset)) else set(vocab)
    n = len(body)
    lowered = body.lower()
    INF = n + 1
    best = [INF] * (n + 1)
    best[n] = 0
    for i in range(n - 1, -1, -1):
        for j in range(n, i, -1):
            if lowered[i:j] in vocab_set and best[j] + 1 < best[i]:
                best[i] = best[j] + 1
    if best[0] >= INF:
        runs = camel_runs(body)
        return runs if len(runs) > 1 else [body]
    pieces: list[str] = []
    i = 0
    while i < n:
        for j in range(n, i, -1):  # longest-first gives leftmost-longest overall
            if lowered[i:j] in vocab_set and best[j] == best[i] - 1:
                pieces.append(body[i:j])
                i = j
                break
    return pieces


def normalize(
    tweet: "Tweet",
    vocab: Iterable[str],
    config: NormalizerConfig = _DEFAULT_CONFIG,
) -> NormalizedTweet:
    """Run all normalization rules over one tweet.

    ``vocab`` is the gazetteer token vocabulary used for hashtag
    segmentation.  Segment pieces keep a '#' prefix and their sub-range of
    the original hashtag; pieces that are articles are dropped like any
    other article.
    """
    raw = tokenize(tweet.text, config)
    kept = rewrite_social(strip_noise(raw, config))
    removed = len(raw) - len(kept)

    vocab_set = set(vocab) if not isinstance(vocab, (set, frozenset)) else vocab
    out: list[Token] = []
    for idx, tok in enumerate(kept):
        if tok.kind != "hashtag":
            out.append(tok)
            continue
        if hashtag_disposition(kept, idx, config) == "remove":
            removed += 1
            continue
        body = tok.surface[1:]
        cursor = 0
        for piece in segment_hashtag(tok.surface, vocab_set):
            cursor = body.find(piece, cursor)
            origin = None
            if tok.origin is not None and cursor >= 0:
                start = tok.origin[0] + 1 + cursor
                origin = (start, start + len(piece))
            cursor = max(cursor, 0) + len(piece)
            if piece.lower() in config.articles:
                continue
            out.append(Token(piece, "hashtag", origin))
    return NormalizedTweet(tweet.id, tuple(out), removed)
