"""Entity gazetteer: title variants and a token trie for longest-match lookup.

Every entry yields up to four token-sequence variants (full title, main
title, sub-title, and sequel), normalized the same way tweets are
(articles dropped, lowercased) so matching happens in one space.  The
variants are indexed in a token-level trie; lookups walk edges by token
and return the deepest accepting node.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .errors import CorpusParseError, ValidationError
from .normalize import strip_noise, tokenize

MATCH_TYPES = ("full", "main", "sub", "sequel")
_PRECEDENCE = {t: i for i, t in enumerate(MATCH_TYPES)}

_ROMAN_RE = re.compile(r"m{0,3}(cm|cd|d?c{0,3})(xc|xl|l?x{0,3})(ix|iv|v?i{0,3})")
_SEPARATOR_RE = re.compile(r":|\s-\s")


@dataclass(frozen=True)
class GazetteerEntry:
    id: str
    title: str
    release_year: Optional[int] = None


@dataclass(frozen=True)
class TitleVariant:
    entry_id: str
    tokens: tuple[str, ...]
    match_type: str


class _Node:
    __slots__ = ("children", "accepts")

    def __init__(self):
        self.children: dict[str, _Node] = {}
        self.accepts: list[tuple[str, str]] = []


@dataclass(frozen=True)
class GazetteerIndex:
    root: _Node
    vocab: frozenset[str]
    size: int  # number of indexed variants


def load_gazetteer(path: str | Path) -> list[GazetteerEntry]:
    """Read a gazetteer TSV: ``id <TAB> title <TAB> year`` (year optional)."""
    entries = []
    with open(path, encoding="utf-8") as fh:
        for row_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) not in (2, 3):
                raise CorpusParseError(f"row {row_no}: expected 2 or 3 columns")
            entry_id, title = cols[0], cols[1].strip()
            if not title:
                raise ValidationError(f"row {row_no}: empty title")
            year: Optional[int] = None
            if len(cols) == 3 and cols[2].strip():
                try:
                    year = int(cols[2])
                except ValueError as e:
                    raise CorpusParseError(f"row {row_no}: bad year {cols[2]!r}") from e
            entries.append(GazetteerEntry(entry_id, title, year))
    return entries


def is_sequel_numeral(token: str) -> bool:
    if token.isdigit():
        return True
    m = _ROMAN_RE.fullmatch(token)
    return bool(m and m.group())


def _title_tokens(text: str) -> tuple[str, ...]:
    """Tokenize a title in the same normalization space as tweets:
    punctuation and articles dropped, lowercased."""
    return tuple(t.match_key() for t in strip_noise(tokenize(text)))


def derive_variants(entry: GazetteerEntry) -> list[TitleVariant]:
    """Expand an entry into its matchable token-sequence variants.

    Full = all title tokens; a ':' or ' - ' separator additionally yields
    main (before) and sub (after) variants; a main (or separator-less full)
    title ending in an arabic or roman numeral is also indexed as a sequel.
    """
    out: list[TitleVariant] = []
    seen: set[tuple[tuple[str, ...], str]] = set()

    def add(tokens: tuple[str, ...], match_type: str) -> None:
        if tokens and (tokens, match_type) not in seen:
            seen.add((tokens, match_type))
            out.append(TitleVariant(entry.id, tokens, match_type))

    full = _title_tokens(entry.title)
    add(full, "full")
    sequel_base = full
    m = _SEPARATOR_RE.search(entry.title)
    if m:
        main = _title_tokens(entry.title[: m.start()])
        sub = _title_tokens(entry.title[m.end() :])
        add(main, "main")
        add(sub, "sub")
        sequel_base = main
    if len(sequel_base) >= 2 and is_sequel_numeral(sequel_base[-1]):
        add(sequel_base, "sequel")
    return out


def build_index(variants: Sequence[TitleVariant]) -> GazetteerIndex:
    """Insert every variant into a token trie and collect the vocabulary."""
    root = _Node()
    vocab: set[str] = set()
    for v in variants:
        vocab.update(v.tokens)
        node = root
        for tok in v.tokens:
            node = node.children.setdefault(tok, _Node())
        node.accepts.append((v.entry_id, v.match_type))
    return GazetteerIndex(root, frozenset(vocab), len(variants))


def build_index_from_entries(entries: Sequence[GazetteerEntry]) -> GazetteerIndex:
    return build_index([v for e in entries for v in derive_variants(e)])


def match_key(token: str) -> str:
    """Lowercase a token for trie matching, stripping a hashtag marker."""
    if token.startswith("#") and len(token) > 1:
        token = token[1:]
    return token.lower()


def lookup_longest(
    index: GazetteerIndex, tokens: Sequence[str], start: int
) -> Optional[tuple[int, str, str]]:
    """Longest gazetteer match beginning at ``tokens[start]``.

    Returns ``(length, entry_id, match_type)`` for the deepest accepting
    trie node reachable from ``start``, or None.  Within a node, ties are
    broken by match-type precedence (full > main > sub > sequel) and then
    by lowest entry id.
    """
    node = index.root
    best: Optional[tuple[int, str, str]] = None
    depth = 0
    for tok in tokens[start:]:
        node = node.children.get(match_key(tok))
        if node is None:
            break
        depth += 1
        if node.accepts:
            entry_id, mtype = min(
                node.accepts, key=lambda a: (_PRECEDENCE[a[1]], a[0])
            )
            best = (depth, entry_id, mtype)
    return best
