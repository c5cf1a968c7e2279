"""Candidate entity identification over normalized tweets.

A left-to-right greedy scan: at each token, take the longest gazetteer
match starting there, emit it, and resume after the matched span.  This
stage trades precision for recall; the classifier prunes the output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .corpus import TokenSpan
from .gazetteer import GazetteerIndex, lookup_longest
from .normalize import NormalizedTweet


@dataclass(frozen=True)
class Candidate:
    token_span: TokenSpan  # (start, end], token indices
    entry_id: str
    match_type: str
    surface: str


@dataclass(frozen=True)
class LabeledCandidate:
    candidate: Candidate
    positive: bool


def identify(norm: NormalizedTweet, index: GazetteerIndex) -> list[Candidate]:
    """Emit non-overlapping typed candidates for one normalized tweet."""
    keys = [t.match_key() for t in norm.tokens]
    out: list[Candidate] = []
    i = 0
    while i < len(keys):
        hit = lookup_longest(index, keys, i)
        if hit is None:
            i += 1
            continue
        length, entry_id, match_type = hit
        surface = " ".join(t.display for t in norm.tokens[i : i + length])
        out.append(Candidate((i, i + length), entry_id, match_type, surface))
        i += length
    return out


def label_candidates(
    cands: Sequence[Candidate], gold_spans: Sequence[TokenSpan]
) -> list[LabeledCandidate]:
    """Label each candidate positive iff its span exactly equals a gold span."""
    gold = set(gold_spans)
    return [LabeledCandidate(c, c.token_span in gold) for c in cands]
