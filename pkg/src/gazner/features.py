"""Feature extraction for candidate classification.

Four families: orthographic (surface shape, match type, release-year
timing), n-gram context templates around a #MOVIE# placeholder, syntactic
templates over a dependency tree with the candidate collapsed to one node,
and embedding-neighbor supplements of the n-gram features.  No family ever
emits the candidate's own tokens, so models transfer to gazetteer entries
unseen in training.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .candidates import Candidate
from .corpus import TokenSpan
from .embeddings import EmbeddingTable
from .errors import ConfigurationError, ContractViolation, CorpusParseError
from .normalize import MOVIE_PLACEHOLDER, NormalizedTweet

FeatureVector = dict[str, float]

SENT_START = "<S>"
SENT_END = "</S>"

_UNIGRAM_SLOTS = ((-2, "w-2"), (-1, "w-1"), (1, "w+1"), (2, "w+2"))
_BIGRAM_SLOTS = (
    ((-2, -1), "w-2,-1"),
    ((-2, 1), "w-2,+1"),
    ((-2, 2), "w-2,+2"),
    ((-1, 1), "w-1,+1"),
    ((-1, 2), "w-1,+2"),
    ((1, 2), "w+1,+2"),
)
NGRAM_SLOTS = tuple(name for _, name in _UNIGRAM_SLOTS) + tuple(
    name for _, name in _BIGRAM_SLOTS
)


@dataclass(frozen=True)
class FeatureConfig:
    orthographic: bool = False
    ngram: bool = False
    syntactic: bool = False
    supplementary: bool = False
    k: int = 10
    collection_year: int = 2014

    def __post_init__(self):
        if self.k < 0:
            raise ConfigurationError("supplement count k must be >= 0")


@dataclass(frozen=True)
class DepTree:
    """One dependency tree: parallel per-token columns, heads 1-based (0 = root)."""

    forms: tuple[str, ...]
    lemmas: tuple[str, ...]
    pos: tuple[str, ...]
    heads: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        n = len(self.forms)
        if not all(len(col) == n for col in (self.lemmas, self.pos, self.heads, self.labels)):
            raise ContractViolation("dependency tree columns have unequal lengths")
        if n and sum(1 for h in self.heads if h == 0) != 1:
            raise ContractViolation("dependency tree must have exactly one root")
        for i in range(1, n + 1):
            seen = set()
            node = i
            while node != 0:
                if node in seen or not 1 <= node <= n:
                    raise ContractViolation(f"dependency tree has a cycle through token {i}")
                seen.add(node)
                node = self.heads[node - 1]

    def __len__(self) -> int:
        return len(self.forms)

    def children(self, head: int) -> list[int]:
        return [i for i, h in enumerate(self.heads, start=1) if h == head]


def load_parses(path: str | Path) -> dict[str, DepTree]:
    """Read dependency trees keyed by tweet id.

    Blocks are blank-line separated; each starts with ``# <tweet_id>`` and
    continues with tab-separated rows ``index form lemma pos head label``.
    """
    trees: dict[str, DepTree] = {}
    current_id: Optional[str] = None
    rows: list[tuple[str, str, str, int, str]] = []

    def flush(line_no: int) -> None:
        nonlocal current_id, rows
        if current_id is None:
            return
        if current_id in trees:
            raise CorpusParseError(f"line {line_no}: duplicate parse block for {current_id!r}")
        trees[current_id] = DepTree(
            tuple(r[0] for r in rows),
            tuple(r[1] for r in rows),
            tuple(r[2] for r in rows),
            tuple(r[3] for r in rows),
            tuple(r[4] for r in rows),
        )
        current_id, rows = None, []

    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                flush(line_no)
                continue
            if line.startswith("#"):
                if current_id is not None:
                    flush(line_no)
                current_id = line[1:].strip()
                continue
            if current_id is None:
                raise CorpusParseError(f"line {line_no}: token row before any '# id' header")
            cols = line.split("\t")
            if len(cols) != 6:
                raise CorpusParseError(f"line {line_no}: expected 6 columns, got {len(cols)}")
            try:
                idx, head = int(cols[0]), int(cols[4])
            except ValueError as e:
                raise CorpusParseError(f"line {line_no}: non-integer index or head") from e
            if idx != len(rows) + 1:
                raise CorpusParseError(f"line {line_no}: token indices must be 1,2,...")
            rows.append((cols[1], cols[2], cols[3], head, cols[5]))
    flush(-1)
    return trees


def _piece_classes(piece: str) -> set[str]:
    letters = [c for c in piece if c.isalpha()]
    if not letters:
        return {"all_caps", "all_lower", "first_only"}  # shape-neutral
    if all(c.isupper() for c in letters):
        return {"all_caps", "first_only"} if len(letters) == 1 else {"all_caps"}
    if all(c.islower() for c in letters):
        return {"all_lower"}
    if letters[0].isupper() and all(c.islower() for c in letters[1:]):
        return {"first_only"}
    return set()


def capitalization(surface: str) -> str:
    pieces = [p.lstrip("#") for p in surface.split(" ")]
    compatible = {"all_caps", "all_lower", "first_only"}
    for p in pieces:
        compatible &= _piece_classes(p)
    for cls in ("first_only", "all_caps", "all_lower"):
        if cls in compatible:
            return cls
    return "mixed"


def orthographic_features(
    cand: Candidate,
    tweet_year: int,
    entry_year: Optional[int],
    collection_year: int,
) -> FeatureVector:
    """Surface-shape and timing indicators; year features need a release year."""
    fv: FeatureVector = {
        f"Cap:{capitalization(cand.surface)}": 1.0,
        f"Hashtag:{'yes' if any(p.startswith('#') for p in cand.surface.split(' ')) else 'no'}": 1.0,
        f"Num_of_tokens:{cand.token_span[1] - cand.token_span[0]}": 1.0,
        f"Title_match:{cand.match_type}": 1.0,
    }
    if entry_year is not None:
        fv[f"Numerical_time_diff:{tweet_year - entry_year}"] = 1.0
        if entry_year in (collection_year - 1, collection_year):
            bucket = "contemporary"
        elif entry_year < collection_year - 1:
            bucket = "past"
        else:
            bucket = "future"
        fv[f"Categorical_time_diff:{bucket}"] = 1.0
    return fv


def ngram_features(tokens: Sequence[str], i: int) -> FeatureVector:
    """The ten context templates around the #MOVIE# placeholder at ``i``."""
    if not 0 <= i < len(tokens) or tokens[i] != MOVIE_PLACEHOLDER:
        raise ContractViolation(f"tokens[{i}] must be the {MOVIE_PLACEHOLDER} placeholder")

    def at(offset: int) -> str:
        j = i + offset
        if j < 0:
            return SENT_START
        if j >= len(tokens):
            return SENT_END
        return tokens[j]

    fv: FeatureVector = {}
    for offset, slot in _UNIGRAM_SLOTS:
        fv[f"{slot}:{at(offset)}"] = 1.0
    for (o1, o2), slot in _BIGRAM_SLOTS:
        fv[f"{slot}:{at(o1)}_{at(o2)}"] = 1.0
    return fv


def _collapse(tree: DepTree, span: TokenSpan) -> tuple[DepTree, int]:
    """Merge the span into a single #MOVIE# node; returns (tree, 1-based index)."""
    lo, hi = span[0] + 1, span[1]  # 1-based inclusive range
    if not 1 <= lo <= hi <= len(tree):
        raise ContractViolation(f"candidate span {span} outside tree of {len(tree)} tokens")
    in_span = lambda i: lo <= i <= hi
    anchors = [i for i in range(lo, hi + 1) if not in_span(tree.heads[i - 1])]
    if not anchors:
        raise ContractViolation("candidate span has no external attachment")
    anchor = anchors[-1]

    def remap(i: int) -> int:
        if i == 0:
            return 0
        if in_span(i):
            return lo
        return i if i < lo else i - (hi - lo)

    forms, lemmas, pos, heads, labels = [], [], [], [], []
    for i in range(1, len(tree) + 1):
        if in_span(i) and i != anchor:
            continue
        if i == anchor:
            forms.append(MOVIE_PLACEHOLDER)
            lemmas.append(MOVIE_PLACEHOLDER)
            pos.append("NNP")
        else:
            forms.append(tree.forms[i - 1])
            lemmas.append(tree.lemmas[i - 1])
            pos.append(tree.pos[i - 1])
        head = tree.heads[i - 1]
        heads.append(remap(head) if not in_span(head) else lo)
        labels.append(tree.labels[i - 1])
    collapsed = DepTree(tuple(forms), tuple(lemmas), tuple(pos), tuple(heads), tuple(labels))
    return collapsed, lo


def _token_features(tree: DepTree, idx: int, prefix: str, fv: FeatureVector) -> None:
    fv[f"{prefix}_f:{tree.forms[idx - 1]}"] = 1.0
    fv[f"{prefix}_m:{tree.lemmas[idx - 1]}"] = 1.0
    fv[f"{prefix}_p:{tree.pos[idx - 1]}"] = 1.0
    fv[f"{prefix}_d:{tree.labels[idx - 1]}"] = 1.0


def syntactic_features(tree: DepTree, span: TokenSpan) -> FeatureVector:
    """Form/lemma/POS/label of the candidate's head, grand-head, siblings,
    and dependents, after collapsing the span to one node."""
    collapsed, node = _collapse(tree, span)
    fv: FeatureVector = {}
    head = collapsed.heads[node - 1]
    if head != 0:
        _token_features(collapsed, head, "h", fv)
        grand = collapsed.heads[head - 1]
        if grand != 0:
            _token_features(collapsed, grand, "g", fv)
        for sib in collapsed.children(head):
            if sib != node:
                _token_features(collapsed, sib, "s", fv)
    for dep in collapsed.children(node):
        _token_features(collapsed, dep, "d", fv)
    return fv


def supplementary_features(
    ngram_fv: FeatureVector, table: EmbeddingTable, k: int
) -> FeatureVector:
    """Expand n-gram features with their k nearest embedding neighbors.

    Each supplement keeps the template slot of the feature it came from and
    is weighted by cosine similarity; non-positive similarities are dropped.
    Bigram values double as underscore-joined phrase keys.
    """
    out = dict(ngram_fv)
    for name in ngram_fv:
        slot, _, value = name.partition(":")
        if slot not in NGRAM_SLOTS:
            continue
        for neighbor, sim in table.top_k(value, k):
            if sim <= 0.0:
                continue
            out.setdefault(f"{slot}:{neighbor}", sim)
    return out


def extract(
    cand: Candidate,
    norm: NormalizedTweet,
    cfg: FeatureConfig,
    tweet_year: int = 0,
    entry_year: Optional[int] = None,
    tree: Optional[DepTree] = None,
    table: Optional[EmbeddingTable] = None,
) -> FeatureVector:
    """Union of the enabled feature families for one candidate in context."""
    if cfg.syntactic and tree is None:
        raise ConfigurationError("syntactic features enabled but no dependency tree given")
    if cfg.supplementary and table is None:
        raise ConfigurationError("supplementary features enabled but no embedding table given")
    fv: FeatureVector = {}
    if cfg.orthographic:
        fv.update(orthographic_features(cand, tweet_year, entry_year, cfg.collection_year))
    if cfg.ngram or cfg.supplementary:
        start, end = cand.token_span
        surfaces = norm.surfaces()
        tokens = surfaces[:start] + [MOVIE_PLACEHOLDER] + surfaces[end:]
        base = ngram_features(tokens, start)
        if cfg.ngram:
            fv.update(base)
        if cfg.supplementary:
            combined = supplementary_features(base, table, cfg.k)
            fv.update(
                combined if cfg.ngram else {n: w for n, w in combined.items() if n not in base}
            )
    if cfg.syntactic:
        fv.update(syntactic_features(tree, cand.token_span))
    return fv
