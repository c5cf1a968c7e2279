"""Pre-trained word vectors and cosine nearest-neighbor queries.

The file format is the common text layout: a ``vocab_count dimension``
header, then one ``word v1 v2 ... vd`` row per word.  Neighbor queries
are exact full scans; the table caches per-word results since the
feature extractor asks for the same neighborhoods repeatedly.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import ContractViolation, CorpusParseError

log = logging.getLogger(__name__)


class EmbeddingTable:
    def __init__(self, dimension: int, vectors: dict[str, np.ndarray]):
        if dimension <= 0 and vectors:
            raise ContractViolation("zero-dimension table cannot hold vectors")
        self.dimension = dimension
        self.vectors = vectors
        self._words: Optional[list[str]] = None
        self._matrix: Optional[np.ndarray] = None
        self._norms: Optional[np.ndarray] = None
        self._cache: dict[tuple[str, int], list[tuple[str, float]]] = {}

    def __len__(self) -> int:
        return len(self.vectors)

    def __contains__(self, word: str) -> bool:
        return word in self.vectors

    def _ensure_matrix(self) -> None:
        if self._matrix is None:
            self._words = list(self.vectors)
            self._matrix = (
                np.stack([self.vectors[w] for w in self._words])
                if self._words
                else np.zeros((0, self.dimension))
            )
            self._norms = np.linalg.norm(self._matrix, axis=1)

    def top_k(self, word: str, k: int) -> list[tuple[str, float]]:
        """The k nearest words by cosine, descending, ties lexicographic."""
        if k <= 0 or word not in self.vectors:
            return []
        hit = self._cache.get((word, k))
        if hit is not None:
            return hit
        self._ensure_matrix()
        q = self.vectors[word]
        qn = float(np.linalg.norm(q))
        if qn == 0.0:
            sims = np.zeros(len(self._words))
        else:
            denom = self._norms * qn
            sims = np.divide(
                self._matrix @ q, denom, out=np.zeros(len(self._words)), where=denom != 0
            )
        scored = [
            (w, float(s)) for w, s in zip(self._words, sims) if w != word
        ]
        scored.sort(key=lambda ws: (-ws[1], ws[0]))
        result = scored[:k]
        self._cache[(word, k)] = result
        return result


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity; 0.0 when either vector has zero norm."""
    u, v = np.asarray(u, dtype=float), np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ContractViolation(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


def top_k(table: EmbeddingTable, word: str, k: int) -> list[tuple[str, float]]:
    return table.top_k(word, k)


def load_embeddings(path: str | Path) -> EmbeddingTable:
    """Read a text-format vector file; later duplicate words win."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise CorpusParseError("embedding header must be 'vocab_count dimension'")
        try:
            count, dim = int(header[0]), int(header[1])
        except ValueError as e:
            raise CorpusParseError(f"bad embedding header {header!r}") from e
        vectors: dict[str, np.ndarray] = {}
        for row_no, line in enumerate(fh, start=2):
            parts = line.rstrip("\n").split(" ")
            parts = [p for p in parts if p]
            if not parts:
                continue
            word, values = parts[0], parts[1:]
            if len(values) != dim:
                raise CorpusParseError(
                    f"row {row_no}: expected {dim} values, got {len(values)}"
                )
            if word in vectors:
                log.warning("duplicate embedding for %r at row %d; keeping last", word, row_no)
            try:
                vectors[word] = np.array([float(v) for v in values])
            except ValueError as e:
                raise CorpusParseError(f"row {row_no}: non-numeric value") from e
    if count != len(vectors):
        log.warning("embedding header declared %d words, file has %d", count, len(vectors))
    return EmbeddingTable(dim, vectors)
