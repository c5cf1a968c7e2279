"""L2-regularized L1-loss linear SVM trained by dual coordinate descent.

The dual problem  max  sum(a) - 0.5 * ||sum(a_i y_i x_i)||^2  subject to
0 <= a_i <= C  is solved one coordinate at a time: each update is the exact
one-variable maximizer clipped to the box, with instances visited in a
fresh random permutation every epoch.  Training stops when the largest
projected-gradient violation seen in an epoch falls below the tolerance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import ModelFormatError, TrainingError
from .features import FeatureVector

_MODEL_MAGIC = "gazner-model"
_MODEL_VERSION = 1
_BIAS_NAME = "<BIAS>"

SparseRow = tuple[np.ndarray, np.ndarray]  # (indices, values)


@dataclass(frozen=True)
class TrainParams:
    c: float = 0.1
    e: float = 0.1
    b: float = 0.0
    seed: int = 1
    max_epochs: int = 1000
    shrinking: bool = False

    def __post_init__(self):
        if self.c <= 0:
            raise TrainingError("penalty c must be positive")
        if self.e <= 0:
            raise TrainingError("tolerance e must be positive")


@dataclass
class TrainDiagnostics:
    epochs: int
    converged: bool
    dual_objectives: list[float]
    alphas: np.ndarray


@dataclass
class Model:
    feature_dict: dict[str, int]
    weights: np.ndarray
    params: TrainParams
    metadata: dict[str, str] = field(default_factory=dict)
    diagnostics: Optional[TrainDiagnostics] = None


def vectorize(
    instances: Sequence[tuple[FeatureVector, int]],
) -> tuple[list[SparseRow], np.ndarray, dict[str, int]]:
    """Map named features to dense indices in first-seen order."""
    feature_dict: dict[str, int] = {}
    rows: list[SparseRow] = []
    labels = np.empty(len(instances), dtype=np.float64)
    for n, (fv, label) in enumerate(instances):
        idx = np.empty(len(fv), dtype=np.intp)
        val = np.empty(len(fv), dtype=np.float64)
        for j, (name, weight) in enumerate(fv.items()):
            idx[j] = feature_dict.setdefault(name, len(feature_dict))
            val[j] = weight
        rows.append((idx, val))
        labels[n] = 1.0 if label > 0 else -1.0
    return rows, labels, feature_dict


def solve_dual(
    rows: Sequence[SparseRow], labels: np.ndarray, params: TrainParams, n_features: int
) -> tuple[np.ndarray, TrainDiagnostics]:
    """Core coordinate-descent loop; returns primal weights and diagnostics."""
    n = len(rows)
    C = params.c
    w = np.zeros(n_features)
    alpha = np.zeros(n)
    qii = np.array([float(val @ val) for _, val in rows])
    rng = random.Random(params.seed)

    active = list(range(n))
    objectives: list[float] = []
    converged = False
    epoch = 0
    prev_violation = np.inf  # shrinking threshold from the previous epoch
    while epoch < params.max_epochs:
        epoch += 1
        rng.shuffle(active)
        max_violation = 0.0
        shrunk: set[int] = set()
        for i in active:
            idx, val = rows[i]
            y = labels[i]
            g = y * float(w[idx] @ val) - 1.0
            if alpha[i] <= 0.0:
                if params.shrinking and g > prev_violation:
                    shrunk.add(i)
                    continue
                pg = min(g, 0.0)
            elif alpha[i] >= C:
                if params.shrinking and g < -prev_violation:
                    shrunk.add(i)
                    continue
                pg = max(g, 0.0)
            else:
                pg = g
            if pg != 0.0:
                max_violation = max(max_violation, abs(pg))
                old = alpha[i]
                if qii[i] > 0.0:
                    new = min(max(old - g / qii[i], 0.0), C)
                else:
                    new = C if g < 0.0 else 0.0
                if new != old:
                    alpha[i] = new
                    w[idx] += (new - old) * y * val
        objective = float(alpha.sum() - 0.5 * (w @ w))
        assert not objectives or objective >= objectives[-1] - 1e-9, "dual objective decreased"
        objectives.append(objective)
        if params.shrinking:
            if shrunk:
                active = [i for i in active if i not in shrunk]
            prev_violation = max_violation if max_violation > 0.0 else np.inf
        if max_violation < params.e:
            if params.shrinking and len(active) < n:
                active = list(range(n))  # unshrink and confirm on the full set
                prev_violation = np.inf
                continue
            converged = True
            break
    return w, TrainDiagnostics(epoch, converged, objectives, alpha)


def train(
    rows: Sequence[SparseRow],
    labels: np.ndarray,
    params: TrainParams = TrainParams(),
    feature_dict: Optional[dict[str, int]] = None,
    metadata: Optional[dict[str, str]] = None,
) -> Model:
    """Train on vectorized rows; requires at least one instance per class."""
    labels = np.asarray(labels, dtype=np.float64)
    if len(rows) == 0 or not (np.any(labels > 0) and np.any(labels < 0)):
        raise TrainingError("training needs at least one instance of each class")
    if feature_dict is None:
        width = max((int(idx.max()) + 1 for idx, _ in rows if len(idx)), default=0)
        feature_dict = {f"x{i}": i for i in range(width)}
    n_features = len(feature_dict)
    use_bias = params.b > 0
    if use_bias:
        feature_dict = dict(feature_dict)
        feature_dict[_BIAS_NAME] = n_features
        rows = [
            (np.append(idx, n_features), np.append(val, params.b)) for idx, val in rows
        ]
        n_features += 1
    w, diag = solve_dual(rows, labels, params, n_features)
    return Model(feature_dict, w, params, dict(metadata or {}), diag)


def predict_score(model: Model, fv: FeatureVector) -> tuple[int, float]:
    """Dot the model into a named feature vector; ties score as negative."""
    score = 0.0
    fd = model.feature_dict
    for name, value in fv.items():
        i = fd.get(name)
        if i is not None:
            score += model.weights[i] * value
    if model.params.b > 0:
        score += model.weights[fd[_BIAS_NAME]] * model.params.b
    return (1 if score > 0.0 else -1), score


def save_model(model: Model, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{_MODEL_MAGIC} {_MODEL_VERSION}\n")
        p = model.params
        fh.write(
            f"params\t{p.c!r}\t{p.e!r}\t{p.b!r}\t{p.seed}\t{p.max_epochs}\t{int(p.shrinking)}\n"
        )
        for key, value in model.metadata.items():
            fh.write(f"meta\t{key}\t{value}\n")
        fh.write(f"features\t{len(model.feature_dict)}\n")
        names = sorted(model.feature_dict, key=model.feature_dict.get)
        for name in names:
            fh.write(f"{name}\t{float(model.weights[model.feature_dict[name]])!r}\n")


def load_model(path: str | Path) -> Model:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2 or header[0] != _MODEL_MAGIC:
            raise ModelFormatError("not a model file")
        if header[1] != str(_MODEL_VERSION):
            raise ModelFormatError(f"unsupported model version {header[1]!r}")
        params: Optional[TrainParams] = None
        metadata: dict[str, str] = {}
        count = None
        while True:
            line = fh.readline()
            if not line:
                break
            cols = line.rstrip("\n").split("\t")
            if cols[0] == "params" and len(cols) == 7:
                params = TrainParams(
                    float(cols[1]), float(cols[2]), float(cols[3]),
                    int(cols[4]), int(cols[5]), bool(int(cols[6])),
                )
            elif cols[0] == "meta" and len(cols) == 3:
                metadata[cols[1]] = cols[2]
            elif cols[0] == "features" and len(cols) == 2:
                count = int(cols[1])
                break
            else:
                raise ModelFormatError(f"unexpected header line {cols[0]!r}")
        if params is None or count is None:
            raise ModelFormatError("missing params or features header")
        feature_dict: dict[str, int] = {}
        weights = np.empty(count)
        for _ in range(count):
            line = fh.readline()
            if not line:
                raise ModelFormatError("model file truncated")
            name, _, weight = line.rstrip("\n").rpartition("\t")
            if not name:
                raise ModelFormatError("malformed feature line")
            try:
                weights[len(feature_dict)] = float(weight)
            except ValueError as e:
                raise ModelFormatError(f"bad weight {weight!r}") from e
            feature_dict[name] = len(feature_dict)
        if len(feature_dict) != count:
            raise ModelFormatError("duplicate feature names in model file")
    return Model(feature_dict, weights, params, metadata)
