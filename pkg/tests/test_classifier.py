import random

import numpy as np
import pytest
from scipy.optimize import minimize

from gazner.classifier import (
    Model,
    TrainParams,
    load_model,
    predict_score,
    save_model,
    solve_dual,
    train,
    vectorize,
)
from gazner.errors import ModelFormatError, TrainingError


def dense_rows(X):
    X = np.asarray(X, dtype=float)
    idx = np.arange(X.shape[1], dtype=np.intp)
    return [(idx, X[i].copy()) for i in range(X.shape[0])]


def qp_oracle(X, y, C):
    """Box-constrained dual solved by L-BFGS-B: an independent algorithm."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    Z = X * y[:, None]
    Q = Z @ Z.T
    n = len(y)
    res = minimize(
        lambda a: 0.5 * a @ Q @ a - a.sum(),
        np.zeros(n),
        jac=lambda a: Q @ a - 1.0,
        method="L-BFGS-B",
        bounds=[(0.0, C)] * n,
        options={"maxiter": 20000, "ftol": 1e-18, "gtol": 1e-14},
    )
    assert res.success or res.status == 0, res.message
    w = (res.x * y) @ X
    return res.x, w


def cosine(u, v):
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 and nv == 0:
        return 1.0
    if nu == 0 or nv == 0:
        return 0.0
    return float(u @ v / (nu * nv))


ORACLE_PROBLEMS = [
    # (X, y, C) with <= 6 points in <= 2 dims
    ([[1.0], [-1.0]], [1, -1], 0.1),
    ([[-1, 10], [0, 9], [1, 10], [-1, 8], [0, 8], [1, 8]], [1, 1, 1, -1, -1, -1], 5.0),
    ([[2, 1], [1, 2], [-1, -1], [-2, 0]], [1, 1, -1, -1], 0.1),
    ([[1, 0], [0, 1], [0, -1], [-1, 0], [0.5, 0.5], [-0.5, -0.5]], [1, 1, -1, -1, 1, -1], 1.0),
    ([[3.0], [2.5], [-0.5], [1.0]], [1, 1, -1, -1], 0.5),
]


class TestVectorize:
    def test_shared_feature_single_index(self):
        rows, labels, fd = vectorize([({"a": 1.0, "b": 2.0}, 1), ({"b": 1.0}, -1)])
        assert fd == {"a": 0, "b": 1}
        assert labels.tolist() == [1.0, -1.0]
        assert rows[1][0].tolist() == [1]

    def test_empty(self):
        rows, labels, fd = vectorize([])
        assert rows == [] and fd == {} and labels.size == 0

    def test_bijection_round_trip(self):
        rng = random.Random(3)
        instances = []
        for _ in range(100):
            fv = {f"f{rng.randrange(50)}": rng.random() for _ in range(rng.randint(1, 8))}
            instances.append((fv, rng.choice([1, -1])))
        _, _, fd = vectorize(instances)
        inverse = {i: name for name, i in fd.items()}
        assert len(inverse) == len(fd)
        assert {inverse[i] for i in inverse} == set(fd)
        assert sorted(fd.values()) == list(range(len(fd)))


class TestTrain:
    def test_two_point_closed_form(self):
        rows = dense_rows([[1.0], [-1.0]])
        model = train(rows, np.array([1.0, -1.0]), TrainParams(c=0.1))
        assert model.weights[0] == pytest.approx(0.2, abs=1e-6)
        assert np.allclose(model.diagnostics.alphas, 0.1)
        assert predict_score(model, {"x0": 1.0})[0] == 1
        assert predict_score(model, {"x0": -1.0})[0] == -1

    def test_separable_set_trains_clean(self):
        rng = random.Random(11)
        X, y = [], []
        for _ in range(10):
            X.append([rng.uniform(1.0, 2.0), rng.uniform(-1, 1)])
            y.append(1)
            X.append([rng.uniform(-2.0, -1.0), rng.uniform(-1, 1)])
            y.append(-1)
        w_star = np.array([1.0, 0.0])  # the构separator used to generate the data
        assert all(yi * (w_star @ xi) > 0 for xi, yi in zip(np.array(X), y))
        model = train(dense_rows(X), np.array(y, dtype=float), TrainParams(c=0.1))
        scores = [predict_score(model, {"x0": a, "x1": b})[0] for a, b in X]
        assert scores == y

    def test_identical_vectors_mixed_labels(self):
        X = [[1.0]] * 5
        y = np.array([1, 1, 1, -1, -1], dtype=float)
        model = train(dense_rows(X), y, TrainParams(c=0.1))
        assert model.diagnostics.converged
        preds = [predict_score(model, {"x0": 1.0})[0] for _ in X]
        accuracy = sum(p == t for p, t in zip(preds, y)) / len(y)
        assert accuracy == pytest.approx(0.6)

    def test_single_class_rejected(self):
        with pytest.raises(TrainingError):
            train(dense_rows([[1.0], [2.0]]), np.array([1.0, 1.0]))

    def test_empty_rejected(self):
        with pytest.raises(TrainingError):
            train([], np.array([]))

    def test_bad_params_rejected(self):
        with pytest.raises(TrainingError):
            TrainParams(c=0.0)
        with pytest.raises(TrainingError):
            TrainParams(e=-1.0)


class TestOracleEquivalence:
    @pytest.mark.parametrize("shrinking", [False, True])
    @pytest.mark.parametrize("problem", range(len(ORACLE_PROBLEMS)))
    def test_matches_qp_solution(self, problem, shrinking):
        X, y, C = ORACLE_PROBLEMS[problem]
        y = np.array(y, dtype=float)
        params = TrainParams(c=C, e=1e-4, shrinking=shrinking, max_epochs=100000)
        w, diag = solve_dual(dense_rows(X), y, params, len(X[0]))
        _, w_oracle = qp_oracle(X, y, C)
        assert diag.converged
        assert cosine(w, w_oracle) >= 0.999, (w, w_oracle)
        # dual feasibility at convergence
        assert np.all(diag.alphas >= -1e-12)
        assert np.all(diag.alphas <= C + 1e-12)
        # dual objective non-decreasing across epochs
        objs = diag.dual_objectives
        assert all(b >= a - 1e-9 for a, b in zip(objs, objs[1:]))

    def test_random_small_problems(self):
        rng = np.random.default_rng(5)
        for trial in range(20):
            n = int(rng.integers(2, 7))
            X = rng.normal(size=(n, 2))
            y = np.ones(n)
            y[: n // 2] = -1.0
            rng.shuffle(y)
            if not (np.any(y > 0) and np.any(y < 0)):
                continue
            C = float(rng.choice([0.1, 1.0]))
            params = TrainParams(c=C, e=1e-5, max_epochs=200000)
            w, diag = solve_dual(dense_rows(X), y, params, 2)
            _, w_oracle = qp_oracle(X, y, C)
            if np.linalg.norm(w_oracle) < 1e-9:
                assert np.linalg.norm(w) < 1e-6
            else:
                assert cosine(w, w_oracle) >= 0.999, (trial, w, w_oracle)


class TestPermutationInvariance:
    def test_predictions_agree_across_seeds(self):
        rng = random.Random(23)
        instances = []
        for _ in range(40):
            fv = {f"f{rng.randrange(12)}": 1.0 for _ in range(rng.randint(1, 5))}
            label = 1 if "f0" in fv or "f1" in fv else -1
            instances.append((fv, label))
        rows, labels, fd = vectorize(instances)
        m1 = train(rows, labels, TrainParams(seed=1, e=1e-3, max_epochs=50000), fd)
        m2 = train(rows, labels, TrainParams(seed=99, e=1e-3, max_epochs=50000), fd)
        for fv, _ in instances:
            assert predict_score(m1, fv)[0] == predict_score(m2, fv)[0]


class TestPredictScore:
    def make_model(self, weights_by_name):
        fd = {name: i for i, name in enumerate(weights_by_name)}
        return Model(fd, np.array(list(weights_by_name.values()), dtype=float), TrainParams())

    def test_empty_fv(self):
        model = self.make_model({"a": 1.0})
        assert predict_score(model, {}) == (-1, 0.0)

    def test_unseen_features_ignored(self):
        model = self.make_model({"a": 1.0})
        assert predict_score(model, {"zzz": 5.0}) == (-1, 0.0)

    def test_hand_dot_product(self):
        model = self.make_model({"f1": 2.0})
        label, score = predict_score(model, {"f1": 0.5})
        assert (label, score) == (1, 1.0)

    def test_tie_is_negative(self):
        model = self.make_model({"a": 0.0})
        assert predict_score(model, {"a": 1.0})[0] == -1


class TestSaveLoad:
    def train_toy(self):
        rows, labels, fd = vectorize(
            [({"good": 1.0, "fun": 0.5}, 1), ({"bad": 1.0}, -1), ({"good": 0.3}, 1), ({"dull": 1.0, "bad": 0.2}, -1)]
        )
        return train(rows, labels, TrainParams(), fd, metadata={"families": "ngram"})

    def test_round_trip_scores_identical(self, tmp_path):
        model = self.train_toy()
        path = tmp_path / "m.model"
        save_model(model, path)
        loaded = load_model(path)
        assert loaded.feature_dict == model.feature_dict
        assert loaded.metadata == model.metadata
        probes = [{"good": 1.0}, {"bad": 2.0, "fun": 1.0}, {"dull": 0.1, "good": 0.4}]
        for fv in probes:
            assert predict_score(loaded, fv)[1] == pytest.approx(
                predict_score(model, fv)[1], abs=1e-12
            )

    def test_truncated_file_rejected(self, tmp_path):
        model = self.train_toy()
        path = tmp_path / "m.model"
        save_model(model, path)
        lines = path.read_text().splitlines()
        path.write_text("\n".join(lines[:-2]) + "\n")
        with pytest.raises(ModelFormatError):
            load_model(path)

    def test_version_mismatch_rejected(self, tmp_path):
        path = tmp_path / "m.model"
        path.write_text("gazner-model 99\n")
        with pytest.raises(ModelFormatError):
            load_model(path)

    def test_not_a_model_rejected(self, tmp_path):
        path = tmp_path / "m.model"
        path.write_text("something else\n")
        with pytest.raises(ModelFormatError):
            load_model(path)

    def test_large_model_preserves_dict_order(self, tmp_path):
        n = 100_000
        fd = {f"feat:{i}": i for i in range(n)}
        weights = np.linspace(-1, 1, n)
        model = Model(fd, weights, TrainParams())
        path = tmp_path / "big.model"
        save_model(model, path)
        first = path.read_bytes()
        loaded = load_model(path)
        assert list(loaded.feature_dict) == list(fd)
        save_model(loaded, tmp_path / "big2.model")
        assert (tmp_path / "big2.model").read_bytes() == first  # byte-stable re-serialization
