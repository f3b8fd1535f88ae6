"""Reference classifiers for the comparison tables: Gaussian Naive Bayes and KNN."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DimensionError, TrainingError

VAR_FLOOR = 1e-9


@dataclass(frozen=True, eq=False)
class GnbModel:
    priors: np.ndarray  # [negative, positive]
    means: np.ndarray  # (2, m)
    variances: np.ndarray  # (2, m)

    def log_posteriors(self, features) -> np.ndarray:
        x = np.asarray(features, dtype=np.float64)
        if x.ndim != 2 or x.shape[1] != self.means.shape[1]:
            raise DimensionError(f"expected {self.means.shape[1]} features, got shape {x.shape}")
        diff = x[:, np.newaxis, :] - self.means[np.newaxis, :, :]
        log_density = -0.5 * (np.log(2 * np.pi * self.variances) + diff**2 / self.variances)
        return np.log(self.priors) + log_density.sum(axis=2)

    def predict_batch(self, features) -> np.ndarray:
        lp = self.log_posteriors(features)
        # ties go to the negative class
        return lp[:, 1] > lp[:, 0]

    def predict(self, instance) -> bool:
        return bool(self.predict_batch(np.asarray(instance, dtype=np.float64)[np.newaxis, :])[0])

    def summary(self) -> dict:
        return {"priors": self.priors.tolist()}


def gnb_train(features, labels) -> GnbModel:
    x = np.asarray(features, dtype=np.float64)
    y = np.asarray(labels, dtype=bool)
    if x.ndim != 2 or x.shape[0] != y.size:
        raise DimensionError("features and labels disagree in length")
    if y.all() or not y.any():
        raise TrainingError("Gaussian Naive Bayes needs both classes in the training set")
    priors, means, variances = [], [], []
    for cls in (False, True):
        rows = x[y == cls]
        priors.append(rows.shape[0] / x.shape[0])
        means.append(rows.mean(axis=0))
        variances.append(np.maximum(rows.var(axis=0), VAR_FLOOR))
    return GnbModel(np.array(priors), np.array(means), np.array(variances))


def gnb_predict(model: GnbModel, instance) -> bool:
    return model.predict(instance)


@dataclass(frozen=True, eq=False)
class KnnModel:
    features: np.ndarray
    labels: np.ndarray
    k: int = 5

    def __post_init__(self):
        if self.k < 1 or self.k % 2 == 0:
            raise ConfigError(f"k must be a positive odd integer, got {self.k}")
        if self.k > self.features.shape[0]:
            raise ConfigError(f"k={self.k} exceeds the {self.features.shape[0]} training rows")

    def predict_batch(self, features) -> np.ndarray:
        q = np.asarray(features, dtype=np.float64)
        if q.ndim != 2 or q.shape[1] != self.features.shape[1]:
            raise DimensionError(f"expected {self.features.shape[1]} features, got shape {q.shape}")
        d2 = ((q[:, np.newaxis, :] - self.features[np.newaxis, :, :]) ** 2).sum(axis=2)
        # stable sort breaks distance ties by lower row index
        nearest = np.argsort(d2, axis=1, kind="stable")[:, : self.k]
        votes = self.labels[nearest].sum(axis=1)
        return votes * 2 > self.k

    def predict(self, instance) -> bool:
        return bool(self.predict_batch(np.asarray(instance, dtype=np.float64)[np.newaxis, :])[0])

    def summary(self) -> dict:
        return {"k": self.k}


def knn_train(features, labels, k: int = 5) -> KnnModel:
    x = np.array(features, dtype=np.float64)
    y = np.array(labels, dtype=bool)
    if x.ndim != 2 or x.shape[0] != y.size:
        raise DimensionError("features and labels disagree in length")
    return KnnModel(x, y, int(k))


def knn_predict(model: KnnModel, instance) -> bool:
    return model.predict(instance)
