"""The L-Perceptron classifier.

One polynomial per feature is fitted against class targets (``p1`` for one
class, ``p2`` for the other). An instance is scored by summing the
per-feature polynomial outputs and the sum is compared with ``threshold``.
Training tunes each feature's degree greedily: raise it by one, keep the
change only if the training error drops.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    ConfigError,
    DimensionError,
    NumericInputError,
    SingleClassWarning,
    TrainingError,
)
from .polyfit import Polynomial, build_targets, evaluate_many, fit_polynomial, sse

SCHEMA_VERSION = 1
ERROR_METRICS = ("misclassification", "sse")


@dataclass(frozen=True)
class Hyperparameters:
    """Training settings.

    ``p1_positive`` chooses which class receives ``p1``: the positive class
    (default) or the negative one. ``error_metric`` is the quantity the
    degree search minimises.
    """

    p1: float
    p2: float
    dlb: int = 1
    dub: int = 1
    ite: int = 0
    threshold: float = 0.0
    p1_positive: bool = True
    error_metric: str = "misclassification"

    def __post_init__(self):
        if not (np.isfinite(self.p1) and np.isfinite(self.p2) and np.isfinite(self.threshold)):
            raise ConfigError("p1, p2 and threshold must be finite")
        if self.p1 == self.p2:
            raise ConfigError("p1 and p2 must differ")
        if int(self.dlb) != self.dlb or int(self.dub) != self.dub or int(self.ite) != self.ite:
            raise ConfigError("dlb, dub and ite must be integers")
        if self.dlb < 0:
            raise ConfigError(f"dlb must be >= 0, got {self.dlb}")
        if self.dub < self.dlb:
            raise ConfigError(f"dub ({self.dub}) must be >= dlb ({self.dlb})")
        if self.ite < 0:
            raise ConfigError(f"ite must be >= 0, got {self.ite}")
        if self.error_metric not in ERROR_METRICS:
            raise ConfigError(f"error_metric must be one of {ERROR_METRICS}")

    @property
    def positive_target(self) -> float:
        return self.p1 if self.p1_positive else self.p2

    @property
    def negative_target(self) -> float:
        return self.p2 if self.p1_positive else self.p1

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "Hyperparameters":
        return cls(
            p1=float(d["p1"]), p2=float(d["p2"]),
            dlb=int(d["dlb"]), dub=int(d["dub"]), ite=int(d["ite"]),
            threshold=float(d["threshold"]),
            p1_positive=bool(d.get("p1_positive", True)),
            error_metric=d.get("error_metric", "misclassification"),
        )


@dataclass
class TrainTrace:
    """Bookkeeping from one training run; not part of the serialized model."""

    errors: list[float] = field(default_factory=list)  # initial error, then one per accepted step
    refits: int = 0
    passes: int = 0
    accepted: list[tuple[int, int]] = field(default_factory=list)  # (feature, new degree)
    error_above: int = 0
    error_below: int = 0


@dataclass(frozen=True, eq=False)
class LPerceptronModel:
    per_feature: tuple[Polynomial, ...]
    degrees: tuple[int, ...]
    hyper: Hyperparameters
    positive_above: bool
    fill_values: tuple[float, ...] | None = None
    trace: TrainTrace | None = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.per_feature) != len(self.degrees):
            raise DimensionError("per_feature and degrees lengths differ")
        for poly, d in zip(self.per_feature, self.degrees):
            if poly.degree != d:
                raise ValueError(f"polynomial of degree {poly.degree} recorded as {d}")

    @property
    def m(self) -> int:
        return len(self.per_feature)

    def score(self, instance) -> float:
        return score(self, instance)

    def scores(self, features) -> np.ndarray:
        return scores(self, features)

    def predict(self, instance) -> bool:
        return predict(self, instance)

    def predict_batch(self, features) -> np.ndarray:
        return predict_batch(self, features)

    def summary(self) -> dict:
        d = {"degrees": list(self.degrees), "positive_above": self.positive_above}
        if self.trace is not None:
            d["train_error_above"] = self.trace.error_above
            d["train_error_below"] = self.trace.error_below
        return d

    def to_dict(self) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "feature_count": self.m,
            "degrees": list(self.degrees),
            "coefficients": [p.coefficients.tolist() for p in self.per_feature],
            "hyperparameters": self.hyper.to_dict(),
            "positive_above": self.positive_above,
        }
        if self.fill_values is not None:
            d["fill_values"] = list(self.fill_values)
        return d

    def to_json(self) -> str:
        return dumps_model(self)

    @classmethod
    def from_dict(cls, d: dict) -> "LPerceptronModel":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported model schema_version {d.get('schema_version')!r}")
        polys = tuple(Polynomial(np.array(c, dtype=np.float64)) for c in d["coefficients"])
        if len(polys) != d["feature_count"]:
            raise DimensionError("feature_count does not match the coefficient list")
        fill = d.get("fill_values")
        return cls(
            per_feature=polys,
            degrees=tuple(int(x) for x in d["degrees"]),
            hyper=Hyperparameters.from_dict(d["hyperparameters"]),
            positive_above=bool(d["positive_above"]),
            fill_values=tuple(float(v) for v in fill) if fill is not None else None,
        )

    @classmethod
    def from_json(cls, text: str) -> "LPerceptronModel":
        return cls.from_dict(json.loads(text))


def _number(x: float) -> str:
    # 17 significant digits round-trip any binary64 value exactly
    return format(float(x), ".17g")


def dumps_model(model: LPerceptronModel) -> str:
    d = model.to_dict()
    coefficients = d.pop("coefficients")
    fill = d.pop("fill_values", None)
    d["coefficients"] = "@COEFFICIENTS@"
    if fill is not None:
        d["fill_values"] = "@FILL@"
    text = json.dumps(d, indent=2, sort_keys=True)
    rows = ",\n    ".join("[" + ", ".join(_number(c) for c in row) + "]" for row in coefficients)
    text = text.replace('"@COEFFICIENTS@"', "[\n    " + rows + "\n  ]")
    if fill is not None:
        text = text.replace('"@FILL@"', "[" + ", ".join(_number(v) for v in fill) + "]")
    return text + "\n"


def _check_matrix(model: LPerceptronModel, features) -> np.ndarray:
    x = np.asarray(features, dtype=np.float64)
    if x.ndim == 1 and x.size == 0:
        x = x.reshape(0, model.m)
    if x.ndim != 2 or x.shape[1] != model.m:
        raise DimensionError(f"expected {model.m} features per instance, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise NumericInputError("instances must be finite (impute missing values first)")
    return x


def scores(model: LPerceptronModel, features) -> np.ndarray:
    x = _check_matrix(model, features)
    total = np.zeros(x.shape[0])
    for j, poly in enumerate(model.per_feature):
        total += evaluate_many(poly, x[:, j])
    return total


def score(model: LPerceptronModel, instance) -> float:
    x = np.asarray(instance, dtype=np.float64)
    if x.ndim != 1:
        raise DimensionError("score expects a single instance vector")
    return float(scores(model, x[np.newaxis, :])[0])


def _decide(s: np.ndarray, threshold: float, positive_above: bool) -> np.ndarray:
    above = s > threshold
    return above if positive_above else ~above


def predict_batch(model: LPerceptronModel, features) -> np.ndarray:
    return _decide(scores(model, features), model.hyper.threshold, model.positive_above)


def predict(model: LPerceptronModel, instance) -> bool:
    return bool(_decide(np.array([score(model, instance)]), model.hyper.threshold, model.positive_above)[0])


def _orientation_errors(total: np.ndarray, labels: np.ndarray, threshold: float) -> tuple[int, int]:
    above = total > threshold
    err_above = int(np.count_nonzero(above != labels))
    return err_above, labels.size - err_above


FitFn = Callable[[np.ndarray, np.ndarray, int], Polynomial]


def train(features, labels, hyper: Hyperparameters, *, fitter: FitFn = fit_polynomial) -> LPerceptronModel:
    """Fit per-feature polynomials and tune their degrees greedily.

    Every degree starts at ``dlb``. Each pass visits the features in column
    order and tries ``degree + 1`` (never above ``dub``), keeping it only if
    the training error strictly decreases. Passes stop after ``ite`` or after
    a pass that accepts nothing.

    With the default ``misclassification`` metric the error is the number of
    misclassified training rows under the better of the two threshold
    orientations, which is the orientation the final model keeps.
    """
    x = np.asarray(features, dtype=np.float64)
    y = np.asarray(labels, dtype=bool)
    if x.ndim != 2 or x.shape[0] == 0:
        raise TrainingError("training set is empty")
    if y.shape != (x.shape[0],):
        raise DimensionError(f"{x.shape[0]} rows but {y.size} labels")
    if not np.all(np.isfinite(x)):
        raise NumericInputError("training features contain non-finite values; impute first")
    if y.all() or not y.any():
        warnings.warn("training set contains a single class", SingleClassWarning, stacklevel=2)

    n, m = x.shape
    targets = build_targets(y if hyper.p1_positive else ~y, hyper.p1, hyper.p2)
    th = hyper.threshold
    trace = TrainTrace()

    degrees = [hyper.dlb] * m
    polys = [fitter(x[:, j], targets, hyper.dlb) for j in range(m)]
    outputs = np.column_stack([evaluate_many(p, x[:, j]) for j, p in enumerate(polys)])
    total = outputs.sum(axis=1)

    if hyper.error_metric == "sse":
        feature_sse = [sse(p, x[:, j], targets) for j, p in enumerate(polys)]
        error = float(sum(feature_sse))
    else:
        error = float(min(_orientation_errors(total, y, th)))
    trace.errors.append(error)

    for _ in range(hyper.ite):
        trace.passes += 1
        changed = False
        for j in range(m):
            if degrees[j] >= hyper.dub:
                continue
            candidate = fitter(x[:, j], targets, degrees[j] + 1)
            trace.refits += 1
            col = evaluate_many(candidate, x[:, j])
            new_total = total - outputs[:, j] + col
            if hyper.error_metric == "sse":
                cand_sse = sse(candidate, x[:, j], targets)
                new_error = error - feature_sse[j] + cand_sse
            else:
                new_error = float(min(_orientation_errors(new_total, y, th)))
            if new_error < error:
                degrees[j] += 1
                polys[j] = candidate
                outputs[:, j] = col
                total = new_total
                error = new_error
                if hyper.error_metric == "sse":
                    feature_sse[j] = cand_sse
                trace.errors.append(error)
                trace.accepted.append((j, degrees[j]))
                changed = True
            # rejected: the cached fit at the old degree is kept as is
        if not changed:
            break

    err_above, err_below = _orientation_errors(total, y, th)
    trace.error_above, trace.error_below = err_above, err_below
    if err_above != err_below:
        positive_above = err_above < err_below
    else:
        positive_above = hyper.positive_target > hyper.negative_target

    return LPerceptronModel(
        per_feature=tuple(polys),
        degrees=tuple(degrees),
        hyper=hyper,
        positive_above=positive_above,
        trace=trace,
    )


def training_error(model: LPerceptronModel, features, labels) -> int:
    return int(np.count_nonzero(predict_batch(model, features) != np.asarray(labels, dtype=bool)))
