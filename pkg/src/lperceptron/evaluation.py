"""Confusion matrices, metrics and the k-fold cross-validation driver."""

from __future__ import annotations

import csv
import io
import json
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .baselines import gnb_train, knn_train
from .dataset import Dataset, impute, stratified_folds
from .errors import ConfigError, DegenerateMetricWarning, DimensionError, SingleClassWarning
from .model import Hyperparameters, train


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int = 0
    fp: int = 0
    tn: int = 0
    fn: int = 0

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    def __add__(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        return ConfusionMatrix(self.tp + other.tp, self.fp + other.fp, self.tn + other.tn, self.fn + other.fn)

    def to_dict(self) -> dict:
        return {"tp": self.tp, "fp": self.fp, "tn": self.tn, "fn": self.fn}


def confusion(predicted, actual) -> ConfusionMatrix:
    p = np.asarray(predicted, dtype=bool)
    a = np.asarray(actual, dtype=bool)
    if p.shape != a.shape or p.ndim != 1:
        raise DimensionError(f"predicted {p.shape} and actual {a.shape} differ")
    if p.size == 0:
        raise DimensionError("confusion needs at least one instance")
    return ConfusionMatrix(
        tp=int(np.count_nonzero(p & a)),
        fp=int(np.count_nonzero(p & ~a)),
        tn=int(np.count_nonzero(~p & ~a)),
        fn=int(np.count_nonzero(~p & a)),
    )


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    sensitivity: float
    specificity: float
    precision: float
    f1: float
    degenerate: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "sensitivity": self.sensitivity,
            "specificity": self.specificity,
            "precision": self.precision,
            "f1": self.f1,
            "degenerate": list(self.degenerate),
        }

    def percent(self) -> dict[str, str]:
        return {name: f"{100 * getattr(self, name):.2f}" for name in HEADLINE}


HEADLINE = ("accuracy", "sensitivity", "specificity", "f1")


def _ratio(num: float, den: float, name: str, flags: list[str]) -> float:
    if den == 0:
        flags.append(name)
        return 0.0
    return num / den


def metrics(cm: ConfusionMatrix, *, warn: bool = True) -> Metrics:
    if cm.total == 0:
        raise ValueError("metrics of an empty confusion matrix are undefined")
    flags: list[str] = []
    accuracy = (cm.tp + cm.tn) / cm.total
    sensitivity = _ratio(cm.tp, cm.tp + cm.fn, "sensitivity", flags)
    specificity = _ratio(cm.tn, cm.tn + cm.fp, "specificity", flags)
    precision = _ratio(cm.tp, cm.tp + cm.fp, "precision", flags)
    f1 = _ratio(2 * precision * sensitivity, precision + sensitivity, "f1", flags)
    if flags and warn:
        warnings.warn(f"zero denominator for {', '.join(flags)}; reported as 0", DegenerateMetricWarning, stacklevel=2)
    return Metrics(accuracy, sensitivity, specificity, precision, f1, tuple(flags))


# --- methods ---------------------------------------------------------------


@dataclass(frozen=True)
class LPerceptronMethod:
    hyper: Hyperparameters
    name: str = "L-Perceptron"

    def fit(self, features, labels):
        return train(features, labels, self.hyper)

    def params(self) -> dict:
        return self.hyper.to_dict()


@dataclass(frozen=True)
class GaussianNBMethod:
    name: str = "Naive Bayes"

    def fit(self, features, labels):
        return gnb_train(features, labels)

    def params(self) -> dict:
        return {}


@dataclass(frozen=True)
class KNNMethod:
    k: int = 5
    name: str = "KNN"

    def fit(self, features, labels):
        return knn_train(features, labels, self.k)

    def params(self) -> dict:
        return {"k": self.k}


# --- cross-validation ------------------------------------------------------


@dataclass(frozen=True)
class FoldResult:
    fold: int
    n_train: int
    confusion: ConfusionMatrix
    model: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "fold": self.fold,
            "n_train": self.n_train,
            "n_test": self.confusion.total,
            "confusion": self.confusion.to_dict(),
            "model": self.model,
        }


@dataclass(frozen=True)
class EvaluationReport:
    method: str
    dataset: str
    k: int
    seed: int
    folds: tuple[FoldResult, ...]
    params: dict | None = None

    @property
    def per_fold(self) -> tuple[ConfusionMatrix, ...]:
        return tuple(f.confusion for f in self.folds)

    @property
    def pooled(self) -> ConfusionMatrix:
        total = ConfusionMatrix()
        for cm in self.per_fold:
            total = total + cm
        return total

    @property
    def metrics(self) -> Metrics:
        return metrics(self.pooled, warn=False)

    def fold_mean_metrics(self) -> dict[str, float]:
        per = [metrics(cm, warn=False) for cm in self.per_fold]
        return {name: float(np.mean([getattr(p, name) for p in per])) for name in HEADLINE}

    def to_dict(self, verbose: bool = False) -> dict:
        d = {
            "method": self.method,
            "dataset": self.dataset,
            "k": self.k,
            "seed": self.seed,
            "params": self.params,
            "pooled": self.pooled.to_dict(),
            "metrics": self.metrics.to_dict(),
            "percent": self.metrics.percent(),
            "per_fold": [f.to_dict() for f in self.folds],
        }
        if verbose:
            d["fold_mean"] = self.fold_mean_metrics()
        return d

    def to_json(self, verbose: bool = False) -> str:
        return json.dumps(self.to_dict(verbose), indent=2, sort_keys=True) + "\n"

    def csv_row(self, source: str = "measured") -> list[str]:
        pct = self.metrics.percent()
        return [self.method, self.dataset] + [pct[h] for h in HEADLINE] + [source]

    def to_csv(self) -> str:
        return rows_to_csv([self.csv_row()])


CSV_HEADER = ["method", "dataset", "accuracy", "sensitivity", "specificity", "f1", "source"]


def rows_to_csv(rows) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(rows)
    return out.getvalue()


def _run_fold(ds: Dataset, assignment, fold: int, method) -> FoldResult:
    train_rows, test_rows = assignment.split(fold)
    filled = impute(ds, train_rows)
    y_train = filled.labels[train_rows]
    if y_train.all() or not y_train.any():
        warnings.warn(f"fold {fold}: training partition has a single class", SingleClassWarning, stacklevel=2)
    with warnings.catch_warnings():
        # already reported above for this fold
        warnings.simplefilter("ignore", SingleClassWarning)
        model = method.fit(filled.features[train_rows], y_train)
    predicted = model.predict_batch(filled.features[test_rows])
    cm = confusion(predicted, filled.labels[test_rows])
    return FoldResult(fold, int(train_rows.size), cm, model.summary())


def cross_validate(ds: Dataset, k: int, seed: int, method, *, workers: int = 1) -> EvaluationReport:
    """Stratified k-fold cross-validation of ``method`` on ``ds``.

    Missing cells are imputed per fold from that fold's training rows.
    Folds are independent; with ``workers > 1`` they run on a thread pool and
    are reassembled in fold order.
    """
    if workers < 1:
        raise ConfigError("workers must be >= 1")
    assignment = stratified_folds(ds, k, seed)
    if workers == 1:
        folds = [_run_fold(ds, assignment, f, method) for f in range(k)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            folds = list(pool.map(lambda f: _run_fold(ds, assignment, f, method), range(k)))
    return EvaluationReport(
        method=method.name,
        dataset=ds.name,
        k=k,
        seed=seed,
        folds=tuple(folds),
        params=method.params(),
    )
