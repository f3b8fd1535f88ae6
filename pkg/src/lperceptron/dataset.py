"""Loading, imputation and fold assignment for tabular binary datasets.

Missing cells (``?`` or empty) are kept as NaN placeholders in ``features``
and flagged in ``missing_mask``; :func:`impute` fills them from training rows
only.
"""

from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import (
    ConfigError,
    DatasetError,
    EmptyDatasetError,
    ImputationError,
    ParseError,
    SchemaError,
    SmallClassWarning,
)

MISSING_TOKENS = frozenset({"?", ""})


@dataclass(frozen=True)
class Schema:
    """Column layout of a CSV file.

    ``label_col`` and ``drop_cols`` index the raw columns and may be negative.
    When ``negative`` is None, the first non-positive label token seen is
    taken as the negative class.
    """

    label_col: int = -1
    positive: str = "1"
    negative: str | None = None
    drop_cols: tuple[int, ...] = ()
    header: bool = False


WBCD_SCHEMA = Schema(label_col=-1, positive="4", negative="2", drop_cols=(0,))
HSD_SCHEMA = Schema(label_col=-1, positive="1", negative="2")

BUILTIN = {
    "wbcd": ("breast-cancer-wisconsin.data", WBCD_SCHEMA),
    "hsd": ("haberman.data", HSD_SCHEMA),
}


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Dataset:
    name: str
    features: np.ndarray
    labels: np.ndarray  # bool, True = positive class
    missing_mask: np.ndarray
    positive_token: str = "1"
    negative_token: str = "0"
    feature_names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        features = np.asarray(self.features, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=bool)
        mask = np.asarray(self.missing_mask, dtype=bool)
        if features.ndim != 2:
            raise DatasetError("features must be a 2-D matrix")
        n, m = features.shape
        if n < 1 or m < 1:
            raise EmptyDatasetError(f"dataset {self.name!r} has shape {features.shape}")
        if labels.shape != (n,) or mask.shape != (n, m):
            raise DatasetError("features, labels and missing_mask dimensions disagree")
        if not np.all(np.isfinite(features[~mask])):
            raise DatasetError("non-finite value in an observed cell")
        object.__setattr__(self, "features", _frozen(features))
        object.__setattr__(self, "labels", _frozen(labels))
        object.__setattr__(self, "missing_mask", _frozen(mask))
        if not self.feature_names:
            object.__setattr__(self, "feature_names", tuple(f"x{j}" for j in range(m)))

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def m(self) -> int:
        return self.features.shape[1]

    @property
    def has_missing(self) -> bool:
        return bool(self.missing_mask.any())

    def subset(self, rows) -> "Dataset":
        rows = np.asarray(rows)
        return Dataset(
            self.name,
            self.features[rows],
            self.labels[rows],
            self.missing_mask[rows],
            self.positive_token,
            self.negative_token,
            self.feature_names,
        )

    def equals(self, other: "Dataset") -> bool:
        """Cell-wise equality, treating masked cells as equal regardless of placeholder."""
        if self.features.shape != other.features.shape:
            return False
        if not np.array_equal(self.missing_mask, other.missing_mask):
            return False
        observed = ~self.missing_mask
        return (
            np.array_equal(self.features[observed], other.features[observed])
            and np.array_equal(self.labels, other.labels)
            and self.positive_token == other.positive_token
            and self.negative_token == other.negative_token
        )


def _resolve(index: int, width: int, line: int) -> int:
    j = index + width if index < 0 else index
    if not 0 <= j < width:
        raise SchemaError(f"column index {index} out of range for {width} columns (line {line})")
    return j


def parse_csv(text: str, schema: Schema, name: str = "dataset") -> Dataset:
    reader = csv.reader(io.StringIO(text))
    rows: list[list[str]] = []
    line_numbers: list[int] = []
    header: list[str] | None = None
    width = None
    for record in reader:
        lineno = reader.line_num
        if not record or all(not c.strip() for c in record):
            continue
        record = [c.strip() for c in record]
        if schema.header and header is None:
            header = record
            width = len(record)
            continue
        if width is None:
            width = len(record)
        elif len(record) != width:
            raise ParseError(f"expected {width} columns, found {len(record)}", lineno)
        rows.append(record)
        line_numbers.append(lineno)
    if not rows:
        raise EmptyDatasetError(f"{name}: no data rows")

    label_j = _resolve(schema.label_col, width, line_numbers[0])
    dropped = {_resolve(c, width, line_numbers[0]) for c in schema.drop_cols}
    if label_j in dropped:
        raise SchemaError("label column is also listed as dropped")
    feature_cols = [j for j in range(width) if j != label_j and j not in dropped]
    if not feature_cols:
        raise SchemaError("no feature columns remain after dropping")

    negative = schema.negative
    n, m = len(rows), len(feature_cols)
    features = np.full((n, m), np.nan)
    mask = np.zeros((n, m), dtype=bool)
    labels = np.zeros(n, dtype=bool)
    for i, (record, lineno) in enumerate(zip(rows, line_numbers)):
        token = record[label_j]
        if token == schema.positive:
            labels[i] = True
        elif negative is None and token not in MISSING_TOKENS:
            negative = token
        elif token != negative:
            raise SchemaError(f"line {lineno}: unknown label token {token!r}")
        for out_j, j in enumerate(feature_cols):
            cell = record[j]
            if cell in MISSING_TOKENS:
                mask[i, out_j] = True
                continue
            try:
                value = float(cell)
            except ValueError:
                raise ParseError(f"non-numeric value {cell!r} in column {j}", lineno) from None
            if not np.isfinite(value):
                raise ParseError(f"non-finite value {cell!r} in column {j}", lineno)
            features[i, out_j] = value

    names = tuple(header[j] for j in feature_cols) if header else ()
    return Dataset(
        name, features, labels, mask,
        positive_token=schema.positive,
        negative_token=negative if negative is not None else "0",
        feature_names=names,
    )


def load_csv(path, schema: Schema, name: str | None = None) -> Dataset:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DatasetError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_csv(text, schema, name or path.stem)


def builtin_text(key: str) -> str:
    filename, _ = BUILTIN[key]
    return resources.files("lperceptron.data").joinpath(filename).read_text()


def load_builtin(key: str) -> Dataset:
    """Load one of the bundled datasets: ``"wbcd"`` or ``"hsd"``."""
    if key not in BUILTIN:
        raise DatasetError(f"unknown builtin dataset {key!r}; choose from {sorted(BUILTIN)}")
    _, schema = BUILTIN[key]
    return parse_csv(builtin_text(key), schema, key)


def to_csv(ds: Dataset) -> str:
    """Render features plus a trailing label column; masked cells become ``?``."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    for i in range(ds.n):
        cells = ["?" if ds.missing_mask[i, j] else repr(float(ds.features[i, j])) for j in range(ds.m)]
        cells.append(ds.positive_token if ds.labels[i] else ds.negative_token)
        writer.writerow(cells)
    return out.getvalue()


def impute(ds: Dataset, train_rows) -> Dataset:
    """Replace masked cells with the column mean over ``train_rows``.

    Only observed training cells contribute, so values in other rows never
    influence the result.
    """
    train_rows = np.asarray(train_rows, dtype=np.intp)
    if train_rows.size == 0:
        raise DatasetError("impute needs at least one training row")
    if not ds.has_missing:
        return ds
    means = column_means(ds, train_rows)
    filled = np.where(ds.missing_mask, means[np.newaxis, :], ds.features)
    return Dataset(
        ds.name, filled, ds.labels, ds.missing_mask,
        ds.positive_token, ds.negative_token, ds.feature_names,
    )


def column_means(ds: Dataset, train_rows) -> np.ndarray:
    """Observed-cell mean per column over ``train_rows`` (NaN-free or ImputationError)."""
    train_rows = np.asarray(train_rows, dtype=np.intp)
    x = ds.features[train_rows]
    observed = ~ds.missing_mask[train_rows]
    counts = observed.sum(axis=0)
    means = np.zeros(ds.m)
    for j in range(ds.m):
        if counts[j] == 0:
            if ds.missing_mask[:, j].any():
                raise ImputationError(j)
            continue
        means[j] = x[observed[:, j], j].sum() / counts[j]
    return means


@dataclass(frozen=True, eq=False)
class FoldAssignment:
    fold_of: np.ndarray
    k: int

    def __post_init__(self):
        object.__setattr__(self, "fold_of", _frozen(np.asarray(self.fold_of, dtype=np.intp)))

    def split(self, fold: int) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(train_rows, test_rows)`` for one fold."""
        test = np.flatnonzero(self.fold_of == fold)
        train = np.flatnonzero(self.fold_of != fold)
        return train, test

    def sizes(self) -> np.ndarray:
        return np.bincount(self.fold_of, minlength=self.k)

    def __eq__(self, other):
        return (
            isinstance(other, FoldAssignment)
            and self.k == other.k
            and np.array_equal(self.fold_of, other.fold_of)
        )


def stratified_folds(ds_or_labels, k: int, seed: int) -> FoldAssignment:
    """Stratified k-fold assignment.

    Each class is shuffled with ``seed`` and dealt round-robin; the deal for
    the second class continues where the first stopped, which keeps both the
    per-class and the overall fold sizes within one of each other.
    """
    labels = ds_or_labels.labels if isinstance(ds_or_labels, Dataset) else np.asarray(ds_or_labels, dtype=bool)
    n = labels.shape[0]
    if k < 2:
        raise ConfigError(f"fold count must be at least 2, got {k}")
    if k > n:
        raise ConfigError(f"fold count {k} exceeds the number of instances {n}")
    rng = np.random.default_rng(seed)
    fold_of = np.empty(n, dtype=np.intp)
    offset = 0
    # positive class first; order is fixed so the assignment is reproducible
    for cls in (True, False):
        members = np.flatnonzero(labels == cls)
        if 0 < members.size < k:
            warnings.warn(
                f"class {'positive' if cls else 'negative'} has {members.size} members for {k} folds",
                SmallClassWarning,
                stacklevel=2,
            )
        members = rng.permutation(members)
        fold_of[members] = (offset + np.arange(members.size)) % k
        offset = (offset + members.size) % k
    return FoldAssignment(fold_of, k)


def parse_cols(text: str | Sequence[int] | None) -> tuple[int, ...]:
    if text is None or text == "":
        return ()
    if isinstance(text, str):
        try:
            return tuple(int(t) for t in text.split(",") if t.strip())
        except ValueError:
            raise ConfigError(f"column list must be comma-separated integers, got {text!r}") from None
    return tuple(int(t) for t in text)
