"""Experiment configuration and the bundled presets.

Config files are flat ``key = value`` text, one key per line; ``#`` starts a
comment. :meth:`ExperimentConfig.dumps` writes every key in a fixed order so
that ``loads(dumps(cfg)) == cfg``.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .dataset import BUILTIN, Dataset, Schema, load_builtin, load_csv, parse_cols
from .errors import ConfigError
from .evaluation import GaussianNBMethod, KNNMethod, LPerceptronMethod
from .model import ERROR_METRICS, Hyperparameters

METHODS = ("lperceptron", "gnb", "knn")
FORMATS = ("json", "csv")
BUILTIN_PREFIX = "builtin:"


@dataclass(frozen=True)
class ExperimentConfig:
    data: str | None = None
    label_col: int = -1
    positive: str = "1"
    negative: str | None = None
    drop_cols: tuple[int, ...] = ()
    header: bool = False
    method: str = "lperceptron"
    p1: float = 1.0
    p2: float = -1.0
    dlb: int = 1
    dub: int = 1
    ite: int = 0
    threshold: float = 0.0
    p1_class: str = "positive"
    error_metric: str = "misclassification"
    knn_k: int = 5
    k: int = 10
    seed: int = 42
    out: str | None = None
    format: str = "json"

    def validate(self) -> "ExperimentConfig":
        if self.data is None:
            raise ConfigError("no dataset given (use --data or --preset)")
        if self.method not in METHODS:
            raise ConfigError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.p1_class not in ("positive", "negative"):
            raise ConfigError("p1_class must be 'positive' or 'negative'")
        if self.error_metric not in ERROR_METRICS:
            raise ConfigError(f"error_metric must be one of {ERROR_METRICS}")
        if self.k < 2:
            raise ConfigError(f"k must be >= 2, got {self.k}")
        if self.method == "lperceptron":
            self.hyperparameters()
        if self.method == "knn" and (self.knn_k < 1 or self.knn_k % 2 == 0):
            raise ConfigError(f"knn_k must be a positive odd integer, got {self.knn_k}")
        return self

    def schema(self) -> Schema:
        return Schema(
            label_col=self.label_col,
            positive=self.positive,
            negative=self.negative,
            drop_cols=self.drop_cols,
            header=self.header,
        )

    def hyperparameters(self) -> Hyperparameters:
        return Hyperparameters(
            p1=self.p1, p2=self.p2, dlb=self.dlb, dub=self.dub, ite=self.ite,
            threshold=self.threshold,
            p1_positive=self.p1_class == "positive",
            error_metric=self.error_metric,
        )

    def make_method(self):
        if self.method == "lperceptron":
            return LPerceptronMethod(self.hyperparameters())
        if self.method == "gnb":
            return GaussianNBMethod()
        return KNNMethod(self.knn_k)

    def load_dataset(self) -> Dataset:
        if self.data is None:
            raise ConfigError("no dataset given")
        if self.data.startswith(BUILTIN_PREFIX):
            key = self.data[len(BUILTIN_PREFIX):]
            if key not in BUILTIN:
                raise ConfigError(f"unknown builtin dataset {key!r}")
            return load_builtin(key)
        return load_csv(self.data, self.schema())

    def dumps(self) -> str:
        lines = []
        for f in fields(self):
            lines.append(f"{f.name} = {_render(getattr(self, f.name))}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "ExperimentConfig":
        types = {f.name: f.type for f in fields(cls)}
        values = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"config line {lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in types:
                raise ConfigError(f"config line {lineno}: unknown key {key!r}")
            values[key] = _coerce(key, value, types[key])
        return cls(**values)

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from None
        return cls.loads(text)

    def update(self, **changes) -> "ExperimentConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


def _render(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return ",".join(str(v) for v in value)
    return str(value)


def _coerce(key: str, value: str, annotation: str):
    try:
        if "tuple" in annotation:
            return parse_cols(value)
        if value == "" and "None" in annotation:
            return None
        if annotation == "bool":
            if value.lower() not in ("true", "false"):
                raise ValueError(value)
            return value.lower() == "true"
        if annotation == "int":
            return int(value)
        if annotation == "float":
            return float(value)
        return value
    except ValueError:
        raise ConfigError(f"invalid value {value!r} for {key}") from None


_WBCD = ExperimentConfig(
    data="builtin:wbcd", label_col=-1, positive="4", negative="2", drop_cols=(0,),
)
_HSD = ExperimentConfig(data="builtin:hsd", label_col=-1, positive="1", negative="2")

# L-Perceptron settings: WBCD p1,p2 = -2,3  dlb,dub = 4,4  ite = 2  threshold = 0.5
#                        HSD  p1,p2 = -1.3,2.9  dlb,dub = 1,1  ite = 0  threshold = 0.42
# On WBCD p1 goes to the class coded first in the file (benign, "2").
PRESETS: dict[str, ExperimentConfig] = {
    "wbcd-lp": replace(_WBCD, p1=-2.0, p2=3.0, dlb=4, dub=4, ite=2, threshold=0.5, p1_class="negative"),
    "hsd-lp": replace(_HSD, p1=-1.3, p2=2.9, dlb=1, dub=1, ite=0, threshold=0.42, p1_class="positive"),
    "wbcd-nb": replace(_WBCD, method="gnb"),
    "wbcd-knn": replace(_WBCD, method="knn", knn_k=5),
    "hsd-nb": replace(_HSD, method="gnb"),
    "hsd-knn": replace(_HSD, method="knn", knn_k=5),
}


def preset(name: str) -> ExperimentConfig:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


def field_names() -> list[str]:
    return [f.name for f in dataclasses.fields(ExperimentConfig)]
