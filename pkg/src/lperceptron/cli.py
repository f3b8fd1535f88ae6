"""Command-line interface: ``lperceptron {cv,train,predict,compare}``.

Exit codes: 0 success, 2 configuration error, 3 dataset/file error,
4 numeric or training failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .config import FORMATS, METHODS, PRESETS, ExperimentConfig, preset
from .dataset import BUILTIN, Schema, builtin_text, column_means, impute, load_csv, parse_cols, parse_csv
from .errors import ConfigError, DatasetError, DimensionError, LPerceptronError
from .evaluation import HEADLINE, cross_validate, rows_to_csv
from .model import LPerceptronModel, train
from .reference import PUBLISHED

SEED_ENV = "LPERC_SEED"
LABELS = {"accuracy": "Accuracy", "sensitivity": "Sensitivity", "specificity": "Specificity", "f1": "F1 Score"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def _add_experiment_args(p: argparse.ArgumentParser) -> None:
    src = p.add_argument_group("configuration source")
    src.add_argument("--preset", choices=sorted(PRESETS))
    src.add_argument("--config", help="key = value config file")
    src.add_argument("--save-config", metavar="PATH", help="write the resolved config and continue")

    data = p.add_argument_group("dataset")
    data.add_argument("--data", help="CSV path, or builtin:wbcd / builtin:hsd")
    data.add_argument("--label-col", type=int)
    data.add_argument("--positive", help="label token of the positive class")
    data.add_argument("--negative", help="label token of the negative class")
    data.add_argument("--drop-cols", help="comma-separated column indices to drop (e.g. ID columns)")
    data.add_argument("--header", action="store_true", default=None, help="first row is a header")

    hp = p.add_argument_group("method")
    hp.add_argument("--method", choices=METHODS)
    hp.add_argument("--p1", type=float)
    hp.add_argument("--p2", type=float)
    hp.add_argument("--dlb", type=int)
    hp.add_argument("--dub", type=int)
    hp.add_argument("--ite", type=int)
    hp.add_argument("--threshold", type=float)
    hp.add_argument("--p1-class", choices=("positive", "negative"), help="class that receives p1")
    hp.add_argument("--error-metric", choices=("misclassification", "sse"))
    hp.add_argument("--knn-k", type=int)


def _resolve_config(args) -> ExperimentConfig:
    if args.preset and args.config:
        raise ConfigError("--preset and --config are mutually exclusive")
    if args.preset:
        cfg = preset(args.preset)
    elif args.config:
        cfg = ExperimentConfig.load(args.config)
    else:
        cfg = ExperimentConfig()

    seed = getattr(args, "seed", None)
    if seed is None and os.environ.get(SEED_ENV):
        try:
            seed = int(os.environ[SEED_ENV])
        except ValueError:
            raise ConfigError(f"{SEED_ENV} must be an integer") from None

    cfg = cfg.update(
        data=args.data,
        label_col=args.label_col,
        positive=args.positive,
        negative=args.negative,
        drop_cols=parse_cols(args.drop_cols) if args.drop_cols is not None else None,
        header=args.header,
        method=args.method,
        p1=args.p1, p2=args.p2, dlb=args.dlb, dub=args.dub, ite=args.ite,
        threshold=args.threshold,
        p1_class=args.p1_class,
        error_metric=args.error_metric,
        knn_k=args.knn_k,
        k=getattr(args, "k", None),
        seed=seed,
        out=getattr(args, "out", None),
        format=getattr(args, "format", None),
    )
    cfg.validate()
    if args.save_config:
        Path(args.save_config).write_text(cfg.dumps())
    return cfg


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise DatasetError(f"cannot write {path}: {exc.strerror or exc}") from None


def cmd_cv(args) -> int:
    cfg = _resolve_config(args)
    ds = cfg.load_dataset()
    report = cross_validate(ds, cfg.k, cfg.seed, cfg.make_method(), workers=args.workers)
    if cfg.out:
        text = report.to_json(verbose=args.verbose) if cfg.format == "json" else report.to_csv()
        _write(text, cfg.out)
    pct = report.metrics.percent()
    print(f"{report.method} on {report.dataset}: {cfg.k}-fold CV, seed {cfg.seed}")
    for name in HEADLINE:
        print(f"{LABELS[name]} (%): {pct[name]}")
    if args.verbose:
        for name, value in report.fold_mean_metrics().items():
            print(f"fold-mean {LABELS[name]} (%): {100 * value:.2f}")
        for fold in report.folds:
            print(f"fold {fold.fold}: {json.dumps(fold.confusion.to_dict())} {json.dumps(fold.model)}")
    return 0


def cmd_train(args) -> int:
    cfg = _resolve_config(args)
    if cfg.method != "lperceptron":
        raise ConfigError("train writes L-Perceptron models only; use --method lperceptron")
    ds = cfg.load_dataset()
    rows = np.arange(ds.n)
    fill = column_means(ds, rows)
    filled = impute(ds, rows)
    model = train(filled.features, filled.labels, cfg.hyperparameters())
    model = LPerceptronModel(model.per_feature, model.degrees, model.hyper, model.positive_above,
                             fill_values=tuple(float(v) for v in fill), trace=model.trace)
    _write(model.to_json(), cfg.out)
    errors = int(np.count_nonzero(model.predict_batch(filled.features) != filled.labels))
    print(f"trained on {ds.n} rows: degrees {list(model.degrees)}, "
          f"positive_above={model.positive_above}, training errors {errors}", file=sys.stderr)
    return 0


def cmd_predict(args) -> int:
    try:
        model = LPerceptronModel.from_json(Path(args.model).read_text())
    except OSError as exc:
        raise DatasetError(f"cannot read model {args.model}: {exc.strerror or exc}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise DatasetError(f"malformed model file {args.model}: {exc}") from None

    if args.preset:
        cfg = preset(args.preset)
        schema = cfg.schema()
        data = args.data or cfg.data
    else:
        schema = Schema()
        data = args.data
    if data is None:
        raise ConfigError("predict needs --data")
    schema = Schema(
        label_col=args.label_col if args.label_col is not None else schema.label_col,
        positive=args.positive or schema.positive,
        negative=args.negative or schema.negative,
        drop_cols=parse_cols(args.drop_cols) if args.drop_cols is not None else schema.drop_cols,
        header=args.header if args.header is not None else schema.header,
    )
    if data.startswith("builtin:"):
        key = data.split(":", 1)[1]
        if key not in BUILTIN:
            raise ConfigError(f"unknown builtin dataset {key!r}")
        ds = parse_csv(builtin_text(key), schema, key)
    else:
        ds = load_csv(data, schema)
    if ds.m != model.m:
        raise DimensionError(f"model expects {model.m} features but {data} has {ds.m}")
    features = ds.features
    if ds.has_missing:
        if model.fill_values is None:
            raise DatasetError("data has missing cells and the model carries no fill values")
        features = np.where(ds.missing_mask, np.asarray(model.fill_values)[np.newaxis, :], features)
    predicted = model.predict_batch(features)

    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["row", "predicted", "actual"])
    for i, p in enumerate(predicted):
        token = ds.positive_token if p else ds.negative_token
        actual = ds.positive_token if ds.labels[i] else ds.negative_token
        writer.writerow([i, token, actual])
    _write(out.getvalue(), args.out)
    return 0


def compare_rows(dataset: str, k: int, seed: int) -> list[list[str]]:
    rows = []
    for suffix in ("lp", "nb", "knn"):
        cfg = preset(f"{dataset}-{suffix}")
        report = cross_validate(cfg.load_dataset(), k, seed, cfg.make_method())
        rows.append(report.csv_row("measured"))
    for method, *values in PUBLISHED[dataset]:
        rows.append([method, dataset, *values, "published"])
    return rows


def cmd_compare(args) -> int:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get(SEED_ENV, 42))
    _write(rows_to_csv(compare_rows(args.dataset, args.k, seed)), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lperceptron", description="L-Perceptron classifier and evaluation harness")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-q", "--quiet", action="store_true", help="suppress warnings")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    cv = sub.add_parser("cv", help="k-fold cross-validation report")
    _add_experiment_args(cv)
    cv.add_argument("--k", type=int, help="fold count (default 10)")
    cv.add_argument("--seed", type=int, help=f"fold seed (default 42, or ${SEED_ENV})")
    cv.add_argument("--out", help="report path")
    cv.add_argument("--format", choices=FORMATS)
    cv.add_argument("--workers", type=int, default=1)
    cv.add_argument("-v", "--verbose", action="store_true")
    cv.set_defaults(usage=cv.format_usage, func=cmd_cv)

    tr = sub.add_parser("train", help="train on a whole dataset and write the model JSON")
    _add_experiment_args(tr)
    tr.add_argument("--out", help="model path (default stdout)")
    tr.set_defaults(usage=tr.format_usage, func=cmd_train)

    pr = sub.add_parser("predict", help="label a CSV file with a trained model")
    pr.add_argument("--model", required=True)
    pr.add_argument("--data")
    pr.add_argument("--preset", choices=sorted(PRESETS), help="take the CSV schema from a preset")
    pr.add_argument("--label-col", type=int)
    pr.add_argument("--positive")
    pr.add_argument("--negative")
    pr.add_argument("--drop-cols")
    pr.add_argument("--header", action="store_true", default=None)
    pr.add_argument("--out", help="label CSV path (default stdout)")
    pr.set_defaults(usage=pr.format_usage, func=cmd_predict)

    cmp_ = sub.add_parser("compare", help="measured and published metrics for one dataset as CSV")
    cmp_.add_argument("dataset", choices=("wbcd", "hsd"))
    cmp_.add_argument("--k", type=int, default=10)
    cmp_.add_argument("--seed", type=int)
    cmp_.add_argument("--out")
    cmp_.set_defaults(usage=cmp_.format_usage, func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = None
    try:
        args = parser.parse_args(argv)
        with warnings.catch_warnings():
            if args.quiet:
                warnings.simplefilter("ignore")
            return args.func(args)
    except LPerceptronError as exc:
        if isinstance(exc, ConfigError) and args is not None:
            sys.stderr.write(args.usage())
        print(f"lperceptron: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except np.linalg.LinAlgError as exc:
        print(f"lperceptron: numeric failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
