"""L-Perceptron: per-feature least-squares polynomials summed and thresholded."""

__version__ = "0.1.0"

from .dataset import Dataset, FoldAssignment, Schema, impute, load_builtin, load_csv, stratified_folds
from .evaluation import ConfusionMatrix, EvaluationReport, confusion, cross_validate, metrics
from .model import Hyperparameters, LPerceptronModel, predict, predict_batch, score, train
from .polyfit import Polynomial, build_targets, evaluate, fit_polynomial, sse

__all__ = [
    "ConfusionMatrix", "Dataset", "EvaluationReport", "FoldAssignment", "Hyperparameters",
    "LPerceptronModel", "Polynomial", "Schema", "build_targets", "confusion", "cross_validate",
    "evaluate", "fit_polynomial", "impute", "load_builtin", "load_csv", "metrics", "predict",
    "predict_batch", "score", "sse", "stratified_folds", "train",
]
