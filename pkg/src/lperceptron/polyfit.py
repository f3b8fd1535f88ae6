r"""Univariate polynomial least squares.

A feature column ``xs`` is regressed onto class targets by minimising

.. math::

   S = \sum_i \left(t_i - \sum_j c_j x_i^j\right)^2

The solve goes through a reduced QR factorisation of the Vandermonde matrix.
Rank-deficient systems (fewer distinct ``xs`` than coefficients, constant
columns) fall back to an SVD solve, which returns the minimum-norm solution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NumericInputError

# relative size of the smallest |R_jj| below which QR is treated as rank deficient
RANK_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Coefficients in increasing power order: ``coefficients[j]`` multiplies ``x**j``."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=np.float64, copy=True).reshape(-1)
        if c.size == 0:
            raise ValueError("a polynomial needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise NumericInputError("polynomial coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def degree(self) -> int:
        return self.coefficients.size - 1

    def __call__(self, xs):
        return evaluate_many(self, xs)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and np.array_equal(self.coefficients, other.coefficients)

    def __repr__(self):
        return f"Polynomial({self.coefficients.tolist()})"


def build_targets(labels, p1: float, p2: float) -> np.ndarray:
    """Map positive labels to ``p1`` and everything else to ``p2``."""
    labels = np.asarray(labels, dtype=bool)
    if labels.size == 0:
        raise DimensionError("cannot build targets for an empty label vector")
    return np.where(labels, float(p1), float(p2))


def vandermonde(xs: np.ndarray, degree: int) -> np.ndarray:
    return np.vander(xs, degree + 1, increasing=True)


def _back_substitute(r: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = r.shape[0]
    x = np.zeros(n)
    for i in range(n - 1, -1, -1):
        x[i] = (b[i] - r[i, i + 1:] @ x[i + 1:]) / r[i, i]
    return x


def fit_polynomial(xs, targets, degree: int) -> Polynomial:
    xs = np.asarray(xs, dtype=np.float64).reshape(-1)
    targets = np.asarray(targets, dtype=np.float64).reshape(-1)
    if xs.shape != targets.shape:
        raise DimensionError(f"xs has {xs.size} values but targets has {targets.size}")
    if xs.size == 0:
        raise DimensionError("cannot fit a polynomial to zero points")
    if degree < 0:
        raise ValueError(f"degree must be non-negative, got {degree}")
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(targets))):
        raise NumericInputError("fit_polynomial received a non-finite value")

    v = vandermonde(xs, degree)
    if xs.size >= degree + 1:
        q, r = np.linalg.qr(v)
        diag = np.abs(np.diag(r))
        if diag.min() > RANK_RTOL * diag.max():
            return Polynomial(_back_substitute(r, q.T @ targets))
    coef, *_ = np.linalg.lstsq(v, targets, rcond=None)
    return Polynomial(coef)


def evaluate(poly: Polynomial, x: float) -> float:
    """Horner evaluation at a single point."""
    acc = 0.0
    for c in poly.coefficients[::-1]:
        acc = acc * x + c
    return float(acc)


def evaluate_many(poly: Polynomial, xs) -> np.ndarray:
    xs = np.asarray(xs, dtype=np.float64)
    acc = np.zeros_like(xs)
    for c in poly.coefficients[::-1]:
        acc = acc * xs + c
    return acc


def sse(poly: Polynomial, xs, targets) -> float:
    xs = np.asarray(xs, dtype=np.float64)
    targets = np.asarray(targets, dtype=np.float64)
    if xs.shape != targets.shape:
        raise DimensionError(f"xs has shape {xs.shape} but targets has {targets.shape}")
    r = targets - evaluate_many(poly, xs)
    return float(r @ r)
