"""Exception and warning types shared across the package.

Each error class carries the CLI exit code it maps to.
"""


class LPerceptronError(Exception):
    exit_code = 1


class ConfigError(LPerceptronError, ValueError):
    """Invalid hyperparameters, fold counts or experiment configuration."""

    exit_code = 2


class DatasetError(LPerceptronError, ValueError):
    exit_code = 3


class ParseError(DatasetError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SchemaError(DatasetError):
    pass


class EmptyDatasetError(DatasetError):
    pass


class ImputationError(DatasetError):
    def __init__(self, column: int):
        self.column = column
        super().__init__(f"column {column} has no observed value in the training rows")


class DimensionError(DatasetError):
    pass


class NumericInputError(LPerceptronError, ValueError):
    exit_code = 4


class TrainingError(LPerceptronError, ValueError):
    exit_code = 4


class SingleClassWarning(UserWarning):
    """Training data contains only one class; the fitted model is degenerate."""


class DegenerateMetricWarning(UserWarning):
    """A metric had a zero denominator and was reported as 0."""


class SmallClassWarning(UserWarning):
    """A class has fewer members than the requested number of folds."""
