"""Exception types shared across the package.

The CLI maps these onto exit codes: validation and input problems exit
with 1, numerical non-convergence with 2.
"""


class HubDetectError(Exception):
    """Base class for all package errors."""


class ParseError(HubDetectError, ValueError):
    """A file could not be parsed in its declared format."""


class GraphValidationError(HubDetectError, ValueError):
    """A graph violates a structural invariant (self-loop, dangling edge, ...)."""


class DegenerateGraphError(HubDetectError, ValueError):
    """A graph is too small or too empty for the requested operation."""


class InsufficientDataError(HubDetectError, ValueError):
    """Not enough data points for a statistical procedure."""


class LabelingError(HubDetectError, ValueError):
    """Ground-truth labels are missing, duplicated, or out of alphabet."""


class ConfigError(HubDetectError, ValueError):
    """Run configuration is inconsistent or incomplete."""


class ConvergenceError(HubDetectError, RuntimeError):
    """An iterative numerical method did not converge within its budget."""
