# Centralized numerical error types and failure handling.
# Provides consistent messages and logging for failures raised by the
# smoothing, fitting and metric code so the harness can record them
# per method instead of aborting a whole run.

import logging
from typing import Dict, Optional, Type

logger = logging.getLogger(__name__)


class SmoothingError(ValueError):
    # Base class of every numerical failure in the package.
    reason = "numerical failure"

    def __init__(self, detail: Optional[str] = None):
        self.detail = detail
        message = self.reason if not detail else f"{self.reason}: {detail}"
        super().__init__(message)


class InvalidKError(SmoothingError):
    reason = "invalid K"


class InsufficientPointsError(SmoothingError):
    reason = "insufficient points"


class InvalidRadiusError(SmoothingError):
    reason = "invalid radius"


class DegenerateNeighborhoodError(SmoothingError):
    reason = "degenerate neighborhood"


class ConstantTermRequiredError(SmoothingError):
    reason = "constant term required"


class NotInteriorError(SmoothingError):
    reason = "not interior"


class DuplicateAbscissaError(SmoothingError):
    reason = "duplicate abscissa"


class RankDeficientError(SmoothingError):
    reason = "rank deficient"

    def __init__(self, rank: int, detail: Optional[str] = None):
        self.rank = rank
        text = f"effective rank {rank}"
        super().__init__(f"{text}, {detail}" if detail else text)


class QueryError(SmoothingError):
    # A per-query failure with the query index attached.
    reason = "query failed"

    def __init__(self, query_index: int, cause: SmoothingError):
        self.query_index = query_index
        self.cause = cause
        super().__init__(f"query {query_index}: {cause}")


class OutputError(OSError):
    # File read/write failure carrying the offending path.
    def __init__(self, path, cause: Exception):
        self.path = str(path)
        self.cause = cause
        super().__init__(f"{self.path}: {cause}")


class FailureHandler:
    # Maps failures to user-facing messages and log levels.

    COMMON_MESSAGES = {
        RankDeficientError: (
            "The local normal equations were singular even after "
            "reducing the polynomial degree."
        ),
        DegenerateNeighborhoodError: (
            "A neighborhood collapsed onto the query point, so no "
            "distance weights could be formed."
        ),
        InsufficientPointsError: (
            "The dataset holds fewer points than the method needs."
        ),
        InvalidKError: "The neighbor count must be at least 1.",
    }

    def __init__(
        self,
        component: str,
        custom_messages: Optional[Dict[Type[Exception], str]] = None
    ):
        self.component = component
        self.messages = {**self.COMMON_MESSAGES}
        if custom_messages:
            self.messages.update(custom_messages)

    def describe(self, exc: Exception) -> str:
        # Pick the most specific message: the exception type first, then
        # the cause wrapped by a QueryError.
        candidates = [exc]
        if isinstance(exc, QueryError):
            candidates.append(exc.cause)
        for candidate in candidates:
            for exc_type in type(candidate).__mro__:
                if exc_type in self.messages:
                    return f"{self.messages[exc_type]} ({exc})"
        if isinstance(exc, SmoothingError):
            return f"Numerical failure in {self.component}: {exc}"
        return f"Unexpected failure in {self.component}: {exc}"

    def handle(self, label: str, exc: Exception) -> str:
        # Log the failure and hand its message back for the report.
        message = self.describe(exc)
        level = (
            logging.ERROR if not isinstance(exc, SmoothingError)
            or isinstance(exc, (RankDeficientError, QueryError))
            else logging.WARNING
        )
        logger.log(level, f"{self.component} [{label}]: {message}")
        return message


METHOD_FAILURE_HANDLER = FailureHandler(
    component="method run",
    custom_messages={
        QueryError: (
            "A query point could not be smoothed. Consider a larger "
            "neighbor count or enabling degree fallback."
        ),
    }
)

METRIC_FAILURE_HANDLER = FailureHandler(
    component="error metrics",
    custom_messages={
        DuplicateAbscissaError: (
            "The smoothed curve repeats an abscissa, so its curvature "
            "error is undefined."
        ),
        NotInteriorError: (
            "The smoothed curve is too short to measure curvature."
        ),
    }
)
