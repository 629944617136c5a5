import unittest
import sys
import os

# Add parent directory to path for module imports
parent_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.append(parent_dir)

from src.utils.errors import (
    METHOD_FAILURE_HANDLER,
    METRIC_FAILURE_HANDLER,
    FailureHandler,
    InvalidRadiusError,
    NotInteriorError,
    OutputError,
    QueryError,
    RankDeficientError,
)


class TestFailureHandler(unittest.TestCase):
    # Messages picked for failures recorded by the harness

    def test_query_failure_uses_its_own_message(self):
        exc = QueryError(3, InvalidRadiusError("x"))
        message = METHOD_FAILURE_HANDLER.describe(exc)
        self.assertTrue(message.startswith("A query point could not be smoothed."))
        self.assertIn("query 3", message)

    def test_wrapped_cause_is_used_without_a_query_message(self):
        exc = QueryError(5, RankDeficientError(1))
        message = METRIC_FAILURE_HANDLER.describe(exc)
        self.assertTrue(message.startswith("The local normal equations were singular"))

    def test_fallback_messages(self):
        handler = FailureHandler("fitting")
        self.assertEqual(
            handler.describe(InvalidRadiusError("r = -1")),
            "Numerical failure in fitting: invalid radius: r = -1",
        )
        self.assertTrue(handler.describe(KeyError("k")).startswith("Unexpected failure in fitting"))

    def test_custom_messages_override_common_ones(self):
        message = METRIC_FAILURE_HANDLER.describe(NotInteriorError("index 0"))
        self.assertTrue(message.startswith("The smoothed curve is too short"))

    def test_handle_returns_message(self):
        exc = QueryError(0, RankDeficientError(2))
        with self.assertLogs("src.utils.errors", level="ERROR"):
            message = METHOD_FAILURE_HANDLER.handle("lowess:d=1,k=5", exc)
        self.assertEqual(message, METHOD_FAILURE_HANDLER.describe(exc))

    def test_rank_and_path_are_kept(self):
        self.assertEqual(RankDeficientError(2).rank, 2)
        error = OutputError("/tmp/out.csv", PermissionError("denied"))
        self.assertEqual(error.path, "/tmp/out.csv")
        self.assertIn("denied", str(error))


if __name__ == '__main__':
    unittest.main()
