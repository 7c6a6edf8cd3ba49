"""Unit tests for the deterministic suite policy manager."""

from __future__ import annotations

import unittest

from hilbert_bn.errors import ConfigurationError
from hilbert_bn.suite_policy import SuitePolicyManager


class SuitePolicyManagerTest(unittest.TestCase):
    """Ensure suite selection behaves predictably."""

    def setUp(self) -> None:
        self.manager = SuitePolicyManager()

    def test_all_runs_every_suite_in_canonical_order(self) -> None:
        plan = self.manager.classify_request(["all"])
        self.assertEqual(plan.suites, list(SuitePolicyManager.ORDER))
        self.assertEqual(plan.bounds, dict(SuitePolicyManager.DEFAULT_BOUNDS))
        self.assertIsNone(plan.note)

    def test_bn_pulls_in_prerequisites(self) -> None:
        plan = self.manager.classify_request(["bn"], n_max=6)
        self.assertEqual(plan.suites, ["hstype", "degloci", "bn"])
        self.assertEqual(plan.bounds["bn"], 6)
        self.assertEqual(
            plan.bounds["degloci"],
            SuitePolicyManager.DEFAULT_BOUNDS["degloci"],
            "Prerequisites should keep their default bounds",
        )
        self.assertIn("hstype, degloci", plan.note or "")

    def test_single_suite_bound_replaces_default(self) -> None:
        plan = self.manager.classify_request(["recursion"], n_max=40)
        self.assertEqual(plan.suites, ["recursion"])
        self.assertEqual(plan.bounds, {"recursion": 40})

    def test_all_caps_bounds_at_defaults(self) -> None:
        plan = self.manager.classify_request(["all"], n_max=10)
        self.assertEqual(plan.bounds["recursion"], 10)
        self.assertEqual(plan.bounds["degloci"], 5)

    def test_unknown_suite_rejected(self) -> None:
        with self.assertRaises(ConfigurationError):
            self.manager.classify_request(["smoothness"])
        with self.assertRaises(ConfigurationError):
            self.manager.classify_request(["bn"], n_max=0)

    def test_failed_prerequisites_block_dependents(self) -> None:
        self.assertEqual(self.manager.blocking_prerequisites("bn", ["degloci"]), ["degloci"])
        self.assertEqual(self.manager.blocking_prerequisites("iarrobino", ["degloci"]), [])
        self.assertEqual(self.manager.blocking_prerequisites("recursion", ["hstype"]), [])


if __name__ == "__main__":
    unittest.main()
