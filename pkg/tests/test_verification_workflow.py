"""Workflow regression tests for the verification agent."""

from __future__ import annotations

import asyncio

from hilbert_bn.config import RunConfig
from hilbert_bn.errors import BudgetExceededError, VerificationFailure
from hilbert_bn.suite_policy import SuitePolicyManager
from hilbert_bn.suites import SuiteOutcome
from hilbert_bn.verification_agent import VerificationAgent


class StubRunners:
    """Runner table that records calls and fails the suites it is told to."""

    def __init__(self, failing: dict[str, Exception] | None = None) -> None:
        self.calls: list[tuple[str, int]] = []
        self._failing = failing or {}

    def table(self) -> dict:
        return {name: self._runner(name) for name in SuitePolicyManager.ORDER}

    def _runner(self, name: str):
        def run(config: RunConfig, bound: int) -> SuiteOutcome:
            self.calls.append((name, bound))
            if name in self._failing:
                raise self._failing[name]
            return SuiteOutcome(name, bound, checks=bound)

        return run


def _run(agent: VerificationAgent, suites: list[str], n_max: int | None = None) -> dict:
    return asyncio.run(agent.run(suites, n_max, RunConfig()))


def test_all_suites_pass_in_order() -> None:
    stubs = StubRunners()
    report = _run(VerificationAgent(runners=stubs.table()), ["all"])

    assert report["passed"]
    assert [name for name, _ in stubs.calls] == list(SuitePolicyManager.ORDER)
    assert report["checks"] == sum(SuitePolicyManager.DEFAULT_BOUNDS.values())
    assert all(record["status"] == "passed" for record in report["suites"])


def test_failed_prerequisite_blocks_dependent_suite() -> None:
    stubs = StubRunners({"degloci": VerificationFailure("rank bound", {"shape": [1, 2]})})
    report = _run(VerificationAgent(runners=stubs.table()), ["bn"], n_max=4)

    assert not report["passed"]
    assert [name for name, _ in stubs.calls] == ["hstype", "degloci"]
    statuses = {record["suite"]: record["status"] for record in report["suites"]}
    assert statuses == {"hstype": "passed", "degloci": "failed", "bn": "blocked"}
    assert report["first_failure"]["ref"] == "rank bound"
    assert any("blocked by degloci" in note for note in report["policy_notes"])


def test_independent_suites_still_run_after_failure() -> None:
    stubs = StubRunners({"hstype": BudgetExceededError("too many matrices")})
    report = _run(VerificationAgent(runners=stubs.table()), ["all"])

    ran = [name for name, _ in stubs.calls]
    assert ran == ["hstype", "degloci", "veronese", "recursion"]
    failure = report["first_failure"]
    assert failure == {"error": "BudgetExceededError", "message": "too many matrices"}


def test_single_suite_receives_requested_bound() -> None:
    stubs = StubRunners()
    report = _run(VerificationAgent(runners=stubs.table()), ["recursion"], n_max=30)

    assert stubs.calls == [("recursion", 30)]
    assert report["suites"] == [
        {"suite": "recursion", "bound": 30, "status": "passed", "checks": 30}
    ]


def test_real_recursion_suite_through_the_graph() -> None:
    report = VerificationAgent().run_sync(["recursion"], 10)
    assert report["passed"]
    assert report["suites"][0]["details"]["chains"]["2"][:3] == [[0, 0], [1, 1], [2, 3]]


def test_unexpected_exception_becomes_failed_record() -> None:
    stubs = StubRunners({"veronese": ZeroDivisionError("inverse of zero")})
    report = _run(VerificationAgent(runners=stubs.table()), ["veronese", "recursion"])

    assert not report["passed"]
    statuses = {record["suite"]: record["status"] for record in report["suites"]}
    assert statuses == {"veronese": "failed", "recursion": "passed"}
    assert report["first_failure"] == {"error": "ZeroDivisionError", "message": "inverse of zero"}


def test_workflow_is_compiled_by_langgraph() -> None:
    agent = VerificationAgent(runners=StubRunners().table())
    assert type(agent._graph).__module__.startswith("langgraph")
