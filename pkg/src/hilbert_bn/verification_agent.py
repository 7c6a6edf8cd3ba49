"""Verification agent orchestrated by a LangGraph policy."""

from __future__ import annotations

import asyncio
import logging
from collections.abc import Iterable, Mapping
from typing import Any, TypedDict

from dotenv import load_dotenv
from langgraph.graph import END, StateGraph
from typing_extensions import NotRequired

from .config import RunConfig
from .errors import HilbertBNError, VerificationFailure
from .suite_policy import SuitePlan, SuitePolicyManager
from .suites import SUITES, SuiteRunner

load_dotenv()

logger = logging.getLogger(__name__)
if not logger.hasHandlers():
    logging.basicConfig(level=logging.INFO)

PASSED = "passed"
FAILED = "failed"
BLOCKED = "blocked"


class VerificationState(TypedDict, total=False):
    """State container passed between LangGraph nodes."""

    requested: list[str]
    n_max: int | None
    run_config: RunConfig
    pending: list[str]
    bounds: dict[str, int]
    results: list[dict[str, Any]]
    policy_notes: list[str]
    current_suite: NotRequired[str | None]
    blocked_by: NotRequired[list[str]]
    policy_route: NotRequired[str]
    report: NotRequired[dict[str, Any]]


class VerificationAgent:
    """Runs the requested invariant suites in order, skipping those whose prerequisites failed."""

    def __init__(
        self,
        *,
        policy_manager: SuitePolicyManager | None = None,
        runners: Mapping[str, SuiteRunner] | None = None,
    ) -> None:
        self._policy_manager = policy_manager or SuitePolicyManager()
        self._runners = dict(runners if runners is not None else SUITES)
        self._graph = self._build_graph()
        logger.debug("VerificationAgent initialized with LangGraph policy orchestrator")

    async def run(
        self,
        requested: Iterable[str],
        n_max: int | None = None,
        config: RunConfig | None = None,
    ) -> dict[str, Any]:
        """Run the plan for ``requested`` and return the composed report."""

        initial_state: VerificationState = {
            "requested": list(requested),
            "n_max": n_max,
            "run_config": config or RunConfig(),
        }
        # every suite visits evaluate_policy and one runner node
        limit = 2 * len(self._policy_manager.ORDER) + 10
        final_state = await self._graph.ainvoke(initial_state, config={"recursion_limit": limit})
        return final_state["report"]

    def run_sync(
        self,
        requested: Iterable[str],
        n_max: int | None = None,
        config: RunConfig | None = None,
    ) -> dict[str, Any]:
        return asyncio.run(self.run(requested, n_max, config))

    def _build_graph(self):
        graph = StateGraph(VerificationState)

        graph.add_node("select_suites", self._select_suites)
        graph.add_node("evaluate_policy", self._evaluate_policy)
        graph.add_node("run_suite", self._run_suite)
        graph.add_node("block_suite", self._block_suite)
        graph.add_node("compose_report", self._compose_report)

        graph.set_entry_point("select_suites")
        graph.add_edge("select_suites", "evaluate_policy")
        graph.add_conditional_edges(
            "evaluate_policy",
            self._route_policy,
            {
                "run_suite": "run_suite",
                "block_suite": "block_suite",
                "respond": "compose_report",
            },
        )
        graph.add_edge("run_suite", "evaluate_policy")
        graph.add_edge("block_suite", "evaluate_policy")
        graph.add_edge("compose_report", END)

        return graph.compile()

    def _select_suites(self, state: VerificationState) -> VerificationState:
        plan: SuitePlan = self._policy_manager.classify_request(
            state["requested"], state.get("n_max")
        )
        missing = [name for name in plan.suites if name not in self._runners]
        if missing:
            logger.warning("No runner registered for %s", ", ".join(missing))
        policy_notes = [plan.note] if plan.note else []
        logger.info("Verification plan: %s", ", ".join(plan.suites))
        return {
            **state,
            "pending": list(plan.suites),
            "bounds": dict(plan.bounds),
            "results": [],
            "policy_notes": policy_notes,
        }

    def _evaluate_policy(self, state: VerificationState) -> VerificationState:
        pending = state.get("pending", [])
        if not pending:
            return {**state, "current_suite": None, "policy_route": "respond"}

        suite = pending[0]
        unsuccessful = [r["suite"] for r in state.get("results", []) if r["status"] != PASSED]
        blockers = self._policy_manager.blocking_prerequisites(suite, unsuccessful)
        if suite not in self._runners:
            blockers = blockers or ["no runner"]
        if blockers:
            policy_notes = list(state.get("policy_notes", []))
            policy_notes.append(f"Policy: {suite} skipped, blocked by {', '.join(blockers)}.")
            return {
                **state,
                "current_suite": suite,
                "blocked_by": blockers,
                "policy_notes": policy_notes,
                "policy_route": "block_suite",
            }
        return {**state, "current_suite": suite, "blocked_by": [], "policy_route": "run_suite"}

    def _route_policy(self, state: VerificationState) -> str:
        return state.get("policy_route", "respond")

    def _run_suite(self, state: VerificationState) -> VerificationState:
        suite = state["current_suite"]
        bound = state["bounds"][suite]
        runner = self._runners[suite]
        record: dict[str, Any] = {"suite": suite, "bound": bound}
        try:
            outcome = runner(state["run_config"], bound)
        except VerificationFailure as exc:
            logger.error("Suite %s failed: %s", suite, exc)
            record.update(status=FAILED, failure=exc.to_json())
        except HilbertBNError as exc:
            logger.error("Suite %s aborted: %s", suite, exc)
            record.update(
                status=FAILED,
                failure={"error": type(exc).__name__, "message": str(exc)},
            )
        except Exception as exc:
            logger.exception("Suite %s crashed", suite)
            record.update(
                status=FAILED,
                failure={"error": type(exc).__name__, "message": str(exc)},
            )
        else:
            record.update(status=PASSED, checks=outcome.checks)
            if outcome.details:
                record["details"] = outcome.details
        logger.info("Suite %s %s", suite, record["status"])
        return {
            **state,
            "pending": state["pending"][1:],
            "results": [*state.get("results", []), record],
        }

    def _block_suite(self, state: VerificationState) -> VerificationState:
        suite = state["current_suite"]
        record = {
            "suite": suite,
            "bound": state["bounds"][suite],
            "status": BLOCKED,
            "blocked_by": list(state.get("blocked_by", [])),
        }
        return {
            **state,
            "pending": state["pending"][1:],
            "results": [*state.get("results", []), record],
        }

    def _compose_report(self, state: VerificationState) -> VerificationState:
        results = state.get("results", [])
        failures = [r for r in results if r["status"] == FAILED]
        report: dict[str, Any] = {
            "passed": not failures and all(r["status"] == PASSED for r in results),
            "suites": results,
            "checks": sum(r.get("checks", 0) for r in results),
            "policy_notes": list(state.get("policy_notes", [])),
        }
        if failures:
            report["first_failure"] = failures[0]["failure"]
        return {**state, "report": report}


def verify(
    requested: Iterable[str],
    n_max: int | None = None,
    config: RunConfig | None = None,
) -> dict[str, Any]:
    return VerificationAgent().run_sync(requested, n_max, config)
