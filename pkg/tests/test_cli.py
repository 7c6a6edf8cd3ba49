"""Command line regression tests."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

import hilbert_bn.__main__ as entrypoint
from hilbert_bn.errors import VerificationFailure
from hilbert_bn.suite_policy import SuitePolicyManager
from hilbert_bn.suites import SuiteOutcome
from hilbert_bn.verification_agent import VerificationAgent


@pytest.fixture()
def runner() -> CliRunner:
    return CliRunner()


def _json(result) -> object:
    return json.loads(result.stdout)


def test_types_of_one_point(runner: CliRunner) -> None:
    result = runner.invoke(entrypoint.cli, ["types", "--n", "1"])
    assert result.exit_code == 0
    assert _json(result) == [{"type": [1], "dim": 0, "e": [1], "k": [1], "d": 1}]


def test_types_as_csv(runner: CliRunner) -> None:
    result = runner.invoke(entrypoint.cli, ["--output", "csv", "types", "--n", "3"])
    assert result.exit_code == 0
    lines = result.stdout.strip().splitlines()
    assert lines[0] == "type,dim,e,k,d"
    assert len(lines) == 3


def test_global_locus_of_three_points(runner: CliRunner) -> None:
    result = runner.invoke(entrypoint.cli, ["bn-global", "--n", "3", "--r", "2"])
    assert result.exit_code == 0
    payload = _json(result)
    assert payload["nonempty"] is True
    assert payload["dim"] == 2
    assert payload["query"] == {"level": "global", "r": 2, "n": 3}


def test_global_table_stops_after_first_empty_locus(runner: CliRunner) -> None:
    result = runner.invoke(entrypoint.cli, ["bn-global", "--n", "3"])
    payload = _json(result)
    assert [report["query"]["r"] for report in payload] == [0, 1, 2, 3]
    assert payload[-1]["dim"] == "empty"


def test_local_locus(runner: CliRunner) -> None:
    result = runner.invoke(entrypoint.cli, ["bn-local", "--n", "6", "--r", "3"])
    payload = _json(result)
    assert (payload["dim"], payload["witness"]) == (0, "m^3")


def test_stratum_of_worked_type(runner: CliRunner) -> None:
    result = runner.invoke(
        entrypoint.cli, ["stratum", "--type", "1,2,3,4,5,3,3,1", "--r", "2"]
    )
    assert result.exit_code == 0
    payload = _json(result)
    assert payload["dim"] == 15
    assert payload["details"]["n_T"] == 15
    assert payload["details"]["k"] == [8, 6, 5, 2, 1]


def test_invalid_type_exits_with_usage_code(runner: CliRunner) -> None:
    result = runner.invoke(entrypoint.cli, ["stratum", "--type", "1,3", "--r", "1"])
    assert result.exit_code == 2
    assert _json(result)["error"] == "InvalidTypeError"


def test_missing_option_is_a_usage_error(runner: CliRunner) -> None:
    assert runner.invoke(entrypoint.cli, ["types"]).exit_code == 2


def test_census_export(runner: CliRunner, tmp_path: Path) -> None:
    target = tmp_path / "census" / "e11.csv"
    result = runner.invoke(
        entrypoint.cli, ["census", "--shape", "1,1", "--q", "2", "--export", str(target)]
    )
    assert result.exit_code == 0
    assert [row["count"] for row in _json(result)] == [1, 1]
    exported = target.read_text(encoding="utf-8").splitlines()
    assert exported[0] == "q,e,R,a,count"
    assert exported[2] == '2,"1,1",1,2,1'


def test_budget_from_environment(runner: CliRunner) -> None:
    result = runner.invoke(
        entrypoint.cli,
        ["census", "--shape", "1,1", "--q", "2"],
        env={"HILBERT_BN_BUDGET": "1"},
    )
    assert result.exit_code == 2
    assert _json(result)["error"] == "BudgetExceededError"


def test_composite_field_rejected(runner: CliRunner) -> None:
    result = runner.invoke(entrypoint.cli, ["--field", "4", "types", "--n", "2"])
    assert result.exit_code == 2
    assert _json(result)["error"] == "InvalidFieldError"


def test_verify_recursion(runner: CliRunner) -> None:
    result = runner.invoke(entrypoint.cli, ["verify", "--suite", "recursion", "--n-max", "30"])
    assert result.exit_code == 0
    payload = _json(result)
    assert payload["passed"] is True
    assert payload["suites"][0]["bound"] == 30


def test_verify_failure_exits_one(runner: CliRunner, monkeypatch: pytest.MonkeyPatch) -> None:
    def failing(config, bound) -> SuiteOutcome:
        raise VerificationFailure("maximal rank is d − max e_j", {"shape": [2, 1]})

    def passing(config, bound) -> SuiteOutcome:
        return SuiteOutcome("stub", bound, checks=1)

    runners = {name: passing for name in SuitePolicyManager.ORDER}
    runners["degloci"] = failing
    monkeypatch.setattr(entrypoint, "VerificationAgent", lambda: VerificationAgent(runners=runners))

    result = runner.invoke(entrypoint.cli, ["verify"])
    assert result.exit_code == 1
    payload = _json(result)
    assert payload["first_failure"]["ref"] == "maximal rank is d − max e_j"
    statuses = {record["suite"]: record["status"] for record in payload["suites"]}
    assert statuses["bn"] == "blocked"
    assert statuses["iarrobino"] == "passed"


def test_table_of_main_theorem(runner: CliRunner) -> None:
    result = runner.invoke(entrypoint.cli, ["table", "--theorem", "main", "--n-max", "3"])
    assert result.exit_code == 0
    payload = _json(result)
    dims = {(row["query"]["r"], row["query"]["n"]): row["dim"] for row in payload}
    assert dims[(1, 1)] == 2
    assert dims[(2, 3)] == 2
    assert dims[(2, 1)] == "empty"


def test_strata_table_as_csv(runner: CliRunner) -> None:
    result = runner.invoke(
        entrypoint.cli, ["--output", "csv", "table", "--theorem", "strata", "--n-max", "3"]
    )
    assert result.exit_code == 0
    header = result.stdout.splitlines()[0]
    assert header.split(",")[:3] == ["level", "type", "r"]


def test_fit_experiment(runner: CliRunner) -> None:
    result = runner.invoke(entrypoint.cli, ["fit", "--shape", "1,1", "--rank", "1", "--q", "2,3,5"])
    assert result.exit_code == 0
    payload = _json(result)
    assert payload["interpolant_matches"] is True
    assert payload["counts"] == {"2": 1, "3": 2, "5": 4}


def test_verify_crash_exits_one(runner: CliRunner, monkeypatch: pytest.MonkeyPatch) -> None:
    def crashing(config, bound) -> SuiteOutcome:
        raise ZeroDivisionError("inverse of zero")

    runners = {name: crashing for name in SuitePolicyManager.ORDER}
    monkeypatch.setattr(entrypoint, "VerificationAgent", lambda: VerificationAgent(runners=runners))

    result = runner.invoke(entrypoint.cli, ["verify", "--suite", "recursion"])
    assert result.exit_code == 1
    assert _json(result)["first_failure"]["error"] == "ZeroDivisionError"
