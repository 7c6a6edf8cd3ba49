"""Command line entrypoint for the Brill–Noether calculators and verification suites."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from typing import Any

import click
from dotenv import load_dotenv

from . import bn, degloci, hstype, iarrobino, reports
from .config import (
    ENV_BUDGET,
    ENV_CAP,
    ENV_FIELD,
    ENV_OUTPUT,
    ENV_SEED,
    ENV_WORKERS,
    OUTPUT_FORMATS,
    RunConfig,
)
from .errors import HilbertBNError, VerificationFailure
from .exactalg import Field
from .suite_policy import SuitePolicyManager
from .verification_agent import VerificationAgent

load_dotenv()

DEFAULT_LOG_LEVEL = "warning"
LOG_LEVELS = ("debug", "info", "warning", "error")
THEOREMS = ("main", "local", "strata")
DEFAULT_TABLE_N_MAX = 8

TYPE_COLUMNS = ("type", "dim", "e", "k", "d")
VERIFY_COLUMNS = ("suite", "bound", "status", "checks", "blocked_by")


class HilbertBNGroup(click.Group):
    """Maps package errors to the documented exit codes and JSON diagnostics."""

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except VerificationFailure as exc:
            click.echo(reports.render_json(exc.to_json()))
            ctx.exit(1)
        except HilbertBNError as exc:
            click.echo(
                reports.render_json({"error": type(exc).__name__, "message": str(exc)})
            )
            ctx.exit(2)


def _config(ctx: click.Context) -> RunConfig:
    return ctx.find_object(RunConfig) or RunConfig()


def _emit(ctx: click.Context, payload: Any, columns: Sequence[str] | None = None) -> None:
    click.echo(reports.render(payload, _config(ctx).output, columns))


@click.group(cls=HilbertBNGroup)
@click.option(
    "--log-level",
    "log_level",
    default=DEFAULT_LOG_LEVEL,
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
)
@click.option("--field", "field_text", envvar=ENV_FIELD, default=None,
              help="rational, or a prime p (also prime:p, Fp).")
@click.option("--seed", type=int, envvar=ENV_SEED, default=None)
@click.option("--budget", type=int, envvar=ENV_BUDGET, default=None,
              help="Largest number of matrices a census may enumerate.")
@click.option("--workers", type=int, envvar=ENV_WORKERS, default=None)
@click.option("--output", type=click.Choice(OUTPUT_FORMATS, case_sensitive=False),
              envvar=ENV_OUTPUT, default=None)
@click.option("--cap", type=int, envvar=ENV_CAP, default=None,
              help="Override the truncation cap used for constructed ideals.")
@click.pass_context
def cli(
    ctx: click.Context,
    log_level: str,
    field_text: str | None,
    seed: int | None,
    budget: int | None,
    workers: int | None,
    output: str | None,
    cap: int | None,
) -> None:
    """Brill–Noether loci in punctual Hilbert schemes of points."""

    logging.getLogger().setLevel(getattr(logging, log_level.upper()))
    ctx.obj = RunConfig.from_env(
        field=Field.parse(field_text) if field_text else None,
        seed=seed,
        budget=budget,
        workers=workers,
        output=output.lower() if output else None,
        cap=cap,
    )


@cli.command()
@click.option("--n", "n", type=int, required=True, help="Colength.")
@click.pass_context
def types(ctx: click.Context, n: int) -> None:
    """Every Hilbert–Samuel type of colength N with its stratum data."""

    rows = []
    for T in hstype.enumerate_types(n):
        rows.append(
            {
                "type": list(T.t),
                "dim": hstype.dim_stratum(T),
                "e": list(hstype.jumping_indices(T).shape),
                "k": list(hstype.partition_from_type(T).k),
                "d": T.d,
            }
        )
    _emit(ctx, rows, TYPE_COLUMNS)


@cli.command()
@click.option("--type", "type_text", required=True, help='Comma list, e.g. "1,2,3,2,2".')
@click.option("--r", "r", type=int, required=True)
@click.pass_context
def stratum(ctx: click.Context, type_text: str, r: int) -> None:
    """BN locus of ideals of a fixed type with exactly r + 1 generators."""

    T = hstype.validate_type(hstype.parse_int_list(type_text))
    report = bn.bn_stratum(T, r)
    if _config(ctx).output != "json":
        _emit(ctx, report)
        return
    payload = report.to_json()
    n_T, n_e = iarrobino.beta_dims(T)
    payload["details"] = {
        **payload["details"],
        "n_T": n_T,
        "n_e": n_e,
        "k": list(hstype.partition_from_type(T).k),
    }
    _emit(ctx, payload)


def _r_values(n: int, r: int | None) -> list[int]:
    if r is not None:
        return [r]
    top = 0
    while (top + 1) * (top + 2) // 2 <= n:
        top += 1
    return list(range(top + 2))


@cli.command("bn-local")
@click.option("--n", "n", type=int, required=True)
@click.option("--r", "r", type=int, default=None, help="Omit for every r up to the first empty locus.")
@click.pass_context
def bn_local(ctx: click.Context, n: int, r: int | None) -> None:
    """Local BN locus inside Hilb_n(k[[x, y]])."""

    found = [bn.bn_local(value, n) for value in _r_values(n, r)]
    _emit(ctx, found[0] if r is not None else found)


@cli.command("bn-global")
@click.option("--n", "n", type=int, required=True)
@click.option("--r", "r", type=int, default=None, help="Omit for every r up to the first empty locus.")
@click.pass_context
def bn_global(ctx: click.Context, n: int, r: int | None) -> None:
    """Global BN locus inside Hilb_n(S) × S."""

    found = [bn.bn_global(value, n) for value in _r_values(n, r)]
    _emit(ctx, found[0] if r is not None else found)


@cli.command()
@click.option("--shape", "shape_text", required=True, help='Comma list, e.g. "1,2,2".')
@click.option("--q", "q", type=int, required=True)
@click.option("--export", "export_path", type=click.Path(dir_okay=False), default=None,
              help="Also write the census as CSV.")
@click.pass_context
def census(ctx: click.Context, shape_text: str, q: int, export_path: str | None) -> None:
    """Exhaustive count of shape-e matrices over F_q by rank and echelon sequence."""

    config = _config(ctx)
    shape = hstype.parse_int_list(shape_text)
    result = degloci.census(shape, q, budget=config.budget, workers=config.workers)
    degloci.verify_realization(shape, q, result=result)
    if export_path:
        target = reports.write_export(export_path, reports.census_csv(result))
        logging.getLogger(__name__).info("Census written to %s", target)
    _emit(ctx, result.rows(), reports.CENSUS_COLUMNS)


@cli.command()
@click.option(
    "--suite",
    "suites",
    multiple=True,
    type=click.Choice((*SuitePolicyManager.ORDER, "all"), case_sensitive=False),
    default=("all",),
    show_default=True,
)
@click.option("--n-max", "n_max", type=int, default=None)
@click.option("--low-char", "low_char", is_flag=True, default=False,
              help="Also record how the chart behaves over F_p with p < n.")
@click.pass_context
def verify(ctx: click.Context, suites: tuple[str, ...], n_max: int | None, low_char: bool) -> None:
    """Run the invariant suites; exit 0 iff every one passes."""

    config = _config(ctx)
    if low_char:
        config = config.with_overrides(explore_low_characteristic=True)
    report = VerificationAgent().run_sync(suites, n_max, config)
    if config.output == "json":
        _emit(ctx, report)
    else:
        _emit(ctx, report["suites"], VERIFY_COLUMNS)
    if not report["passed"]:
        ctx.exit(1)


def _theorem_rows(theorem: str, n_max: int) -> list[Any]:
    rows: list[Any] = []
    for n in range(1, n_max + 1):
        if theorem == "main":
            rows.extend(bn.bn_global(r, n) for r in _r_values(n, None))
        elif theorem == "local":
            rows.extend(bn.bn_local(r, n) for r in _r_values(n, None))
        else:
            for T in hstype.enumerate_types(n):
                rows.extend(bn.bn_stratum(T, r) for r in range(T.d + 1))
    return rows


@cli.command()
@click.option("--theorem", type=click.Choice(THEOREMS), required=True)
@click.option("--n-max", "n_max", type=click.IntRange(min=1), default=DEFAULT_TABLE_N_MAX,
              show_default=True)
@click.pass_context
def table(ctx: click.Context, theorem: str, n_max: int) -> None:
    """Tabulate the global, local or per-stratum statements for n ≤ N_MAX."""

    _emit(ctx, _theorem_rows(theorem, n_max))


@cli.command()
@click.option("--shape", "shape_text", required=True)
@click.option("--rank", "rank", type=int, required=True)
@click.option("--q", "q_text", default="2,3,5,7", show_default=True)
@click.pass_context
def fit(ctx: click.Context, shape_text: str, rank: int, q_text: str) -> None:
    """Census counts of the rank locus across q, with an interpolant and the exact count."""

    config = _config(ctx)
    report = degloci.fit_experiment(
        hstype.parse_int_list(shape_text),
        rank,
        hstype.parse_int_list(q_text),
        budget=config.budget,
        workers=config.workers,
    )
    payload = reports.to_jsonable(report)
    if config.output == "json":
        _emit(ctx, payload)
    else:
        rows = [{"q": q, "count": count} for q, count in sorted(report.counts.items())]
        _emit(ctx, rows, ("q", "count"))


def main() -> None:
    cli(prog_name="hilbert-bn")


if __name__ == "__main__":
    main()
