"""Run configuration shared by the CLI and the verification suites."""

from __future__ import annotations

import os
from collections.abc import Mapping
from dataclasses import dataclass, replace

from .errors import ConfigurationError
from .exactalg import Field

ENV_FIELD = "HILBERT_BN_FIELD"
ENV_SEED = "HILBERT_BN_SEED"
ENV_BUDGET = "HILBERT_BN_BUDGET"
ENV_WORKERS = "HILBERT_BN_WORKERS"
ENV_OUTPUT = "HILBERT_BN_OUTPUT"
ENV_CAP = "HILBERT_BN_CAP"

OUTPUT_FORMATS = ("json", "csv", "table")
DEFAULT_SEED = 20240601
DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class RunConfig:
    """Everything that makes a run reproducible.

    ``field`` is ``None`` when the user did not pick one; each suite then uses
    its own default field.
    """

    field: Field | None = None
    seed: int = DEFAULT_SEED
    cap: int | None = None
    budget: int = DEFAULT_BUDGET
    workers: int = 1
    output: str = "json"
    explore_low_characteristic: bool = False

    def __post_init__(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError(f"seed must fit in 64 bits, got {self.seed}")
        if self.budget < 1:
            raise ConfigurationError(f"budget must be at least 1, got {self.budget}")
        if self.workers < 1:
            raise ConfigurationError(f"workers must be at least 1, got {self.workers}")
        if self.cap is not None and self.cap < 2:
            raise ConfigurationError(f"cap override must be at least 2, got {self.cap}")
        if self.output not in OUTPUT_FORMATS:
            raise ConfigurationError(
                f"output must be one of {', '.join(OUTPUT_FORMATS)}, got {self.output!r}"
            )

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None, **overrides: object) -> RunConfig:
        """Read ``HILBERT_BN_*`` variables; keyword overrides that are not ``None`` win."""

        env = os.environ if environ is None else environ
        values: dict[str, object] = {}
        if env.get(ENV_FIELD):
            values["field"] = Field.parse(env[ENV_FIELD])
        numeric = (
            (ENV_SEED, "seed"),
            (ENV_BUDGET, "budget"),
            (ENV_WORKERS, "workers"),
            (ENV_CAP, "cap"),
        )
        for key, name in numeric:
            if env.get(key):
                values[name] = _parse_int(key, env[key])
        if env.get(ENV_OUTPUT):
            values["output"] = env[ENV_OUTPUT].strip().lower()
        values.update({name: value for name, value in overrides.items() if value is not None})
        return cls(**values)  # type: ignore[arg-type]

    def field_or(self, default: Field) -> Field:
        return self.field if self.field is not None else default

    def with_overrides(self, **changes: object) -> RunConfig:
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


def _parse_int(name: str, text: str) -> int:
    try:
        return int(text.strip())
    except ValueError as exc:
        raise ConfigurationError(f"{name} must be an integer, got {text!r}") from exc
