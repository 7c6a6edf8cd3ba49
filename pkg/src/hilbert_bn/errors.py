"""Exception hierarchy shared by the calculators, suites and the CLI."""

from __future__ import annotations

import json
from typing import Any


class HilbertBNError(Exception):
    """Base class for every error raised by this package."""


class InvalidTypeError(HilbertBNError, ValueError):
    """A type, partition, composition or Γ-profile violates its constraints."""


class DimensionMismatchError(HilbertBNError, ValueError):
    """Operands disagree on shape, truncation cap or ground field."""


class CapTooSmallError(HilbertBNError, ValueError):
    """A computation needs more of the power series than the cap keeps."""


class NonStabilizedError(HilbertBNError):
    """The Hilbert–Samuel function did not stabilize strictly below the cap."""


class InvalidBetaError(HilbertBNError, ValueError):
    """A deformation matrix violates the vanishing, degree or constant-term rules."""


class BudgetExceededError(HilbertBNError):
    """An exhaustive census would enumerate more tuples than allowed."""


class VerificationFailure(HilbertBNError, AssertionError):
    """An invariant check failed.

    ``ref`` names the statement being checked and ``detail`` holds the offending
    values; both end up in the CLI's JSON diagnostic.
    """

    def __init__(self, ref: str, detail: dict[str, Any] | None = None) -> None:
        self.ref = ref
        self.detail = detail or {}
        super().__init__(f"{ref}: {json.dumps(self.detail, sort_keys=True, default=str)}")

    def to_json(self) -> dict[str, Any]:
        return {
            "error": "verification_failure",
            "ref": self.ref,
            "detail": self.detail,
        }


class InvalidFieldError(HilbertBNError, ValueError):
    """A field descriptor names something other than Q or a prime field."""


class ConfigurationError(HilbertBNError, ValueError):
    """A run setting (seed, budget, workers, cap, output format) is out of range."""
