"""Policy utilities used by the verification LangGraph."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import Optional

from .errors import ConfigurationError


@dataclass
class SuitePlan:
    """Structured result describing which suites run, in which order and how far."""

    suites: list[str]
    bounds: dict[str, int]
    requested: list[str]
    note: Optional[str]


class SuitePolicyManager:
    """Encapsulates deterministic ordering and prerequisite checks for ``verify``.

    Suites run in a fixed canonical order. Some suites rely on statements
    another suite certifies (the Iarrobino oracle assumes the type
    combinatorics; the Brill–Noether calculators assume both the types and the
    degeneracy-locus dimensions), so requesting a suite pulls its
    prerequisites in, and a failed prerequisite blocks its dependents.
    """

    ORDER = ("hstype", "degloci", "iarrobino", "bn", "veronese", "recursion")
    PREREQUISITES: Mapping[str, tuple[str, ...]] = {
        "iarrobino": ("hstype",),
        "bn": ("hstype", "degloci"),
    }
    DEFAULT_BOUNDS: Mapping[str, int] = {
        "hstype": 16,
        "degloci": 5,
        "iarrobino": 8,
        "bn": 12,
        "veronese": 5,
        "recursion": 30,
    }

    def classify_request(self, requested: Iterable[str], n_max: int | None = None) -> SuitePlan:
        """Expand a ``--suite`` request into an ordered plan.

        Args:
            requested: Suite names, or ``["all"]``.
            n_max: Optional size bound. For a single named suite it replaces
                that suite's default; otherwise each suite uses
                ``min(n_max, default)``. Pulled-in prerequisites keep their defaults.

        Returns:
            SuitePlan with the canonical run order and the bound for each suite.
        """

        names = [name.strip().lower() for name in requested if name.strip()]
        if not names or "all" in names:
            names = list(self.ORDER)
        unknown = sorted(set(names) - set(self.ORDER))
        if unknown:
            raise ConfigurationError(f"unknown suite(s): {', '.join(unknown)}")
        if n_max is not None and n_max < 1:
            raise ConfigurationError(f"--n-max must be positive, got {n_max}")

        selected = set(names)
        for name in names:
            selected.update(self._closure(name))
        suites = [name for name in self.ORDER if name in selected]

        single = len(set(names)) == 1 and len(names) < len(self.ORDER)
        bounds: dict[str, int] = {}
        for name in suites:
            default = self.DEFAULT_BOUNDS[name]
            if n_max is None or name not in names:
                bounds[name] = default
            elif single:
                bounds[name] = n_max
            else:
                bounds[name] = min(n_max, default)

        pulled = [name for name in suites if name not in names]
        note: Optional[str] = None
        if pulled:
            note = f"Policy: prerequisites {', '.join(pulled)} run first."
        return SuitePlan(suites=suites, bounds=bounds, requested=sorted(set(names)), note=note)

    def blocking_prerequisites(self, suite: str, failed: Iterable[str]) -> list[str]:
        """Return the failed or blocked prerequisites that prevent ``suite`` from running."""

        failed_set = set(failed)
        return [name for name in self._closure(suite) if name in failed_set]

    def _closure(self, suite: str) -> list[str]:
        found: list[str] = []
        stack = list(self.PREREQUISITES.get(suite, ()))
        while stack:
            name = stack.pop()
            if name not in found:
                found.append(name)
                stack.extend(self.PREREQUISITES.get(name, ()))
        return [name for name in self.ORDER if name in found]
