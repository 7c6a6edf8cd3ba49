"""Combinatorics of Hilbert–Samuel types.

A type is a staircase ``(1, 2, …, d, t_d, t_{d+1}, …)`` with a nonincreasing
tail bounded by the order ``d``. Types of colength ``n`` are in bijection with
strictly decreasing partitions of ``n`` (row lengths of a normal pattern), and
the jumps of the tail give the block shape that drives the degeneracy-locus
calculations.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property

from .errors import InvalidTypeError, VerificationFailure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HSType:
    """A validated Hilbert–Samuel type with trailing zeros removed.

    Build instances through :func:`validate_type`; the constructor assumes
    its input is already canonical.
    """

    t: tuple[int, ...]

    @property
    def n(self) -> int:
        return sum(self.t)

    @cached_property
    def d(self) -> int:
        for j, value in enumerate(self.t):
            if value != j + 1:
                return j
        return len(self.t)

    def __getitem__(self, j: int) -> int:
        return self.t[j] if 0 <= j < len(self.t) else 0

    def __str__(self) -> str:
        return ",".join(str(value) for value in self.t)


@dataclass(frozen=True)
class JumpVector:
    """Nonzero jumping indices ``{j: e_j}`` of a type."""

    jumps: tuple[tuple[int, int], ...]

    @classmethod
    def from_mapping(cls, values: dict[int, int]) -> JumpVector:
        return cls(tuple(sorted((j, e) for j, e in values.items() if e)))

    def __getitem__(self, j: int) -> int:
        return dict(self.jumps).get(j, 0)

    @property
    def shape(self) -> tuple[int, ...]:
        """Nonzero e_j listed by descending index j (block order)."""

        return tuple(e for _, e in sorted(self.jumps, reverse=True))

    @property
    def d(self) -> int:
        return sum(e for _, e in self.jumps)

    @property
    def length(self) -> int:
        return len(self.jumps)

    @property
    def r_min(self) -> int:
        return max((e for _, e in self.jumps), default=0)


@dataclass(frozen=True)
class NormalPattern:
    """Row lengths k_0 > k_1 > ⋯ > k_{d−1} > 0 of a normal pattern (k_d = 0 implied)."""

    k: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.k:
            raise InvalidTypeError("a normal pattern needs at least one row")
        if any(value <= 0 for value in self.k):
            raise InvalidTypeError(f"row lengths must be positive: {self.k}")
        if any(a <= b for a, b in zip(self.k, self.k[1:])):
            raise InvalidTypeError(f"row lengths must strictly decrease: {self.k}")

    @property
    def d(self) -> int:
        return len(self.k)

    @property
    def n(self) -> int:
        return sum(self.k)

    def row(self, s: int) -> int:
        """k_s, with k_s = 0 for s ≥ d."""

        return self.k[s] if s < len(self.k) else 0

    def monomials(self) -> list[tuple[int, int]]:
        """Exponents (a, b) of the monomials x^a y^b inside the pattern."""

        return [(a, s) for s, length in enumerate(self.k) for a in range(length)]

    def __str__(self) -> str:
        return ",".join(str(value) for value in self.k)


@dataclass(frozen=True)
class GammaProfile:
    """Nondecreasing Γ: {1..d} → {0..d} with Γ(i) ≤ i − 1, stored as (Γ(1), …, Γ(d))."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise InvalidTypeError("a Γ-profile needs d ≥ 1")
        for i, value in enumerate(self.values, start=1):
            if value < 0 or value > i - 1:
                raise InvalidTypeError(f"Γ({i}) = {value} is outside [0, {i - 1}]")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise InvalidTypeError(f"Γ must be nondecreasing: {self.values}")

    @property
    def d(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= self.d:
            raise InvalidTypeError(f"Γ is defined on 1..{self.d}, not at {i}")
        return self.values[i - 1]


def validate_type(t: Sequence[int]) -> HSType:
    """Check the staircase constraints and return the canonical :class:`HSType`.

    Raises:
        InvalidTypeError: for an empty type, a broken staircase prefix, a tail
            entry above the order or a tail that increases.
    """

    values = [int(value) for value in t]
    while values and values[-1] == 0:
        values.pop()
    if not values:
        raise InvalidTypeError("the empty type has colength 0")
    if any(value < 0 for value in values):
        raise InvalidTypeError(f"negative entry in type {tuple(values)}")

    d = next((j for j, value in enumerate(values) if value != j + 1), len(values))
    if d == 0:
        raise InvalidTypeError(f"t_0 must be 1, got {values[0]}")
    tail = values[d:]
    if tail and tail[0] > d:
        raise InvalidTypeError(
            f"t_{d} = {tail[0]} exceeds the order {d} (at most j + 1 monomials in degree j)"
        )
    for offset, (a, b) in enumerate(zip(tail, tail[1:])):
        if b > a:
            raise InvalidTypeError(f"type increases after the order at j = {d + offset + 1}")
    if 0 in tail:
        raise InvalidTypeError(f"interior zero in type {tuple(values)}")
    return HSType(tuple(values))


def jumping_indices(T: HSType) -> JumpVector:
    d = T.d
    values = {j: T[j - 1] - T[j] for j in range(d, len(T.t) + 1)}
    jumps = JumpVector.from_mapping(values)
    if jumps.d != d:
        raise VerificationFailure(
            "jumping indices sum to the order", {"type": T.t, "sum": jumps.d, "d": d}
        )
    return jumps


def partition_from_type(T: HSType) -> NormalPattern:
    """Row lengths k_s = #{j : t_j > s} for s < d."""

    return NormalPattern(tuple(sum(1 for value in T.t if value > s) for s in range(T.d)))


def type_from_partition(k: Sequence[int] | NormalPattern) -> HSType:
    """t_j counts the pattern monomials x^{j−s} y^s of degree j."""

    pattern = k if isinstance(k, NormalPattern) else NormalPattern(_strip_zero(k))
    top = pattern.k[0] + pattern.d
    t = [
        sum(1 for s in range(min(j, pattern.d - 1) + 1) if j - s < pattern.k[s])
        for j in range(top)
    ]
    return validate_type(t)


def jumps_from_partition(k: Sequence[int] | NormalPattern) -> JumpVector:
    """e_j = #{s < d : k_s + s = j}, read straight off the pattern."""

    pattern = k if isinstance(k, NormalPattern) else NormalPattern(_strip_zero(k))
    values: dict[int, int] = {}
    for s, length in enumerate(pattern.k):
        values[length + s] = values.get(length + s, 0) + 1
    return JumpVector.from_mapping(values)


def _strict_partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    for first in range(min(n, largest), 0, -1):
        if first == n:
            yield (first,)
            continue
        for rest in _strict_partitions(n - first, first - 1):
            yield (first, *rest)


def enumerate_types(n: int) -> list[HSType]:
    """All types of colength ``n``, ordered by descending lexicographic partition."""

    if n < 1:
        raise InvalidTypeError(f"colength must be positive, got {n}")
    types = [type_from_partition(k) for k in _strict_partitions(n, n)]
    logger.debug("Enumerated %d types of colength %d", len(types), n)
    return types


def dim_stratum(T: HSType) -> int:
    """Dimension of the stratum Z_T, computed by both closed forms."""

    shape = jumping_indices(T).shape
    first = T.n - sum(e * (e + 1) // 2 for e in shape)
    second = T.n - T.d - sum(e * (e - 1) // 2 for e in shape)
    if first != second:
        raise VerificationFailure(
            "stratum dimension forms agree",
            {"type": T.t, "first": first, "second": second},
        )
    return first


def gamma_from_shape(e: Sequence[int] | JumpVector) -> GammaProfile:
    """Γ(i) is the total size of the blocks strictly before the one holding i."""

    shape = e.shape if isinstance(e, JumpVector) else tuple(int(v) for v in e)
    _check_composition(shape)
    values: list[int] = []
    before = 0
    for block in shape:
        values.extend([before] * block)
        before += block
    return GammaProfile(tuple(values))


def grassmann_type(d: int, ell: int) -> HSType:
    """The type (1, …, d, ℓ) of ideals between m^{d+1} and m^d."""

    if d < 1 or not 0 <= ell <= d:
        raise InvalidTypeError(f"need d ≥ 1 and 0 ≤ ℓ ≤ d, got d={d}, ℓ={ell}")
    return validate_type([*range(1, d + 1), ell])


def compositions(d: int) -> list[tuple[int, ...]]:
    """Ordered compositions of ``d``, by number of parts then lexicographically."""

    if d < 1:
        raise InvalidTypeError(f"cannot compose {d}")
    result: list[tuple[int, ...]] = []
    for parts in range(1, d + 1):
        found = []
        for cuts in itertools.combinations(range(1, d), parts - 1):
            bounds = (0, *cuts, d)
            found.append(tuple(b - a for a, b in zip(bounds, bounds[1:])))
        result.extend(sorted(found))
    return result


def parse_int_list(text: str) -> tuple[int, ...]:
    """Parse the comma lists used on the command line ("1,2,3,2,2")."""

    pieces = [piece.strip() for piece in text.replace(" ", ",").split(",") if piece.strip()]
    try:
        return tuple(int(piece) for piece in pieces)
    except ValueError as exc:
        raise InvalidTypeError(f"expected a comma separated list of integers, got {text!r}") from exc


def _strip_zero(k: Sequence[int]) -> tuple[int, ...]:
    values = tuple(int(value) for value in k)
    return values[:-1] if values and values[-1] == 0 else values


def _check_composition(shape: Sequence[int]) -> None:
    if not shape:
        raise InvalidTypeError("a shape needs at least one block")
    if any(block <= 0 for block in shape):
        raise InvalidTypeError(f"shape blocks must be positive: {tuple(shape)}")
