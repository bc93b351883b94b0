"""Finite ultrametric spaces with exact rational distances.

Points are dense integer indices ``0..n-1``; user-facing names live only in the
CLI's JSON layer.  A space is immutable after construction and validated on
construction, so every ``UltraSpace`` in the program satisfies the strong
triangle inequality.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .errors import MetricError, StructuralError
from .scalar import PLUS_INFINITY, Scalar, SpectrumInfimum, as_scalar


@dataclass(frozen=True)
class Violation:
    """One failed metric condition: ``kind`` is ``"diagonal"``, ``"positivity"``
    (points ``(i, j)``) or ``"triangle"`` (points ``(i, j, k)`` with
    ``d(i,j) > max(d(i,k), d(k,j))``)."""

    kind: str
    points: tuple[int, ...]

    def describe(self) -> str:
        if self.kind == "diagonal":
            return f"nonzero diagonal entry at point {self.points[0]}"
        if self.kind == "positivity":
            i, j = self.points
            return f"nonpositive distance between distinct points {i} and {j}"
        i, j, k = self.points
        return f"strong triangle inequality fails on ({i}, {j}, {k}): d({i},{j}) > max(d({i},{k}), d({k},{j}))"


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    violations: tuple[Violation, ...]


def _coerce_matrix(matrix: Sequence[Sequence[int | str | Scalar]]) -> tuple[tuple[Scalar, ...], ...]:
    n = len(matrix)
    if n == 0:
        raise StructuralError("a space needs at least one point")
    rows = []
    for i, row in enumerate(matrix):
        row = tuple(as_scalar(v) for v in row)
        if len(row) != n:
            raise StructuralError(f"row {i} has {len(row)} entries, expected {n}")
        rows.append(row)
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise StructuralError(f"matrix is not symmetric at ({i}, {j})")
    return tuple(rows)


def validate_ultrametric(matrix: Sequence[Sequence[int | str | Scalar]]) -> ValidationResult:
    """Check zero diagonal, off-diagonal positivity, and the strong triangle
    inequality ``d(i,j) <= max(d(i,k), d(k,j))`` for every triple.

    Non-square or asymmetric input raises :class:`StructuralError`; metric
    defects are reported in the result, one entry per failing pair or triple.
    """
    rows = _coerce_matrix(matrix)
    n = len(rows)
    violations: list[Violation] = []
    for i in range(n):
        if rows[i][i] != 0:
            violations.append(Violation("diagonal", (i,)))
    for i, j in combinations(range(n), 2):
        if rows[i][j] <= 0:
            violations.append(Violation("positivity", (i, j)))
    for i, j, k in combinations(range(n), 3):
        a, b, c = rows[j][k], rows[i][k], rows[i][j]
        # at most one side of an ultrametric triangle is strictly largest
        if c > max(a, b):
            violations.append(Violation("triangle", (i, j, k)))
        elif b > max(a, c):
            violations.append(Violation("triangle", (i, k, j)))
        elif a > max(b, c):
            violations.append(Violation("triangle", (j, k, i)))
    return ValidationResult(not violations, tuple(violations))


@dataclass(frozen=True)
class UltraSpace:
    """A finite ultrametric space: symmetric exact distance matrix, validated
    on construction."""

    dist: tuple[tuple[Scalar, ...], ...]

    def __init__(self, matrix: Sequence[Sequence[int | str | Scalar]]):
        result = validate_ultrametric(matrix)
        if not result.ok:
            first = "; ".join(v.describe() for v in result.violations[:3])
            raise MetricError(f"not an ultrametric: {first}")
        object.__setattr__(self, "dist", _coerce_matrix(matrix))

    @property
    def n(self) -> int:
        return len(self.dist)

    def d(self, i: int, j: int) -> Scalar:
        return self.dist[i][j]

    def points(self) -> range:
        return range(self.n)

    def __repr__(self) -> str:
        return f"UltraSpace(n={self.n})"


@dataclass(frozen=True)
class DistanceSpectrum:
    """Realized distance values: ``all`` includes 0, ``nonzero`` excludes it,
    ``infimum`` is min(nonzero) or the +infinity marker for a singleton space."""

    all: tuple[Scalar, ...]
    nonzero: tuple[Scalar, ...]
    infimum: Scalar | SpectrumInfimum


def distance_spectrum(space: UltraSpace) -> DistanceSpectrum:
    values = {space.dist[i][j] for i in space.points() for j in space.points()}
    nonzero = tuple(sorted(v for v in values if v != 0))
    infimum: Scalar | SpectrumInfimum = nonzero[0] if nonzero else PLUS_INFINITY
    return DistanceSpectrum(tuple(sorted(values)), nonzero, infimum)


def min_nonzero_distance(space: UltraSpace) -> Scalar:
    """Least nonzero distance; requires n >= 2."""
    if space.n < 2:
        raise MetricError("a singleton space has no nonzero distances")
    return min(space.dist[i][j] for i in space.points() for j in range(i + 1, space.n))


def dplus_space(values: Iterable[int | str | Scalar]) -> UltraSpace:
    """Space on distinct nonnegative scalars with d(p, q) = max(p, q) for p != q."""
    points = [as_scalar(v) for v in values]
    if len(set(points)) != len(points):
        raise MetricError("duplicate points would force zero distance between distinct points")
    n = len(points)
    rows = [[Scalar(0)] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        rows[i][j] = rows[j][i] = max(points[i], points[j])
    return UltraSpace(rows)


def shift_space(space: UltraSpace, t: int | str | Scalar) -> UltraSpace:
    """Subtract ``t`` from every off-diagonal distance; requires
    ``0 <= t < min(nonzero spectrum)`` so distinct points stay apart.

    The identity map preserves which distances are largest, so the shifted
    space has exactly the same self-isometries as the original.
    """
    t = as_scalar(t)
    if space.n < 2:
        raise MetricError("shift needs at least two points")
    if t >= min_nonzero_distance(space):
        raise MetricError("shift collapses distinct points")
    rows = [
        [space.dist[i][j] - t if i != j else Scalar(0) for j in space.points()]
        for i in space.points()
    ]
    return UltraSpace(rows)


class Restriction(NamedTuple):
    """A subspace with its index map back to the parent:
    point ``i`` of ``space`` is ``parent_points[i]`` in the original."""

    space: UltraSpace
    parent_points: tuple[int, ...]


def subspace(space: UltraSpace, subset: Iterable[int]) -> Restriction:
    """Restrict the distance matrix to ``subset`` (reindexed in sorted order)."""
    points = sorted(set(subset))
    if not points:
        raise StructuralError("subset must be nonempty")
    if points[0] < 0 or points[-1] >= space.n:
        raise StructuralError(f"subset indices out of range for n={space.n}")
    rows = [[space.dist[p][q] for q in points] for p in points]
    return Restriction(UltraSpace(rows), tuple(points))
