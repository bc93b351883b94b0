"""Permutations, explicit permutation groups, and isometry groups of spaces.

Groups are stored as explicit element sets (desk scale), so set comparison is
trivial and exact.  Permutations are plain tuples: ``p[i]`` is the image of
point ``i``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import permutations as all_permutations
from typing import Iterable, NamedTuple

from .errors import BoundExceededError, StructuralError
from .space import UltraSpace

Permutation = tuple[int, ...]

ISOMETRY_BOUND_DEFAULT = 10
BRUTE_FORCE_BOUND = 7


def identity_permutation(n: int) -> Permutation:
    return tuple(range(n))


def compose_permutations(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``q`` first, then ``p``: result[i] = p[q[i]]."""
    return tuple(p[q[i]] for i in range(len(p)))


def invert_permutation(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, image in enumerate(p):
        inv[image] = i
    return tuple(inv)


def _check_permutation(p: Permutation, n: int) -> None:
    if len(p) != n or sorted(p) != list(range(n)):
        raise StructuralError(f"not a permutation of 0..{n - 1}: {p!r}")


@dataclass(frozen=True)
class PermGroup:
    """Explicit set of permutations of 0..n-1 containing the identity."""

    elements: frozenset[Permutation]

    def __init__(self, elements: Iterable[Permutation]):
        elems = frozenset(tuple(p) for p in elements)
        if not elems:
            raise StructuralError("a permutation group cannot be empty")
        n = len(next(iter(elems)))
        for p in elems:
            _check_permutation(p, n)
        if identity_permutation(n) not in elems:
            raise StructuralError("group does not contain the identity")
        object.__setattr__(self, "elements", elems)

    @property
    def degree(self) -> int:
        return len(next(iter(self.elements)))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return tuple(p) in self.elements

    def sorted_elements(self) -> list[Permutation]:
        return sorted(self.elements)

    def is_group(self) -> bool:
        """Full closure/inverse check; quadratic, intended for tests."""
        for p in self.elements:
            if invert_permutation(p) not in self.elements:
                return False
            for q in self.elements:
                if compose_permutations(p, q) not in self.elements:
                    return False
        return True

    def __repr__(self) -> str:
        return f"PermGroup(order={self.order}, degree={self.degree})"


def is_isometry(space: UltraSpace, p: Permutation) -> bool:
    """True iff ``p`` preserves every distance of ``space``."""
    n = space.n
    _check_permutation(tuple(p), n)
    return all(
        space.dist[i][j] == space.dist[p[i]][p[j]]
        for i in range(n)
        for j in range(i + 1, n)
    )


def isometry_group(space: UltraSpace, bound: int = ISOMETRY_BOUND_DEFAULT) -> PermGroup:
    """All distance-preserving permutations of ``space``.

    Backtracking search pruned by each point's sorted multiset of distances:
    a point can only map to a point with an identical distance profile.
    """
    n = space.n
    if n > bound:
        raise BoundExceededError(
            f"n={n} exceeds the isometry-search bound {bound}; raise it via the "
            "bound parameter (--bound on the command line)"
        )
    profile = [tuple(sorted(space.dist[i])) for i in range(n)]
    found: list[Permutation] = []
    image: list[int] = []
    used = [False] * n

    def extend(i: int) -> None:
        if i == n:
            found.append(tuple(image))
            return
        for candidate in range(n):
            if used[candidate] or profile[candidate] != profile[i]:
                continue
            if any(space.dist[i][k] != space.dist[candidate][image[k]] for k in range(i)):
                continue
            used[candidate] = True
            image.append(candidate)
            extend(i + 1)
            image.pop()
            used[candidate] = False

    extend(0)
    return PermGroup(found)


def isometry_group_brute_force(space: UltraSpace) -> PermGroup:
    """n! oracle for :func:`isometry_group`; limited to n <= 7."""
    if space.n > BRUTE_FORCE_BOUND:
        raise BoundExceededError(f"brute-force isometry search is limited to n <= {BRUTE_FORCE_BOUND}")
    return PermGroup(p for p in all_permutations(range(space.n)) if is_isometry(space, p))


class GroupComparison(enum.Enum):
    EQUAL = "equal"
    STAR_STRICTLY_SMALLER = "star-strictly-smaller"
    INCOMPARABLE = "incomparable"

    def __str__(self) -> str:
        return self.value


class GroupComparisonResult(NamedTuple):
    verdict: GroupComparison
    witness: Permutation | None


def compare_groups(iso_space: PermGroup, iso_star: PermGroup) -> GroupComparisonResult:
    """Exact set comparison of a space's isometry group with a star's
    automorphism group.

    The witness is an element of the symmetric difference when the groups are
    unequal.  For a generating star the automorphism group is always contained
    in the isometry group, so ``INCOMPARABLE`` signals a caller bug.
    """
    if iso_space.degree != iso_star.degree:
        raise StructuralError("groups act on different ground sets")
    extra_in_star = iso_star.elements - iso_space.elements
    if extra_in_star:
        return GroupComparisonResult(GroupComparison.INCOMPARABLE, min(extra_in_star))
    extra_in_space = iso_space.elements - iso_star.elements
    if extra_in_space:
        return GroupComparisonResult(GroupComparison.STAR_STRICTLY_SMALLER, min(extra_in_space))
    return GroupComparisonResult(GroupComparison.EQUAL, None)
