"""Labeled trees and star graphs, and the path-max ultrametric they induce.

A labeling assigns a nonnegative scalar to every vertex.  The induced distance
between two vertices is the largest label on the unique path joining them,
endpoints included; it is an ultrametric exactly when every edge has at least
one endpoint with a positive label (a *non-degenerate* labeling).

Star graphs keep a designated center, but the designation is data, not a
structural constraint: on two vertices both qualify as centers, and
isomorphism/automorphism computations look only at edges and labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations as all_permutations
from itertools import product
from typing import Iterable, NamedTuple, Sequence

from .errors import BoundExceededError, MetricError, StructuralError
from .groups import PermGroup, Permutation, identity_permutation
from .scalar import Scalar, as_scalar
from .space import UltraSpace

Edge = tuple[int, int]


def _normalize_edges(edges: Iterable[Sequence[int]], n: int) -> tuple[Edge, ...]:
    normalized = set()
    for edge in edges:
        u, v = edge
        if u == v:
            raise StructuralError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise StructuralError(f"edge ({u}, {v}) out of range for n={n}")
        normalized.add((min(u, v), max(u, v)))
    return tuple(sorted(normalized))


def _check_tree(n: int, edges: tuple[Edge, ...]) -> None:
    if len(edges) != n - 1:
        raise StructuralError(f"a tree on {n} vertices needs {n - 1} edges, got {len(edges)}")
    seen = [False] * n
    adjacency: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
    stack = [0]
    seen[0] = True
    while stack:
        u = stack.pop()
        for w in adjacency[u]:
            if not seen[w]:
                seen[w] = True
                stack.append(w)
    if not all(seen):
        raise StructuralError("graph is not connected")


@dataclass(frozen=True)
class LabeledTree:
    """Tree on vertices 0..n-1 with a scalar label per vertex."""

    labels: tuple[Scalar, ...]
    edges: tuple[Edge, ...]

    def __init__(self, labels: Sequence[int | str | Scalar], edges: Iterable[Sequence[int]]):
        labels = tuple(as_scalar(v) for v in labels)
        if not labels:
            raise StructuralError("a tree needs at least one vertex")
        normalized = _normalize_edges(edges, len(labels))
        _check_tree(len(labels), normalized)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "edges", normalized)

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        neighbors: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            neighbors[u].append(v)
            neighbors[v].append(u)
        return tuple(tuple(sorted(ns)) for ns in neighbors)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])


@dataclass(frozen=True)
class LabeledStar:
    """Star graph: one designated center adjacent to every other vertex."""

    labels: tuple[Scalar, ...]
    center: int

    def __init__(self, labels: Sequence[int | str | Scalar], center: int = 0):
        labels = tuple(as_scalar(v) for v in labels)
        if not labels:
            raise StructuralError("a star needs at least one vertex")
        if not (0 <= center < len(labels)):
            raise StructuralError(f"center {center} out of range for n={len(labels)}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "center", center)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if v != self.center)

    def as_tree(self) -> LabeledTree:
        return LabeledTree(self.labels, [(self.center, leaf) for leaf in self.leaves])


def star_from_tree(tree: LabeledTree, center: int | None = None) -> LabeledStar:
    """View a tree as a star, checking every edge is incident to the center.

    With ``center=None`` a valid center is inferred (any vertex adjacent to all
    others; vertex 0 for a single vertex, the lower endpoint for two).
    """
    if center is None:
        if tree.n == 1:
            center = 0
        else:
            candidates = [v for v in range(tree.n) if tree.degree(v) == tree.n - 1]
            if not candidates:
                raise StructuralError("tree is not a star graph")
            center = candidates[0]
    for u, v in tree.edges:
        if center not in (u, v):
            raise StructuralError(f"edge ({u}, {v}) is not incident to center {center}")
    return LabeledStar(tree.labels, center)


class NonDegeneracyReport(NamedTuple):
    ok: bool
    violating_edges: tuple[Edge, ...]


def is_non_degenerate(tree: LabeledTree) -> NonDegeneracyReport:
    """Check that every edge has at least one endpoint with a positive label."""
    bad = tuple((u, v) for u, v in tree.edges if max(tree.labels[u], tree.labels[v]) == 0)
    return NonDegeneracyReport(not bad, bad)


def tree_ultrametric(tree: LabeledTree) -> UltraSpace:
    """Distance = max label along the unique path, endpoints included.

    One traversal per source vertex carries the running path maximum, giving
    the full matrix in O(n^2); raises when the labeling is degenerate.
    """
    report = is_non_degenerate(tree)
    if not report.ok:
        u, v = report.violating_edges[0]
        raise MetricError(f"degenerate labeling: edge ({u}, {v}) has both labels zero")
    n = tree.n
    labels = tree.labels
    adjacency = tree.adjacency
    rows = [[Scalar(0)] * n for _ in range(n)]
    for source in range(n):
        stack = [(source, source, labels[source])]
        while stack:
            vertex, parent, running = stack.pop()
            for neighbor in adjacency[vertex]:
                if neighbor == parent:
                    continue
                best = max(running, labels[neighbor])
                rows[source][neighbor] = best
                stack.append((neighbor, vertex, best))
    return UltraSpace(rows)


def _star_distance_rows(star: LabeledStar) -> list[list[Scalar]]:
    # closed form: d(c,x) = max(l(c), l(x)); d(u,v) = max(l(u), l(c), l(v))
    n, c, labels = star.n, star.center, star.labels
    rows = [[Scalar(0)] * n for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            if c in (u, v):
                value = max(labels[u], labels[v])
            else:
                value = max(labels[u], labels[c], labels[v])
            rows[u][v] = rows[v][u] = value
    return rows


def star_ultrametric(star: LabeledStar) -> UltraSpace:
    """Closed-form path-max distances of a star; agrees exactly with
    :func:`tree_ultrametric` on the star viewed as a tree."""
    report = is_non_degenerate(star.as_tree())
    if not report.ok:
        u, v = report.violating_edges[0]
        raise MetricError(f"degenerate labeling: edge ({u}, {v}) has both labels zero")
    return UltraSpace(_star_distance_rows(star))


@dataclass(frozen=True)
class TreeIsoWitness:
    """Vertex bijection preserving edges both ways and labels pointwise."""

    mapping: Permutation


def is_labeled_tree_isomorphism(t1: LabeledTree, t2: LabeledTree, mapping: Sequence[int]) -> bool:
    """Verify a candidate bijection against both the edge and label conditions."""
    n = t1.n
    if t2.n != n or sorted(mapping) != list(range(n)):
        return False
    if any(t2.labels[mapping[v]] != t1.labels[v] for v in range(n)):
        return False
    mapped = {(min(mapping[u], mapping[v]), max(mapping[u], mapping[v])) for u, v in t1.edges}
    return mapped == set(t2.edges)


def _centroids(tree: LabeledTree) -> list[int]:
    n = tree.n
    if n == 1:
        return [0]
    degree = [tree.degree(v) for v in range(n)]
    remaining = n
    layer = [v for v in range(n) if degree[v] == 1]
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in tree.adjacency[v]:
                degree[w] -= 1
                if degree[w] == 1:
                    nxt.append(w)
            degree[v] = 0
        layer = nxt
    return sorted(layer)


def _encode_rooted(tree: LabeledTree, vertex: int, parent: int):
    children = sorted(
        _encode_rooted(tree, w, vertex) for w in tree.adjacency[vertex] if w != parent
    )
    return (tree.labels[vertex], tuple(children))


def _match_rooted(t1: LabeledTree, v1: int, p1: int, t2: LabeledTree, v2: int, p2: int, out: list[int]) -> None:
    out[v1] = v2
    children1 = sorted(
        ((_encode_rooted(t1, w, v1), w) for w in t1.adjacency[v1] if w != p1)
    )
    children2 = sorted(
        ((_encode_rooted(t2, w, v2), w) for w in t2.adjacency[v2] if w != p2)
    )
    for (_, w1), (_, w2) in zip(children1, children2):
        _match_rooted(t1, w1, v1, t2, w2, v2, out)


def labeled_tree_isomorphic(t1: LabeledTree, t2: LabeledTree) -> TreeIsoWitness | None:
    """Find a label-preserving tree isomorphism, or return None.

    Canonical rooted encoding at the centroid(s) with labels folded into the
    encoding; equality of encodings decides, and the witness is read off by
    matching equally-encoded children.
    """
    if t1.n != t2.n:
        return None
    if sorted(t1.labels) != sorted(t2.labels):
        return None
    c1 = _centroids(t1)[0]
    encoding1 = _encode_rooted(t1, c1, c1)
    for c2 in _centroids(t2):
        if _encode_rooted(t2, c2, c2) == encoding1:
            out = [-1] * t1.n
            _match_rooted(t1, c1, c1, t2, c2, c2, out)
            witness = TreeIsoWitness(tuple(out))
            if not is_labeled_tree_isomorphism(t1, t2, witness.mapping):
                raise AssertionError("canonical matching produced an invalid witness")
            return witness
    return None


def labeled_tree_isomorphisms_brute_force(t1: LabeledTree, t2: LabeledTree) -> list[Permutation]:
    """All label-preserving isomorphisms, by checking every bijection (n <= 8)."""
    if t1.n > 8:
        raise BoundExceededError("brute-force tree isomorphism is limited to n <= 8")
    if t1.n != t2.n:
        return []
    return [
        p for p in all_permutations(range(t1.n)) if is_labeled_tree_isomorphism(t1, t2, p)
    ]


def labeled_star_automorphisms(star: LabeledStar) -> PermGroup:
    """Self-isomorphisms of a labeled star.

    For n >= 3 the center is structurally fixed, so the group is the direct
    product of the symmetric groups on equal-label leaf classes.  For n = 2
    both vertices qualify as centers and the swap is included exactly when the
    two labels agree.
    """
    n = star.n
    if n == 1:
        return PermGroup([identity_permutation(1)])
    if n == 2:
        elements = [identity_permutation(2)]
        if star.labels[0] == star.labels[1]:
            elements.append((1, 0))
        return PermGroup(elements)
    classes: dict[Scalar, list[int]] = {}
    for leaf in star.leaves:
        classes.setdefault(star.labels[leaf], []).append(leaf)
    class_lists = list(classes.values())
    elements = []
    for images in product(*(all_permutations(cls) for cls in class_lists)):
        image = list(range(n))
        for cls, permuted in zip(class_lists, images):
            for src, dst in zip(cls, permuted):
                image[src] = dst
        elements.append(tuple(image))
    return PermGroup(elements)


class RayTruncation(NamedTuple):
    """A finite labeled path, with a flag for nonincreasing strictly positive labels."""

    tree: LabeledTree
    monotone: bool


def ray_truncation(labels: Sequence[int | str | Scalar]) -> RayTruncation:
    """Path graph x1 - x2 - ... - xN carrying the given labels in order."""
    values = [as_scalar(v) for v in labels]
    if not values:
        raise StructuralError("a ray truncation needs at least one vertex")
    edges = [(i, i + 1) for i in range(len(values) - 1)]
    monotone = all(v > 0 for v in values) and all(
        values[i] >= values[i + 1] for i in range(len(values) - 1)
    )
    return RayTruncation(LabeledTree(values, edges), monotone)
