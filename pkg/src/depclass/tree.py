"""Dependency-tree data model and the order-geometric predicates on arcs.

Trees live over word positions 1..n.  A head value of 0 marks the syntactic
root; the artificial 0 node is never materialized and therefore owns no arc,
so it can neither cover nor cross anything.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence


class InvalidTreeError(ValueError):
    """Head array does not encode a single-rooted, acyclic dependency tree."""


class MultipleRootsError(InvalidTreeError):
    pass


class CycleError(InvalidTreeError):
    pass


class OutOfRangeError(InvalidTreeError):
    pass


class EmptySetError(ValueError):
    pass


@dataclass(frozen=True)
class Arc:
    """Directed dependency from ``head`` to ``dep`` (both real positions)."""

    head: int
    dep: int

    def __post_init__(self):
        if self.head == self.dep:
            raise ValueError(f"arc endpoints must differ, got ({self.head}, {self.dep})")
        if self.head < 1 or self.dep < 1:
            raise ValueError(f"arc endpoints must be >= 1, got ({self.head}, {self.dep})")

    @property
    def left(self) -> int:
        return min(self.head, self.dep)

    @property
    def right(self) -> int:
        return max(self.head, self.dep)


@dataclass(frozen=True)
class DepTree:
    """Validated dependency tree: ``heads[i-1]`` is the head of node i (0 = root).

    Construction runs full validation; every instance satisfies the tree
    invariants.  Instances are immutable and hashable, so derived data
    (children, arcs, projections) is cached per value.  Labels are carried
    opaquely and never influence any structural predicate.
    """

    heads: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "heads", tuple(self.heads))
        _check_heads(self.heads)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != len(self.heads):
                raise ValueError("labels length must match heads length")

    @property
    def n(self) -> int:
        return len(self.heads)

    @functools.cached_property
    def root(self) -> int:
        return self.heads.index(0) + 1

    def head(self, i: int) -> int:
        return self.heads[i - 1]

    def label(self, i: int) -> str | None:
        return None if self.labels is None else self.labels[i - 1]

    @functools.cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        """Children of each node in ascending position; index 0 is unused."""
        kids: list[list[int]] = [[] for _ in range(self.n + 1)]
        for dep, head in enumerate(self.heads, 1):
            if head:
                kids[head].append(dep)
        return tuple(tuple(k) for k in kids)

    @functools.cached_property
    def arcs(self) -> tuple[Arc, ...]:
        """The n-1 real arcs, ordered by dependent position."""
        return tuple(Arc(h, d) for d, h in enumerate(self.heads, 1) if h)


def _check_heads(heads: tuple[int, ...]) -> None:
    n = len(heads)
    if n < 1:
        raise InvalidTreeError("a tree needs at least one node")
    for dep, h in enumerate(heads, 1):
        if not 0 <= h <= n:
            raise OutOfRangeError(f"head of node {dep} is {h}, outside 0..{n}")
    if heads.count(0) > 1:
        raise MultipleRootsError(f"{heads.count(0)} root entries, expected exactly one")
    # A rootless array necessarily contains a cycle, so chain-walking covers
    # both the 0-root and the cyclic case.
    state = [0] * (n + 1)  # 0 unseen, 1 on current walk, 2 known good
    for start in range(1, n + 1):
        path = []
        j = start
        while j and state[j] == 0:
            state[j] = 1
            path.append(j)
            j = heads[j - 1]
        if j and state[j] == 1:
            raise CycleError(f"head chain from node {start} revisits node {j}")
        for v in path:
            state[v] = 2


def validate_tree(heads: Sequence[int], labels: Sequence[str] | None = None) -> DepTree:
    """Build a DepTree from a raw head array, raising InvalidTreeError subclasses."""
    return DepTree(tuple(heads), None if labels is None else tuple(labels))


@dataclass(frozen=True)
class IntervalSet:
    """A node set as its unique decomposition into maximal intervals [a, b]."""

    intervals: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "intervals", tuple(tuple(iv) for iv in self.intervals))
        if not self.intervals:
            raise EmptySetError("an IntervalSet must contain at least one interval")
        prev_end = None
        for a, b in self.intervals:
            if a > b:
                raise ValueError(f"interval [{a}, {b}] is reversed")
            if prev_end is not None and a <= prev_end + 1:
                raise ValueError("intervals must be sorted, disjoint and non-adjacent")
            prev_end = b

    @property
    def gap_count(self) -> int:
        return len(self.intervals) - 1

    def gaps(self) -> tuple[tuple[int, int], ...]:
        """The maximal missing intervals between consecutive member intervals."""
        out = []
        for (_, b), (c, _) in zip(self.intervals, self.intervals[1:]):
            out.append((b + 1, c - 1))
        return tuple(out)

    def members(self) -> tuple[int, ...]:
        return tuple(x for a, b in self.intervals for x in range(a, b + 1))

    def __contains__(self, x: int) -> bool:
        return any(a <= x <= b for a, b in self.intervals)


def interval_decomposition(nodes: Iterable[int]) -> IntervalSet:
    """Decompose a node set into maximal intervals; gap count = intervals - 1."""
    xs = sorted(set(nodes))
    if not xs:
        raise EmptySetError("cannot decompose the empty set")
    if xs[0] < 1:
        raise ValueError("node positions must be >= 1")
    intervals = []
    start = prev = xs[0]
    for x in xs[1:]:
        if x == prev + 1:
            prev = x
        else:
            intervals.append((start, prev))
            start = prev = x
    intervals.append((start, prev))
    return IntervalSet(tuple(intervals))


@functools.lru_cache(maxsize=8192)
def projection_masks(t: DepTree) -> tuple[int, ...]:
    """Per-node projections as bit masks (bit i = node i); index 0 is unused.

    The mask of a node covers the node itself and all of its descendants.
    """
    masks = [0] * (t.n + 1)
    order = [t.root]
    for v in order:
        order.extend(t.children[v])
    for v in reversed(order):
        m = 1 << v
        for c in t.children[v]:
            m |= masks[c]
        masks[v] = m
    return tuple(masks)


def projection(t: DepTree, i: int) -> frozenset[int]:
    """Node i together with all of its descendants, as a position set."""
    if not 1 <= i <= t.n:
        raise ValueError(f"node {i} outside 1..{t.n}")
    mask = projection_masks(t)[i]
    return frozenset(_iter_bits(mask))


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_runs(mask: int) -> int:
    """Number of maximal runs of consecutive set bits."""
    return bin(mask & ~(mask >> 1)).count("1")


def arc_covers(a: Arc, m: int) -> bool:
    """True iff position m lies strictly between the arc's endpoints."""
    return a.left < m < a.right


def arcs_cross(a: Arc, b: Arc) -> bool:
    """True iff the two arcs' endpoint pairs strictly interleave."""
    return a.left < b.left < a.right < b.right or b.left < a.left < b.right < a.right


def dependency_length(a: Arc) -> int:
    """Linear distance spanned by the arc."""
    return a.right - a.left


@dataclass(frozen=True)
class CrossingGraph:
    """Graph with one vertex per arc and one edge per crossing arc pair."""

    vertices: tuple[Arc, ...]
    edges: frozenset[tuple[int, int]]

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.vertices]
        for i, j in sorted(self.edges):
            adj[i].append(j)
            adj[j].append(i)
        return adj


@functools.lru_cache(maxsize=8192)
def crossing_pairs(t: DepTree) -> tuple[tuple[int, int], ...]:
    """Index pairs (i < j) of crossing arcs within ``t.arcs``."""
    spans = [(a.left, a.right) for a in t.arcs]
    out = []
    for i, (li, ri) in enumerate(spans):
        for j in range(i + 1, len(spans)):
            lj, rj = spans[j]
            if li < lj < ri < rj or lj < li < rj < ri:
                out.append((i, j))
    return tuple(out)


def crossing_graph(t: DepTree) -> CrossingGraph:
    return CrossingGraph(t.arcs, frozenset(crossing_pairs(t)))


def crossing_count(t: DepTree) -> int:
    """Number of unordered crossing arc pairs."""
    return len(crossing_pairs(t))
