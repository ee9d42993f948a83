"""Deciders for the formal dependency-tree classes and a one-shot classifier.

All deciders are pure functions of a validated DepTree.  The membership
relations they implement form a lattice (projective inside 1-planar inside
2-planar, gap-minding inside mild-one-inherit inside well-nested-gap-1, and
so on); ``verify_lattice`` in :mod:`depclass.genenum` checks those relations
exhaustively over small trees.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import transitions
from .tree import (
    DepTree,
    crossing_pairs,
    dependency_length,
    mask_runs,
    projection_masks,
)

DEFAULT_COLORING_BUDGET = 10_000


class MultipleGapsError(ValueError):
    """Gap inheritance is only defined for parents with a single gap."""


class ColoringBudgetError(RuntimeError):
    """Exact page-number search exceeded its state budget."""


def is_projective(t: DepTree) -> bool:
    """True iff every node's projection is one contiguous interval."""
    return all(mask_runs(m) == 1 for m in projection_masks(t)[1:])


def is_planar1(t: DepTree) -> bool:
    """True iff no two arcs cross."""
    return not crossing_pairs(t)


def is_root_covered(t: DepTree) -> bool:
    """True iff some arc spans strictly over the root's position."""
    r = t.root
    return any(a.left < r < a.right for a in t.arcs)


def gap_degree_node(t: DepTree, i: int) -> int:
    """Number of discontinuities in node i's projection."""
    return mask_runs(projection_masks(t)[i]) - 1


def gap_degree(t: DepTree) -> int:
    """Highest gap degree over all nodes."""
    return max(mask_runs(m) for m in projection_masks(t)[1:]) - 1


def is_well_nested(t: DepTree) -> bool:
    """True iff no two projections interleave.

    Projections of nodes a and b interleave when positions i < j < k < l
    exist with i, k only in a's projection and j, l only in b's.  Checked
    for every node pair on the symmetric-difference parts of the two masks;
    an interleaving exists exactly when the merged membership sequence
    alternates through at least four blocks.
    """
    masks = projection_masks(t)
    spans = [None] + [((m & -m).bit_length() - 1, m.bit_length() - 1) for m in masks[1:]]
    n = t.n
    for a in range(1, n + 1):
        lo_a, hi_a = spans[a]
        for b in range(a + 1, n + 1):
            lo_b, hi_b = spans[b]
            if hi_a < lo_b or hi_b < lo_a:
                continue
            pa, pb = masks[a], masks[b]
            only_a = pa & ~pb
            only_b = pb & ~pa
            if not only_a or not only_b:
                continue
            merged = only_a | only_b
            blocks = 0
            prev = None
            while merged:
                low = merged & -merged
                side = bool(only_a & low)
                if side is not prev:
                    blocks += 1
                    if blocks >= 4:
                        return False
                    prev = side
                merged &= merged - 1
    return True


def in_wg(t: DepTree, k: int) -> bool:
    """True iff the tree is well-nested with gap degree at most k."""
    return gap_degree(t) <= k and is_well_nested(t)


def wg_level(t: DepTree) -> int | None:
    """Smallest k such that the tree is well-nested with gap degree <= k.

    None when the tree is ill-nested (no such k exists).
    """
    return gap_degree(t) if is_well_nested(t) else None


def _single_gap(mask: int) -> tuple[int, int]:
    """The missing interval of a two-run mask, as (lo, hi) inclusive."""
    lo = (mask & -mask).bit_length() - 1
    hi = mask.bit_length() - 1
    missing = ~mask & ((1 << (hi + 1)) - 1) & ~((1 << lo) - 1)
    return (missing & -missing).bit_length() - 1, missing.bit_length() - 1


def gap_inheritance(t: DepTree, parent: int) -> list[int]:
    """Children of ``parent`` with descendants on both sides of its gap.

    Defined for parents whose projection has at most one gap; a gap-free
    parent has no inheriting children.
    """
    masks = projection_masks(t)
    runs = mask_runs(masks[parent])
    if runs == 1:
        return []
    if runs > 2:
        raise MultipleGapsError(f"node {parent} has {runs - 1} gaps, inheritance needs exactly one")
    gap_lo, gap_hi = _single_gap(masks[parent])
    out = []
    for c in t.children[parent]:
        m = masks[c]
        lo = (m & -m).bit_length() - 1
        hi = m.bit_length() - 1
        if lo < gap_lo and hi > gap_hi:
            out.append(c)
    return out


def is_gap_minding(t: DepTree) -> bool:
    """Well-nested, gap degree <= 1, and no child inherits its parent's gap."""
    if not in_wg(t, 1):
        return False
    return all(not gap_inheritance(t, v) for v in range(1, t.n + 1))


def is_mild_plus_one_inherit(t: DepTree) -> bool:
    """Well-nested, gap degree <= 1, and at most one child inherits each gap."""
    if not in_wg(t, 1):
        return False
    return all(len(gap_inheritance(t, v)) <= 1 for v in range(1, t.n + 1))


def is_head_split_wg1(t: DepTree) -> bool:
    """Well-nested gap-degree-<=1 trees where gaps that swallow the head also
    swallow the head's own gap.

    For every node x whose gap contains head(x): if head(x) itself has a gap,
    that gap must lie inside x's gap.  Nodes whose gap does not contain their
    head impose no condition.
    """
    if not in_wg(t, 1):
        return False
    masks = projection_masks(t)
    for x in range(1, t.n + 1):
        if mask_runs(masks[x]) != 2:
            continue
        gap_lo, gap_hi = _single_gap(masks[x])
        h = t.head(x)
        if h == 0 or not gap_lo <= h <= gap_hi:
            continue
        if mask_runs(masks[h]) == 2:
            hg_lo, hg_hi = _single_gap(masks[h])
            if not (gap_lo <= hg_lo and hg_hi <= gap_hi):
                return False
    return True


def _color_backtrack(adj: list[list[int]], order: list[int], k: int, budget: int) -> bool:
    colors: dict[int, int] = {}
    states = 0

    def assign(pos: int) -> bool:
        nonlocal states
        states += 1
        if states > budget:
            raise ColoringBudgetError(f"k-coloring search exceeded {budget} states")
        if pos == len(order):
            return True
        v = order[pos]
        used = {colors[u] for u in adj[v] if u in colors}
        # colors are interchangeable until one is placed, so pin the first vertex
        for c in range(1 if pos == 0 else k):
            if c in used:
                continue
            colors[v] = c
            if assign(pos + 1):
                return True
            del colors[v]
        return False

    return assign(0)


def is_k_planar(t: DepTree, k: int, budget: int = DEFAULT_COLORING_BUDGET) -> bool:
    """True iff the arcs split into k pages with no within-page crossing.

    Equivalent to k-colorability of the crossing graph: k=1 means no
    crossings, k=2 is a bipartiteness check, k>=3 runs an exact backtracking
    search guarded by ``budget`` states.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    pairs = crossing_pairs(t)
    if not pairs:
        return True
    if k == 1:
        return False
    involved = sorted({i for p in pairs for i in p})
    adj: dict[int, list[int]] = {i: [] for i in involved}
    for i, j in pairs:
        adj[i].append(j)
        adj[j].append(i)
    if k == 2:
        color: dict[int, int] = {}
        for start in involved:
            if start in color:
                continue
            color[start] = 0
            queue = [start]
            for v in queue:
                for u in adj[v]:
                    if u not in color:
                        color[u] = color[v] ^ 1
                        queue.append(u)
                    elif color[u] == color[v]:
                        return False
        return True
    order = sorted(involved, key=lambda v: -len(adj[v]))
    full_adj: list[list[int]] = [[] for _ in range(len(t.arcs))]
    for i, j in pairs:
        full_adj[i].append(j)
        full_adj[j].append(i)
    return _color_backtrack(full_adj, order, k, budget)


def page_number(t: DepTree, budget: int = DEFAULT_COLORING_BUDGET) -> int:
    """Smallest number of mutually non-crossing arc pages (chromatic number
    of the crossing graph); 1 for crossing-free trees."""
    k = 1
    while not is_k_planar(t, k, budget):
        k += 1
    return k


def is_one_endpoint_crossing(t: DepTree) -> bool:
    """True iff, for every arc, all arcs crossing it share a common node."""
    pairs = crossing_pairs(t)
    if not pairs:
        return True
    arcs = t.arcs
    crossers: dict[int, list[int]] = {}
    for i, j in pairs:
        crossers.setdefault(i, []).append(j)
        crossers.setdefault(j, []).append(i)
    for others in crossers.values():
        first = arcs[others[0]]
        shared = {first.head, first.dep}
        for j in others[1:]:
            shared &= {arcs[j].head, arcs[j].dep}
            if not shared:
                return False
    return True


def max_dependency_length(t: DepTree) -> int:
    """Longest arc span; 0 for a single-node tree."""
    return max((dependency_length(a) for a in t.arcs), default=0)


@dataclass(frozen=True)
class ClassificationRecord:
    """Membership bits and numeric measures for one tree.

    ``wg_level`` is None for ill-nested trees; ``attardi_degree`` is None
    when no degree up to the cap (or within the search budget) derives the
    tree.
    """

    projective: bool
    planar1: bool
    root_covered: bool
    gap_degree: int
    well_nested: bool
    wg_level: int | None
    gap_minding: bool
    mild_plus_one_inherit: bool
    head_split_wg1: bool
    page_number: int
    one_endpoint_crossing: bool
    attardi_degree: int | None
    crossings: int
    max_dependency_length: int


def classify(
    t: DepTree,
    attardi_cap: int = 3,
    attardi_budget: int = transitions.DEFAULT_BUDGET,
    coloring_budget: int = DEFAULT_COLORING_BUDGET,
) -> ClassificationRecord:
    """Evaluate every decider on one tree."""
    try:
        ad = transitions.attardi_degree(t, cap=attardi_cap, budget=attardi_budget)
    except transitions.BudgetExceededError:
        ad = None
    return ClassificationRecord(
        projective=is_projective(t),
        planar1=is_planar1(t),
        root_covered=is_root_covered(t),
        gap_degree=gap_degree(t),
        well_nested=is_well_nested(t),
        wg_level=wg_level(t),
        gap_minding=is_gap_minding(t),
        mild_plus_one_inherit=is_mild_plus_one_inherit(t),
        head_split_wg1=is_head_split_wg1(t),
        page_number=page_number(t, coloring_budget),
        one_endpoint_crossing=is_one_endpoint_crossing(t),
        attardi_degree=ad,
        crossings=len(crossing_pairs(t)),
        max_dependency_length=max_dependency_length(t),
    )


# Named membership predicates, shared by the report builder and the CLI
# generator filter.
CLASS_PREDICATES = {
    "projective": is_projective,
    "planar_1": is_planar1,
    "planar_2": lambda t: is_k_planar(t, 2),
    "planar_3": lambda t: is_k_planar(t, 3),
    "root_covered": is_root_covered,
    "well_nested": is_well_nested,
    "wg_1": lambda t: in_wg(t, 1),
    "wg_2": lambda t: in_wg(t, 2),
    "gap_minding": is_gap_minding,
    "mild_plus_one_inherit": is_mild_plus_one_inherit,
    "head_split_wg1": is_head_split_wg1,
    "one_endpoint_crossing": is_one_endpoint_crossing,
    "attardi_1": lambda t: transitions.attardi_reachable(t, 1),
    "attardi_2": lambda t: transitions.attardi_reachable(t, 2),
    "attardi_3": lambda t: transitions.attardi_reachable(t, 3),
}

CLASS_ALIASES = {
    "1planar": "planar_1",
    "2planar": "planar_2",
    "3planar": "planar_3",
    "1ec": "one_endpoint_crossing",
    "m0i": "gap_minding",
    "m1i": "mild_plus_one_inherit",
    "wg0": "projective",
    "wg1": "wg_1",
    "wg2": "wg_2",
    "ad1": "attardi_1",
    "ad2": "attardi_2",
    "ad3": "attardi_3",
}


def resolve_class_name(name: str) -> str:
    """Map a user-facing class name or alias to its canonical key."""
    key = name.strip().lower().replace("-", "_")
    key = CLASS_ALIASES.get(key, key)
    if key not in CLASS_PREDICATES:
        valid = sorted(set(CLASS_PREDICATES) | set(CLASS_ALIASES))
        raise KeyError(f"unknown class {name!r}; valid names: {', '.join(valid)}")
    return key
