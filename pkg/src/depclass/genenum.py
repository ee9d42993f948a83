"""Exhaustive and random generation of rooted trees, brute-force oracles,
and the exhaustive verification suite for the class-inclusion lattice.

The oracles here deliberately restate definitions in the most literal way
possible (try every 2-partition, check every covered position, search every
transition order) so the fast deciders can be validated against them.
"""

from __future__ import annotations

import heapq
import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from . import checkers, transforms, transitions
from .tree import DepTree, InvalidTreeError, crossing_pairs, projection_masks

ENUM_MAX_N = 8
ORACLE_MAX_N = 12
LATTICE_MAX_N = 7


class TooLargeError(ValueError):
    pass


def enumerate_trees(n: int) -> Iterator[DepTree]:
    """Every rooted labeled tree on positions 1..n, exactly once (n^(n-1)).

    Up to n=6 all head arrays are filtered by validation, in lexicographic
    order; for n=7..8 trees are built constructively from parent-code
    sequences to avoid scanning the (n+1)^n array space.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > ENUM_MAX_N:
        raise TooLargeError(f"enumeration is guarded at n <= {ENUM_MAX_N}")
    if n <= 6:
        for heads in itertools.product(range(n + 1), repeat=n):
            try:
                yield DepTree(heads)
            except InvalidTreeError:
                continue
    else:
        for seq in itertools.product(range(1, n + 1), repeat=n - 2):
            for root in range(1, n + 1):
                yield DepTree(_heads_from_prufer(seq, root, n))


def _heads_from_prufer(seq: tuple[int, ...], root: int, n: int) -> tuple[int, ...]:
    """Decode a parent-code sequence into a head array rooted at ``root``."""
    if n == 1:
        return (0,)
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    adjacency: list[list[int]] = [[] for _ in range(n + 1)]
    leaves = [i for i in range(1, n + 1) if degree[i] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        adjacency[leaf].append(x)
        adjacency[x].append(leaf)
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    adjacency[u].append(v)
    adjacency[v].append(u)
    heads = [0] * n
    seen = [False] * (n + 1)
    seen[root] = True
    queue = [root]
    for node in queue:
        for nb in adjacency[node]:
            if not seen[nb]:
                seen[nb] = True
                heads[nb - 1] = node
                queue.append(nb)
    return tuple(heads)


def random_tree(n: int, seed: int | random.Random) -> DepTree:
    """Uniformly random rooted labeled tree on n nodes, deterministic per seed.

    A fresh generator is derived from an integer seed; passing a
    ``random.Random`` instance draws from it (useful for sampling streams).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if n == 1:
        return DepTree((0,))
    seq = tuple(rng.randrange(1, n + 1) for _ in range(n - 2))
    root = rng.randrange(1, n + 1)
    return DepTree(_heads_from_prufer(seq, root, n))


def oracle_two_planar(t: DepTree) -> bool:
    """2-page membership by trying every 2-partition of crossing-involved arcs."""
    if t.n > ORACLE_MAX_N:
        raise TooLargeError(f"two-page oracle is guarded at n <= {ORACLE_MAX_N}")
    pairs = crossing_pairs(t)
    if not pairs:
        return True
    involved = sorted({i for p in pairs for i in p})
    index = {arc: pos for pos, arc in enumerate(involved)}
    local_pairs = [(index[i], index[j]) for i, j in pairs]
    # the first involved arc's page is fixed: pages are interchangeable
    for bits in itertools.product((0, 1), repeat=len(involved) - 1):
        assignment = (0,) + bits
        if all(assignment[i] != assignment[j] for i, j in local_pairs):
            return True
    return False


def oracle_projective_by_cover(t: DepTree) -> bool:
    """Projectivity via the per-arc rule: everything an arc covers must
    descend from the arc's head."""
    masks = projection_masks(t)
    for a in t.arcs:
        for m in range(a.left + 1, a.right):
            if not masks[a.head] >> m & 1:
                return False
    return True


def oracle_attardi_reachable(t: DepTree, degree: int, budget: int = 10**6) -> bool:
    """Degree-d derivability by full backtracking over transition orders.

    Explores shift and every applicable target arc at each configuration
    (no eager commitment), memoizing failed (stack, buffer) states.  This is
    the reference the fast search in :mod:`depclass.transitions` is tested
    against.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    n = t.n
    heads = t.heads
    child_count = [0] * (n + 1)
    for h in heads:
        if h:
            child_count[h] += 1
    failed: set[tuple[tuple[int, ...], int]] = set()

    def complete(node: int, on_stack: frozenset[int], front: int) -> bool:
        if not child_count[node]:
            return True
        return not any(
            c in on_stack or c >= front
            for c in range(1, n + 1)
            if heads[c - 1] == node
        )

    def search(stack: tuple[int, ...], front: int) -> bool:
        if front > n and len(stack) == 1:
            return True
        key = (stack, front)
        if key in failed:
            return False
        on_stack = frozenset(stack)
        for s in range(degree):
            if len(stack) < s + 2:
                break
            top = stack[-1]
            deep = stack[-2 - s]
            if heads[top - 1] == deep and complete(top, on_stack, front):
                if search(stack[:-1], front):
                    return True
            if heads[deep - 1] == top and complete(deep, on_stack, front):
                if search(stack[: -2 - s] + stack[-1 - s :], front):
                    return True
        if front <= n and search(stack + (front,), front + 1):
            return True
        failed.add(key)
        if len(failed) > budget:
            raise transitions.BudgetExceededError(f"oracle exceeded {budget} states")
        return False

    return search((), 1)


@dataclass
class LatticeCheck:
    """Outcome of one exhaustive property check."""

    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}" + (f"  [{self.detail}]" if self.detail else "")


_INCLUSIONS = [
    ("gap_minding", "mild_plus_one_inherit"),
    ("mild_plus_one_inherit", "wg_1"),
    ("head_split_wg1", "wg_1"),
    ("projective", "wg_1"),
    ("wg_1", "wg_2"),
    ("projective", "planar_1"),
    ("planar_1", "planar_2"),
    ("planar_2", "planar_3"),
    ("one_endpoint_crossing", "planar_2"),
    ("attardi_1", "attardi_2"),
    ("attardi_2", "attardi_3"),
]


def _memberships(t: DepTree) -> dict[str, bool]:
    # looked up through the module so a corrupted decider is observable
    return {
        "projective": checkers.is_projective(t),
        "planar_1": checkers.is_planar1(t),
        "planar_2": checkers.is_k_planar(t, 2),
        "planar_3": checkers.is_k_planar(t, 3),
        "root_covered": checkers.is_root_covered(t),
        "well_nested": checkers.is_well_nested(t),
        "wg_0": checkers.in_wg(t, 0),
        "wg_1": checkers.in_wg(t, 1),
        "wg_2": checkers.in_wg(t, 2),
        "gap_minding": checkers.is_gap_minding(t),
        "mild_plus_one_inherit": checkers.is_mild_plus_one_inherit(t),
        "head_split_wg1": checkers.is_head_split_wg1(t),
        "one_endpoint_crossing": checkers.is_one_endpoint_crossing(t),
        "attardi_1": transitions.attardi_reachable(t, 1),
        "attardi_2": transitions.attardi_reachable(t, 2),
        "attardi_3": transitions.attardi_reachable(t, 3),
    }


def verify_lattice(max_n: int = 6) -> list[LatticeCheck]:
    """Check every definitional equivalence, inclusion and oracle match over
    all trees with up to ``max_n`` nodes; also verify the transforms.

    Returns one result per property, carrying the first counterexample head
    array on failure and incomparability witnesses on success.
    """
    if max_n > LATTICE_MAX_N:
        raise TooLargeError(f"exhaustive verification is guarded at n <= {LATTICE_MAX_N}")
    if max_n < 1:
        raise ValueError("max_n must be >= 1")

    equiv_fail = None
    inclusion_fail: dict[tuple[str, str], tuple[int, ...]] = {}
    ad1_fail = None
    two_planar_fail = None
    pseudo_fail = None
    rearrange_fail = None
    witness_ec_not_wn: tuple[int, ...] | None = None
    witness_wn_not_ec: tuple[int, ...] | None = None

    for n in range(1, max_n + 1):
        for t in enumerate_trees(n):
            m = _memberships(t)
            definitions = (
                m["projective"],
                oracle_projective_by_cover(t),
                m["planar_1"] and not m["root_covered"],
                checkers.gap_degree(t) == 0,
                m["wg_0"],
            )
            if equiv_fail is None and len(set(definitions)) != 1:
                equiv_fail = t.heads
            for narrow, wide in _INCLUSIONS:
                if m[narrow] and not m[wide] and (narrow, wide) not in inclusion_fail:
                    inclusion_fail[(narrow, wide)] = t.heads
            if ad1_fail is None and m["attardi_1"] != m["projective"]:
                ad1_fail = t.heads
            if two_planar_fail is None and m["planar_2"] != oracle_two_planar(t):
                two_planar_fail = t.heads
            if witness_ec_not_wn is None and m["one_endpoint_crossing"] and not m["well_nested"]:
                witness_ec_not_wn = t.heads
            if witness_wn_not_ec is None and m["well_nested"] and not m["one_endpoint_crossing"]:
                witness_wn_not_ec = t.heads
            if pseudo_fail is None:
                lifted, _ = transforms.pseudo_projectivize(t)
                if not checkers.is_projective(lifted):
                    pseudo_fail = t.heads
            if rearrange_fail is None:
                perm = transforms.projective_rearrangement(t)
                if not checkers.is_projective(transforms.apply_permutation(t, perm)):
                    rearrange_fail = t.heads
                elif m["projective"] and not perm.is_identity():
                    rearrange_fail = t.heads

    def heads_str(heads):
        return "counterexample heads=" + ",".join(map(str, heads))

    results = [
        LatticeCheck(
            "projectivity definitions agree (interval / cover / planar+uncovered root / gap 0 / wg 0)",
            equiv_fail is None,
            heads_str(equiv_fail) if equiv_fail else "",
        )
    ]
    for narrow, wide in _INCLUSIONS:
        bad = inclusion_fail.get((narrow, wide))
        results.append(
            LatticeCheck(f"{narrow} is a subset of {wide}", bad is None, heads_str(bad) if bad else "")
        )
    results.append(
        LatticeCheck("degree-1 derivable equals projective", ad1_fail is None,
                     heads_str(ad1_fail) if ad1_fail else "")
    )
    results.append(
        LatticeCheck("2-page decider matches brute-force partition oracle",
                     two_planar_fail is None, heads_str(two_planar_fail) if two_planar_fail else "")
    )
    # smallest possible witnesses: interleaving needs two disjoint two-node
    # projections plus a root (n=5); two crossers sharing no endpoint need six
    # distinct positions (n=6)
    for name, witness, min_n in [
        ("one-endpoint-crossing tree that is ill-nested exists", witness_ec_not_wn, 5),
        ("well-nested tree that is not one-endpoint-crossing exists", witness_wn_not_ec, 6),
    ]:
        if witness is not None:
            results.append(LatticeCheck(name, True, "witness heads=" + ",".join(map(str, witness))))
        elif max_n < min_n:
            results.append(LatticeCheck(name, True, f"not searched: smallest witness has {min_n} nodes"))
        else:
            results.append(LatticeCheck(name, False, "no witness found"))
    results.append(
        LatticeCheck("projectivization always yields a projective tree",
                     pseudo_fail is None, heads_str(pseudo_fail) if pseudo_fail else "")
    )
    results.append(
        LatticeCheck("rearrangement yields projective trees and fixes projective ones",
                     rearrange_fail is None, heads_str(rearrange_fail) if rearrange_fail else "")
    )
    return results
