"""Tree transformations: reversible projectivization by lifting, and
projective reordering of word positions.

Lifting reattaches the dependent of a non-projective arc to its head's head
until every arc is projective, recording the original head's own arc label
inside the dependent's label.  The inverse transform reads those markers
back and searches for the recorded label among the descendants of the
current head; recovery is exact whenever that landing site is unambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .tree import Arc, DepTree, projection_masks

DEFAULT_SEPARATOR = "%"


class NotBijectiveError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    """Bijection old position -> new position over 1..n; mapping[i-1] = p(i)."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(self.mapping))
        if sorted(self.mapping) != list(range(1, len(self.mapping) + 1)):
            raise NotBijectiveError(f"{self.mapping} is not a bijection over 1..{len(self.mapping)}")

    def __call__(self, i: int) -> int:
        return self.mapping[i - 1] if i else 0

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self.mapping, 1))


def _escape(label: str, sep: str) -> str:
    return label.replace(sep, sep + sep)


def _unescape(label: str, sep: str) -> str:
    return label.replace(sep + sep, sep)


def split_annotation(label: str, sep: str = DEFAULT_SEPARATOR) -> tuple[str, str | None]:
    """Split an annotated label into (base, recorded head label).

    Doubled separators are escapes; the first lone separator is the
    annotation boundary.  Unannotated labels return (unescaped label, None).
    """
    i = 0
    while i < len(label):
        if label[i] == sep:
            if label[i + 1 : i + 2] == sep:
                i += 2
                continue
            return _unescape(label[:i], sep), _unescape(label[i + 1 :], sep)
        i += 1
    return _unescape(label, sep), None


def nonprojective_arcs(t: DepTree) -> list[Arc]:
    """Arcs covering at least one position that is not a descendant of the
    arc's head.  Empty exactly for projective trees."""
    masks = projection_masks(t)
    out = []
    for a in t.arcs:
        covered = ((1 << a.right) - 1) & ~((1 << (a.left + 1)) - 1)
        if covered & ~masks[a.head]:
            out.append(a)
    return out


def pseudo_projectivize(
    t: DepTree, separator: str = DEFAULT_SEPARATOR
) -> tuple[DepTree, int]:
    """Lift non-projective dependents until the tree is projective.

    Returns the projective tree and the number of lifts performed.  At each
    step the non-projective arc with the shortest span is lifted (leftmost
    dependent on ties): its dependent is reattached to the head's head and,
    on the first lift of a dependent, the head's own arc label is recorded
    in the dependent's label behind ``separator``.  Arcs out of the root are
    never non-projective, so a lift target always exists.  Trees without
    labels get "_" placeholders when a lift occurs.  Separator characters
    inside existing labels are escaped by doubling whenever the output
    carries labels, so round-tripping through ``deprojectivize`` is exact;
    projective labeled input is otherwise returned with its labels intact.
    """
    heads = list(t.heads)
    base_labels = list(t.labels) if t.labels is not None else None
    recorded: dict[int, str] = {}
    lifts = 0
    current = t
    while True:
        bad = nonprojective_arcs(current)
        if not bad:
            break
        arc = min(bad, key=lambda a: (a.right - a.left, a.dep))
        grandhead = heads[arc.head - 1]
        assert grandhead != 0, "arcs out of the root cannot be non-projective"
        if arc.dep not in recorded:
            if base_labels is None:
                base_labels = ["_"] * t.n
            recorded[arc.dep] = base_labels[arc.head - 1]
        heads[arc.dep - 1] = grandhead
        lifts += 1
        current = DepTree(tuple(heads))
    if base_labels is None:
        return DepTree(tuple(heads)), lifts
    out_labels = [_escape(lab, separator) for lab in base_labels]
    for dep, head_label in recorded.items():
        out_labels[dep - 1] += separator + _escape(head_label, separator)
    return DepTree(tuple(heads), tuple(out_labels)), lifts


def deprojectivize(
    t: DepTree, separator: str = DEFAULT_SEPARATOR
) -> tuple[DepTree, int]:
    """Undo lifting by reading annotations back out of the labels.

    Each annotated dependent is reattached to the first descendant of its
    current head (breadth-first, nearest level first, left to right within
    a level, never entering the dependent's own subtree) whose base label
    matches the recorded head label.  Returns the tree and the number of
    annotations that found no landing site (those are stripped with the arc
    left in place).
    """
    if t.labels is None:
        return t, 0
    heads = list(t.heads)
    parsed = [split_annotation(lab, separator) for lab in t.labels]
    labels = [base for base, _ in parsed]
    unresolved = 0
    for dep in range(1, t.n + 1):
        head_label = parsed[dep - 1][1]
        if head_label is None:
            continue
        target = _find_landing_site(heads, labels, dep, head_label)
        if target is None:
            unresolved += 1
        else:
            heads[dep - 1] = target
    return DepTree(tuple(heads), tuple(labels)), unresolved


def _find_landing_site(
    heads: list[int], labels: list[str], dep: int, head_label: str
) -> int | None:
    start = heads[dep - 1]
    if start == 0:
        return None
    children: list[list[int]] = [[] for _ in range(len(heads) + 1)]
    for d, h in enumerate(heads, 1):
        if h:
            children[h].append(d)
    level = [c for c in children[start] if c != dep]
    while level:
        for c in level:
            if labels[c - 1] == head_label:
                return c
        level = sorted(x for c in level for x in children[c])
    return None


def projective_rearrangement(t: DepTree) -> Permutation:
    """Word-order permutation after which the tree is projective.

    Each node is laid out between its left and right children blocks with
    children kept in their original relative order, so every subtree becomes
    contiguous; a tree that is already projective maps to the identity.
    """
    order: list[int] = []
    todo: list[tuple[int, bool]] = [(t.root, False)]
    while todo:
        v, emit = todo.pop()
        if emit:
            order.append(v)
            continue
        kids = t.children[v]
        left = [c for c in kids if c < v]
        right = [c for c in kids if c > v]
        for c in reversed(right):
            todo.append((c, False))
        todo.append((v, True))
        for c in reversed(left):
            todo.append((c, False))
    mapping = [0] * t.n
    for new_pos, v in enumerate(order, 1):
        mapping[v - 1] = new_pos
    return Permutation(tuple(mapping))


def apply_permutation(t: DepTree, p: Permutation | Sequence[int]) -> DepTree:
    """Relabel positions through a bijection; the head relation is preserved."""
    if not isinstance(p, Permutation):
        p = Permutation(tuple(p))
    if len(p.mapping) != t.n:
        raise NotBijectiveError(f"permutation over {len(p.mapping)} positions applied to {t.n} nodes")
    heads = [0] * t.n
    labels = [""] * t.n if t.labels is not None else None
    for i in range(1, t.n + 1):
        heads[p(i) - 1] = p(t.heads[i - 1])
        if labels is not None:
            labels[p(i) - 1] = t.labels[i - 1]
    return DepTree(tuple(heads), None if labels is None else tuple(labels))
