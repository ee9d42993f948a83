"""Stack-based transition systems deciding degree-bounded derivability.

The degree-d system extends the classic shift/attach stack parser with arc
transitions that may skip up to d-1 elements below the stack top: an arc
always links the top with the element at depth 1+s (s < d), removes the
dependent from the stack, and requires the dependent to have collected all
of its own dependents first.  Degree 1 is the adjacent-only system, whose
derivable set is exactly the projective trees.

Membership is decided with a target-filtered (static-oracle) search: only
transitions that build arcs of the target tree are ever applicable.  Under
that filter, applying any applicable arc transition preserves derivability:
a derivation that performs the same arc later can be reordered to perform
it first, because the dependent is already complete (so no pending step
touches it) and removing it early only shortens stack distances for every
later arc.  Applicable arcs are therefore committed eagerly and the search
degenerates to a linear pass; ``oracle_attardi_reachable`` in
:mod:`depclass.genenum` re-decides membership by full backtracking search
and is tested to agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .tree import DepTree

DEFAULT_BUDGET = 10**6

Transition = tuple[str, int]  # ("shift", 0) | ("left", skip) | ("right", skip)

SHIFT: Transition = ("shift", 0)


class BudgetExceededError(RuntimeError):
    """Derivability search visited more configurations than allowed."""


@dataclass(frozen=True)
class Configuration:
    """Parser state: stack (top last), next buffer position, arcs built so far."""

    stack: tuple[int, ...]
    buffer_front: int
    built_arcs: frozenset[tuple[int, int]]


def initial_configuration() -> Configuration:
    return Configuration((), 1, frozenset())


def apply_transition(config: Configuration, move: Transition, n: int) -> Configuration:
    """Structurally apply one transition, without any target filtering."""
    op, skip = move
    stack, front, arcs = config.stack, config.buffer_front, config.built_arcs
    if op == "shift":
        if front > n:
            raise ValueError("shift with empty buffer")
        return Configuration(stack + (front,), front + 1, arcs)
    if skip < 0 or len(stack) < skip + 2:
        raise ValueError(f"{op} with skip {skip} needs stack depth {skip + 2}")
    top = stack[-1]
    deep = stack[-2 - skip]
    if op == "right":  # deeper element takes the top as dependent
        return Configuration(stack[:-1], front, arcs | {(deep, top)})
    if op == "left":  # top takes the deeper element as dependent
        rest = stack[: -2 - skip] + stack[-1 - skip :]
        return Configuration(rest, front, arcs | {(top, deep)})
    raise ValueError(f"unknown transition {op!r}")


def replay(t: DepTree, moves: list[Transition], degree: int | None = None) -> Configuration:
    """Run a transition sequence from the initial configuration.

    When ``degree`` is given, arcs with skip >= degree are rejected.
    """
    config = initial_configuration()
    for move in moves:
        if degree is not None and move[0] != "shift" and move[1] >= degree:
            raise ValueError(f"skip {move[1]} exceeds degree {degree}")
        config = apply_transition(config, move, t.n)
    return config


def attardi_derivation(
    t: DepTree, degree: int, budget: int = DEFAULT_BUDGET
) -> list[Transition] | None:
    """A transition sequence of the degree-d system building exactly t's arcs,
    or None when the tree is not derivable at this degree."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    heads = t.heads
    pending = [0] * (t.n + 1)  # dependents not yet attached, per node
    for h in heads:
        if h:
            pending[h] += 1
    stack: list[int] = []
    front = 1
    moves: list[Transition] = []
    states = 0
    while True:
        states += 1
        if states > budget:
            raise BudgetExceededError(f"search exceeded {budget} configurations")
        move = None
        for s in range(degree):
            if len(stack) < s + 2:
                break
            top = stack[-1]
            deep = stack[-2 - s]
            if heads[top - 1] == deep and not pending[top]:
                move = ("right", s)
                break
            if heads[deep - 1] == top and not pending[deep]:
                move = ("left", s)
                break
        if move is not None:
            op, s = move
            dep = stack.pop() if op == "right" else stack.pop(-2 - s)
            pending[heads[dep - 1]] -= 1
            moves.append(move)
        elif front <= t.n:
            stack.append(front)
            front += 1
            moves.append(SHIFT)
        else:
            break
    if stack == [t.root]:
        return moves
    return None


def attardi_reachable(t: DepTree, degree: int, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff some degree-d transition sequence builds exactly t's arcs."""
    return attardi_derivation(t, degree, budget) is not None


def attardi_degree(
    t: DepTree, cap: int = 3, budget: int = DEFAULT_BUDGET
) -> int | None:
    """Smallest degree <= cap at which t is derivable, or None (above cap).

    Derivability is monotone in the degree because the transition
    inventories are nested.
    """
    for d in range(1, cap + 1):
        if attardi_reachable(t, d, budget):
            return d
    return None
