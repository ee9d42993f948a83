import functools
import random

import pytest
from hypothesis import strategies as st

from depclass import DepTree
from depclass.genenum import enumerate_trees, random_tree

ROUNDTRIP_ALPHABET = "abcde"


@functools.lru_cache(maxsize=None)
def all_trees(n: int) -> tuple[DepTree, ...]:
    return tuple(enumerate_trees(n))


@st.composite
def dep_trees(draw, max_n: int = 8, labeled: bool = False) -> DepTree:
    """Arbitrary valid trees: attach each node to an already-attached one."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    order = draw(st.permutations(range(1, n + 1)))
    heads = [0] * n
    for pos, node in enumerate(order):
        if pos == 0:
            continue
        heads[node - 1] = draw(st.sampled_from(order[:pos]))
    labels = None
    if labeled:
        labels = tuple(draw(st.sampled_from(ROUNDTRIP_ALPHABET)) for _ in range(n))
    return DepTree(tuple(heads), labels)


def roundtrip_sample(seed: int = 0, count: int = 1000, max_n: int = 10):
    """The seeded labeled-tree sample used for the recovery-rate metric."""
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_n)
        tree = random_tree(n, rng)
        labels = tuple(rng.choice(ROUNDTRIP_ALPHABET) for _ in range(n))
        yield DepTree(tree.heads, labels)


@pytest.fixture(scope="session")
def small_tree_space():
    return {n: all_trees(n) for n in range(1, 6)}
