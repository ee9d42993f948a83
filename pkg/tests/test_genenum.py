import itertools
import math
import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from depclass import (
    DepTree,
    InvalidTreeError,
    TooLargeError,
    enumerate_trees,
    is_k_planar,
    is_projective,
    oracle_projective_by_cover,
    oracle_two_planar,
    random_tree,
    validate_tree,
    verify_lattice,
)
from depclass import checkers
from depclass.genenum import _heads_from_prufer

from conftest import all_trees


class TestEnumeration:
    @pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 9), (4, 64), (6, 7776)])
    def test_cayley_counts(self, n, count):
        assert sum(1 for _ in enumerate_trees(n)) == count == n ** (n - 1)

    def test_trees_are_distinct_and_valid(self):
        seen = set()
        for t in enumerate_trees(5):
            assert t.heads not in seen
            seen.add(t.heads)
            validate_tree(t.heads)
        assert len(seen) == 5**4

    def test_constructive_regime_matches_filtering(self):
        # n=5 via parent-code decoding against the brute-force filter
        filtered = {t.heads for t in all_trees(5)}
        constructed = {
            _heads_from_prufer(seq, root, 5)
            for seq in itertools.product(range(1, 6), repeat=3)
            for root in range(1, 6)
        }
        assert constructed == filtered

    def test_seven_node_count(self):
        assert sum(1 for _ in enumerate_trees(7)) == 7**6

    def test_guards(self):
        with pytest.raises(TooLargeError):
            next(enumerate_trees(9))
        with pytest.raises(ValueError):
            next(enumerate_trees(0))


class TestRandomTree:
    def test_single_node(self):
        assert random_tree(1, 123).heads == (0,)

    def test_deterministic(self):
        assert random_tree(5, 42) == random_tree(5, 42)
        assert random_tree(9, 7).heads == random_tree(9, 7).heads

    def test_shared_generator_advances(self):
        rng = random.Random(3)
        a = random_tree(6, rng)
        b = random_tree(6, rng)
        assert isinstance(a, DepTree) and isinstance(b, DepTree)

    @given(st.integers(min_value=1, max_value=30), st.integers(min_value=0, max_value=10**6))
    @settings(max_examples=80)
    def test_always_valid(self, n, seed):
        t = random_tree(n, seed)
        assert validate_tree(t.heads) == t

    def test_uniform_over_n4(self):
        # 10^5 draws against the 64 trees of n=4; each count within 5 sigma
        samples = 100_000
        rng = random.Random(2024)
        counts = Counter(random_tree(4, rng).heads for _ in range(samples))
        space = {t.heads for t in all_trees(4)}
        assert set(counts) == space
        p = 1 / 64
        sigma = math.sqrt(samples * p * (1 - p))
        expected = samples * p
        for heads, c in counts.items():
            assert abs(c - expected) <= 5 * sigma, (heads, c)


class TestOracles:
    def test_two_planar_examples(self):
        assert oracle_two_planar(validate_tree([0, 1, 2]))
        assert oracle_two_planar(validate_tree([0, 4, 1, 1]))
        assert not oracle_two_planar(validate_tree([0, 4, 5, 1, 2, 3]))

    def test_two_planar_guard(self):
        with pytest.raises(TooLargeError):
            oracle_two_planar(random_tree(13, 0))

    def test_projective_by_cover_examples(self):
        assert oracle_projective_by_cover(validate_tree([0, 1, 2]))
        assert not oracle_projective_by_cover(validate_tree([0, 4, 1, 1]))

    def test_oracles_match_deciders_small(self):
        for n in range(1, 6):
            for t in all_trees(n):
                assert is_projective(t) == oracle_projective_by_cover(t)
                assert is_k_planar(t, 2) == oracle_two_planar(t)


class TestVerifyLattice:
    def test_small_space_passes(self):
        results = verify_lattice(4)
        assert results and all(c.passed for c in results)
        assert any("not searched" in c.detail for c in results)

    def test_first_witness_appears_at_five_nodes(self):
        results = verify_lattice(5)
        assert all(c.passed for c in results)
        assert any(
            c.detail == "witness heads=0,1,1,2,3"
            for c in results
            if "ill-nested" in c.name
        )

    def test_corrupted_decider_is_caught(self, monkeypatch):
        monkeypatch.setattr(checkers, "is_projective", lambda t: True)
        results = verify_lattice(3)
        failed = [c for c in results if not c.passed]
        assert failed
        assert any("counterexample heads=" in c.detail for c in failed)

    def test_guard(self):
        with pytest.raises(TooLargeError):
            verify_lattice(8)
        with pytest.raises(ValueError):
            verify_lattice(0)

    def test_result_lines(self):
        check = verify_lattice(2)[0]
        assert check.line().startswith("PASS")
