import dataclasses
import itertools
import json
import pathlib

import pytest
from hypothesis import given, settings

from depclass import (
    ColoringBudgetError,
    MultipleGapsError,
    classify,
    crossing_graph,
    gap_degree,
    gap_degree_node,
    gap_inheritance,
    in_wg,
    is_gap_minding,
    is_head_split_wg1,
    is_k_planar,
    is_mild_plus_one_inherit,
    is_one_endpoint_crossing,
    is_planar1,
    is_projective,
    is_root_covered,
    is_well_nested,
    oracle_projective_by_cover,
    page_number,
    validate_tree,
    wg_level,
)
from depclass.checkers import CLASS_PREDICATES, resolve_class_name

from conftest import dep_trees

FIXTURES = json.loads(
    (pathlib.Path(__file__).parent / "data" / "classify_fixtures.json").read_text()
)


class TestProjectivity:
    def test_examples(self):
        assert is_projective(validate_tree([0, 1, 2]))
        assert not is_projective(validate_tree([0, 4, 1, 1]))
        assert is_projective(validate_tree([0]))

    @given(dep_trees(max_n=8))
    @settings(max_examples=100)
    def test_agrees_with_cover_oracle(self, t):
        assert is_projective(t) == oracle_projective_by_cover(t)

    @given(dep_trees(max_n=8))
    @settings(max_examples=100)
    def test_four_formulations_agree(self, t):
        by_interval = is_projective(t)
        assert by_interval == (is_planar1(t) and not is_root_covered(t))
        assert by_interval == (gap_degree(t) == 0)
        assert by_interval == in_wg(t, 0)


class TestPlanarityAndRoot:
    def test_planar1(self):
        assert is_planar1(validate_tree([0, 1, 2]))
        assert not is_planar1(validate_tree([0, 4, 1, 1]))
        assert is_planar1(validate_tree([0, 3, 1]))

    def test_root_covered(self):
        assert not is_root_covered(validate_tree([0, 1, 2]))
        assert not is_root_covered(validate_tree([2, 0, 2]))
        assert is_root_covered(validate_tree([2, 0, 1]))

    def test_planar_but_not_projective(self):
        t = validate_tree([2, 0, 1])
        assert is_planar1(t) and is_root_covered(t) and not is_projective(t)


class TestGapDegree:
    def test_chain(self):
        assert gap_degree(validate_tree([0, 1, 2, 3])) == 0

    def test_single_gap(self):
        t = validate_tree([0, 4, 1, 1])
        assert gap_degree_node(t, 4) == 1
        assert gap_degree(t) == 1

    def test_node_degrees(self):
        t = validate_tree([0, 4, 1, 1])
        assert [gap_degree_node(t, i) for i in range(1, 5)] == [0, 0, 0, 1]


class TestWellNested:
    def test_examples(self):
        assert is_well_nested(validate_tree([0, 4, 1, 1]))
        assert not is_well_nested(validate_tree([5, 5, 1, 2, 0]))

    @given(dep_trees(max_n=8))
    @settings(max_examples=60)
    def test_projective_trees_are_well_nested(self, t):
        if is_projective(t):
            assert is_well_nested(t)

    @given(dep_trees(max_n=7))
    @settings(max_examples=60)
    def test_matches_quantified_definition(self, t):
        projections = {
            i: frozenset(
                j for j in range(1, t.n + 1) if _descends(t, i, j)
            )
            for i in range(1, t.n + 1)
        }
        interleaved = False
        for a, b in itertools.permutations(range(1, t.n + 1), 2):
            only_a = sorted(projections[a] - projections[b])
            only_b = sorted(projections[b] - projections[a])
            for i, k in itertools.combinations(only_a, 2):
                for j, l in itertools.combinations(only_b, 2):
                    if i < j < k < l:
                        interleaved = True
        assert is_well_nested(t) == (not interleaved)

    def test_wg_membership(self):
        t = validate_tree([0, 4, 1, 1])
        assert not in_wg(t, 0) and in_wg(t, 1) and in_wg(t, 2)
        assert wg_level(t) == 1
        ill = validate_tree([5, 5, 1, 2, 0])
        assert not any(in_wg(ill, k) for k in range(4))
        assert wg_level(ill) is None
        assert in_wg(validate_tree([0, 1, 2]), 0)


def _descends(t, anc, node):
    while node:
        if node == anc:
            return True
        node = t.head(node)
    return False


class TestGapInheritance:
    def test_no_inheritance(self):
        assert gap_inheritance(validate_tree([0, 4, 1, 1]), 4) == []

    def test_single_inheriting_child(self):
        t = validate_tree([0, 1, 2, 1, 3, 2])
        assert gap_inheritance(t, 2) == [3]

    def test_projective_parent(self):
        t = validate_tree([0, 1, 2])
        assert all(gap_inheritance(t, i) == [] for i in range(1, 4))

    def test_multiple_gaps_rejected(self):
        t = validate_tree([0, 4, 1, 1, 1, 4])
        assert gap_degree_node(t, 4) == 2
        with pytest.raises(MultipleGapsError):
            gap_inheritance(t, 4)

    def test_minding_and_one_inherit(self):
        t = validate_tree([0, 4, 1, 1])
        assert is_gap_minding(t) and is_mild_plus_one_inherit(t)
        t = validate_tree([0, 1, 2, 1, 3, 2])
        assert not is_gap_minding(t) and is_mild_plus_one_inherit(t)
        chain = validate_tree([0, 1, 2])
        assert is_gap_minding(chain) and is_mild_plus_one_inherit(chain)

    def test_outside_wg1_is_false(self):
        ill = validate_tree([5, 5, 1, 2, 0])
        assert not is_gap_minding(ill) and not is_mild_plus_one_inherit(ill)


class TestHeadSplit:
    def test_projective_trees(self):
        assert is_head_split_wg1(validate_tree([0, 1, 2]))

    def test_vacuous_gap(self):
        assert is_head_split_wg1(validate_tree([0, 4, 1, 1]))

    def test_pinned_witness(self):
        heads = FIXTURES["head_split_witness"]["heads"]
        t = validate_tree(heads)
        assert in_wg(t, 1)
        assert not is_head_split_wg1(t)

    def test_outside_wg1_is_false(self):
        assert not is_head_split_wg1(validate_tree([5, 5, 1, 2, 0]))


class TestKPlanar:
    def test_chain(self):
        assert is_k_planar(validate_tree([0, 1, 2]), 1)

    def test_single_crossing(self):
        t = validate_tree([0, 4, 1, 1])
        assert not is_k_planar(t, 1) and is_k_planar(t, 2)

    def test_triangle(self):
        t = validate_tree([0, 4, 5, 1, 2, 3])
        assert not is_k_planar(t, 2) and is_k_planar(t, 3)

    def test_k_validation(self):
        with pytest.raises(ValueError):
            is_k_planar(validate_tree([0]), 0)

    @given(dep_trees(max_n=8))
    @settings(max_examples=50)
    def test_monotone_in_k(self, t):
        for k in (1, 2, 3):
            if is_k_planar(t, k):
                assert is_k_planar(t, k + 1)

    def test_budget_guard(self):
        with pytest.raises(ColoringBudgetError):
            is_k_planar(validate_tree([0, 4, 5, 1, 2, 3]), 3, budget=1)


class TestPageNumber:
    def test_examples(self):
        assert page_number(validate_tree([0, 1, 2])) == 1
        assert page_number(validate_tree([0, 4, 1, 1])) == 2
        assert page_number(validate_tree([0, 4, 5, 1, 2, 3])) == 3

    @given(dep_trees(max_n=9))
    @settings(max_examples=50)
    def test_at_least_greedy_clique_bound(self, t):
        g = crossing_graph(t)
        adj = {i: set() for i in range(len(g.vertices))}
        for i, j in g.edges:
            adj[i].add(j)
            adj[j].add(i)
        clique: set[int] = set()
        for v in sorted(adj, key=lambda v: -len(adj[v])):
            if clique <= adj[v]:
                clique.add(v)
        assert page_number(t) >= max(len(clique), 1)

    @given(dep_trees(max_n=8))
    @settings(max_examples=50)
    def test_is_minimal(self, t):
        k = page_number(t)
        assert is_k_planar(t, k)
        assert k == 1 or not is_k_planar(t, k - 1)
        assert (k == 1) == is_planar1(t)


class TestOneEndpointCrossing:
    def test_planar_is_trivially_ok(self):
        assert is_one_endpoint_crossing(validate_tree([0, 3, 1]))

    def test_common_vertex(self):
        assert is_one_endpoint_crossing(validate_tree([5, 5, 1, 2, 0]))

    def test_disjoint_crossers(self):
        assert not is_one_endpoint_crossing(validate_tree([0, 4, 5, 1, 2, 3]))


class TestClassify:
    @pytest.mark.parametrize("fixture", FIXTURES["records"], ids=lambda f: str(f["heads"]))
    def test_pinned_records(self, fixture):
        rec = classify(validate_tree(fixture["heads"]))
        assert dataclasses.asdict(rec) == fixture["record"]

    def test_attardi_above_cap(self):
        fx = FIXTURES["attardi_above_cap"]
        rec = classify(validate_tree(fx["heads"]), attardi_cap=fx["cap"])
        assert rec.attardi_degree == fx["result"]
        rec3 = classify(validate_tree(fx["heads"]), attardi_cap=3)
        assert rec3.attardi_degree == fx["degree_at_cap_3"]

    def test_single_node(self):
        rec = classify(validate_tree([0]))
        assert rec.projective and rec.page_number == 1
        assert rec.max_dependency_length == 0 and rec.attardi_degree == 1

    @given(dep_trees(max_n=8))
    @settings(max_examples=60, deadline=None)
    def test_record_invariants(self, t):
        rec = classify(t)
        if rec.projective:
            assert rec.planar1
        assert rec.projective == (rec.planar1 and not rec.root_covered)
        assert rec.projective == (rec.gap_degree == 0)
        if rec.wg_level is not None:
            assert rec.gap_degree == rec.wg_level and rec.well_nested
        if rec.gap_minding:
            assert rec.mild_plus_one_inherit
        if rec.one_endpoint_crossing:
            assert rec.page_number <= 2
        assert (rec.page_number == 1) == rec.planar1


class TestClassRegistry:
    def test_aliases(self):
        assert resolve_class_name("2planar") == "planar_2"
        assert resolve_class_name("1EC") == "one_endpoint_crossing"
        assert resolve_class_name("WG-1") == "wg_1"

    def test_unknown(self):
        with pytest.raises(KeyError):
            resolve_class_name("frobnicating")

    def test_predicates_run(self):
        t = validate_tree([0, 4, 1, 1])
        memberships = {name: pred(t) for name, pred in CLASS_PREDICATES.items()}
        assert memberships["wg_1"] and not memberships["projective"]
        assert memberships["attardi_2"] and not memberships["attardi_1"]
