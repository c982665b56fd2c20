"""Tests for the positional binomial heap."""

import pytest

from amortized_bounds.core.meter import measure
from amortized_bounds.structures.binomial_heap import (
    F0,
    F1,
    FEND,
    INSERT_BOUND,
    Tree,
    binary_increment,
    empty_heap,
    from_iterable,
    heap_elements,
    heap_size,
    insert,
    insert_tree,
    insertT,
    merge_tree,
    occupancy,
    occupancy_value,
    phi_heap,
    rank,
    validate_heap,
)
from amortized_bounds.utils.errors import InvalidForest, RankMismatch


class TestMergeTree:
    """Test linking of equal-rank trees."""

    def test_merge_singletons(self):
        merged = merge_tree(Tree(3), Tree(5))
        assert merged == Tree(3, (Tree(5),))
        assert rank(merged) == 1

    def test_larger_root_becomes_child(self):
        assert merge_tree(Tree(5), Tree(3)) == Tree(3, (Tree(5),))

    def test_equal_roots_left_wins(self):
        left, right = Tree(1, (Tree(2),)), Tree(1, (Tree(9),))
        merged = merge_tree(left, right)
        assert merged.children[0] is right

    def test_rank_two_trees(self):
        a = merge_tree(merge_tree(Tree(1), Tree(4)), merge_tree(Tree(2), Tree(3)))
        b = merge_tree(merge_tree(Tree(5), Tree(8)), merge_tree(Tree(6), Tree(7)))
        merged = merge_tree(a, b)
        assert rank(merged) == 3
        assert merged.root == 1
        assert [rank(c) for c in merged.children] == [2, 1, 0]
        assert validate_heap(F0(F0(F0(F1(merged, FEND))))).valid

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatch):
            merge_tree(Tree(1), Tree(2, (Tree(3),)))


class TestInsertTree:
    """Test insertion and its carry chain."""

    def test_insert_into_end(self):
        t = Tree(1)
        assert insert_tree(t, FEND) == F1(t, FEND)

    def test_insert_into_empty_slot(self):
        t = Tree(1)
        rest = F1(Tree(0, (Tree(2),)), FEND)
        assert insert_tree(t, F0(rest)) == F1(t, rest)

    def test_carry_chain(self):
        h = from_iterable(range(7))
        assert occupancy(h) == "111"
        grown = insert(7, h)
        assert occupancy(grown) == "0001"
        assert heap_elements(grown) == list(range(8))

    def test_occupancy_is_binary_count(self):
        h = empty_heap()
        for n in range(1, 65):
            before = occupancy(h)
            h = insert(n % 5, h)
            assert occupancy(h) == binary_increment(before)
            assert occupancy_value(occupancy(h)) == n
            assert heap_size(h) == n

    def test_rank_mismatch_in_forest(self):
        bad = F1(Tree(1, (Tree(2),)), FEND)
        with pytest.raises(InvalidForest):
            insert_tree(Tree(0), bad)


class TestPotentialAndTiming:
    """Test the tree-count potential and insertT."""

    def test_phi(self):
        assert phi_heap(FEND) == 0
        assert phi_heap(F1(Tree(1), FEND)) == 1
        assert phi_heap(from_iterable(range(7))) == 3

    def test_insertT(self):
        t = Tree(9)
        assert insertT(t, FEND) == 1
        assert insertT(t, F0(FEND)) == 1
        assert insertT(t, from_iterable(range(7))) == 4

    def test_insert_bound_across_carry_depths(self):
        h = empty_heap()
        for x in range(64):
            t, f = Tree(x), h
            while True:
                amortized = insertT(t, f) + phi_heap(insert_tree(t, f)) - phi_heap(f)
                assert amortized <= INSERT_BOUND
                if not isinstance(f, F1):
                    break
                t, f = merge_tree(t, f.tree), f.rest
            h = insert(x, h)

    def test_meter_agrees_with_insertT(self):
        h = empty_heap()
        for x in [3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5]:
            _, units = measure(insert, x, h)
            assert units == insertT(Tree(x), h)
            h = insert(x, h)


class TestBinaryIncrement:
    def test_increment(self):
        assert binary_increment("") == "1"
        assert binary_increment("0") == "1"
        assert binary_increment("1") == "01"
        assert binary_increment("111") == "0001"
        assert binary_increment("101") == "011"


class TestValidateHeap:
    """Test structural validation."""

    def test_public_inserts_are_valid(self):
        for order in (range(20), range(20, 0, -1), [0] * 20):
            h = empty_heap()
            for x in order:
                h = insert(x, h)
                assert validate_heap(h).valid

    def test_ascending_child_ranks(self):
        children = (Tree(5), Tree(2, (Tree(3),)))
        result = validate_heap(F0(F1(Tree(1, children), FEND)))
        assert not result.valid
        assert any(v.startswith("rank") for v in result.violations)

    def test_heap_order(self):
        result = validate_heap(F0(F1(Tree(5, (Tree(1),)), FEND)))
        assert not result.valid
        assert any(v.startswith("heap-order") for v in result.violations)

    def test_position_mismatch(self):
        result = validate_heap(F1(Tree(1, (Tree(2),)), FEND))
        assert not result.valid
        assert any(v.startswith("position") for v in result.violations)
