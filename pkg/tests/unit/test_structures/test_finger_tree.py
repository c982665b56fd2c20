"""Tests for the finger tree."""

import random

import pytest

from amortized_bounds.core.meter import measure
from amortized_bounds.structures.finger_tree import (
    CONS_BOUND,
    NIL,
    SNOC_BOUND,
    More,
    One,
    Pair,
    Three,
    Triple,
    Two,
    Unit,
    append,
    cons,
    consT,
    danger,
    div_cancel,
    fold_bound,
    foldl,
    foldlT,
    foldr,
    foldrT,
    glue,
    glue_bound,
    glueT,
    length_law,
    list_append,
    log2,
    log2_mono,
    phi_seq,
    pot,
    seq_from_list,
    seq_size,
    seq_to_list,
    snoc,
    snocT,
    spine_depth,
    to_list_digit,
    to_tuples,
    to_tuples_prime,
    tuples_to_list,
    validate_seq,
)
from amortized_bounds.utils.errors import DomainError, LengthContract


def seqs(max_size: int = 40):
    """Trees built by snoc, by cons, and mixed, for every size up to ``max_size``."""
    out = []
    for n in range(max_size + 1):
        out.append(seq_from_list(list(range(n))))
        out.append(foldr(cons, NIL, list(range(n))))
    return out


class TestConsSnoc:
    """Test cons and snoc clause by clause."""

    def test_cons_nil(self):
        assert cons("x", NIL) == Unit("x")

    def test_cons_unit(self):
        assert cons("x", Unit("y")) == More(One("x"), NIL, One("y"))

    def test_cons_into_three_pushes_pair(self):
        q = More(Three(2, 3, 4), NIL, One(5))
        assert cons(1, q) == More(Two(1, 2), Unit(Pair(3, 4)), One(5))

    def test_snoc_nil(self):
        assert snoc(NIL, "x") == Unit("x")

    def test_snoc_unit(self):
        assert snoc(Unit("x"), "y") == More(One("x"), NIL, One("y"))

    def test_snoc_onto_three_pushes_pair(self):
        q = More(One(0), NIL, Three(1, 2, 3))
        assert snoc(q, 4) == More(One(0), Unit(Pair(1, 2)), Two(3, 4))

    def test_order_preserved(self):
        for q in seqs():
            items = seq_to_list(q)
            assert seq_to_list(cons("a", q)) == ["a", *items]
            assert seq_to_list(snoc(q, "z")) == [*items, "z"]

    def test_results_validate(self):
        for q in seqs():
            assert validate_seq(cons(-1, q)).valid
            assert validate_seq(snoc(q, -1)).valid


class TestPotential:
    """Test digit dangers and the sequence potential."""

    def test_danger(self):
        assert danger(One("a")) == 1
        assert danger(Two("a", "b")) == 0
        assert danger(Three("a", "b", "c")) == 1

    def test_phi(self):
        assert phi_seq(NIL) == 0
        assert phi_seq(Unit(1)) == 0
        assert phi_seq(More(One("a"), NIL, Two("b", "c"))) == 1

    def test_all_safe_levels(self):
        inner = More(Two(Pair(Pair(0, 1), Pair(2, 3)), Pair(Pair(4, 5), Pair(6, 7))), NIL,
                     Two(Pair(Pair(8, 9), Pair(10, 11)), Pair(Pair(12, 13), Pair(14, 15))))
        middle = More(Two(Pair(16, 17), Pair(18, 19)), inner, Two(Pair(20, 21), Pair(22, 23)))
        q = More(Two(24, 25), middle, Two(26, 27))
        assert validate_seq(q).valid
        assert spine_depth(q) == 3
        assert phi_seq(q) == 0

    def test_pot_alias(self):
        assert pot is phi_seq


class TestTiming:
    """Test the cost mirrors and their amortized bounds."""

    def test_consT(self):
        assert consT("x", NIL) == 1
        assert consT("x", More(Three(1, 2, 3), NIL, One(4))) == 2
        assert snocT(NIL, "x") == 1

    def test_cons_snoc_bounds(self):
        for q in seqs():
            assert consT(0, q) + phi_seq(cons(0, q)) - phi_seq(q) <= CONS_BOUND
            assert snocT(q, 0) + phi_seq(snoc(q, 0)) - phi_seq(q) <= SNOC_BOUND

    def test_meter_agrees(self):
        for q in seqs():
            assert measure(cons, 0, q)[1] == consT(0, q)
            assert measure(snoc, q, 0)[1] == snocT(q, 0)

    def test_fold_costs(self):
        q = seq_from_list([1, 2, 3])
        assert foldrT(cons, consT, q, []) == 1
        assert foldrT(cons, consT, NIL, ["a"]) == 2
        assert foldlT(snoc, snocT, NIL, ["a", "b"]) == 3

    def test_fold_bounds(self):
        for q in seqs(20):
            for k in range(4):
                xs = list(range(100, 100 + k))
                right = foldrT(cons, consT, q, xs) + phi_seq(foldr(cons, q, xs)) - phi_seq(q)
                left = foldlT(snoc, snocT, q, xs) + phi_seq(foldl(snoc, q, xs)) - phi_seq(q)
                assert right <= fold_bound(k)
                assert left <= fold_bound(k)

    def test_fold_rejects_free_step_cost(self):
        with pytest.raises(DomainError):
            foldrT(cons, lambda x, q: 0, NIL, [1])


class TestListHelpers:
    def test_to_list_digit(self):
        assert to_list_digit(One("x")) == ["x"]
        assert to_list_digit(Two("x", "y")) == ["x", "y"]
        assert to_list_digit(Three("x", "y", "z")) == ["x", "y", "z"]

    def test_list_append(self):
        assert list_append([], [1, 2]) == [1, 2]
        assert list_append([1], [2]) == [1, 2]

    def test_foldr_base(self):
        q = Unit(1)
        assert foldr(cons, q, []) is q

    def test_length_law(self):
        rng = random.Random(3)
        for _ in range(50):
            xs = [rng.randint(0, 9) for _ in range(rng.randint(0, 10))]
            ys = [rng.randint(0, 9) for _ in range(rng.randint(0, 10))]
            assert length_law(xs, ys)

    def test_seq_to_list(self):
        assert tuples_to_list([]) == []
        assert tuples_to_list([Pair("a", "b")]) == ["a", "b"]
        assert seq_to_list(More(One(1), NIL, One(2))) == [1, 2]

    def test_tuples_to_list_bounds(self):
        tuples = [Pair(0, 1), Triple(2, 3, 4), Pair(5, 6)]
        flat = tuples_to_list(tuples)
        assert flat == list(range(7))
        assert 2 * len(tuples) <= len(flat) <= 3 * len(tuples)


class TestToTuples:
    """Test grouping of loose items into spine tuples."""

    def test_examples(self):
        assert to_tuples(["a", "b"]) == [Pair("a", "b")]
        assert to_tuples(["a", "b", "c", "d"]) == [Pair("a", "b"), Pair("c", "d")]
        assert to_tuples(list(range(9))) == [Triple(0, 1, 2), Triple(3, 4, 5), Triple(6, 7, 8)]

    def test_prime_examples(self):
        assert to_tuples_prime([]) == []
        assert to_tuples_prime(list("abcde")) == [Triple("a", "b", "c"), Pair("d", "e")]
        assert [type(t) for t in to_tuples_prime(list(range(6)))] == [Triple, Triple]

    def test_output_lengths(self):
        expected = {0: 0, 2: 1, 3: 1, 4: 2, 5: 2, 6: 2, 7: 3, 8: 3, 9: 3}
        for n, length in expected.items():
            xs = list(range(n))
            out = to_tuples_prime(xs)
            assert len(out) == length
            assert tuples_to_list(out) == xs

    @pytest.mark.parametrize("n", [1, 10])
    def test_prime_rejects(self, n):
        with pytest.raises(LengthContract) as exc_info:
            to_tuples_prime(list(range(n)))
        assert exc_info.value.length == n

    @pytest.mark.parametrize("n", [0, 1, 10])
    def test_rejects(self, n):
        with pytest.raises(LengthContract):
            to_tuples(list(range(n)))


class TestGlue:
    """Test concatenation and its cost mirror."""

    def test_nil_left_folds_onto_right(self):
        q2 = seq_from_list([5, 6])
        assert glue(NIL, [1, 2], q2) == foldr(cons, q2, [1, 2])

    def test_units(self):
        assert glue(Unit(1), [], Unit(2)) == More(One(1), NIL, One(2))

    def test_append_identities(self):
        for q in seqs(12):
            assert append(NIL, q) == q
            assert append(q, NIL) == q

    def test_concatenation(self):
        rng = random.Random(11)
        for _ in range(200):
            xs = list(range(rng.randint(0, 40)))
            ys = list(range(100, 100 + rng.randint(0, 40)))
            middle = list(range(200, 200 + rng.randint(0, 3)))
            glued = glue(seq_from_list(xs), middle, seq_from_list(ys))
            assert seq_to_list(glued) == xs + middle + ys
            assert validate_seq(glued).valid

    def test_glueT_examples(self):
        assert glueT(NIL, [], NIL) == 2
        assert glueT(Unit("x"), [], Unit("y")) == 3

    def test_meter_agrees_with_glueT(self):
        for q1 in seqs(15):
            for q2 in seqs(15)[::3]:
                for k in range(4):
                    middle = list(range(k))
                    assert measure(glue, q1, middle, q2)[1] == glueT(q1, middle, q2)

    def test_glue_bound(self):
        for q1 in seqs(25):
            for q2 in seqs(25)[::4]:
                glued = append(q1, q2)
                amortized = glueT(q1, [], q2) + phi_seq(glued) - phi_seq(q1) - phi_seq(q2)
                assert amortized <= glue_bound(seq_size(q1), seq_size(q2))

    def test_middle_too_long(self):
        with pytest.raises(LengthContract):
            glue(NIL, [1, 2, 3, 4], NIL)
        with pytest.raises(LengthContract):
            glueT(NIL, [1, 2, 3, 4], NIL)


class TestLogarithm:
    def test_examples(self):
        assert log2(1) == 0
        assert log2(2) == 1
        assert log2(9) == 3

    def test_floor(self):
        for n in range(1, 1025):
            assert log2(n) == n.bit_length() - 1

    @pytest.mark.parametrize("n", [0, -3])
    def test_domain(self, n):
        with pytest.raises(DomainError):
            log2(n)

    def test_monotone(self):
        assert log2_mono(3, 17)
        with pytest.raises(DomainError):
            log2_mono(5, 4)

    def test_div_cancel(self):
        for x in (-7, 0, 1, 2**61 + 3):
            assert div_cancel(x)

    def test_glue_bound_values(self):
        assert glue_bound(0, 0) == 15
        assert glue_bound(8, 8) == 18


class TestValidateSeq:
    def test_element_at_wrong_depth(self):
        result = validate_seq(More(One(1), Unit(2), One(3)))
        assert not result.valid
        assert "nesting" in result.violations[0]

    def test_tuple_at_top_level(self):
        assert not validate_seq(Unit(Pair(1, 2))).valid

    def test_bad_digit(self):
        assert not validate_seq(More(Pair(1, 2), NIL, One(3))).valid
