from math import comb

import pytest

from graphfock.errors import BasisTooLargeError, LetterOutOfRangeError
from graphfock.graphs import complete_graph, complete_multipartite_graph, empty_graph, validate
from graphfock.traces import (
    enumerate_traces,
    equivalent,
    format_trace,
    in_reduced_index_set,
    initial_letters,
    normal_form,
)
from oracles import (
    all_labeled_graphs,
    all_words,
    brute_initial_letters,
    brute_normal_form,
    left_bfs_enumerate,
    orbit,
)

PAIR = validate([[0, 1], [1, 0]])        # two commuting letters
FREE_PAIR = validate([[0, 0], [0, 0]])   # two free letters


class TestNormalForm:
    def test_single_allowed_swap(self):
        assert normal_form((1, 0), PAIR) == (0, 1)

    def test_no_relation(self):
        assert normal_form((1, 0), FREE_PAIR) == (1, 0)

    def test_three_letter_chain(self):
        # letters 1 and 2 both commute with 3, but not with each other
        g = validate([[0, 0, 1], [0, 0, 1], [1, 1, 0]])
        assert normal_form((2, 0, 1), g) == (0, 1, 2)
        assert brute_normal_form((2, 0, 1), g) == (0, 1, 2)

    def test_idempotent_and_equivalent_exhaustive(self):
        for g in all_labeled_graphs(3):
            for w in all_words(3, 5):
                nf = normal_form(w, g)
                assert normal_form(nf, g) == nf
                assert nf in orbit(w, g)
                assert nf == brute_normal_form(w, g)

    def test_matches_bruteforce_d4(self):
        for g in all_labeled_graphs(4):
            for w in all_words(4, 4):
                assert normal_form(w, g) == brute_normal_form(w, g)

    def test_letter_out_of_range(self):
        with pytest.raises(LetterOutOfRangeError):
            normal_form((0, 2), PAIR)


class TestEquivalent:
    def test_commuting_pair(self):
        assert equivalent((0, 1), (1, 0), PAIR)

    def test_free_pair(self):
        assert not equivalent((0, 1), (1, 0), FREE_PAIR)

    def test_distinct_classes(self):
        assert not equivalent((0, 1, 0), (0, 0, 1), FREE_PAIR)
        orbits = orbit((0, 1, 0), FREE_PAIR)
        assert (0, 0, 1) not in orbits


class TestInitialLetters:
    def test_matches_orbit_first_letters_exhaustive(self):
        for g in all_labeled_graphs(3):
            for w in all_words(3, 5):
                canonical = normal_form(w, g)
                assert initial_letters(canonical, g) == brute_initial_letters(w, g)

    def test_commuting_pair_both_initial(self):
        assert initial_letters((0, 1), PAIR) == {0, 1}

    def test_empty_word(self):
        assert initial_letters((), PAIR) == set()

    def test_blocked_second_letter(self):
        # 1 does not commute with 2, so only the first letter is initial
        g = validate([[0, 0, 1], [0, 0, 0], [1, 0, 0]])
        assert initial_letters(normal_form((0, 1, 2), g), g) == {0}


class TestEnumeration:
    def test_commuting_pair_counts(self):
        assert enumerate_traces(PAIR, 3).counts == (1, 2, 3, 4)

    def test_free_pair_counts(self):
        assert enumerate_traces(FREE_PAIR, 3).counts == (1, 2, 4, 8)

    def test_k22_counts(self):
        g = complete_multipartite_graph([2, 2])
        assert enumerate_traces(g, 2).counts == (1, 4, 12)

    def test_complete_graph_counts_are_multisets(self):
        for d in (2, 3, 4):
            counts = enumerate_traces(complete_graph(d), 6).counts
            assert counts == tuple(comb(n + d - 1, d - 1) for n in range(7))

    def test_empty_graph_counts_are_free_words(self):
        counts = enumerate_traces(empty_graph(3), 5).counts
        assert counts == tuple(3**n for n in range(6))

    def test_matches_dedup_enumeration_all_small_graphs(self):
        for g in all_labeled_graphs(3):
            direct = enumerate_traces(g, 6)
            assert [list(level) for level in direct.levels] == left_bfs_enumerate(g, 6)

    def test_matches_dedup_enumeration_d4(self):
        for g in all_labeled_graphs(4):
            direct = enumerate_traces(g, 4)
            assert [list(level) for level in direct.levels] == left_bfs_enumerate(g, 4)

    def test_levels_sorted_and_canonical(self):
        g = complete_multipartite_graph([2, 2])
        levels = enumerate_traces(g, 5)
        for level in levels.levels:
            assert list(level) == sorted(level)
            for t in level:
                assert normal_form(t, g) == t

    def test_prefix_closure_via_initial_letters(self):
        for g in all_labeled_graphs(3):
            for t in (t for level in enumerate_traces(g, 5).levels for t in level):
                for letter in initial_letters(t, g):
                    pos = t.index(letter)
                    shorter = normal_form(t[:pos] + t[pos + 1 :], g)
                    assert len(shorter) == len(t) - 1

    def test_cap_raises(self):
        with pytest.raises(BasisTooLargeError) as err:
            enumerate_traces(empty_graph(4), 10, cap=100)
        assert err.value.cap == 100


class TestReducedIndexSet:
    def test_separated_pair(self):
        assert in_reduced_index_set((0, 1, 0), FREE_PAIR)

    def test_commuting_interior_letter(self):
        assert not in_reduced_index_set((0, 1, 0), PAIR)

    def test_adjacent_repeat(self):
        assert not in_reduced_index_set((0, 0), PAIR)

    def test_single_letter(self):
        assert in_reduced_index_set((0,), PAIR)

    def test_empty(self):
        assert not in_reduced_index_set((), PAIR)

    def test_wider_pairs_follow_consecutive_ones(self):
        # letter 0 appears three times; each consecutive pair is separated
        g = validate([[0, 0, 0], [0, 0, 0], [0, 0, 0]])
        assert in_reduced_index_set((0, 1, 0, 2, 0), g)


def test_format_trace():
    assert format_trace(()) == "0"
    assert format_trace((0, 1, 2)) == "1,2,3"
