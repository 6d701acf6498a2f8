import math

import numpy as np
import pytest

from graphfock.fock import FockBasis, semicircle_operator
from graphfock.graphs import (
    complete_graph,
    complete_multipartite_graph,
    empty_graph,
    validate,
)
from graphfock.moments import (
    MomentCalculator,
    catalan,
    moment_norm_lower,
    nth_root,
    sum_moments,
    vacuum_moment,
)
from graphfock.traces import in_reduced_index_set
from oracles import (
    all_labeled_graphs,
    all_words,
    catalan_by_pairings,
    classical_sum_moment,
    dense_operator,
    free_sum_moment,
    independent_sum_moment,
    semicircle_moment,
    seeded_random_graph,
)

PAIR = validate([[0, 1], [1, 0]])
FREE_PAIR = validate([[0, 0], [0, 0]])
K22 = complete_multipartite_graph([2, 2])


def test_catalan_matches_pairing_count():
    for n in range(9):
        assert catalan(n) == catalan_by_pairings(n)


class TestVacuumMoment:
    def test_fourth_moment_of_one_generator(self):
        for g in [PAIR, FREE_PAIR, K22, complete_graph(3)]:
            assert vacuum_moment(g, (0, 0, 0, 0)) == 2

    def test_alternating_word_commuting(self):
        assert vacuum_moment(PAIR, (0, 1, 0, 1)) == 1
        # independent oracle: dense 6-dim matrix product on the depth-2 basis
        b = FockBasis(PAIR, 2)
        s0 = dense_operator(semicircle_operator(0, b)).astype(float)
        s1 = dense_operator(semicircle_operator(1, b)).astype(float)
        e0 = np.zeros(6)
        e0[0] = 1.0
        assert (s0 @ s1 @ s0 @ s1 @ e0)[0] == pytest.approx(1.0)

    def test_alternating_word_free(self):
        assert vacuum_moment(FREE_PAIR, (0, 1, 0, 1)) == 0

    def test_empty_word(self):
        assert vacuum_moment(PAIR, ()) == 1

    def test_odd_words_vanish(self):
        for g in [PAIR, K22]:
            assert vacuum_moment(g, (0,)) == 0
            assert vacuum_moment(g, (0, 1, 0)) == 0

    def test_marginal_semicircle_any_graph(self):
        graphs = [empty_graph(3), complete_graph(3), K22,
                  seeded_random_graph(5, 0.5, 3)]
        for g in graphs:
            for i in range(g.d):
                for n in range(9):
                    assert vacuum_moment(g, (i,) * (2 * n)) == catalan(n)

    def test_matches_engine_on_full_basis(self):
        rng = np.random.default_rng(0)
        for g in [PAIR, FREE_PAIR, K22]:
            calc = MomentCalculator(g, depth=4)
            for _ in range(25):
                n = int(rng.integers(0, 7))
                word = tuple(int(x) for x in rng.integers(0, g.d, size=n))
                assert calc.vacuum_moment(word) == vacuum_moment(g, word)

    def test_commuting_swap_invariance(self):
        rng = np.random.default_rng(1)
        for g in [PAIR, K22, seeded_random_graph(4, 0.6, 9)]:
            for _ in range(30):
                n = int(rng.integers(2, 7))
                word = [int(x) for x in rng.integers(0, g.d, size=n)]
                p = int(rng.integers(0, n - 1))
                a, b = word[p], word[p + 1]
                if a != b and g.adjacency[a, b]:
                    swapped = word.copy()
                    swapped[p], swapped[p + 1] = b, a
                    assert vacuum_moment(g, word) == vacuum_moment(g, swapped)

    def test_centered_tuples_vanish_small(self):
        for g in all_labeled_graphs(3):
            calc = MomentCalculator(g, depth=4)
            for word in all_words(3, 5):
                if in_reduced_index_set(word, g):
                    assert calc.vacuum_moment(word) == 0


class TestSumMoments:
    def test_free_pair(self):
        seq = sum_moments(FREE_PAIR, 8)
        assert seq.values[4] == 8
        assert seq.values[8] == 224
        for n in range(5):
            assert seq.values[2 * n] == free_sum_moment(2, n)

    def test_classical_pair(self):
        seq = sum_moments(PAIR, 6)
        assert seq.values[4] == 10
        assert seq.values[6] == 70
        for n in range(4):
            assert seq.values[2 * n] == classical_sum_moment(2, 2 * n)

    def test_k22_sum_of_two_variance_two_semicircles(self):
        seq = sum_moments(K22, 8)
        assert seq.values[4] == 40
        x = [semicircle_moment(2, k) for k in range(9)]
        for order in range(0, 9, 2):
            assert seq.values[order] == independent_sum_moment(x, x, order)

    def test_shape_invariants(self):
        for g in [PAIR, FREE_PAIR, K22, complete_graph(3)]:
            seq = sum_moments(g, 10)
            assert seq.values[0] == 1
            assert all(seq.values[k] == 0 for k in range(1, 11, 2))
            assert all(seq.values[k] > 0 for k in range(2, 11, 2))
            assert seq.values[2] == g.d
            roots = [nth_root(seq.values[k], k) for k in range(2, 11, 2)]
            assert all(b >= a - 1e-12 for a, b in zip(roots, roots[1:]))

    def test_free_case_is_minimal(self):
        for g in all_labeled_graphs(4):
            seq = sum_moments(g, 10)
            edgeless = len(g.edges) == 0
            for n in range(1, 6):
                floor = 4**n * catalan(n)
                if edgeless:
                    assert seq.values[2 * n] == floor
                else:
                    assert seq.values[2 * n] >= floor
            if not edgeless:
                assert any(seq.values[2 * n] > 4**n * catalan(n) for n in range(1, 6))

    def test_graph_id_stable(self):
        assert sum_moments(K22, 2).graph_id == sum_moments(K22, 4).graph_id


class TestBigIntegerPath:
    def test_object_vectors_match_int64(self):
        calc = MomentCalculator(PAIR, depth=4)
        v_obj = calc._vacuum(True)
        v_i64 = calc._vacuum(False)
        for _ in range(6):
            v_obj = calc._apply(calc._sum_entries, v_obj)
            v_i64 = calc._apply(calc._sum_entries, v_i64)
        assert v_obj.dtype == object
        assert [int(x) for x in v_obj] == [int(x) for x in v_i64]

    def test_exact_values_are_python_ints(self):
        seq = sum_moments(complete_graph(4), 16)
        # moments of 4 commuting independent semicircles grow quickly but
        # stay exact; cross-check the top order against the convolution oracle
        assert seq.values[16] == classical_sum_moment(4, 16)


class TestNormLowerBound:
    def test_single_generator(self):
        g = empty_graph(1)
        assert moment_norm_lower(g, 4) == pytest.approx(2 ** 0.25)

    def test_free_pair_order_eight(self):
        assert moment_norm_lower(FREE_PAIR, 8) == pytest.approx(224 ** (1 / 8))
        assert moment_norm_lower(FREE_PAIR, 8) <= 2 * math.sqrt(2)

    def test_order_two_is_sqrt_d(self):
        for g in [PAIR, FREE_PAIR, K22, complete_graph(3)]:
            assert moment_norm_lower(g, 2) == pytest.approx(math.sqrt(g.d))

    def test_rejects_odd_order(self):
        with pytest.raises(ValueError):
            moment_norm_lower(PAIR, 3)

    def test_huge_root_is_finite(self):
        assert nth_root(10**400, 100) == pytest.approx(10**4)
