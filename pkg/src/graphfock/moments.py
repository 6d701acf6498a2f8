"""Exact vacuum moments of semicircle words and of the generator sum.

Everything here is integer arithmetic: operator entries are 0/1, the
vacuum vector is integral, and moments are read off as exact ints.  The
fast path uses int64 matrices as long as a conservative growth bound rules
out overflow; otherwise vectors fall back to Python big ints.  Floating
point appears only in the final root of :func:`moment_norm_lower`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fock import FockBasis
from .graphs import Graph
from .traces import DEFAULT_STATE_CAP, _check_letters


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    """Catalan numbers by the integer recurrence C_{n+1} = C_n*2(2n+1)/(n+2)."""
    if n == 0:
        return 1
    prev = catalan(n - 1)
    return prev * 2 * (2 * n - 1) // (n + 1)


class MomentCalculator:
    """Reusable exact-moment engine for one graph at a fixed basis depth.

    A word of length n applied to the vacuum never climbs above level
    ceil(n/2), so ``depth >= n//2 + 1`` suffices for exact results (one
    spare level is kept relative to the tight bound).
    """

    def __init__(self, graph: Graph, depth: int, cap: int = DEFAULT_STATE_CAP):
        self.graph = graph
        self.basis = FockBasis(graph, depth, cap=cap)
        entries = self.basis._annihilation_entries()
        self._letter_entries = []
        for rows, cols in entries:
            r = np.asarray(rows + cols, dtype=np.int64)
            c = np.asarray(cols + rows, dtype=np.int64)
            self._letter_entries.append((r, c))
        self._sum_entries = (
            np.concatenate([r for r, _ in self._letter_entries])
            if self._letter_entries
            else np.zeros(0, dtype=np.int64),
            np.concatenate([c for _, c in self._letter_entries])
            if self._letter_entries
            else np.zeros(0, dtype=np.int64),
        )

    def max_word_length(self) -> int:
        return 2 * (self.basis.depth - 1)

    def _apply(self, entry_pair, vec):
        rows, cols = entry_pair
        out = np.zeros_like(vec)
        np.add.at(out, rows, vec[cols])
        return out

    def _vacuum(self, exact: bool):
        if exact:
            v = np.zeros(self.basis.dim, dtype=object)
            v[0] = 1
        else:
            v = np.zeros(self.basis.dim, dtype=np.int64)
            v[0] = 1
        return v

    def vacuum_moment(self, word) -> int:
        """Exact value of the vacuum state on the semicircle word."""
        word = tuple(word)
        _check_letters(word, self.graph.d)
        if len(word) > self.max_word_length():
            raise ValueError(
                f"word length {len(word)} exceeds this engine's exact range "
                f"{self.max_word_length()}"
            )
        # One semicircle has in-degree <= 2 per state, so entries stay < 2^n.
        exact = len(word) >= 62
        v = self._vacuum(exact)
        for letter in reversed(word):
            v = self._apply(self._letter_entries[letter], v)
        return int(v[0])

    def sum_moment_values(self, max_order: int) -> list[int]:
        """Moments m_0..m_max_order of the generator sum, all exact."""
        if max_order < 0:
            raise ValueError("max_order must be >= 0")
        if max_order > self.max_word_length():
            raise ValueError(
                f"order {max_order} exceeds this engine's exact range "
                f"{self.max_word_length()}"
            )
        # Each application sums at most 2d inputs per state.
        exact = (2 * self.graph.d) ** max(1, max_order) >= 2**62
        v = self._vacuum(exact)
        values = [int(v[0])]
        for _ in range(max_order):
            v = self._apply(self._sum_entries, v)
            values.append(int(v[0]))
        return values


@dataclass(frozen=True)
class MomentSequence:
    """Exact moments m_0..m_K of the generator sum for one graph."""

    graph_id: str
    values: tuple[int, ...]

    def moment(self, order: int) -> int:
        return self.values[order]


def _support_graph(g: Graph, word):
    """Induced subgraph on the letters of the word, with the letter relabeling.

    Mixed moments only involve operators of letters present in the word, so
    the computation can run on the (often much smaller) induced alphabet.
    """
    support = sorted(set(word))
    relabel = {c: k for k, c in enumerate(support)}
    sub = Graph(g.adjacency[np.ix_(support, support)])
    return sub, [relabel[c] for c in word]


def vacuum_moment(g: Graph, word) -> int:
    """Exact vacuum moment of one semicircle word.

    One-shot convenience wrapper; for many words on the same graph build a
    :class:`MomentCalculator` once instead.
    """
    word = tuple(word)
    _check_letters(word, g.d)
    if not word:
        return 1
    n = len(word)
    sub, subword = _support_graph(g, word)
    calc = MomentCalculator(sub, depth=(n + 1) // 2 + 1)
    return calc.vacuum_moment(subword)


def sum_moments(g: Graph, max_order: int, cap: int = DEFAULT_STATE_CAP) -> MomentSequence:
    """Exact moments of the generator sum up to ``max_order``."""
    calc = MomentCalculator(g, depth=(max_order + 1) // 2 + 1, cap=cap)
    return MomentSequence(
        graph_id=g.digest(), values=tuple(calc.sum_moment_values(max_order))
    )


def moment_norm_lower(g: Graph, order_2n: int, cap: int = DEFAULT_STATE_CAP) -> float:
    """(m_{2n})^(1/2n): a certified lower bound on the norm of the sum."""
    if order_2n < 2 or order_2n % 2 != 0:
        raise ValueError("order must be a positive even integer")
    seq = sum_moments(g, order_2n, cap=cap)
    return nth_root(seq.moment(order_2n), order_2n)


def nth_root(value: int, n: int) -> float:
    """Float n-th root of a (possibly huge) exact integer."""
    if value < 0:
        raise ValueError("negative moment")
    if value == 0:
        return 0.0
    return math.exp(math.log(value) / n)
