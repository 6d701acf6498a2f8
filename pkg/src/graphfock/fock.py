"""Truncated Fock space over the trace basis, with sparse ladder operators.

All operator entries are 0/1 and stored as int64 CSR matrices, so matrix
algebra on basis vectors is exact integer arithmetic.  Creation out of the
top level is truncated to zero, which makes every spectral quantity of the
truncated operators a certified lower bound for the untruncated one.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse

from .errors import LetterOutOfRangeError
from .graphs import Graph
from .traces import (
    DEFAULT_STATE_CAP,
    Trace,
    enumerate_traces,
    first_removal_position,
    normal_form,
)


class FockBasis:
    """Ordered basis of all canonical traces up to ``depth``.

    States are sorted by length then lexicographically; ``level_offsets[k]``
    is the index of the first state of length k, with a final sentinel equal
    to the dimension.
    """

    def __init__(self, graph: Graph, depth: int, cap: int = DEFAULT_STATE_CAP):
        if depth < 0:
            raise ValueError("depth must be >= 0")
        self.graph = graph
        self.depth = depth
        levels = enumerate_traces(graph, depth, cap=cap)
        states: list[Trace] = []
        offsets = [0]
        for level in levels.levels:
            states.extend(level)
            offsets.append(len(states))
        self.states = states
        self.level_offsets = tuple(offsets)
        self.index = {t: k for k, t in enumerate(states)}
        self.dim = len(states)
        self._ann_entries = None

    def level_of(self, k: int) -> int:
        return len(self.states[k])

    def interior_dim(self, levels_excluded: int = 1) -> int:
        """Number of states at least ``levels_excluded`` below the top level."""
        return self.level_offsets[max(0, self.depth - levels_excluded + 1)]

    def vacuum_vector(self, dtype=np.float64) -> np.ndarray:
        v = np.zeros(self.dim, dtype=dtype)
        v[0] = 1
        return v

    def _annihilation_entries(self):
        """(rows, cols) per letter for all annihilation operators, built in
        one sweep over the states."""
        if self._ann_entries is None:
            g = self.graph
            noncomm = g.noncommuting_masks
            per_letter = [([], []) for _ in range(g.d)]
            for col, t in enumerate(self.states):
                blocked = 0
                for pos, c in enumerate(t):
                    if not (blocked >> c) & 1:
                        target = normal_form(t[:pos] + t[pos + 1 :], g)
                        rows, cols = per_letter[c]
                        rows.append(self.index[target])
                        cols.append(col)
                    blocked |= noncomm[c]
            self._ann_entries = per_letter
        return self._ann_entries


class SparseOperator:
    """Thin wrapper over an int64 CSR matrix on a Fock basis."""

    def __init__(self, matrix: scipy.sparse.csr_matrix, symmetric: bool):
        self.matrix = matrix
        self.symmetric = symmetric
        self.dim = matrix.shape[0]

    @property
    def nnz(self) -> int:
        return self.matrix.nnz

    def apply(self, vec):
        return self.matrix @ vec

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def entries(self):
        """Yield (row, col, value) triples in row-major order."""
        coo = self.matrix.tocoo()
        for r, c, v in zip(coo.row, coo.col, coo.data):
            yield int(r), int(c), int(v)

    def dump(self, fileobj) -> None:
        """Write coordinate-format text: one 0-based ``row col value`` per line."""
        for r, c, v in self.entries():
            fileobj.write(f"{r} {c} {v}\n")


def _csr(rows, cols, dim):
    data = np.ones(len(rows), dtype=np.int64)
    m = scipy.sparse.csr_matrix(
        (data, (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))),
        shape=(dim, dim),
        dtype=np.int64,
    )
    m.sum_duplicates()
    return m


def annihilation_operator(letter: int, basis: FockBasis) -> SparseOperator:
    """Remove an initial occurrence of ``letter`` and renormalize; zero on
    states where the letter is not initial."""
    _check_letter(letter, basis.graph)
    rows, cols = basis._annihilation_entries()[letter]
    return SparseOperator(_csr(rows, cols, basis.dim), symmetric=False)


def creation_operator(letter: int, basis: FockBasis) -> SparseOperator:
    """Prepend ``letter``; states at the top level are mapped to zero.

    This is exactly the transpose of the annihilation operator on the
    truncated basis.
    """
    _check_letter(letter, basis.graph)
    rows, cols = basis._annihilation_entries()[letter]
    return SparseOperator(_csr(cols, rows, basis.dim), symmetric=False)


def semicircle_operator(letter: int, basis: FockBasis) -> SparseOperator:
    """Creation plus annihilation for one letter; symmetric by construction."""
    _check_letter(letter, basis.graph)
    rows, cols = basis._annihilation_entries()[letter]
    m = _csr(rows + cols, cols + rows, basis.dim)
    return SparseOperator(m, symmetric=True)


def total_semicircle_operator(basis: FockBasis) -> SparseOperator:
    """The sum of all semicircle operators on the basis."""
    all_rows: list[int] = []
    all_cols: list[int] = []
    for letter in range(basis.graph.d):
        rows, cols = basis._annihilation_entries()[letter]
        all_rows.extend(rows)
        all_cols.extend(cols)
    m = _csr(all_rows + all_cols, all_cols + all_rows, basis.dim)
    return SparseOperator(m, symmetric=True)


def check_commutation(i: int, j: int, basis: FockBasis) -> int:
    """Max absolute entry of the mixed commutation residual on interior states.

    The identity  ann_i cre_j - adj_ij cre_j ann_i = delta_ij I  must hold
    exactly on every state at least one level below the truncation (the top
    level is excluded because creation there is cut off).
    """
    if basis.depth < 2:
        raise ValueError("check_commutation needs depth >= 2")
    g = basis.graph
    _check_letter(i, g)
    _check_letter(j, g)
    ann_i = annihilation_operator(i, basis).matrix
    cre_j = creation_operator(j, basis).matrix
    ann_i_cre_j = ann_i @ cre_j
    residual = ann_i_cre_j - int(g.adjacency[i, j]) * (cre_j @ ann_i)
    if i == j:
        residual = residual - scipy.sparse.identity(basis.dim, dtype=np.int64, format="csr")
    interior = basis.interior_dim(1)
    residual = residual.tocsc()[:, :interior]
    residual.eliminate_zeros()
    if residual.nnz == 0:
        return 0
    return int(np.abs(residual.data).max())


def _check_letter(letter: int, g: Graph):
    if not 0 <= letter < g.d:
        raise LetterOutOfRangeError(letter, g.d)
