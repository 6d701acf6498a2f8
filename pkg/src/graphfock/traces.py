"""Words over the vertex alphabet modulo partial commutation.

Two words are equivalent when one can be turned into the other by swapping
adjacent letters that are joined by an edge of the graph.  Every class is
represented by its lexicographically least member, computed by repeatedly
extracting the smallest letter that has an occurrence preceded only by
letters commuting with it.

Letters are 0-based ints; a trace is a plain tuple of letters, and the
empty tuple is the vacuum word (printed as "0").
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BasisTooLargeError, LetterOutOfRangeError
from .graphs import Graph

Trace = tuple[int, ...]

#: Default hard limit on the number of enumerated states.
DEFAULT_STATE_CAP = 5_000_000


def _check_letters(word, d):
    for c in word:
        if not 0 <= c < d:
            raise LetterOutOfRangeError(c, d)


def normal_form(word, g: Graph) -> Trace:
    """Lexicographically least representative of the class of ``word``.

    Each round scans left to right with a bitmask of letters blocked by an
    earlier non-commuting letter; the smallest unblocked letter is pulled
    out (at its first qualifying occurrence) and the scan repeats on the
    remainder.
    """
    word = tuple(word)
    _check_letters(word, g.d)
    if len(word) <= 1:
        return word
    noncomm = g.noncommuting_masks
    letters = list(word)
    out = []
    while letters:
        blocked = 0
        best = -1
        best_pos = -1
        for pos, c in enumerate(letters):
            if not (blocked >> c) & 1 and (best < 0 or c < best):
                best = c
                best_pos = pos
                if c == 0:
                    break
            blocked |= noncomm[c]
        out.append(best)
        del letters[best_pos]
    return tuple(out)


def equivalent(u, v, g: Graph) -> bool:
    """True iff the two words are equal modulo the commutation relations."""
    return normal_form(u, g) == normal_form(v, g)


def initial_letters(t, g: Graph) -> set[int]:
    """Letters that begin some representative of the class of ``t``.

    A letter qualifies iff its first occurrence is preceded only by letters
    commuting with it.
    """
    t = tuple(t)
    _check_letters(t, g.d)
    noncomm = g.noncommuting_masks
    blocked = 0
    out = set()
    for c in t:
        if not (blocked >> c) & 1:
            out.add(c)
        blocked |= noncomm[c]
    return out


def first_removal_position(t, letter: int, g: Graph) -> int | None:
    """Position of the occurrence of ``letter`` that annihilation removes,
    or None when ``letter`` is not initial in ``t``."""
    noncomm = g.noncommuting_masks
    blocked = 0
    for pos, c in enumerate(t):
        if c == letter and not (blocked >> c) & 1:
            return pos
        blocked |= noncomm[c]
        if (blocked >> letter) & 1:
            return None
    return None


def in_reduced_index_set(indices, g: Graph) -> bool:
    """Membership test for tuples whose centered mixed moments must vanish.

    Requires that between any two equal entries there is an entry of a
    different, non-commuting letter.  Only consecutive occurrences of each
    letter need checking: a separator for a closer pair also separates any
    wider pair.
    """
    indices = tuple(indices)
    _check_letters(indices, g.d)
    last_seen: dict[int, int] = {}
    for pos, c in enumerate(indices):
        if c in last_seen:
            k = last_seen[c]
            if not any(
                indices[m] != c and not g.adjacency[c, indices[m]]
                for m in range(k + 1, pos)
            ):
                return False
        last_seen[c] = pos
    return indices != ()


@dataclass(frozen=True)
class TraceLevels:
    """Canonical traces grouped by length, sorted lexicographically per level."""

    levels: tuple[tuple[Trace, ...], ...]

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.levels)

    @property
    def total(self) -> int:
        return sum(self.counts)


def canonical_append(t: Trace, letter: int, noncomm) -> bool:
    """Whether appending ``letter`` to the canonical trace ``t`` stays canonical.

    Scanning backward over the suffix of letters commuting with ``letter``,
    the extension is canonical iff none of them is larger (a larger one
    would let ``letter`` bubble left into a lex-smaller word).
    """
    mask = noncomm[letter]
    for j in range(len(t) - 1, -1, -1):
        c = t[j]
        if (mask >> c) & 1:
            return True
        if c > letter:
            return False
    return True


def enumerate_traces(g: Graph, max_len: int, cap: int = DEFAULT_STATE_CAP) -> TraceLevels:
    """All canonical traces of length <= max_len, grouped and counted by length.

    Level n+1 is produced by extending each canonical trace of level n on
    the right by every letter that keeps it canonical; each class therefore
    appears exactly once, already in lexicographic order, with no dedup
    pass.  Raises :class:`BasisTooLargeError` once the running total would
    exceed ``cap``.
    """
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    noncomm = g.noncommuting_masks
    letters = range(g.d)
    levels: list[tuple[Trace, ...]] = [((),)]
    total = 1
    if total > cap:
        raise BasisTooLargeError(cap, 0)
    for length in range(1, max_len + 1):
        nxt = []
        for t in levels[-1]:
            for x in letters:
                if canonical_append(t, x, noncomm):
                    nxt.append(t + (x,))
        total += len(nxt)
        if total > cap:
            raise BasisTooLargeError(cap, length)
        levels.append(tuple(nxt))
    return TraceLevels(levels=tuple(levels))


def format_trace(t) -> str:
    """Render a trace as comma-separated 1-based letters; the vacuum is "0"."""
    if not t:
        return "0"
    return ",".join(str(c + 1) for c in t)
