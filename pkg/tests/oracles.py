"""Independent brute-force oracles used to pin expected values in tests.

Everything here deliberately avoids the library's own algorithms: classes
are explored by adjacent-swap closure, cliques by subset enumeration,
moments by partition counting or direct dense matrix products.
"""

from itertools import combinations, product

import numpy as np

from graphfock.graphs import Graph


def all_words(d, max_len):
    for n in range(max_len + 1):
        yield from product(range(d), repeat=n)


def orbit(word, g: Graph):
    """Equivalence class of a word under adjacent commuting swaps (BFS)."""
    word = tuple(word)
    seen = {word}
    frontier = [word]
    while frontier:
        nxt = []
        for w in frontier:
            for p in range(len(w) - 1):
                a, b = w[p], w[p + 1]
                if a != b and g.adjacency[a, b]:
                    v = w[:p] + (b, a) + w[p + 2 :]
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
        frontier = nxt
    return seen


def brute_normal_form(word, g: Graph):
    return min(orbit(word, g))


def brute_initial_letters(word, g: Graph):
    return {w[0] for w in orbit(word, g) if w}


def brute_class_count(g: Graph, length):
    """Number of classes of words of exactly this length, by orbit closure."""
    seen = set()
    classes = 0
    for w in product(range(g.d), repeat=length):
        if w not in seen:
            seen |= orbit(w, g)
            classes += 1
    return classes


def left_bfs_enumerate(g: Graph, max_len):
    """The dedup-based enumeration: level n+1 = normal forms of letter+word.

    Serves as the independent route against the library's direct
    right-extension generation.
    """
    from graphfock.traces import normal_form

    levels = [[()]]
    for _ in range(max_len):
        nxt = {normal_form((i,) + w, g) for i in range(g.d) for w in levels[-1]}
        levels.append(sorted(nxt))
    return [sorted(level) for level in levels]


def all_labeled_graphs(d):
    """Every labeled simple graph on d vertices."""
    pairs = list(combinations(range(d), 2))
    for mask in range(1 << len(pairs)):
        a = np.zeros((d, d), dtype=np.int8)
        for bit, (i, j) in enumerate(pairs):
            if mask >> bit & 1:
                a[i, j] = a[j, i] = 1
        yield Graph(a)


def brute_max_clique(g: Graph):
    """Largest clique by exhaustive subset check (d <= ~15)."""
    best = 1
    vertices = range(g.d)
    for size in range(g.d, 0, -1):
        for sub in combinations(vertices, size):
            if all(g.adjacency[i, j] for i, j in combinations(sub, 2)):
                return size, sub
    return best, (0,)


def pairings(elements):
    """All pairings of an even-size list."""
    if not elements:
        yield []
        return
    first = elements[0]
    for k in range(1, len(elements)):
        rest = elements[1:k] + elements[k + 1 :]
        for sub in pairings(rest):
            yield [(first, elements[k])] + sub


def is_noncrossing(pairing):
    for (a, b), (c, d) in combinations(pairing, 2):
        if a < c < b < d or c < a < d < b:
            return False
    return True


def catalan_by_pairings(n):
    """Number of non-crossing pairings of 2n points."""
    return sum(1 for p in pairings(list(range(2 * n))) if is_noncrossing(p))


def free_sum_moment(d, n):
    """2n-th moment of the sum of d mutually free standard semicircles."""
    return d**n * catalan_by_pairings(n)


def semicircle_moment(variance, order):
    """Moments of a centered semicircle with the given variance."""
    if order % 2:
        return 0
    n = order // 2
    return catalan_by_pairings(n) * variance**n


def independent_sum_moment(moments_x, moments_y, order):
    """Moments of X+Y for commuting independent X, Y given their moments."""
    from math import comb

    return sum(
        comb(order, k) * moments_x[k] * moments_y[order - k] for k in range(order + 1)
    )


def classical_sum_moment(d, order):
    """Moments of the sum of d commuting independent standard semicircles,
    by iterated binomial convolution."""
    base = [semicircle_moment(1, k) for k in range(order + 1)]
    acc = [1] + [0] * order
    for _ in range(d):
        acc = [independent_sum_moment(acc, base, k) for k in range(order + 1)]
    return acc[order]


def path_top_eigenvalue(dim):
    """Largest eigenvalue of the 0/1 tridiagonal matrix of size dim."""
    return 2.0 * np.cos(np.pi / (dim + 1))


def dense_operator(op):
    return op.matrix.toarray()


def creation_by_definition(letter, basis):
    """Creation matrix built directly from prepending + renormalizing,
    independent of the transpose construction used by the library."""
    from graphfock.traces import normal_form

    dense = np.zeros((basis.dim, basis.dim), dtype=np.int64)
    for col, w in enumerate(basis.states):
        if len(w) >= basis.depth:
            continue
        target = normal_form((letter,) + w, basis.graph)
        dense[basis.index[target], col] = 1
    return dense


def seeded_random_graph(d, p, seed):
    rng = np.random.default_rng(seed)
    a = np.zeros((d, d), dtype=np.int8)
    for i in range(d):
        for j in range(i + 1, d):
            if rng.random() < p:
                a[i, j] = a[j, i] = 1
    return Graph(a)
