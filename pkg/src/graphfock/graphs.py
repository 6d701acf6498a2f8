"""Commutation graphs: validation, spectra, cliques, predicates, and named families.

A graph on d vertices prescribes which generator pairs commute (adjacent)
and which are free (non-adjacent).  Vertices are 0-based throughout the
library; user-facing text adds 1 (see :func:`to_display_vertices`).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.linalg

from .errors import (
    BadParamsError,
    GraphFormatError,
    NonBinaryEntryError,
    NonSymmetricError,
    NonZeroDiagonalError,
    SizeLimitExceededError,
    SolverFailureError,
)

#: Largest vertex count accepted by the exact solvers (dense spectrum, clique).
EXACT_SOLVER_CAP = 64

#: Relative accuracy of the dense symmetric eigensolver.
SPECTRUM_RTOL = 1e-10

FAMILY_NAMES = (
    "empty",
    "complete",
    "cycle",
    "complete_multipartite",
    "xy_model",
    "erdos_renyi",
)


class Graph:
    """Simple undirected graph given by its 0/1 adjacency matrix.

    The matrix is validated on construction (symmetric, zero diagonal,
    binary entries) and stored read-only, so instances are safe to share
    between threads.
    """

    def __init__(self, adjacency):
        a = np.asarray(adjacency)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise GraphFormatError(f"adjacency must be square, got shape {a.shape}")
        d = a.shape[0]
        if d < 1:
            raise GraphFormatError("graph needs at least one vertex")
        for i in range(d):
            for j in range(d):
                v = a[i, j]
                if v != 0 and v != 1:
                    raise NonBinaryEntryError(i, j, v)
        for i in range(d):
            if a[i, i] != 0:
                raise NonZeroDiagonalError(i)
        for i in range(d):
            for j in range(i):
                if a[i, j] != a[j, i]:
                    raise NonSymmetricError(i, j)
        self._adj = a.astype(np.int8)
        self._adj.setflags(write=False)
        self.d = d

    @property
    def adjacency(self) -> np.ndarray:
        return self._adj

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as sorted (i, j) pairs with i < j."""
        return tuple(
            (i, j)
            for i in range(self.d)
            for j in range(i + 1, self.d)
            if self._adj[i, j]
        )

    @cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        """Per-vertex neighbour sets as bitmasks (self excluded)."""
        masks = []
        for i in range(self.d):
            m = 0
            for j in range(self.d):
                if self._adj[i, j]:
                    m |= 1 << j
            masks.append(m)
        return tuple(masks)

    @cached_property
    def noncommuting_masks(self) -> tuple[int, ...]:
        """Per-letter bitmask of letters that do NOT commute with it (self included)."""
        full = (1 << self.d) - 1
        return tuple(full & ~m for m in self.adjacency_masks)

    def commutes(self, i: int, j: int) -> bool:
        return bool(self._adj[i, j])

    def degree(self, i: int) -> int:
        return int(self._adj[i].sum())

    def digest(self) -> str:
        """Stable hex digest of the graph's canonical JSON form."""
        text = json.dumps(graph_to_dict(self), separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.d == other.d
            and np.array_equal(self._adj, other._adj)
        )

    def __hash__(self):
        return hash((self.d, self._adj.tobytes()))

    def __repr__(self):
        return f"Graph(d={self.d}, edges={len(self.edges)})"


def validate(raw_matrix) -> Graph:
    """Check a square 0/1 matrix and wrap it as a :class:`Graph`.

    The first offending index pair is reported in the raised error:
    non-binary entries are found row-major, asymmetry is found scanning
    the lower triangle.
    """
    return Graph(raw_matrix)


@dataclass(frozen=True)
class SpectralData:
    """Adjacency eigenvalues sorted descending, with the solver accuracy."""

    eigenvalues: tuple[float, ...]
    tolerance: float

    @property
    def lambda1(self) -> float:
        return self.eigenvalues[0]

    @property
    def lambda2(self) -> float | None:
        return self.eigenvalues[1] if len(self.eigenvalues) >= 2 else None


def spectrum(g: Graph) -> SpectralData:
    """All adjacency eigenvalues via dense symmetric tridiagonalization + QR.

    Exact enough for the vertex counts this package targets (d <= 64);
    raises :class:`SolverFailureError` if LAPACK does not converge.
    """
    if g.d > EXACT_SOLVER_CAP:
        raise SizeLimitExceededError(
            f"dense spectrum supports d <= {EXACT_SOLVER_CAP}, got {g.d}"
        )
    try:
        eigs = scipy.linalg.eigh(
            g.adjacency.astype(np.float64), eigvals_only=True, driver="ev"
        )
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK rarely fails here
        raise SolverFailureError(str(exc)) from exc
    ordered = tuple(sorted((float(x) for x in eigs), reverse=True))
    tol = SPECTRUM_RTOL * max(1.0, float(g.d))
    return SpectralData(eigenvalues=ordered, tolerance=tol)


@dataclass(frozen=True)
class CliqueData:
    """Exact clique number with one witnessing vertex set."""

    omega: int
    witness: tuple[int, ...]


def clique_number(g: Graph) -> CliqueData:
    """Exact maximum clique via Bron-Kerbosch with pivoting on bitmasks."""
    if g.d > EXACT_SOLVER_CAP:
        raise SizeLimitExceededError(
            f"exact clique solver supports d <= {EXACT_SOLVER_CAP}, got {g.d}"
        )
    neigh = g.adjacency_masks
    best_size = 0
    best_mask = 0

    def bits(mask):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def expand(r_mask, r_size, p_mask, x_mask):
        nonlocal best_size, best_mask
        if p_mask == 0 and x_mask == 0:
            if r_size > best_size:
                best_size, best_mask = r_size, r_mask
            return
        if r_size + bin(p_mask).count("1") <= best_size:
            return
        pivot, pivot_deg = -1, -1
        for u in bits(p_mask | x_mask):
            deg = bin(p_mask & neigh[u]).count("1")
            if deg > pivot_deg:
                pivot, pivot_deg = u, deg
        for v in bits(p_mask & ~neigh[pivot]):
            vbit = 1 << v
            expand(r_mask | vbit, r_size + 1, p_mask & neigh[v], x_mask & neigh[v])
            p_mask &= ~vbit
            x_mask |= vbit

    expand(0, 0, (1 << g.d) - 1, 0)
    witness = tuple(v for v in range(g.d) if best_mask >> v & 1)
    return CliqueData(omega=best_size, witness=witness)


@dataclass(frozen=True)
class StructuralSummary:
    is_connected: bool
    is_regular: bool
    degree: int | None


def structural_predicates(g: Graph) -> StructuralSummary:
    """Connectivity (breadth-first search) and regularity (equal row sums)."""
    seen = 1
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for w in range(g.d):
                if g.adjacency[v, w] and not (seen >> w) & 1:
                    seen |= 1 << w
                    nxt.append(w)
        frontier = nxt
    connected = seen == (1 << g.d) - 1
    degrees = [g.degree(i) for i in range(g.d)]
    regular = len(set(degrees)) == 1
    return StructuralSummary(
        is_connected=connected,
        is_regular=regular,
        degree=degrees[0] if regular else None,
    )


# ---------------------------------------------------------------------------
# Named families


def empty_graph(d: int) -> Graph:
    if d < 1:
        raise BadParamsError("empty graph needs d >= 1")
    return Graph(np.zeros((d, d), dtype=np.int8))


def complete_graph(d: int) -> Graph:
    if d < 1:
        raise BadParamsError("complete graph needs d >= 1")
    a = np.ones((d, d), dtype=np.int8) - np.eye(d, dtype=np.int8)
    return Graph(a)


def cycle_graph(d: int) -> Graph:
    if d < 3:
        raise BadParamsError("cycle graph needs d >= 3")
    a = np.zeros((d, d), dtype=np.int8)
    for i in range(d):
        j = (i + 1) % d
        a[i, j] = a[j, i] = 1
    return Graph(a)


def complete_multipartite_graph(part_sizes) -> Graph:
    sizes = [int(s) for s in part_sizes]
    if not sizes or any(s < 1 for s in sizes):
        raise BadParamsError("part sizes must be positive integers")
    d = sum(sizes)
    labels = np.repeat(np.arange(len(sizes)), sizes)
    a = (labels[:, None] != labels[None, :]).astype(np.int8)
    return Graph(a)


def xy_model_graph(d: int) -> Graph:
    """Complement of the d-cycle: only cyclically neighbouring generators are free.

    Connected and (d-3)-regular for d >= 5; d = 4 degenerates to a perfect
    matching.
    """
    if d < 4:
        raise BadParamsError("xy_model needs d >= 4")
    a = np.ones((d, d), dtype=np.int8) - np.eye(d, dtype=np.int8)
    for i in range(d):
        j = (i + 1) % d
        a[i, j] = a[j, i] = 0
    return Graph(a)


def _splitmix64(state: int):
    """Yield 64-bit values from the splitmix64 generator (documented so the
    edge stream is reproducible across implementations)."""
    mask = (1 << 64) - 1
    while True:
        state = (state + 0x9E3779B97F4A7C15) & mask
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        yield z ^ (z >> 31)


def erdos_renyi_graph(d: int, p: float, seed: int | None = None) -> Graph:
    """Random graph where each pair (i, j), i < j in row-major order, is an
    edge iff the next splitmix64 draw is below floor(p * 2**64)."""
    if d < 1:
        raise BadParamsError("erdos_renyi needs d >= 1")
    if not 0.0 <= p <= 1.0:
        raise BadParamsError(f"edge probability must be in [0, 1], got {p}")
    gen = _splitmix64((seed or 0) & ((1 << 64) - 1))
    threshold = int(p * (1 << 64))
    a = np.zeros((d, d), dtype=np.int8)
    for i in range(d):
        for j in range(i + 1, d):
            if next(gen) < threshold:
                a[i, j] = a[j, i] = 1
    return Graph(a)


def generate_family(name: str, params, seed: int | None = None) -> Graph:
    """Build a named family member; pure function of (name, params, seed)."""
    params = tuple(params)
    if name == "empty":
        _expect_params(name, params, 1)
        return empty_graph(int(params[0]))
    if name == "complete":
        _expect_params(name, params, 1)
        return complete_graph(int(params[0]))
    if name == "cycle":
        _expect_params(name, params, 1)
        return cycle_graph(int(params[0]))
    if name == "complete_multipartite":
        if not params:
            raise BadParamsError("complete_multipartite needs at least one part size")
        return complete_multipartite_graph(params)
    if name == "xy_model":
        _expect_params(name, params, 1)
        return xy_model_graph(int(params[0]))
    if name == "erdos_renyi":
        _expect_params(name, params, 2)
        return erdos_renyi_graph(int(params[0]), float(params[1]), seed)
    raise BadParamsError(f"unknown family {name!r}; choose from {FAMILY_NAMES}")


def _expect_params(name, params, n):
    if len(params) != n:
        raise BadParamsError(f"family {name!r} takes {n} parameter(s), got {len(params)}")


# ---------------------------------------------------------------------------
# JSON round trip

def graph_to_dict(g: Graph) -> dict:
    return {"d": g.d, "edges": [[i, j] for i, j in g.edges]}


def graph_from_dict(data) -> Graph:
    if not isinstance(data, dict):
        raise GraphFormatError("graph JSON must be an object")
    if "d" not in data or "edges" not in data:
        raise GraphFormatError("graph JSON needs fields 'd' and 'edges'")
    d = data["d"]
    if not isinstance(d, int) or d < 1:
        raise GraphFormatError(f"field 'd' must be a positive integer, got {d!r}")
    a = np.zeros((d, d), dtype=np.int8)
    seen = set()
    for pos, edge in enumerate(data["edges"]):
        if not (isinstance(edge, (list, tuple)) and len(edge) == 2):
            raise GraphFormatError(f"edge #{pos} must be a pair, got {edge!r}")
        i, j = edge
        if not (isinstance(i, int) and isinstance(j, int)):
            raise GraphFormatError(f"edge #{pos} has non-integer endpoints {edge!r}")
        if not (0 <= i < j < d):
            raise GraphFormatError(
                f"edge #{pos} = [{i},{j}] must satisfy 0 <= i < j < d={d}"
            )
        if (i, j) in seen:
            raise GraphFormatError(f"edge #{pos} = [{i},{j}] is a duplicate")
        seen.add((i, j))
        a[i, j] = a[j, i] = 1
    return Graph(a)


def save_graph(g: Graph, path) -> None:
    with open(path, "w") as f:
        f.write(graph_json_text(g))


def graph_json_text(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), separators=(", ", ": ")) + "\n"


def load_graph(path) -> Graph:
    with open(path) as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(
                f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
            ) from exc
    try:
        return graph_from_dict(data)
    except GraphFormatError as exc:
        raise GraphFormatError(f"{path}: {exc}") from exc


def to_display_vertices(vertices) -> tuple[int, ...]:
    """Convert internal 0-based vertices to the 1-based labels used in text output."""
    return tuple(v + 1 for v in vertices)


def from_display_vertices(vertices, d: int) -> tuple[int, ...]:
    """Convert 1-based labels from user input back to internal 0-based vertices."""
    out = []
    for v in vertices:
        if not 1 <= v <= d:
            raise GraphFormatError(f"vertex {v} out of range 1..{d}")
        out.append(v - 1)
    return tuple(out)
