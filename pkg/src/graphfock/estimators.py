"""Certified numerical lower bounds on the norm of the generator sum.

Three routes, all lower bounds by construction:

* largest eigenvalue of the level-truncated sum (compressions of a
  self-adjoint operator never exceed its norm),
* even-moment roots (delegated to :mod:`graphfock.moments`),
* the exact Rayleigh quotient of the clique test vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.linalg

from .errors import NotACliqueError
from .fock import FockBasis, total_semicircle_operator
from .graphs import Graph, clique_number
from .moments import moment_norm_lower
from .traces import DEFAULT_STATE_CAP

#: Krylov vectors kept per Lanczos cycle before restarting.
DEFAULT_KRYLOV_CAP = 400

#: Total matvec budget across restarts.
DEFAULT_MAX_ITER = 2000

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class NormEstimate:
    """One numerical lower bound with its provenance."""

    value: float
    method: str  # lanczos | moment_root | clique_vector
    depth_or_order: int
    certified_lower: bool
    residual: float


def lanczos_extreme(
    matvec,
    dim: int,
    start: np.ndarray,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    krylov_cap: int = DEFAULT_KRYLOV_CAP,
):
    """Largest eigenvalue of a Hermitian operator by Lanczos iteration.

    Full reorthogonalization against the stored Krylov block, deterministic
    fixed starting vector, restart from the best Ritz vector once the block
    reaches ``krylov_cap``.  Returns ``(theta, residual)`` where ``theta``
    is a certified lower bound on the largest eigenvalue whatever the
    convergence state; ``residual`` bounds ``|A x - theta x|`` for the
    returned Ritz pair.
    """
    nrm = np.linalg.norm(start)
    if nrm == 0:
        raise ValueError("starting vector must be nonzero")
    q = (start / nrm).astype(np.result_type(start.dtype, np.float64))
    theta = -math.inf
    residual = math.inf
    used = 0
    while used < max_iter:
        rows = max(1, min(krylov_cap, max_iter - used, dim))
        block = np.zeros((rows, len(q)), dtype=q.dtype)
        alphas: list[float] = []
        betas: list[float] = []
        block[0] = q
        k = 0
        while True:
            w = matvec(block[k])
            used += 1
            alphas.append(float(np.real(np.vdot(block[k], w))))
            w = w - alphas[-1] * block[k]
            if k > 0:
                w = w - betas[-1] * block[k - 1]
            coeffs = block[: k + 1].conj() @ w
            w = w - block[: k + 1].T @ coeffs
            beta = float(np.linalg.norm(w))
            theta_k, vec_k = _top_ritz(alphas, betas)
            residual_k = beta * abs(float(vec_k[-1]))
            if theta_k >= theta:
                theta, residual = theta_k, residual_k
            if beta <= 1e-14 * max(1.0, abs(theta_k)):
                return theta, 0.0
            if residual_k <= tol * max(1.0, abs(theta_k)):
                return theta, residual
            if k + 1 >= rows or used >= max_iter:
                # restart from the best Ritz vector of this cycle
                q = block[: k + 1].T @ vec_k.astype(block.dtype)
                q = q / np.linalg.norm(q)
                break
            betas.append(beta)
            k += 1
            block[k] = w / beta
    return theta, residual


def _top_ritz(alphas, betas):
    if len(alphas) == 1:
        return alphas[0], np.ones(1)
    vals, vecs = scipy.linalg.eigh_tridiagonal(
        np.asarray(alphas), np.asarray(betas[: len(alphas) - 1])
    )
    return float(vals[-1]), vecs[:, -1]


def symmetric_matrix_extreme(
    matrix,
    start: np.ndarray,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    krylov_cap: int = DEFAULT_KRYLOV_CAP,
    check_parity: bool = False,
) -> tuple[float, float]:
    """Largest eigenvalue of a sparse real symmetric matrix.

    Small dimensions go through a dense solve (residual 0) where the
    level-parity symmetry (spectrum symmetric about zero) can also be
    asserted rather than assumed; larger ones through Lanczos with the
    given deterministic start.
    """
    dim = matrix.shape[0]
    if dim <= 200:
        eigs = np.linalg.eigvalsh(matrix.toarray())
        top = float(eigs[-1])
        if check_parity and abs(eigs[0] + top) > 1e-8 * max(1.0, top):
            raise AssertionError(
                "level-parity symmetry violated: spectrum is not symmetric about 0"
            )
        return top, 0.0
    return lanczos_extreme(
        lambda v: matrix @ v, dim, start, tol=tol, max_iter=max_iter,
        krylov_cap=krylov_cap,
    )


def truncated_norm(
    g: Graph,
    depth: int,
    tol: float = DEFAULT_TOL,
    cap: int = DEFAULT_STATE_CAP,
    max_iter: int = DEFAULT_MAX_ITER,
    krylov_cap: int = DEFAULT_KRYLOV_CAP,
) -> NormEstimate:
    """Largest eigenvalue of the depth-truncated generator sum via Lanczos.

    The truncated operator flips level parity, so its spectrum is symmetric
    about zero and the largest eigenvalue equals its norm.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    basis = FockBasis(g, depth, cap=cap)
    matrix = total_semicircle_operator(basis).matrix.astype(np.float64)
    theta, residual = symmetric_matrix_extreme(
        matrix,
        basis.vacuum_vector(),
        tol=tol,
        max_iter=max_iter,
        krylov_cap=krylov_cap,
        check_parity=True,
    )
    return NormEstimate(
        value=theta,
        method="lanczos",
        depth_or_order=depth,
        certified_lower=True,
        residual=residual,
    )


def clique_vector_bound(g: Graph, clique, N: int) -> NormEstimate:
    """Exact Rayleigh quotient of the clique test vector.

    The test vector is the sum of all states whose exponents over the clique
    letters each range over 1..N.  Since clique letters commute pairwise and
    one application of the sum only reaches clique states with exponents up
    to N+1 plus single-letter extensions by the other generators, the squared
    norm is a closed-form integer:

        k(4N-4) N^(k-1) + k(k-1)(2N-2)^2 N^(k-2) + (d-k) N^k

    divided by the squared test-vector norm N^k; the only floating-point
    step is the final square root.
    """
    clique = tuple(clique)
    if N < 2:
        raise ValueError("N must be >= 2")
    k = len(clique)
    if k == 0 or len(set(clique)) != k:
        raise NotACliqueError(f"clique must list distinct vertices, got {clique}")
    for v in clique:
        if not 0 <= v < g.d:
            raise NotACliqueError(f"vertex {v} out of range for d={g.d}")
    for a in range(k):
        for b in range(a + 1, k):
            if not g.adjacency[clique[a], clique[b]]:
                raise NotACliqueError(
                    f"vertices {clique[a]} and {clique[b]} are not adjacent"
                )
    d = g.d
    total = k * (4 * N - 4) * N ** (k - 1) + (d - k) * N**k
    if k >= 2:
        total += k * (k - 1) * (2 * N - 2) ** 2 * N ** (k - 2)
    ratio = Fraction(total, N**k)
    return NormEstimate(
        value=math.sqrt(float(ratio)),
        method="clique_vector",
        depth_or_order=N,
        certified_lower=True,
        residual=0.0,
    )


def clique_vector_limit(k: int, d: int) -> float:
    """Large-N limit of the clique test-vector bound."""
    return math.sqrt(4 * k * k + d - k)


@dataclass(frozen=True)
class LowerBoundBudget:
    max_depth: int = 6
    max_order: int = 10
    max_N: int = 1000

    def __post_init__(self):
        if self.max_depth < 1 or self.max_order < 2 or self.max_N < 2:
            raise ValueError("budgets must be positive (depth>=1, order>=2, N>=2)")


def best_lower(
    g: Graph,
    budget: LowerBoundBudget = LowerBoundBudget(),
    tol: float = DEFAULT_TOL,
    cap: int = DEFAULT_STATE_CAP,
) -> NormEstimate:
    """Best of the three lower bounds within the given budget."""
    order = budget.max_order - (budget.max_order % 2)
    candidates = [
        truncated_norm(g, budget.max_depth, tol=tol, cap=cap),
        NormEstimate(
            value=moment_norm_lower(g, order, cap=cap),
            method="moment_root",
            depth_or_order=order,
            certified_lower=True,
            residual=0.0,
        ),
        clique_vector_bound(g, clique_number(g).witness, budget.max_N),
    ]
    return max(candidates, key=lambda e: e.value)
