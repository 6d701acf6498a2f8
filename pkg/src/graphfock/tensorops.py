"""Coefficient-weighted generator sums on coefficient-space (x) Fock space.

The operator sum(a_i (x) s_i) is applied matrix-free: vectors are blocked
by Fock index as an (m, k) array, each letter contributes a sparse Fock
factor times a dense k x k coefficient factor.  Hermitian families are
handled directly; general families go through the self-adjoint dilation
[[0, T], [T*, 0]], whose top eigenvalue is the norm of T.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .bounds import MatrixCoefficients, khintchine_rhs
from .errors import GraphFormatError
from .estimators import (
    DEFAULT_KRYLOV_CAP,
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    lanczos_extreme,
    symmetric_matrix_extreme,
)
from .fock import FockBasis, semicircle_operator, total_semicircle_operator
from .graphs import Graph
from .traces import DEFAULT_STATE_CAP

HERMITIAN_TOL = 1e-12


class TensorOperator:
    """Matrix-free sum(a_i (x) s_i) on the truncated basis.

    Application cost is O(k^2 * nnz) per matvec.  ``hermitian`` reflects
    whether every coefficient is self-adjoint, in which case the operator
    itself is and its largest eigenvalue equals its norm (the level-parity
    symmetry carries over from the scalar case).
    """

    def __init__(self, coefficients: MatrixCoefficients, basis: FockBasis):
        if coefficients.d != basis.graph.d:
            raise ValueError(
                f"need {basis.graph.d} coefficient matrices, got {coefficients.d}"
            )
        self.coefficients = coefficients
        self.basis = basis
        self.coeff_dim = coefficients.k
        self.fock_dim = basis.dim
        self.dim = self.coeff_dim * self.fock_dim
        self.hermitian = coefficients.all_hermitian(HERMITIAN_TOL)
        self._real = all(
            float(np.max(np.abs(a.imag))) == 0.0 if a.size else True
            for a in coefficients.matrices
        )
        self._fock_factors = [
            semicircle_operator(i, basis).matrix.astype(np.float64)
            for i in range(basis.graph.d)
        ]
        if self._real:
            self._coeff_t = [a.real.T.astype(np.float64).copy() for a in coefficients.matrices]
            self._coeff_conj = [a.real.astype(np.float64).copy() for a in coefficients.matrices]
        else:
            self._coeff_t = [a.T.astype(np.complex128).copy() for a in coefficients.matrices]
            self._coeff_conj = [a.conj().astype(np.complex128).copy() for a in coefficients.matrices]

    @property
    def dtype(self):
        return np.float64 if self._real else np.complex128

    def matvec(self, x: np.ndarray) -> np.ndarray:
        """Apply the operator to a vector of length coeff_dim * fock_dim,
        blocked by Fock index."""
        blocks = x.reshape(self.fock_dim, self.coeff_dim)
        out = np.zeros_like(blocks)
        for fock, coeff_t in zip(self._fock_factors, self._coeff_t):
            out += fock @ (blocks @ coeff_t)
        return out.reshape(-1)

    def matvec_adjoint(self, x: np.ndarray) -> np.ndarray:
        blocks = x.reshape(self.fock_dim, self.coeff_dim)
        out = np.zeros_like(blocks)
        for fock, coeff_c in zip(self._fock_factors, self._coeff_conj):
            out += fock @ (blocks @ coeff_c)
        return out.reshape(-1)

    def start_vector(self) -> np.ndarray:
        """Deterministic start: vacuum on the Fock side, uniform coefficients."""
        v = np.zeros((self.fock_dim, self.coeff_dim), dtype=self.dtype)
        v[0, :] = 1.0 / math.sqrt(self.coeff_dim)
        return v.reshape(-1)


def tensor_operator(
    c: MatrixCoefficients, g: Graph, depth: int, cap: int = DEFAULT_STATE_CAP
) -> TensorOperator:
    if depth < 1:
        raise ValueError("depth must be >= 1")
    return TensorOperator(c, FockBasis(g, depth, cap=cap))


def tensor_norm_lower(
    top: TensorOperator,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    krylov_cap: int = DEFAULT_KRYLOV_CAP,
) -> tuple[float, float]:
    """Certified lower bound on the norm of the tensor operator, with the
    Lanczos residual of the returned Ritz pair."""
    if _is_scalar_identity_like(top):
        # k = 1 with one real scalar: identical code path to the plain
        # truncated-norm estimate, including the matrix and start vector.
        scale = float(top.coefficients.matrices[0].real[0, 0])
        matrix = total_semicircle_operator(top.basis).matrix.astype(np.float64)
        if scale != 1.0:
            matrix = scale * matrix
        return symmetric_matrix_extreme(
            matrix,
            top.basis.vacuum_vector(),
            tol=tol,
            max_iter=max_iter,
            krylov_cap=krylov_cap,
            check_parity=True,
        )
    if top.hermitian:
        theta, residual = lanczos_extreme(
            top.matvec, top.dim, top.start_vector(), tol=tol,
            max_iter=max_iter, krylov_cap=krylov_cap,
        )
        return theta, residual

    def dilated(v):
        upper, lower = v[: top.dim], v[top.dim :]
        return np.concatenate([top.matvec(lower), top.matvec_adjoint(upper)])

    start = np.concatenate(
        [top.start_vector().astype(np.complex128),
         np.zeros(top.dim, dtype=np.complex128)]
    )
    theta, residual = lanczos_extreme(
        dilated, 2 * top.dim, start, tol=tol, max_iter=max_iter, krylov_cap=krylov_cap
    )
    return theta, residual


def _is_scalar_identity_like(top: TensorOperator) -> bool:
    """k = 1 with one common positive real scalar across all letters."""
    if top.coeff_dim != 1 or not top._real:
        return False
    vals = [float(a.real[0, 0]) for a in top.coefficients.matrices]
    return vals[0] > 0.0 and all(v == vals[0] for v in vals)


@dataclass(frozen=True)
class KhintchineCheck:
    lhs_lower: float
    rhs: float
    satisfied: bool
    margin: float

    def to_dict(self) -> dict:
        return {
            "lhs_lower": self.lhs_lower,
            "rhs": self.rhs,
            "satisfied": self.satisfied,
            "margin": self.margin,
        }


def khintchine_check(
    c: MatrixCoefficients,
    g: Graph,
    depth: int,
    variant: str = "eigen",
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    cap: int = DEFAULT_STATE_CAP,
) -> KhintchineCheck:
    """Compare the numerical norm lower bound of sum(a_i (x) s_i) with the
    closed-form right-hand side; ``satisfied`` allows 1e-9 slack."""
    rhs = khintchine_rhs(g, c, variant=variant)
    if all(float(np.max(np.abs(a))) == 0.0 for a in c.matrices):
        return KhintchineCheck(lhs_lower=0.0, rhs=rhs, satisfied=True, margin=rhs)
    top = tensor_operator(c, g, depth, cap=cap)
    lhs, _residual = tensor_norm_lower(top, tol=tol, max_iter=max_iter)
    return KhintchineCheck(
        lhs_lower=lhs,
        rhs=rhs,
        satisfied=lhs <= rhs + 1e-9,
        margin=rhs - lhs,
    )


# ---------------------------------------------------------------------------
# Coefficient file format: {"k": int, "matrices": d x k x k x [re, im]}

def coefficients_to_dict(c: MatrixCoefficients) -> dict:
    return {
        "k": c.k,
        "matrices": [
            [[[float(v.real), float(v.imag)] for v in row] for row in a]
            for a in c.matrices
        ],
    }


def coefficients_from_dict(data) -> MatrixCoefficients:
    if not isinstance(data, dict) or "k" not in data or "matrices" not in data:
        raise GraphFormatError("coefficient JSON needs fields 'k' and 'matrices'")
    k = data["k"]
    if not isinstance(k, int) or k < 1:
        raise GraphFormatError(f"field 'k' must be a positive integer, got {k!r}")
    mats = []
    for pos, raw in enumerate(data["matrices"]):
        a = np.zeros((k, k), dtype=np.complex128)
        if not isinstance(raw, list) or len(raw) != k:
            raise GraphFormatError(f"matrix #{pos} must have {k} rows")
        for r, row in enumerate(raw):
            if not isinstance(row, list) or len(row) != k:
                raise GraphFormatError(f"matrix #{pos} row {r} must have {k} entries")
            for cidx, pair in enumerate(row):
                if not (isinstance(pair, list) and len(pair) == 2):
                    raise GraphFormatError(
                        f"matrix #{pos} entry ({r},{cidx}) must be [re, im]"
                    )
                a[r, cidx] = complex(pair[0], pair[1])
        mats.append(a)
    return MatrixCoefficients.from_arrays(mats)


def load_coefficients(path) -> MatrixCoefficients:
    with open(path) as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(
                f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
            ) from exc
    try:
        return coefficients_from_dict(data)
    except GraphFormatError as exc:
        raise GraphFormatError(f"{path}: {exc}") from exc


def save_coefficients(c: MatrixCoefficients, path) -> None:
    with open(path, "w") as f:
        json.dump(coefficients_to_dict(c), f)
        f.write("\n")
