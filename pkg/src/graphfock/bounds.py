"""Closed-form norm bounds from adjacency spectra and cliques.

Upper bounds come in three flavours: the eigenvalue bound
2*sqrt(d*(lambda1+1)), a sharper variant for connected regular graphs of
degree below d-1, and the clique-eigenvalue bound 2*sqrt(d+lambda1*omega).
The clique lower bound is max(sqrt(4*omega^2+d-omega), 2*sqrt(d)).  The
report operation evaluates everything on one graph, cross-checks the
bounds against each other (and optionally against a numerical lower
bound), and records a verdict per check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotApplicableError
from .estimators import LowerBoundBudget, NormEstimate, best_lower
from .graphs import (
    CliqueData,
    Graph,
    SpectralData,
    clique_number,
    spectrum,
    structural_predicates,
)

CONSISTENCY_TOL = 1e-9


@dataclass(frozen=True)
class MatrixCoefficients:
    """A family of d square complex matrices of a common size k."""

    k: int
    matrices: tuple

    @staticmethod
    def from_arrays(arrays) -> "MatrixCoefficients":
        mats = tuple(np.asarray(a, dtype=np.complex128) for a in arrays)
        if not mats:
            raise ValueError("need at least one coefficient matrix")
        k = mats[0].shape[0]
        for a in mats:
            if a.shape != (k, k):
                raise ValueError(f"all coefficients must be {k}x{k}, got {a.shape}")
        return MatrixCoefficients(k=k, matrices=mats)

    @staticmethod
    def scalars(values) -> "MatrixCoefficients":
        return MatrixCoefficients.from_arrays([[[v]] for v in values])

    @property
    def d(self) -> int:
        return len(self.matrices)

    def all_hermitian(self, tol: float = 0.0) -> bool:
        return all(
            np.max(np.abs(a - a.conj().T)) <= tol if a.size else True
            for a in self.matrices
        )


def gram_norms(c: MatrixCoefficients) -> tuple[float, float]:
    """Spectral norms of sum(a_i^* a_i) and sum(a_i a_i^*)."""
    k = c.k
    row = np.zeros((k, k), dtype=np.complex128)
    col = np.zeros((k, k), dtype=np.complex128)
    for a in c.matrices:
        row += a.conj().T @ a
        col += a @ a.conj().T
    return _psd_norm(row), _psd_norm(col)


def _psd_norm(m) -> float:
    return max(0.0, float(np.linalg.eigvalsh(m)[-1]))


def _eigen_factor(spec: SpectralData) -> float:
    return 2.0 * math.sqrt(spec.lambda1 + 1.0)


def _regular_factor(g: Graph, spec: SpectralData) -> float | None:
    shape = structural_predicates(g)
    if not (shape.is_connected and shape.is_regular and shape.degree < g.d - 1):
        return None
    lam1, lam2 = spec.lambda1, spec.lambda2
    denom = g.d - (lam1 - lam2)
    return 2.0 * math.sqrt(g.d * (lam2 + 1.0) / denom)


def khintchine_rhs(
    g: Graph, c: MatrixCoefficients, variant: str = "eigen"
) -> float:
    """Right-hand side of the Khintchine-type bound for operator coefficients.

    ``variant="regular"`` uses the second-eigenvalue factor and raises
    :class:`NotApplicableError` unless the graph is connected, regular, and
    of degree below d-1.
    """
    if c.d != g.d:
        raise ValueError(f"need {g.d} coefficient matrices, got {c.d}")
    spec = spectrum(g)
    if variant == "eigen":
        factor = _eigen_factor(spec)
    elif variant == "regular":
        factor = _regular_factor(g, spec)
        if factor is None:
            raise NotApplicableError(
                "regular variant needs a connected regular graph of degree < d-1"
            )
    else:
        raise ValueError(f"unknown variant {variant!r}")
    row, col = gram_norms(c)
    return factor * math.sqrt(max(row, col))


def upper_eigen(g: Graph) -> float:
    """2*sqrt(d*(lambda1+1)); the scalar case of the eigenvalue bound."""
    return _eigen_factor(spectrum(g)) * math.sqrt(g.d)


def upper_regular(g: Graph) -> float | None:
    """2d*sqrt((lambda2+1)/(d-(lambda1-lambda2))) for connected regular
    graphs of degree < d-1; None (not applicable) otherwise."""
    factor = _regular_factor(g, spectrum(g))
    return None if factor is None else factor * math.sqrt(g.d)


def upper_clique_eigen(g: Graph) -> float:
    """2*sqrt(d + lambda1*omega), combining spectrum and exact clique number."""
    return 2.0 * math.sqrt(g.d + spectrum(g).lambda1 * clique_number(g).omega)


def lower_free(g: Graph) -> float:
    """2*sqrt(d): the norm of d mutually free semicircles, minimal over graphs."""
    return 2.0 * math.sqrt(g.d)


def lower_clique(g: Graph) -> float:
    """max(sqrt(4*omega^2 + d - omega), 2*sqrt(d))."""
    omega = clique_number(g).omega
    return max(math.sqrt(4.0 * omega * omega + g.d - omega), lower_free(g))


def haar_unitary_upper(g: Graph) -> float:
    """2*sqrt(2d + 2*lambda1*omega): the analogous bound for the sum of the
    2d unitary generators and inverses attached to the graph (formula
    evaluation only)."""
    return 2.0 * math.sqrt(2.0 * g.d + 2.0 * spectrum(g).lambda1 * clique_number(g).omega)


def clique_benchmark_upper(g: Graph) -> float:
    """2*sqrt(d*omega): the external clique-only benchmark the
    clique-eigenvalue bound is compared against."""
    return 2.0 * math.sqrt(g.d * clique_number(g).omega)


@dataclass(frozen=True)
class CheckFlag:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class BoundsReport:
    """Every bound, the spectral and clique data, and consistency verdicts."""

    d: int
    lambda1: float
    lambda2: float | None
    omega: int
    upper_eigen: float
    upper_regular: float | None
    upper_clique_eigen: float
    lower_clique: float
    lower_free: float
    haar_upper: float
    numerical_lower: NormEstimate | None
    flags: tuple[CheckFlag, ...] = field(default=())

    @property
    def all_passed(self) -> bool:
        return all(f.passed for f in self.flags)

    def min_upper(self) -> float:
        uppers = [self.upper_eigen, self.upper_clique_eigen]
        if self.upper_regular is not None:
            uppers.append(self.upper_regular)
        return min(uppers)

    def to_dict(self) -> dict:
        num = None
        if self.numerical_lower is not None:
            num = {
                "value": self.numerical_lower.value,
                "method": self.numerical_lower.method,
                "depth_or_order": self.numerical_lower.depth_or_order,
                "certified_lower": self.numerical_lower.certified_lower,
                "residual": self.numerical_lower.residual,
            }
        return {
            "d": self.d,
            "lambda1": self.lambda1,
            "lambda2": self.lambda2,
            "omega": self.omega,
            "upper_eigen": self.upper_eigen,
            "upper_regular": self.upper_regular,
            "upper_clique_eigen": self.upper_clique_eigen,
            "lower_clique": self.lower_clique,
            "lower_free": self.lower_free,
            "haar_upper": self.haar_upper,
            "numerical_lower": num,
            "flags": [
                {"name": f.name, "passed": f.passed, "detail": f.detail}
                for f in self.flags
            ],
        }


def report(
    g: Graph,
    budget: LowerBoundBudget | None = None,
    tol: float = CONSISTENCY_TOL,
) -> BoundsReport:
    """Evaluate all bounds on one graph and cross-check them.

    When ``budget`` is given, the best numerical lower bound within it is
    attached and folded into the sandwich check.
    """
    spec = spectrum(g)
    cli: CliqueData = clique_number(g)
    shape = structural_predicates(g)
    u_eigen = upper_eigen(g)
    u_regular = upper_regular(g)
    u_clique = upper_clique_eigen(g)
    l_clique = lower_clique(g)
    l_free = lower_free(g)
    numerical = best_lower(g, budget) if budget is not None else None

    flags: list[CheckFlag] = []

    def add(name, passed, detail):
        flags.append(CheckFlag(name=name, passed=bool(passed), detail=detail))

    if u_regular is not None:
        add(
            "regular_le_eigen",
            u_regular <= u_eigen + tol,
            f"{u_regular:.12g} <= {u_eigen:.12g}",
        )
    if shape.is_connected and shape.is_regular and g.d >= 2:
        lam1, lam2 = spec.lambda1, spec.lambda2
        lhs = g.d * (lam1 + 1.0) * (1.0 - (lam1 - lam2) / g.d) - g.d * (lam2 + 1.0)
        rhs = (lam1 - lam2) * (g.d - lam1 - 1.0)
        add(
            "gap_identity",
            abs(lhs - rhs) <= tol and rhs >= -tol,
            f"{lhs:.12g} == {rhs:.12g} >= 0",
        )
    lower = l_clique if numerical is None else max(l_clique, numerical.value)
    min_upper = min(x for x in (u_eigen, u_regular, u_clique) if x is not None)
    add(
        "sandwich",
        lower <= min_upper + tol,
        f"best lower {lower:.12g} <= min upper {min_upper:.12g}",
    )
    wilf_lhs = g.d / (g.d - spec.lambda1)
    add(
        "wilf",
        wilf_lhs <= cli.omega + tol,
        f"{wilf_lhs:.12g} <= omega = {cli.omega}",
    )
    benchmark = clique_benchmark_upper(g)
    add(
        "clique_eigen_vs_benchmark",
        u_clique <= benchmark + tol,
        f"{u_clique:.12g} <= {benchmark:.12g}",
    )
    add(
        "free_le_clique_lower",
        l_free <= l_clique + tol,
        f"{l_free:.12g} <= {l_clique:.12g}",
    )
    return BoundsReport(
        d=g.d,
        lambda1=spec.lambda1,
        lambda2=spec.lambda2,
        omega=cli.omega,
        upper_eigen=u_eigen,
        upper_regular=u_regular,
        upper_clique_eigen=u_clique,
        lower_clique=l_clique,
        lower_free=l_free,
        haar_upper=haar_unitary_upper(g),
        numerical_lower=numerical,
        flags=tuple(flags),
    )
