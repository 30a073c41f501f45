"""Positive dual eigenpairs of dual tensors ``A_s + A_d eps``.

Writing ``x = x_s + x_d eps`` and ``lambda = lambda_s + lambda_d eps``, the dual
eigen-equation ``A x^(m-1) = lambda x^[m-1]`` splits into the real Perron
equation for (lambda_s, x_s) and the linear system

    M x_d = A_d x_s^(m-1) - lambda_d x_s^[m-1],

with M a singular irreducible M-matrix whose kernel is spanned by x_s.
Solvability fixes lambda_d; x_d is determined up to adding multiples of x_s,
and the gauge ``x_s^T x_d = 0`` selects one representative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .dual import DualNumber, dual_vector, split
from .errors import DegenerateDenominator, NotTied
from .hypergraph import Hypergraph
from .msolve import MMatrix, group_apply, make_mmatrix, one_inverse_principal
from .spectral import PerronPair, SpectralConfig, m_norm, perron_pair
from .tensor import SparseSymTensor, dual_tensor_apply, tensor_apply

TIE_TOL = 1e-9


@dataclass(frozen=True)
class DualEigenPair:
    lambda_s: float
    lambda_d: float
    x_s: np.ndarray
    x_d: np.ndarray

    @property
    def lam(self) -> DualNumber:
        return DualNumber(self.lambda_s, self.lambda_d)

    @property
    def x(self) -> list[DualNumber]:
        return dual_vector(self.x_s, self.x_d)

    def normalization(self, m: int) -> dict[str, float]:
        return {"m_norm_x_s": m_norm(self.x_s, m), "x_s_dot_x_d": float(self.x_s @ self.x_d)}

    def is_positive(self) -> bool:
        return self.lambda_s > 0 and bool(np.all(self.x_s > 0))


def build_m_general(A_s: SparseSymTensor, lambda_s: float, x_s: np.ndarray) -> np.ndarray:
    """``(m-1) lambda_s diag(x_s)^(m-2) - sum_{k=2..m} A^(k)``.

    A^(k)[i, j] contracts A_s with x_s in every slot except the first (fixed
    to i) and the k-th (fixed to j).  The tensor is treated as a general one:
    every permutation of each support tuple is visited explicitly.
    """
    x_s = np.asarray(x_s, dtype=float)
    m, n = A_s.order, A_s.dim
    total = np.zeros((n, n))
    for t, v in A_s.entries.items():
        for p in sorted(set(permutations(t))):
            for k in range(1, m):
                rest = [p[q] for q in range(1, m) if q != k]
                total[p[0], p[k]] += v * np.prod(x_s[rest])
    return (m - 1) * lambda_s * np.diag(x_s ** (m - 2)) - total


def build_m_symmetric(H: Hypergraph, lambda_s: float, x_s: np.ndarray) -> np.ndarray:
    """M(H, x_s) for the adjacency tensor of H.

    Diagonal ``(m-1) lambda_s x_u^(m-2)``; off-diagonal ``-sum x_s^(e minus {u,v})``
    over edges e containing both u and v.  The minus sign makes M a Z-matrix
    with ``M x_s = 0``.
    """
    x_s = np.asarray(x_s, dtype=float)
    m, n = H.m, H.n
    M = np.diag((m - 1) * lambda_s * x_s ** (m - 2))
    for e in H.edges:
        idx = [v - 1 for v in e]
        for a in range(m):
            for b in range(a + 1, m):
                u, w = idx[a], idx[b]
                w_prod = float(np.prod([x_s[q] for q in idx if q != u and q != w]))
                M[u, w] -= w_prod
                M[w, u] -= w_prod
    return M


def lambda_dual(y: np.ndarray, A_d: SparseSymTensor, x_s: np.ndarray) -> float:
    """``y^T (A_d x_s^(m-1)) / y^T x_s^[m-1]``; invariant to rescaling y."""
    x_s = np.asarray(x_s, dtype=float)
    den = float(np.asarray(y) @ x_s ** (A_d.order - 1))
    if not den > 0:
        raise DegenerateDenominator(f"y^T x_s^[m-1] = {den:.3e} is not positive")
    return float(np.asarray(y) @ tensor_apply(A_d, x_s)) / den


def dual_rhs(A_d: SparseSymTensor, lambda_d: float, x_s: np.ndarray) -> np.ndarray:
    """``(A_d - lambda_d I) x_s^(m-1)`` with I the diagonal identity tensor."""
    x_s = np.asarray(x_s, dtype=float)
    return tensor_apply(A_d, x_s) - lambda_d * x_s ** (A_d.order - 1)


def dual_part_vector(M: MMatrix, A_d: SparseSymTensor, lambda_d: float, x_s: np.ndarray) -> np.ndarray:
    """Solution of ``M x_d = (A_d - lambda_d I) x_s^(m-1)`` orthogonal to x_s."""
    x_s = np.asarray(x_s, dtype=float)
    ax = tensor_apply(A_d, x_s)
    lx = lambda_d * x_s ** (A_d.order - 1)
    scale = max(float(np.linalg.norm(ax)), float(np.linalg.norm(lx)))
    z = group_apply(M, ax - lx, scale=scale)
    # no-op up to rounding when M is symmetric (y is parallel to x_s)
    return z - (float(x_s @ z) / float(x_s @ x_s)) * x_s


def tie_difference(
    i: int,
    j: int,
    M: MMatrix,
    b: np.ndarray,
    inverse_kind: str | int = "group",
    tie_tol: float = TIE_TOL,
    scale: float | None = None,
) -> float:
    """``(x_d)_i - (x_d)_j`` for vertices (1-based) tied in x_s.

    ``inverse_kind`` is ``"group"`` for the group inverse or an integer k to
    use the {1}-inverse built from the principal submatrix without k.  For
    tied vertices both give the same number.  ``scale`` is passed on to the
    consistency check of the group path.
    """
    x = M.x_right
    if abs(x[i - 1] - x[j - 1]) > tie_tol:
        raise NotTied(f"vertices {i} and {j} differ in x_s by {abs(x[i - 1] - x[j - 1]):.3e}")
    if i == j:
        return 0.0
    b = np.asarray(b, dtype=float)
    if inverse_kind == "group":
        col = group_apply(M, b, scale=scale)
    elif isinstance(inverse_kind, (int, np.integer)) and not isinstance(inverse_kind, bool):
        col = one_inverse_principal(M, int(inverse_kind)) @ b
    else:
        raise ValueError(f"unknown inverse kind {inverse_kind!r}")
    return float(col[i - 1] - col[j - 1])


@dataclass(frozen=True)
class ResidualReport:
    residual_standard: float
    residual_dual: float
    tol: float
    passed: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self, "passed", self.residual_standard <= self.tol and self.residual_dual <= self.tol
        )


def verify_dual_eigenpair(
    A_s: SparseSymTensor, A_d: SparseSymTensor, pair: DualEigenPair, tol: float = 1e-8
) -> ResidualReport:
    """Evaluate both sides of the dual eigen-equation in dual arithmetic."""
    m = A_s.order
    x = pair.x
    lhs = dual_tensor_apply(A_s, A_d, x)
    lam = pair.lam
    rhs = [lam * xi ** (m - 1) for xi in x]
    diff_s, diff_d = split([a - b for a, b in zip(lhs, rhs)])
    return ResidualReport(float(np.max(np.abs(diff_s))), float(np.max(np.abs(diff_d))), tol)


def dual_eigenpair(
    A_s: SparseSymTensor,
    A_d: SparseSymTensor,
    cfg: SpectralConfig | None = None,
    perron: PerronPair | None = None,
) -> tuple[DualEigenPair, MMatrix]:
    """Positive dual eigenpair of a general dual tensor, gauge ``x_s^T x_d = 0``.

    M is assembled through the general A^(k) contraction and its left null
    vector is computed rather than assumed parallel to x_s.
    """
    perron = perron or perron_pair(A_s, cfg)
    x_s = perron.x_s
    M = make_mmatrix(build_m_general(A_s, perron.lambda_s, x_s), x_s, symmetric=False)
    lam_d = lambda_dual(M.y_left, A_d, x_s)
    x_d = dual_part_vector(M, A_d, lam_d, x_s)
    return DualEigenPair(perron.lambda_s, lam_d, x_s, x_d), M


__all__ = [
    "DualEigenPair",
    "ResidualReport",
    "build_m_general",
    "build_m_symmetric",
    "dual_eigenpair",
    "dual_part_vector",
    "dual_rhs",
    "lambda_dual",
    "tie_difference",
    "verify_dual_eigenpair",
]
