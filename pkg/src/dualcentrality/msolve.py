"""Dense linear algebra for irreducible singular M-matrices.

For such a matrix M of order n the kernel is one-dimensional and spanned by a
positive vector, the left kernel likewise, and every proper principal
submatrix is nonsingular.  Those facts give cheap, well-conditioned routes to
the left null vector, the group inverse, and a {1}-inverse.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    Inconsistent,
    NotPositive,
    NotSingular,
    SingularBordered,
    SubmatrixSingular,
)

RANK_TOL = 1e-10
# condition number above which a factorization is treated as singular
COND_LIMIT = 1e14


@dataclass(frozen=True)
class MMatrix:
    """A singular irreducible M-matrix with its positive null vectors.

    ``x_right`` spans the kernel; ``y_left`` spans the left kernel and has
    unit 2-norm.
    """

    entries: np.ndarray
    x_right: np.ndarray
    y_left: np.ndarray

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.entries, self.entries.T))


def _scale(M: np.ndarray) -> float:
    return max(float(np.linalg.norm(M, np.inf)), 1.0)


def left_null_vector(
    M: np.ndarray, hint_symmetric: bool = False, x_s: np.ndarray | None = None, tol: float = RANK_TOL
) -> np.ndarray:
    """Positive unit (2-norm) vector y with ``y^T M = 0``.

    With ``hint_symmetric`` the answer is x_s rescaled; otherwise M^T is
    deflated by fixing the last component of y to 1 and solving the
    remaining (n-1)x(n-1) system, which is nonsingular for a valid input.
    """
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    if hint_symmetric:
        if x_s is None:
            raise ValueError("hint_symmetric requires x_s")
        x_s = np.asarray(x_s, dtype=float)
        return x_s / np.linalg.norm(x_s)
    if n == 1:
        if abs(M[0, 0]) > tol * _scale(M):
            raise NotSingular("1x1 matrix is nonzero")
        return np.ones(1)

    y = np.empty(n)
    y[-1] = 1.0
    sub = M[:-1, :-1].T
    try:
        if np.linalg.cond(sub) > COND_LIMIT:
            raise np.linalg.LinAlgError
        y[:-1] = np.linalg.solve(sub, -M[-1, :-1])
    except np.linalg.LinAlgError:
        raise NotSingular("leading principal submatrix is singular; input is not an irreducible M-matrix")
    resid = np.max(np.abs(M.T @ y))
    if resid > tol * _scale(M) * np.max(np.abs(y)):
        raise NotSingular(f"no left null vector at tolerance (residual {resid:.3e})")
    if np.any(y <= 0):
        raise NotPositive("left null vector changes sign; input is not an M-matrix")
    return y / np.linalg.norm(y)


def make_mmatrix(
    M: np.ndarray,
    x_s: np.ndarray,
    symmetric: bool | None = None,
    tol: float = RANK_TOL,
) -> MMatrix:
    """Wrap M with its null vectors after checking the basic invariants.

    ``symmetric`` defaults to an exact symmetry test of M; when true the
    left null vector is taken parallel to x_s.
    """
    M = np.array(M, dtype=float)
    x_s = np.array(x_s, dtype=float)
    n = M.shape[0]
    if M.shape != (n, n) or x_s.shape != (n,):
        raise ValueError("M must be square and match x_s in length")
    if np.any(x_s <= 0):
        raise NotPositive("right null vector must be positive")
    off = M - np.diag(np.diag(M))
    if np.any(off > 0):
        raise NotPositive("M has a positive off-diagonal entry (not a Z-matrix)")
    resid = np.max(np.abs(M @ x_s))
    if resid > tol * _scale(M):
        raise NotSingular(f"M x_s is not zero (residual {resid:.3e})")
    if symmetric is None:
        symmetric = bool(np.array_equal(M, M.T))
    y = left_null_vector(M, hint_symmetric=symmetric, x_s=x_s, tol=tol)
    M.setflags(write=False)
    x_s.setflags(write=False)
    y.setflags(write=False)
    return MMatrix(M, x_s, y)


def numerical_rank(M: np.ndarray, rel_tol: float = RANK_TOL) -> int:
    M = np.asarray(M, dtype=float)
    return int(np.linalg.matrix_rank(M, tol=rel_tol * max(np.linalg.norm(M, 2), 1e-300)))


def is_consistent(M: MMatrix, b: np.ndarray, tol: float = 1e-8, scale: float | None = None) -> bool:
    """Whether ``|y^T b| <= tol * scale``; ``scale`` defaults to ``||b||``.

    When b is a difference of nearly equal vectors, pass the size of those
    vectors as ``scale`` so that cancellation noise is not flagged.
    """
    b = np.asarray(b, dtype=float)
    if scale is None:
        scale = float(np.linalg.norm(b))
    return abs(float(M.y_left @ b)) <= tol * scale or not np.any(b)


def group_apply(M: MMatrix, b: np.ndarray, tol: float = 1e-8, scale: float | None = None) -> np.ndarray:
    """Return ``M^# b`` for b in the range of M.

    Solves the bordered system [[M, x], [y^T, 0]] [z; mu] = [b; 0]; then
    M z = b and y^T z = 0, which pins z to the unique preimage of b lying in
    the range of M, i.e. the group inverse applied to b.
    """
    b = np.asarray(b, dtype=float)
    n = M.n
    if b.shape != (n,):
        raise ValueError(f"right-hand side has shape {b.shape}, expected ({n},)")
    if not is_consistent(M, b, tol, scale):
        raise Inconsistent(
            f"right-hand side is not in the range of M (|y^T b| = {abs(M.y_left @ b):.3e})"
        )
    K = np.zeros((n + 1, n + 1))
    K[:n, :n] = M.entries
    K[:n, n] = M.x_right
    K[n, :n] = M.y_left
    rhs = np.append(b, 0.0)
    try:
        sol = np.linalg.solve(K, rhs)
    except np.linalg.LinAlgError:
        raise SingularBordered("bordered system is singular")
    return sol[:n]


def group_inverse(M: MMatrix) -> np.ndarray:
    """Explicit group inverse ``(M + P)^-1 - P`` with P the kernel projector x y^T / (y^T x)."""
    x, y = M.x_right, M.y_left
    P = np.outer(x, y) / float(y @ x)
    B = M.entries + P
    if np.linalg.cond(B) > COND_LIMIT:
        raise SingularBordered("M + P is numerically singular")
    return np.linalg.inv(B) - P


def one_inverse_principal(M: MMatrix, k: int) -> np.ndarray:
    """{1}-inverse from the principal submatrix that omits vertex ``k`` (1-based).

    The inverse of that submatrix is embedded in an n x n zero matrix, leaving
    row and column k empty.
    """
    n = M.n
    if not 1 <= k <= n:
        raise ValueError(f"drop index {k} outside 1..{n}")
    keep = [i for i in range(n) if i != k - 1]
    sub = M.entries[np.ix_(keep, keep)]
    G = np.zeros((n, n))
    if not keep:
        return G
    if np.linalg.cond(sub) > COND_LIMIT:
        raise SubmatrixSingular(f"principal submatrix without index {k} is singular")
    G[np.ix_(keep, keep)] = np.linalg.inv(sub)
    return G


def check_invariants(M: MMatrix, tol: float = RANK_TOL, axiom_tol: float = 1e-9) -> dict[str, bool]:
    """Evaluate every structural property a valid M should have.

    Keys: z_matrix, right_null, left_null, irreducible, rank, kernel,
    index_one, principal_submatrices, group_axioms.
    """
    A = M.entries
    n = M.n
    scale = _scale(A)
    out: dict[str, bool] = {}
    off = A - np.diag(np.diag(A))
    out["z_matrix"] = bool(np.all(off <= 0))
    out["right_null"] = bool(np.max(np.abs(A @ M.x_right)) <= tol * scale)
    out["left_null"] = bool(np.max(np.abs(M.y_left @ A)) <= tol * scale)

    support = [set(np.flatnonzero(off[i])) | set(np.flatnonzero(off[:, i])) for i in range(n)]
    seen, stack = {0}, [0]
    while stack:
        for v in support[stack.pop()]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    out["irreducible"] = len(seen) == n

    out["rank"] = numerical_rank(A, tol) == n - 1
    _, _, vt = np.linalg.svd(A)
    k = vt[-1]
    xr = M.x_right / np.linalg.norm(M.x_right)
    out["kernel"] = bool(abs(abs(float(k @ xr)) - 1.0) <= 1e-9)
    sq = A @ A
    out["index_one"] = numerical_rank(sq, 1e-8) == numerical_rank(A, 1e-8)

    try:
        for drop in range(1, n + 1):
            one_inverse_principal(M, drop)
        out["principal_submatrices"] = True
    except SubmatrixSingular:
        out["principal_submatrices"] = False

    try:
        X = group_inverse(M)
        out["group_axioms"] = bool(
            np.allclose(A @ X @ A, A, rtol=0, atol=axiom_tol)
            and np.allclose(X @ A @ X, X, rtol=0, atol=axiom_tol)
            and np.allclose(A @ X, X @ A, rtol=0, atol=axiom_tol)
        )
    except SingularBordered:
        out["group_axioms"] = False
    return out
