"""Perron pair of a weakly irreducible nonnegative tensor."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, NotIrreducible
from .tensor import SparseSymTensor, is_weakly_irreducible, tensor_apply


@dataclass(frozen=True)
class SpectralConfig:
    tol: float = 1e-12
    max_iter: int = 100_000
    shift: float = 1.0

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if not self.shift >= 0:
            raise ValueError(f"shift must be non-negative, got {self.shift}")


@dataclass(frozen=True)
class PerronPair:
    """Spectral radius ``lambda_s`` and Perron vector ``x_s`` with unit m-norm.

    ``gap`` is the final relative width (r_max - r_min) / r_max of the
    Collatz-Wielandt bracket on the shifted tensor.
    """

    lambda_s: float
    x_s: np.ndarray
    iterations: int
    gap: float

    def residual(self, T: SparseSymTensor) -> float:
        m = T.order
        return float(np.max(np.abs(tensor_apply(T, self.x_s) - self.lambda_s * self.x_s ** (m - 1))))


def m_norm(x: np.ndarray, m: int) -> float:
    return float(np.sum(np.abs(x) ** m) ** (1.0 / m))


def perron_pair(T: SparseSymTensor, cfg: SpectralConfig | None = None, check: bool = True) -> PerronPair:
    """Shifted power iteration for the Perron pair of ``T``.

    Each step maps x to ``(T x^(m-1) + shift * x^[m-1])^[1/(m-1)]`` and
    renormalizes to unit m-norm.  The shift adds a positive diagonal, which
    makes the iteration converge for weakly irreducible tensors that are not
    primitive (bipartite graphs, for instance).  The ratios
    ``y_i / x_i^(m-1)`` bracket the shifted spectral radius; iteration stops
    once their relative spread drops below ``cfg.tol`` and the midpoint of the
    bracket, minus the shift, is reported.
    """
    cfg = cfg or SpectralConfig()
    if check and not is_weakly_irreducible(T):
        raise NotIrreducible("tensor is not weakly irreducible")
    if not T.is_nonnegative():
        raise ValueError("tensor has negative entries")

    m, n = T.order, T.dim
    x = np.full(n, n ** (-1.0 / m))
    best = None
    for it in range(1, cfg.max_iter + 1):
        xp = x ** (m - 1)
        y = tensor_apply(T, x) + cfg.shift * xp
        ratios = y / xp
        r_min, r_max = float(ratios.min()), float(ratios.max())
        gap = (r_max - r_min) / r_max
        lam = 0.5 * (r_min + r_max) - cfg.shift
        if best is None or gap < best.gap:
            best = PerronPair(lam, x.copy(), it, gap)
        if gap < cfg.tol:
            return best
        x = y ** (1.0 / (m - 1))
        x /= m_norm(x, m)
    raise NoConvergence(
        f"power iteration did not reach tol={cfg.tol:g} in {cfg.max_iter} steps "
        f"(best gap {best.gap:.3e})",
        best=best,
    )
