"""Sparse symmetric tensors of order m and dimension n.

A tensor is stored by its support: each sorted index tuple (0-based) maps to the
value shared by every distinct permutation of that tuple.  Storing one value per
orbit instead of one per permutation avoids the m!-fold blowup of a dense or
fully-enumerated representation.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import permutations
from math import factorial, isfinite, prod
from typing import Iterable, Mapping, Sequence

import numpy as np

from .dual import DualNumber


def _multiplicity_coefficient(t: tuple[int, ...]) -> float:
    """(m-1)! / prod(mult_j!) for the multiset ``t``.

    Summing this over the positions of ``t`` that hold index ``i`` counts the
    distinct permutations of ``t`` that start with ``i``.
    """
    m = len(t)
    return factorial(m - 1) / prod(factorial(c) for c in Counter(t).values())


@dataclass(frozen=True)
class SparseSymTensor:
    order: int
    dim: int
    entries: Mapping[tuple[int, ...], float] = field(default_factory=dict)

    def __post_init__(self):
        if self.order < 2:
            raise ValueError(f"tensor order must be >= 2, got {self.order}")
        if self.dim < 1:
            raise ValueError(f"tensor dimension must be >= 1, got {self.dim}")
        clean = {}
        for t, v in self.entries.items():
            t = tuple(int(i) for i in t)
            if len(t) != self.order:
                raise ValueError(f"index tuple {t} does not have length {self.order}")
            if any(i < 0 or i >= self.dim for i in t):
                raise ValueError(f"index tuple {t} out of range for dimension {self.dim}")
            if list(t) != sorted(t):
                raise ValueError(f"support tuple {t} is not sorted")
            v = float(v)
            if not isfinite(v):
                raise ValueError(f"non-finite value at {t}")
            if v != 0.0:
                clean[t] = v
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

        keys = list(self.entries)
        idx = np.array(keys, dtype=np.intp).reshape(len(keys), self.order)
        val = np.fromiter(self.entries.values(), dtype=float, count=len(keys))
        coef = np.array([_multiplicity_coefficient(t) for t in keys], dtype=float)
        object.__setattr__(self, "_idx", idx)
        object.__setattr__(self, "_weight", coef * val)

    @classmethod
    def from_items(
        cls,
        order: int,
        dim: int,
        items: Iterable[tuple[Sequence[int], float]],
        accumulate: bool = False,
    ) -> "SparseSymTensor":
        """Build from (index tuple, value) pairs; tuples are sorted first.

        Duplicate tuples are an error unless ``accumulate`` is set, in which
        case their values are summed.
        """
        entries: dict[tuple[int, ...], float] = {}
        for t, v in items:
            key = tuple(sorted(int(i) for i in t))
            if key in entries:
                if not accumulate:
                    raise ValueError(f"duplicate support tuple {key}")
                entries[key] += float(v)
            else:
                entries[key] = float(v)
        return cls(order, dim, entries)

    @classmethod
    def zeros(cls, order: int, dim: int) -> "SparseSymTensor":
        return cls(order, dim, {})

    @classmethod
    def identity(cls, order: int, dim: int) -> "SparseSymTensor":
        """The diagonal tensor with every diagonal entry equal to 1."""
        return cls(order, dim, {(i,) * order: 1.0 for i in range(dim)})

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.entries.values())

    def __getitem__(self, index: Sequence[int]) -> float:
        """Entry at an arbitrary (unsorted) 0-based index tuple."""
        return self.entries.get(tuple(sorted(index)), 0.0)

    def scale(self, c: float) -> "SparseSymTensor":
        return SparseSymTensor(self.order, self.dim, {t: c * v for t, v in self.entries.items()})

    def __add__(self, other: "SparseSymTensor") -> "SparseSymTensor":
        self._check_compatible(other)
        out = dict(self.entries)
        for t, v in other.entries.items():
            out[t] = out.get(t, 0.0) + v
        return SparseSymTensor(self.order, self.dim, out)

    def _check_compatible(self, other: "SparseSymTensor"):
        if (self.order, self.dim) != (other.order, other.dim):
            raise ValueError(
                f"shape mismatch: order/dim ({self.order},{self.dim}) vs ({other.order},{other.dim})"
            )

    def to_dense(self) -> np.ndarray:
        """Full n**m array; only for small test cases."""
        out = np.zeros((self.dim,) * self.order)
        for t, v in self.entries.items():
            for p in set(permutations(t)):
                out[p] = v
        return out

    def apply(self, x: Sequence[float]) -> np.ndarray:
        return tensor_apply(self, x)


def tensor_apply(T: SparseSymTensor, x: Sequence[float]) -> np.ndarray:
    """Return the vector ``T x^(m-1)``.

    Component i is the sum over all index tuples starting with i of the entry
    times the product of x over the remaining m-1 indices.  Reduction runs in
    support-tuple order, so results are bit-reproducible.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (T.dim,):
        raise ValueError(f"vector of length {x.shape} does not match tensor dimension {T.dim}")
    out = np.zeros(T.dim)
    if T.nnz == 0:
        return out
    X = x[T._idx]
    m = T.order
    contrib = np.empty_like(X)
    for p in range(m):
        contrib[:, p] = T._weight * np.prod(X[:, [q for q in range(m) if q != p]], axis=1)
    # row-major ravel: accumulate tuple by tuple
    np.add.at(out, T._idx.ravel(), contrib.ravel())
    return out


def dual_tensor_apply(
    A_s: SparseSymTensor, A_d: SparseSymTensor, x: Sequence[DualNumber]
) -> list[DualNumber]:
    """Return ``(A_s + A_d eps) x^(m-1)`` evaluated in dual-number arithmetic."""
    A_s._check_compatible(A_d)
    if len(x) != A_s.dim:
        raise ValueError(f"vector of length {len(x)} does not match tensor dimension {A_s.dim}")
    x = [v if isinstance(v, DualNumber) else DualNumber(float(v)) for v in x]
    out = [DualNumber(0.0, 0.0) for _ in range(A_s.dim)]
    support = sorted(set(A_s.entries) | set(A_d.entries))
    for t in support:
        a = DualNumber(A_s.entries.get(t, 0.0), A_d.entries.get(t, 0.0))
        counts = Counter(t)
        for i in sorted(counts):
            rest = Counter(counts)
            rest[i] -= 1
            # distinct orderings of the remaining m-1 indices
            n_perm = factorial(len(t) - 1)
            for c in rest.values():
                n_perm //= factorial(c)
            term = a * n_perm
            for j, c in sorted(rest.items()):
                term = term * x[j] ** c
            out[i] = out[i] + term
    return out


def gamma_digraph(T: SparseSymTensor) -> list[set[int]]:
    """Successor sets of the digraph associated with ``T``.

    Arc (i, j) exists when a nonzero entry with first index i has j among its
    remaining indices.  Self-loops are dropped; they do not affect strong
    connectivity.
    """
    succ: list[set[int]] = [set() for _ in range(T.dim)]
    for t in T.entries:
        members = set(t)
        for i in members:
            succ[i].update(members - {i})
    return succ


def _reaches_all(succ: list[set[int]], start: int) -> bool:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in succ[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == len(succ)


def is_weakly_irreducible(T: SparseSymTensor) -> bool:
    """True when the associated digraph is strongly connected.

    Dimension 1 is treated as reducible: the digraph has no arcs and the
    downstream eigen-machinery needs n >= 2.
    """
    if T.dim < 2:
        return False
    succ = gamma_digraph(T)
    pred: list[set[int]] = [set() for _ in range(T.dim)]
    for u, vs in enumerate(succ):
        for v in vs:
            pred[v].add(u)
    return _reaches_all(succ, 0) and _reaches_all(pred, 0)
