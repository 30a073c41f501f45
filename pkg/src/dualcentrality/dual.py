"""Dual numbers a + b*eps with eps**2 == 0."""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Real
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class DualNumber:
    """Dual number ``s + d*eps``; ``s`` is the standard part, ``d`` the dual part."""

    s: float
    d: float = 0.0

    @staticmethod
    def _lift(other) -> "DualNumber":
        if isinstance(other, DualNumber):
            return other
        if isinstance(other, Real):
            return DualNumber(float(other), 0.0)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return DualNumber(self.s + o.s, self.d + o.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return DualNumber(self.s - o.s, self.d - o.d)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return DualNumber(-self.s, -self.d)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        # the eps**2 term (self.d * o.d) is dropped
        return DualNumber(self.s * o.s, self.s * o.d + self.d * o.s)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.s == 0.0:
            raise ZeroDivisionError("division by a dual number with zero standard part")
        return DualNumber(self.s / o.s, (self.d * o.s - self.s * o.d) / (o.s * o.s))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise TypeError("only non-negative integer powers are supported")
        out = DualNumber(1.0, 0.0)
        for _ in range(k):
            out = out * self
        return out

    def is_positive(self) -> bool:
        return self.s > 0

    def __str__(self):
        sign = "-" if self.d < 0 else "+"
        return f"{self.s:g} {sign} {abs(self.d):g}ε"


EPS = DualNumber(0.0, 1.0)


def dual_vector(s: Iterable[float], d: Iterable[float] | None = None) -> list[DualNumber]:
    s = [float(v) for v in s]
    d = [0.0] * len(s) if d is None else [float(v) for v in d]
    if len(s) != len(d):
        raise ValueError("standard and dual parts differ in length")
    return [DualNumber(a, b) for a, b in zip(s, d)]


def split(x: Sequence[DualNumber]) -> tuple[np.ndarray, np.ndarray]:
    """Return the standard and dual parts of a dual vector as arrays."""
    return np.array([v.s for v in x], dtype=float), np.array([v.d for v in x], dtype=float)


def is_positive_vector(x: Sequence[DualNumber]) -> bool:
    return all(v.s > 0 for v in x)
