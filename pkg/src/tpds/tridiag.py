"""Tridiagonal band container used across the package.

The convention follows the usual Jacobi-matrix layout: ``a`` is the main
diagonal (length n), ``b`` the superdiagonal (length n-1, entry ``b[i]`` at
position (i, i+1)) and ``c`` the subdiagonal (length n-1, entry ``c[i]`` at
position (i+1, i)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError


@dataclass(frozen=True)
class TridiagonalSpec:
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        a = np.atleast_1d(np.asarray(self.a, dtype=float))
        b = np.atleast_1d(np.asarray(self.b, dtype=float)) if np.size(self.b) else np.empty(0)
        c = np.atleast_1d(np.asarray(self.c, dtype=float)) if np.size(self.c) else np.empty(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        n = a.size
        if n < 1:
            raise DimensionError("tridiagonal matrix needs at least one diagonal entry")
        if b.size != n - 1 or c.size != n - 1:
            raise DimensionError(
                f"band lengths inconsistent: len(a)={n}, len(b)={b.size}, len(c)={c.size}"
            )

    @property
    def n(self) -> int:
        return self.a.size

    def to_dense(self) -> np.ndarray:
        m = np.diag(self.a)
        if self.n > 1:
            m += np.diag(self.b, 1) + np.diag(self.c, -1)
        return m

    @staticmethod
    def from_dense(A, tol: float = 0.0) -> "TridiagonalSpec":
        """Extract bands from a dense matrix; entries beyond the bands must
        not exceed ``tol`` in absolute value."""
        A = np.asarray(A, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {A.shape}")
        n = A.shape[0]
        mask = np.abs(np.triu(A, 2)) + np.abs(np.tril(A, -2))
        if n > 2 and np.max(mask) > tol:
            raise DimensionError("matrix has entries outside the tridiagonal bands")
        return TridiagonalSpec(np.diag(A).copy(), np.diag(A, 1).copy(), np.diag(A, -1).copy())
