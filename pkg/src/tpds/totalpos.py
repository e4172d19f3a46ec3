"""Total-positivity classification of square matrices.

A matrix is totally non-negative (TN) when every minor of every order is
non-negative, totally positive (TP) when every minor is strictly positive,
and oscillatory when it is TN, non-singular and irreducible (equivalently,
some power of it is TP).  Classification here is by exhaustive minor
enumeration, which is exact but exponential: inputs are capped at
``N_MAX_EXHAUSTIVE`` and larger matrices are refused rather than silently
subsampled.

Minor positivity is judged relative to the matrix magnitude: a minor of
order k counts as zero when ``|m| <= tol_minor * norm(A, inf)**k``, since
minors scale multiplicatively.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import DimensionError, PreconditionError
from .tridiag import TridiagonalSpec

DEFAULT_TOL_MINOR = 1e-10

#: full minor enumeration bound; C(10,5)^2 ~ 6.4e4 order-5 minors is fine at
#: desk scale, beyond that the exhaustive definition stops being practical
N_MAX_EXHAUSTIVE = 10


@dataclass(frozen=True)
class MinorReport:
    """One minor: the submatrix selection and its determinant."""

    order: int
    row_set: tuple[int, ...]
    col_set: tuple[int, ...]
    value: float

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "row_set": list(self.row_set),
            "col_set": list(self.col_set),
            "value": float(self.value),
        }


@dataclass(frozen=True)
class TPClass:
    """Outcome of :func:`classify` with the decisive minor as witness."""

    is_tn: bool
    is_tp: bool
    is_oscillatory: bool
    witness: MinorReport | None
    tolerance_used: float

    def as_dict(self) -> dict:
        return {
            "is_tn": self.is_tn,
            "is_tp": self.is_tp,
            "is_oscillatory": self.is_oscillatory,
            "witness": self.witness.as_dict() if self.witness else None,
            "tolerance_used": self.tolerance_used,
        }


def _check_square(A) -> np.ndarray:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {A.shape}")
    return A


def _bareiss_det(m: list[list[Fraction]]) -> Fraction:
    """Fraction-free Gaussian elimination; exact for rational entries."""
    k = len(m)
    m = [row[:] for row in m]
    sign = 1
    prev = Fraction(1)
    for i in range(k - 1):
        if m[i][i] == 0:
            for r in range(i + 1, k):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) / prev
            m[r][i] = Fraction(0)
        prev = m[i][i]
    return sign * m[-1][-1]


def all_minors(A, order: int) -> list[MinorReport]:
    """Every ``order x order`` minor of ``A`` in lexicographic
    (row_set, col_set) order.

    Float inputs go through LU with partial pivoting on each submatrix
    (stacked ``numpy.linalg.det``).  Arrays of :class:`fractions.Fraction`
    (dtype object) are evaluated exactly by fraction-free elimination, so
    rational inputs give exact rational minors.
    """
    A = _check_square(A)
    n = A.shape[0]
    if not 1 <= order <= n:
        raise PreconditionError(f"minor order must be in [1, {n}], got {order}")
    if n > N_MAX_EXHAUSTIVE:
        raise PreconditionError(
            f"exhaustive minor enumeration is capped at n = {N_MAX_EXHAUSTIVE}, got n = {n}"
        )
    combos = list(itertools.combinations(range(n), order))
    if A.dtype == object:
        reports = []
        for rows in combos:
            for cols in combos:
                sub = [[A[r][c] for c in cols] for r in rows]
                reports.append(MinorReport(order, rows, cols, _bareiss_det(sub)))
        return reports
    A = A.astype(float)
    idx = np.array(combos)  # (m, order)
    m = idx.shape[0]
    stacked = A[idx[:, None, :, None], idx[None, :, None, :]]  # (m, m, order, order)
    values = stacked.reshape(m, m, order, order)
    dets = np.linalg.det(values) if order > 1 else values[..., 0, 0]
    return [
        MinorReport(order, combos[i], combos[j], float(dets[i, j]))
        for i in range(m)
        for j in range(m)
    ]


def is_irreducible(A, eps_entry: float = 0.0) -> bool:
    """Strong connectivity of the digraph with an edge i -> j whenever
    ``|A_ij| > eps_entry`` for i != j."""
    A = _check_square(A).astype(float)
    n = A.shape[0]
    if n == 1:
        return True
    mask = np.abs(A) > eps_entry
    np.fill_diagonal(mask, False)
    ncomp, _ = connected_components(csr_matrix(mask), directed=True, connection="strong")
    return ncomp == 1


def classify(A, tol_minor: float = DEFAULT_TOL_MINOR) -> TPClass:
    """Classify ``A`` as TN / TP / oscillatory by exhaustive minors.

    The three booleans are reported independently; the witness is the most
    negative normalized minor if TN fails, otherwise the minimal normalized
    minor (the one that decides TP-ness).
    """
    A = _check_square(A).astype(float)
    n = A.shape[0]
    if n > N_MAX_EXHAUSTIVE:
        raise PreconditionError(
            f"classification is capped at n = {N_MAX_EXHAUSTIVE}, got n = {n}"
        )
    norm = float(np.linalg.norm(A, np.inf))
    is_tn = True
    is_tp = True
    det_value = None
    witness = None
    witness_score = np.inf  # normalized value of the current decisive minor
    for order in range(1, n + 1):
        scale = norm**order if norm > 0 else 1.0
        thresh = tol_minor * scale
        for rep in all_minors(A, order):
            if rep.value < -thresh:
                is_tn = False
            if rep.value <= thresh:
                is_tp = False
            score = rep.value / scale
            if score < witness_score:
                witness_score = score
                witness = rep
            if order == n:
                det_value = rep.value
    det_scale = norm**n if norm > 0 else 1.0
    nonsingular = abs(det_value) > tol_minor * det_scale
    is_oscillatory = is_tn and nonsingular and is_irreducible(A, tol_minor * norm)
    return TPClass(is_tn, is_tp, is_oscillatory, witness, tol_minor)


def dominance_holds(T: TridiagonalSpec) -> bool:
    """Row dominance ``a_i >= b_i + c_{i-1}`` (with b_n = c_0 = 0).

    With non-negative bands this is sufficient for TN; combined with
    non-singularity and irreducibility it gives an oscillatory matrix.
    """
    if np.any(T.b < 0) or np.any(T.c < 0):
        raise PreconditionError("dominance check requires non-negative off-diagonal bands")
    b_pad = np.append(T.b, 0.0)  # b_n = 0
    c_pad = np.concatenate(([0.0], T.c))  # c_0 = 0
    return bool(np.all(T.a >= b_pad + c_pad))


def oscillatory_shift(T: TridiagonalSpec) -> tuple[float, np.ndarray]:
    """Shift ``s >= 0`` making ``M = s I + T`` oscillatory.

    ``s`` exceeds the worst dominance deficit by 1, so M satisfies the
    dominance condition strictly with positive diagonal; strict row
    dominance then implies non-singularity, and the positive bands give
    irreducibility.
    """
    if np.any(T.b <= 0) or np.any(T.c <= 0):
        raise PreconditionError("oscillatory shift requires strictly positive off-diagonal bands")
    b_pad = np.append(T.b, 0.0)
    c_pad = np.concatenate(([0.0], T.c))
    deficit = float(np.max(b_pad + c_pad - T.a))
    s = max(0.0, deficit + 1.0)
    M = T.to_dense()
    M[np.diag_indices_from(M)] += s
    return s, M
