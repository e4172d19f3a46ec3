"""Eigen-decompositions for the matrix classes this package cares about.

Oscillatory matrices have real, positive, simple eigenvalues whose
eigenvectors carry a rigid sign structure: the k-th eigenvector (by
decreasing eigenvalue) has exactly k-1 sign variations, and any nonzero
combination of eigenvectors i..j has its variation counts pinned between
i-1 and j-1.  The solvers here compute decompositions and *verify* that
structure instead of assuming it: failures are reported loudly because the
theory says they indicate an input outside the class, not solver noise.

Two routes are provided.  Jacobi (tridiagonal, positive off-band) matrices
are diagonally similar to a symmetric tridiagonal matrix with off-diagonals
``sqrt(b_i c_i)`` and go through a symmetric tridiagonal solver.  General
matrices (e.g. monodromy matrices, which are dense and totally positive)
are reduced to real Schur form; any surviving 2x2 block means a complex
pair and is rejected.  Eigenvectors for that route come from three rounds
of inverse iteration at the computed eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import signvar
from .errors import (
    PreconditionError,
    SimplicityError,
    SpectralError,
    SpectrumNotRealError,
)
from .tridiag import TridiagonalSpec

DEFAULT_TOL_GAP = 1e-10  # relative to norm(A, inf): simplicity threshold
DEFAULT_TOL_RESID = 1e-9  # relative to norm(A, inf): residual bound


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigen-pairs sorted by strictly decreasing eigenvalue.

    Eigenvectors are columns of ``eigenvectors``, unit infinity-norm, sign
    fixed so the first nonzero entry is positive.  ``residuals[k]`` is
    ``norm(A v_k - alpha_k v_k, inf)``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray
    source: str = "dense"

    @property
    def n(self) -> int:
        return self.eigenvalues.size

    def vector(self, k: int) -> np.ndarray:
        """Eigenvector for the k-th largest eigenvalue, 1-based."""
        return self.eigenvectors[:, k - 1]

    def as_dict(self) -> dict:
        return {
            "eigenvalues": self.eigenvalues.tolist(),
            "eigenvectors": [self.eigenvectors[:, k].tolist() for k in range(self.n)],
            "residuals": self.residuals.tolist(),
            "source": self.source,
        }


@dataclass(frozen=True)
class SignPatternReport:
    """Per-eigenvector (s_minus, s_plus) counts against the i-1 target."""

    counts: tuple[tuple[int, int], ...]
    passed: bool
    failures: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "counts": [list(c) for c in self.counts],
            "passed": self.passed,
            "failures": list(self.failures),
        }


def _normalize_columns(V: np.ndarray) -> np.ndarray:
    V = np.array(V, dtype=float)
    for k in range(V.shape[1]):
        col = V[:, k]
        amax = np.max(np.abs(col))
        if amax == 0:
            raise SpectralError("zero eigenvector produced")
        col = col / amax
        lead = col[np.flatnonzero(col)[0]]
        if lead < 0:
            col = -col
        V[:, k] = col
    return V


def _assemble(
    A: np.ndarray,
    values: np.ndarray,
    vectors: np.ndarray,
    source: str,
    tol_gap: float,
    tol_resid: float,
) -> SpectralDecomposition:
    """Sort descending, normalize, and enforce simplicity + residual bounds."""
    order = np.argsort(values)[::-1]
    values = np.asarray(values, dtype=float)[order]
    vectors = _normalize_columns(vectors[:, order])
    norm = float(np.linalg.norm(A, np.inf))
    gap_floor = tol_gap * max(norm, np.finfo(float).tiny)
    if values.size > 1:
        gaps = values[:-1] - values[1:]
        if np.min(gaps) <= gap_floor:
            k = int(np.argmin(gaps))
            raise SimplicityError(
                f"eigenvalue gap {gaps[k]:.3e} between lambda_{k + 1} and lambda_{k + 2} "
                f"is below the simplicity tolerance {gap_floor:.3e}; "
                "spectrum is not simple, input is outside the oscillatory class"
            )
    residuals = np.array(
        [np.linalg.norm(A @ vectors[:, k] - values[k] * vectors[:, k], np.inf) for k in range(values.size)]
    )
    resid_bound = tol_resid * max(norm, np.finfo(float).tiny)
    if np.max(residuals) > resid_bound:
        k = int(np.argmax(residuals))
        raise SpectralError(
            f"eigen-pair {k + 1} residual {residuals[k]:.3e} exceeds bound {resid_bound:.3e}"
        )
    return SpectralDecomposition(values, vectors, residuals, source)


def eig_jacobi(
    T: TridiagonalSpec,
    tol_gap: float = DEFAULT_TOL_GAP,
    tol_resid: float = DEFAULT_TOL_RESID,
) -> SpectralDecomposition:
    """Eigen-decomposition of a tridiagonal matrix with ``b_i c_i > 0``.

    Diagonal similarity with ``d_{i+1} = d_i sqrt(b_i / c_i)`` turns T into
    a symmetric tridiagonal matrix with off-diagonals ``sign(b) sqrt(b c)``
    (eigenvalues preserved exactly), which a symmetric tridiagonal solver
    handles robustly.  Eigenvectors map back through the scaling; the
    scaling is accumulated in log space so long chains cannot overflow.
    """
    bc = T.b * T.c
    if T.n > 1 and np.any(bc <= 0):
        raise PreconditionError(
            "symmetrization requires b_i * c_i > 0 on every off-diagonal pair"
        )
    off = np.sign(T.b) * np.sqrt(bc) if T.n > 1 else np.empty(0)
    w, u = scipy.linalg.eigh_tridiagonal(T.a, off)
    # v_i = u_i / d_i, computed as exp(log|u_i| - logd_i) with a per-column
    # shift so extreme band ratios stay finite
    logd = np.concatenate(([0.0], 0.5 * np.cumsum(np.log(np.abs(T.b)) - np.log(np.abs(T.c)))))
    v = np.empty_like(u)
    with np.errstate(divide="ignore"):
        logu = np.log(np.abs(u))
    for k in range(u.shape[1]):
        logv = logu[:, k] - logd
        shift = np.max(logv[np.isfinite(logv)])
        v[:, k] = np.sign(u[:, k]) * np.exp(logv - shift)
    return _assemble(T.to_dense(), w, v, "jacobi", tol_gap, tol_resid)


def eig_real_spectrum(
    A,
    tol_gap: float = DEFAULT_TOL_GAP,
    tol_resid: float = DEFAULT_TOL_RESID,
) -> SpectralDecomposition:
    """Eigen-decomposition of a dense matrix expected to have a real simple
    spectrum (e.g. totally positive); verifies rather than assumes.

    Hessenberg reduction plus shifted QR (real Schur form); a surviving
    2x2 diagonal block is a complex conjugate pair and raises
    :class:`SpectrumNotRealError`.  Eigenvectors come from 3 rounds of
    inverse iteration with the computed eigenvalue as fixed shift;
    re-orthogonalization is unnecessary because the gaps are certified.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise PreconditionError(f"expected a non-empty square matrix, got shape {A.shape}")
    n = A.shape[0]
    if n == 1:
        return _assemble(A, A[0, :1].copy(), np.ones((1, 1)), "real_schur", tol_gap, tol_resid)
    S, _ = scipy.linalg.schur(A, output="real")
    sub = np.diag(S, -1)
    if np.any(sub != 0.0):
        k = int(np.flatnonzero(sub)[0])
        blk = S[k : k + 2, k : k + 2]
        re_part = 0.5 * (blk[0, 0] + blk[1, 1])
        im_part = np.sqrt(max(np.linalg.det(blk - re_part * np.eye(2)), 0.0))
        raise SpectrumNotRealError(
            f"spectrum not real: complex pair {re_part:.6g} +/- {im_part:.6g}i survived QR; "
            "input is not oscillatory or is numerically marginal"
        )
    values = np.diag(S).copy()
    norm = float(np.linalg.norm(A, np.inf))
    scale = max(norm, np.finfo(float).tiny)
    # generic deterministic start; avoids exact orthogonality to any fixed
    # sign pattern
    start = 1.0 + 0.25 * np.sin(1.7 * np.arange(n))
    vectors = np.empty((n, n))
    for k, alpha in enumerate(values):
        vec = None
        for bump in (0.0, 1e-13, 1e-10):
            shift = alpha + bump * scale
            x = start / np.linalg.norm(start, np.inf)
            try:
                lu = scipy.linalg.lu_factor(A - shift * np.eye(n))
            except scipy.linalg.LinAlgError:
                continue
            ok = True
            for _ in range(3):
                x = scipy.linalg.lu_solve(lu, x)
                amax = np.max(np.abs(x))
                if not np.isfinite(amax) or amax == 0.0:
                    ok = False
                    break
                x = x / amax
            if ok:
                vec = x
                break
        if vec is None:
            raise SpectralError(f"inverse iteration failed for eigenvalue {alpha:.6g}")
        vectors[:, k] = vec
    return _assemble(A, values, vectors, "real_schur", tol_gap, tol_resid)


def verify_sign_pattern(
    dec: SpectralDecomposition, eps_sign: float = signvar.DEFAULT_EPS_SIGN
) -> SignPatternReport:
    """Check ``s_minus(v_i) = s_plus(v_i) = i - 1`` for every eigenvector.

    Additionally requires the first and last eigenvectors to be free of
    zero-classified entries (their counts pin every entry's sign).
    Interior eigenvectors may contain zeros as long as the counts match.
    """
    counts = []
    failures = []
    n = dec.n
    for i in range(1, n + 1):
        sc = signvar.sign_count(dec.vector(i), eps_sign)
        counts.append((sc.s_minus, sc.s_plus))
        if not (sc.s_minus == sc.s_plus == i - 1):
            failures.append(
                f"eigenvector {i}: counts ({sc.s_minus}, {sc.s_plus}), expected ({i - 1}, {i - 1})"
            )
        if i in (1, n) and sc.effective_zeros:
            failures.append(f"eigenvector {i} has zero-classified entries {list(sc.effective_zeros)}")
    return SignPatternReport(tuple(counts), not failures, tuple(failures))


def verify_span_bounds(
    dec: SpectralDecomposition,
    i: int,
    j: int,
    trials: int = 100,
    eps_sign: float = signvar.DEFAULT_EPS_SIGN,
    seed: int = 0,
) -> bool:
    """Sample span{v_i..v_j} and check i-1 <= s_minus(z) <= s_plus(z) <= j-1."""
    n = dec.n
    if not 1 <= i <= j <= n:
        raise PreconditionError(f"need 1 <= i <= j <= n, got i={i}, j={j}, n={n}")
    rng = np.random.default_rng(seed)
    V = dec.eigenvectors[:, i - 1 : j]
    for _ in range(trials):
        coeff = rng.standard_normal(j - i + 1)
        while np.max(np.abs(coeff)) < 1e-3:
            coeff = rng.standard_normal(j - i + 1)
        z = V @ coeff
        sc = signvar.sign_count(z, eps_sign)
        if not (i - 1 <= sc.s_minus <= sc.s_plus <= j - 1):
            return False
    return True
