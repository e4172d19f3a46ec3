"""Sign-variation counts of real vectors.

Two counts are used throughout:

* ``s_minus(z)``: number of sign changes after deleting all zero entries
  (0 for the all-zero vector);
* ``s_plus(z)``: maximal number of sign changes over all replacements of
  zero entries by +1 or -1.

For every vector ``0 <= s_minus(z) <= s_plus(z) <= n - 1``.  Multiplication
by a totally positive matrix cannot increase the count: ``s_plus(A x) <=
s_minus(x)`` -- the variation-diminishing property that underpins the rest
of the package.

Zero classification is relative: an entry counts as zero when
``|z_i| <= eps_sign * max_j |z_j|``.  The default ``eps_sign = 1e-9``
makes the counts deterministic on floating-point trajectories, where exact
zeros essentially never occur but near-zeros do.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, PreconditionError

DEFAULT_EPS_SIGN = 1e-9

_NEG_INF = float("-inf")


@dataclass(frozen=True)
class SignCount:
    """Both sign-variation counts of one vector plus the zero bookkeeping."""

    s_minus: int
    s_plus: int
    effective_zeros: tuple[int, ...] = field(default_factory=tuple)

    def as_dict(self) -> dict:
        return {
            "s_minus": self.s_minus,
            "s_plus": self.s_plus,
            "effective_zeros": list(self.effective_zeros),
        }


@dataclass(frozen=True)
class SvdReport:
    """Result of a variation-diminishing check ``s_plus(Ax) <= s_minus(x)``."""

    holds: bool
    count_ax: SignCount
    count_x: SignCount


def _classify_signs(z: np.ndarray, eps_sign: float) -> np.ndarray:
    """Map entries to -1/0/+1 under the relative zero tolerance."""
    z = np.asarray(z, dtype=float).ravel()
    if z.size == 0:
        raise DimensionError("sign variation of an empty vector is undefined")
    if eps_sign < 0:
        raise PreconditionError(f"eps_sign must be non-negative, got {eps_sign}")
    scale = np.max(np.abs(z))
    signs = np.sign(z).astype(int)
    signs[np.abs(z) <= eps_sign * scale] = 0
    return signs


def s_minus(z, eps_sign: float = DEFAULT_EPS_SIGN) -> int:
    """Sign changes of ``z`` after deleting zero-classified entries."""
    signs = _classify_signs(z, eps_sign)
    nonzero = signs[signs != 0]
    if nonzero.size == 0:
        return 0
    return int(np.count_nonzero(nonzero[1:] != nonzero[:-1]))


def s_plus(z, eps_sign: float = DEFAULT_EPS_SIGN) -> int:
    """Maximal sign changes of ``z`` with zeros replaced by +1 or -1.

    Dynamic programme over the running sign: ``best[s]`` is the largest
    change count of any admissible prefix ending with sign ``s``.  The
    all-zero vector gives ``n - 1`` (every entry is free).
    """
    signs = _classify_signs(z, eps_sign)
    best = {+1: _NEG_INF, -1: _NEG_INF}
    first = signs[0]
    for s in (+1, -1):
        if first == 0 or first == s:
            best[s] = 0.0
    for cur in signs[1:]:
        allowed = (+1, -1) if cur == 0 else (cur,)
        nxt = {+1: _NEG_INF, -1: _NEG_INF}
        for s in allowed:
            nxt[s] = max(best[s], best[-s] + 1)
        best = nxt
    return int(max(best.values()))


def sign_count(z, eps_sign: float = DEFAULT_EPS_SIGN) -> SignCount:
    """Both counts of ``z`` together with the zero-classified indices."""
    signs = _classify_signs(z, eps_sign)
    zeros = tuple(int(i) for i in np.flatnonzero(signs == 0))
    return SignCount(s_minus(z, eps_sign), s_plus(z, eps_sign), zeros)


def check_svd_property(A, x, eps_sign: float = DEFAULT_EPS_SIGN) -> SvdReport:
    """Check the variation-diminishing inequality ``s_plus(Ax) <= s_minus(x)``.

    Meaningful as a guaranteed property only when ``A`` is totally positive;
    the caller is responsible for that (see :mod:`tpds.totalpos`).
    """
    A = np.asarray(A, dtype=float)
    x = np.asarray(x, dtype=float).ravel()
    if x.size == 0:
        raise DimensionError("x must be non-empty")
    if np.max(np.abs(x)) == 0.0:
        raise PreconditionError("x must be a nonzero vector")
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[1] != x.size:
        raise DimensionError(f"A has shape {A.shape}, incompatible with x of length {x.size}")
    count_ax = sign_count(A @ x, eps_sign)
    count_x = sign_count(x, eps_sign)
    return SvdReport(count_ax.s_plus <= count_x.s_minus, count_ax, count_x)
