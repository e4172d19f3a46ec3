"""Built-in vector-field models with exact Jacobians and closed-form oracles.

The ribosome flow model (RFM) is the fully worked application: an n-site
flow chain

    dx_i/dt = r_{i-1} x_{i-1} (1 - x_i) - r_i x_i (1 - x_{i+1}),

with the conventions ``x_0 = 1`` and ``x_{n+1} = 0``.  Its Jacobian is
tridiagonal with positive off-diagonal bands on the open unit cube, so the
RFM is a totally positive differential system there.  The steady state
solves ``r_i e_i (1 - e_{i+1}) = R`` for every i with a common production
rate ``R = r_n e_n``.

Also included: a two-state tanh neural network (time-invariant, three
equilibria), the classic 2x2 periodic linear system with an analytic
transition matrix (attached as an oracle), generic linear systems, and the
Toeplitz closed-form spectrum used to validate the Jacobi eigensolver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import ConvergenceError, PreconditionError
from .spectral import SpectralDecomposition, eig_jacobi
from .tridiag import TridiagonalSpec


@dataclass
class VectorFieldModel:
    """A named, parameterized vector field f(t, x) with exact Jacobian.

    ``period == 0`` means time-invariant.  ``box_lo`` / ``box_hi`` bound the
    state space; infinite entries mean unconstrained.  ``meta`` carries
    flags such as ``linear`` and optional analytic oracles.
    """

    model_id: str
    n: int
    period: float
    f: Callable[[float, np.ndarray], np.ndarray]
    jac: Callable[[float, np.ndarray], np.ndarray]
    box_lo: np.ndarray
    box_hi: np.ndarray
    params: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def box_violation(self, x: np.ndarray) -> float:
        """How far x pokes outside the box (0 when inside)."""
        below = np.max(self.box_lo - x, initial=0.0)
        above = np.max(x - self.box_hi, initial=0.0)
        return max(below, above)


@dataclass(frozen=True)
class RfmSteadyState:
    """RFM equilibrium densities and the steady production rate."""

    rates: np.ndarray
    e: np.ndarray
    R: float

    def residuals(self) -> np.ndarray:
        """Flow-balance residuals r_i e_i (1 - e_{i+1}) - R for i = 0..n."""
        ep = np.concatenate(([1.0], self.e, [0.0]))
        return self.rates * ep[:-1] * (1.0 - ep[1:]) - self.R


def _validate_rates(rates) -> np.ndarray:
    rates = np.asarray(rates, dtype=float).ravel()
    if rates.size < 2:
        raise PreconditionError("need at least rates (r_0, r_1): one site")
    if np.any(rates <= 0):
        raise PreconditionError("all transition rates must be positive")
    return rates


def rfm_field(rates, t: float, x: np.ndarray) -> np.ndarray:
    """RFM right-hand side; ``rates`` has length n+1 for n sites."""
    rates = np.asarray(rates, dtype=float)
    x = np.asarray(x, dtype=float)
    xp = np.concatenate(([1.0], x, [0.0]))
    flows = rates * xp[:-1] * (1.0 - xp[1:])
    return flows[:-1] - flows[1:]


def rfm_jacobian(rates, t: float, x: np.ndarray) -> TridiagonalSpec:
    """RFM Jacobian bands at x:

    a_i = -r_{i-1} x_{i-1} - r_i (1 - x_{i+1}),
    b_i = r_i x_i  (superdiagonal),
    c_i = r_i (1 - x_{i+1})  (subdiagonal).
    """
    rates = np.asarray(rates, dtype=float)
    x = np.asarray(x, dtype=float)
    n = x.size
    xp = np.concatenate(([1.0], x, [0.0]))
    a = -rates[:-1] * xp[:-2] - rates[1:] * (1.0 - xp[2:])
    b = rates[1:n] * x[: n - 1]
    c = rates[1:n] * (1.0 - x[1:n])
    return TridiagonalSpec(a, b, c)


def rfm_model(rates) -> VectorFieldModel:
    rates = _validate_rates(rates)
    n = rates.size - 1
    return VectorFieldModel(
        model_id="rfm",
        n=n,
        period=0.0,
        f=lambda t, x: rfm_field(rates, t, x),
        jac=lambda t, x: rfm_jacobian(rates, t, x).to_dense(),
        box_lo=np.zeros(n),
        box_hi=np.ones(n),
        params={"rates": rates.tolist()},
    )


def rfm_periodic_model(rates, period: float, amplitude: float) -> VectorFieldModel:
    """RFM with all rates modulated by the common positive factor
    ``1 + amplitude * sin(2 pi t / period)``.

    Plumbing for entrainment experiments (the common-factor form is a
    choice, flagged in metadata); requires ``|amplitude| < 1`` so the
    modulated rates stay positive and the Jacobi structure survives.
    """
    rates = _validate_rates(rates)
    if period <= 0:
        raise PreconditionError("period must be positive")
    if not abs(amplitude) < 1:
        raise PreconditionError("need |amplitude| < 1 to keep rates positive")
    n = rates.size - 1
    omega = 2.0 * math.pi / period

    def factor(t: float) -> float:
        return 1.0 + amplitude * math.sin(omega * t)

    return VectorFieldModel(
        model_id="rfm_periodic",
        n=n,
        period=float(period),
        f=lambda t, x: factor(t) * rfm_field(rates, t, x),
        jac=lambda t, x: factor(t) * rfm_jacobian(rates, t, x).to_dense(),
        box_lo=np.zeros(n),
        box_hi=np.ones(n),
        params={"rates": rates.tolist(), "period": period, "amplitude": amplitude},
        meta={"periodic_rate_plumbing": True},
    )


def rfm_steady_state(rates, tol: float = 1e-13) -> RfmSteadyState:
    """Solve the flow-balance equations by bisection on R.

    For a trial R, back-substitution gives ``e_n = R / r_n`` and
    ``e_i = R / (r_i (1 - e_{i+1}))``; the residual is
    ``g(R) = r_0 (1 - e_1) - R``.  g is strictly decreasing in R on the
    feasible interval, so bisection is unconditionally safe; infeasible
    back-substitution (some e_i outside (0,1)) counts as R too large.
    """
    rates = _validate_rates(rates)
    n = rates.size - 1

    def back_sub(R: float):
        e = np.empty(n)
        e[n - 1] = R / rates[n]
        if not 0.0 < e[n - 1] < 1.0:
            return None
        for i in range(n - 2, -1, -1):
            denom = rates[i + 1] * (1.0 - e[i + 1])
            e[i] = R / denom
            if not 0.0 < e[i] < 1.0:
                return None
        return e

    def residual(R: float):
        e = back_sub(R)
        if e is None:
            return None, None
        return rates[0] * (1.0 - e[0]) - R, e

    # grow R_hi from min(rates)/4 by doubling until infeasible or g < 0
    r_hi = float(np.min(rates)) / 4.0
    for _ in range(200):
        g, _e = residual(r_hi)
        if g is None or g < 0:
            break
        r_hi *= 2.0
    else:
        raise ConvergenceError("could not bracket the steady production rate")

    r_lo = 0.0  # g(0+) = r_0 > 0
    best = None
    for _ in range(200):
        mid = 0.5 * (r_lo + r_hi)
        g, e = residual(mid)
        if g is None or g < 0:
            r_hi = mid
        else:
            r_lo = mid
        if g is not None:
            best = (abs(g), mid, e)
            if abs(g) <= tol:
                return RfmSteadyState(rates, e, mid)
        if r_hi - r_lo <= np.finfo(float).eps * max(r_hi, 1e-300):
            break
    if best is not None and best[0] <= tol:
        return RfmSteadyState(rates, best[2], best[1])
    raise ConvergenceError(
        "steady-state bisection stalled; this should not happen for positive rates",
        best=None if best is None else best[2],
        residual=None if best is None else best[0],
    )


def neural_model() -> VectorFieldModel:
    """Two-neuron tanh network:

    dx1/dt = -2 x1 + tanh(x1) + 2 tanh(x2)
    dx2/dt = -x2 + (1/2) tanh(x1) + tanh(x2)

    Time-invariant with three equilibria: the origin, one positive point
    near (1.28784, 1.28784) and its negative mirror.  The Jacobian has
    positive off-diagonal cosh^-2 entries everywhere, so this is a TPDS on
    the whole plane (box-bounded here for integration).
    """

    def f(t, x):
        th = np.tanh(x)
        return np.array([-2.0 * x[0] + th[0] + 2.0 * th[1], -x[1] + 0.5 * th[0] + th[1]])

    def jac(t, x):
        s = 1.0 / np.cosh(x) ** 2
        return np.array([[-2.0 + s[0], 2.0 * s[1]], [0.5 * s[0], -1.0 + s[1]]])

    bound = 100.0
    return VectorFieldModel(
        model_id="neural",
        n=2,
        period=0.0,
        f=f,
        jac=jac,
        box_lo=np.full(2, -bound),
        box_hi=np.full(2, bound),
    )


def schwarz_transition(t: float) -> np.ndarray:
    """Analytic transition matrix of the periodic 2x2 system below:
    exp(-2t) * [[cosh(c), sinh(c)], [sinh(c), cosh(c)]] with
    c(t) = 2t - cos(t) + 1."""
    c = 2.0 * t - math.cos(t) + 1.0
    return math.exp(-2.0 * t) * np.array(
        [[math.cosh(c), math.sinh(c)], [math.sinh(c), math.cosh(c)]]
    )


def schwarz_model() -> VectorFieldModel:
    """2-pi-periodic linear system with A(t) = [[-2, 2+sin t], [2+sin t, -2]].

    The off-diagonal coupling stays positive, so the transition matrix is
    totally positive for t > 0; the analytic transition matrix is attached
    in ``meta['transition']`` as a testing oracle.
    """

    def A(t):
        s = 2.0 + math.sin(t)
        return np.array([[-2.0, s], [s, -2.0]])

    return VectorFieldModel(
        model_id="schwarz",
        n=2,
        period=2.0 * math.pi,
        f=lambda t, x: A(t) @ x,
        jac=lambda t, x: A(t),
        box_lo=np.full(2, -np.inf),
        box_hi=np.full(2, np.inf),
        meta={"linear": True, "transition": schwarz_transition},
    )


def linear_model(A, period: float = 0.0, model_id: str = "linear") -> VectorFieldModel:
    """Time-invariant linear system dx/dt = A x."""
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    return VectorFieldModel(
        model_id=model_id,
        n=n,
        period=float(period),
        f=lambda t, x: A @ x,
        jac=lambda t, x: A,
        box_lo=np.full(n, -np.inf),
        box_hi=np.full(n, np.inf),
        params={"matrix": A.tolist()},
        meta={"linear": True},
    )


def tridiagonal_callback_model(
    bands: Callable[[float], TridiagonalSpec], n: int, period: float, model_id: str = "linear_bands"
) -> VectorFieldModel:
    """Linear time-varying system whose matrix is supplied as tridiagonal
    bands per time; the supported form for custom user systems."""

    def jac(t, x):
        spec = bands(t)
        if spec.n != n:
            raise PreconditionError(f"bands callback returned size {spec.n}, expected {n}")
        return spec.to_dense()

    return VectorFieldModel(
        model_id=model_id,
        n=n,
        period=float(period),
        f=lambda t, x: jac(t, x) @ x,
        jac=jac,
        box_lo=np.full(n, -np.inf),
        box_hi=np.full(n, np.inf),
        meta={"linear": True},
    )


def zero_field_model(n: int) -> VectorFieldModel:
    """f = 0 everywhere; constant solutions, identity transition matrix."""
    return VectorFieldModel(
        model_id="zero_field",
        n=n,
        period=0.0,
        f=lambda t, x: np.zeros(n),
        jac=lambda t, x: np.zeros((n, n)),
        box_lo=np.full(n, -np.inf),
        box_hi=np.full(n, np.inf),
    )


def toeplitz_reference(n: int) -> SpectralDecomposition:
    """Closed-form spectrum of the n x n tridiagonal Toeplitz matrix with
    -1 on the diagonal and 1/2 on both off-diagonals (the RFM Jacobian at
    the uniform-half steady state):

        alpha_k = -1 + cos(k pi / (n+1)),   v^k_j = sin(j k pi / (n+1)).

    Sorted and normalized with the same conventions as the solvers; serves
    as an independent oracle for :func:`tpds.spectral.eig_jacobi`.
    """
    if n < 1:
        raise PreconditionError("need n >= 1")
    k = np.arange(1, n + 1)
    values = -1.0 + np.cos(k * math.pi / (n + 1))
    j = np.arange(1, n + 1)
    vectors = np.sin(np.outer(j, k) * math.pi / (n + 1))
    vectors /= np.max(np.abs(vectors), axis=0, keepdims=True)
    dense = TridiagonalSpec(-np.ones(n), 0.5 * np.ones(n - 1), 0.5 * np.ones(n - 1)).to_dense()
    residuals = np.array(
        [np.linalg.norm(dense @ vectors[:, i] - values[i] * vectors[:, i], np.inf) for i in range(n)]
    )
    return SpectralDecomposition(values, vectors, residuals, source="closed_form")


def uniform_half_rates(n: int) -> np.ndarray:
    """Entry and exit rate 1/2, elongation rates 1; steady state e_i = 1/2."""
    rates = np.ones(n + 1)
    rates[0] = rates[-1] = 0.5
    return rates


def all_ones_rates(n: int) -> np.ndarray:
    return np.ones(n + 1)


RATE_FAMILIES: dict[str, Callable[[int], np.ndarray]] = {
    "uniform-half": uniform_half_rates,
    "all-ones": all_ones_rates,
}


@dataclass(frozen=True)
class ScalingRow:
    n: int
    alpha_1: float
    alpha_n: float
    log_n: float
    log_neg_alpha_1: float


def rfm_scaling_experiment(rates_family, n_list: Sequence[int]) -> list[ScalingRow]:
    """Slowest/fastest Jacobian eigenvalues at steady state across sizes.

    ``rates_family`` is a family name from :data:`RATE_FAMILIES` or a
    callable n -> rates.  The (log n, log(-alpha_1)) columns feed the
    relaxation-time scaling plot: the slope approaches -2, i.e. the
    relaxation time grows like n^2.
    """
    if isinstance(rates_family, str):
        try:
            family = RATE_FAMILIES[rates_family]
        except KeyError:
            raise PreconditionError(
                f"unknown rate family {rates_family!r}; choices: {sorted(RATE_FAMILIES)}"
            ) from None
    else:
        family = rates_family
    rows = []
    for n in n_list:
        rates = _validate_rates(family(int(n)))
        if rates.size != n + 1:
            raise PreconditionError(f"rate family returned {rates.size} rates for n = {n}")
        ss = rfm_steady_state(rates)
        dec = eig_jacobi(rfm_jacobian(rates, 0.0, ss.e))
        a1 = float(dec.eigenvalues[0])
        rows.append(ScalingRow(int(n), a1, float(dec.eigenvalues[-1]), math.log(n), math.log(-a1)))
    return rows


def model_from_spec(spec: dict) -> VectorFieldModel:
    """Build a model from its JSON description.

    Supported forms: {"model": "rfm", "rates": [...]},
    {"model": "neural"}, {"model": "schwarz"},
    {"model": "linear", "matrix": {...}, "period": T?},
    {"model": "rfm_periodic", "rates": [...], "period": T, "amplitude": a}.
    """
    if not isinstance(spec, dict) or "model" not in spec:
        raise PreconditionError('model spec must be an object with a "model" key')
    kind = spec["model"]
    if kind == "rfm":
        return rfm_model(spec["rates"])
    if kind == "rfm_periodic":
        return rfm_periodic_model(spec["rates"], spec["period"], spec["amplitude"])
    if kind == "neural":
        return neural_model()
    if kind == "schwarz":
        return schwarz_model()
    if kind == "linear":
        dense, _bands = matrix_from_spec(spec["matrix"])
        return linear_model(dense, period=float(spec.get("period", 0.0)))
    raise PreconditionError(f"unknown model kind {kind!r}")


def matrix_from_spec(spec: dict) -> tuple[np.ndarray, TridiagonalSpec | None]:
    """Parse {"n": int, "rows": [[...], ...]} or
    {"tridiagonal": {"a": [...], "b": [...], "c": [...]}} into a dense
    matrix (plus the bands when given that way)."""
    if not isinstance(spec, dict):
        raise PreconditionError("matrix spec must be a JSON object")
    if "tridiagonal" in spec:
        t = spec["tridiagonal"]
        bands = TridiagonalSpec(
            np.asarray(t["a"], dtype=float),
            np.asarray(t.get("b", []), dtype=float),
            np.asarray(t.get("c", []), dtype=float),
        )
        return bands.to_dense(), bands
    if "rows" in spec:
        rows = np.asarray(spec["rows"], dtype=float)
        if rows.ndim != 2 or rows.shape[0] != rows.shape[1]:
            raise PreconditionError(f"matrix rows must be square, got shape {rows.shape}")
        if "n" in spec and int(spec["n"]) != rows.shape[0]:
            raise PreconditionError(
                f'declared size n = {spec["n"]} does not match {rows.shape[0]} rows'
            )
        return rows, None
    raise PreconditionError('matrix spec needs either "rows" or "tridiagonal"')


def check_jacobian(
    model: VectorFieldModel, n_points: int = 10, seed: int = 0, times: Sequence[float] = (0.0,)
) -> float:
    """Max relative error between the model's Jacobian and central finite
    differences of f at random interior points.  Model self-test."""
    rng = np.random.default_rng(seed)
    lo = np.where(np.isfinite(model.box_lo), model.box_lo, -2.0)
    hi = np.where(np.isfinite(model.box_hi), model.box_hi, 2.0)
    span = hi - lo
    worst = 0.0
    for _ in range(n_points):
        x = lo + span * rng.uniform(0.05, 0.95, size=model.n)
        for t in times:
            J = np.asarray(model.jac(t, x), dtype=float)
            fd = np.empty_like(J)
            for j in range(model.n):
                h = 1e-6 * max(1.0, abs(x[j]))
                xp, xm = x.copy(), x.copy()
                xp[j] += h
                xm[j] -= h
                fd[:, j] = (model.f(t, xp) - model.f(t, xm)) / (2.0 * h)
            scale = max(np.max(np.abs(J)), 1.0)
            worst = max(worst, np.max(np.abs(J - fd)) / scale)
    return worst
