"""Maximization of a ratio of quadratics over the relay gain interval.

The AF secrecy objective reduces to

    f(x) = (a*x^2 + n1*x + 1) / (a*x^2 + d1*x + 1),
    a = alpha*beta*mu,  n1 = alpha*mu + beta,  d1 = alpha + beta*mu,

maximized over 0 <= x <= x_max. f is not concave, so the solver takes the
parametric route: search for lambda with

    pi(lambda) = max_x [num(x) - lambda*den(x)] = 0;

that root is the optimal ratio value and the inner argmax is the optimal
gain. For alpha > beta and mu > 1 the root is bracketed in
[1, n1/d1), the auxiliary quadratic F(x, lambda) is concave in x there, and
pi is continuous and strictly decreasing, which yields both a closed form
(`lambda_hat_closed_form`) and a safe bisection (`lambda_hat_bisection`).
`grid_oracle` is an intentionally brute-force cross-check: a dense grid scan
refined by golden-section search, independent of the parametric machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "RatioQuadraticProblem",
    "SolverBranch",
    "LambdaSolution",
    "eval_f",
    "eval_F",
    "x_of_lambda",
    "pi_of_lambda",
    "lambda_hat_closed_form",
    "lambda_hat_bisection",
    "grid_oracle",
    "maximize_on_interval",
]

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

# Relative threshold below which (alpha - beta*mu)^2 is treated as zero and
# the closed form defers to bisection.
_FALLBACK_REL_TOL = 1e-12


@dataclass(frozen=True)
class RatioQuadraticProblem:
    """Coefficients (via alpha, beta, mu) and domain [0, x_max] of the ratio."""

    alpha: float
    beta: float
    mu: float
    x_max: float

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "mu", "x_max"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be nonnegative")
        if self.mu < 1:
            raise ValueError("mu must be at least 1")
        if self.x_max < 0:
            raise ValueError("x_max must be nonnegative")

    @property
    def quad(self) -> float:
        """Shared quadratic coefficient of numerator and denominator."""
        return self.alpha * self.beta * self.mu

    @property
    def num_lin(self) -> float:
        """Linear coefficient of the numerator."""
        return self.alpha * self.mu + self.beta

    @property
    def den_lin(self) -> float:
        """Linear coefficient of the denominator."""
        return self.alpha + self.beta * self.mu


class SolverBranch(Enum):
    ENDPOINT = "endpoint"
    INTERIOR = "interior"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class LambdaSolution:
    """Optimal ratio value, its maximizer, and which solver branch produced it."""

    lambda_hat: float
    x_hat: float
    branch: SolverBranch


def eval_f(prob: RatioQuadraticProblem, x):
    """Objective value f(x); accepts a scalar or a numpy array.

    The denominator is >= 1 for x >= 0, so no clamping is needed.
    """
    a = prob.quad
    num = a * x * x + prob.num_lin * x + 1.0
    den = a * x * x + prob.den_lin * x + 1.0
    return num / den


def eval_F(prob: RatioQuadraticProblem, x, lam: float):
    """Auxiliary quadratic F(x, lambda) = num(x) - lambda*den(x), for lambda > 0."""
    return (
        prob.quad * (1.0 - lam) * x * x
        + (prob.num_lin - lam * prob.den_lin) * x
        + (1.0 - lam)
    )


def _bracket_upper(prob: RatioQuadraticProblem) -> float:
    return prob.num_lin / prob.den_lin


def _check_lambda(prob: RatioQuadraticProblem, lam: float) -> None:
    # The optimum lies in the half-open bracket [1, n1/d1); the closed upper
    # endpoint is still a valid evaluation point (x=0 maximizes F there), and
    # admitting it keeps bisection free of special cases.
    if not (1.0 <= lam <= _bracket_upper(prob)):
        raise ValueError(
            f"lambda={lam!r} outside the root bracket [1, {_bracket_upper(prob)!r}]"
        )


def _endpoint_threshold(prob: RatioQuadraticProblem) -> float:
    a, x = prob.quad, prob.x_max
    return (2.0 * a * x + prob.num_lin) / (2.0 * a * x + prob.den_lin)


def x_of_lambda(prob: RatioQuadraticProblem, lam: float) -> float:
    """Maximizer of F(., lambda) over [0, x_max].

    F is concave in x on the bracket; its unconstrained peak moves from
    beyond x_max down to 0 as lambda sweeps the bracket, so the constrained
    maximizer is x_max up to a threshold and the interior stationary point
    after it.
    """
    _check_lambda(prob, lam)
    if lam <= _endpoint_threshold(prob):
        return prob.x_max
    x_tilde = (lam * prob.den_lin - prob.num_lin) / (2.0 * prob.quad * (1.0 - lam))
    return min(max(x_tilde, 0.0), prob.x_max)


def pi_of_lambda(prob: RatioQuadraticProblem, lam: float) -> float:
    """F evaluated at its constrained maximizer, as an explicit function of lambda."""
    _check_lambda(prob, lam)
    a, x = prob.quad, prob.x_max
    if lam <= _endpoint_threshold(prob):
        return (-a * x * x - prob.den_lin * x - 1.0) * lam + a * x * x + prob.num_lin * x + 1.0
    t = lam * prob.den_lin - prob.num_lin
    return t * t / (4.0 * a * (lam - 1.0)) - lam + 1.0


def _pi_derivative(prob: RatioQuadraticProblem, lam: float) -> float:
    a, x = prob.quad, prob.x_max
    if lam <= _endpoint_threshold(prob):
        return -(a * x * x + prob.den_lin * x + 1.0)
    t = lam * prob.den_lin - prob.num_lin
    u = lam - 1.0
    return (2.0 * prob.den_lin * t * u - t * t) / (4.0 * a * u * u) - 1.0


def _is_degenerate(prob: RatioQuadraticProblem) -> bool:
    return prob.alpha <= prob.beta or prob.mu <= 1.0 or prob.x_max <= 0.0


_DEGENERATE_SOLUTION = LambdaSolution(1.0, 0.0, SolverBranch.DEGENERATE)


def lambda_hat_closed_form(prob: RatioQuadraticProblem) -> LambdaSolution:
    """Closed-form root of pi and the matching maximizer.

    Degenerate inputs (alpha <= beta, mu = 1, or an empty domain) collapse the
    bracket to a point; the ratio is then maximized trivially at x = 0 with
    value 1. When alpha = beta*mu the interior-branch discriminant algebra
    degenerates, so the solver defers to `lambda_hat_bisection` there.
    """
    if _is_degenerate(prob):
        return _DEGENERATE_SOLUTION
    a, x = prob.quad, prob.x_max
    x_crit = 1.0 / math.sqrt(a) if a > 0.0 else math.inf
    if x <= x_crit:
        # Constrained peak sits at the right edge; the root of the linear
        # branch of pi is exactly f(x_max).
        return LambdaSolution(eval_f(prob, x), x, SolverBranch.ENDPOINT)
    diff = prob.alpha - prob.beta * prob.mu
    if abs(diff) < _FALLBACK_REL_TOL * max(prob.alpha, prob.beta * prob.mu):
        return lambda_hat_bisection(prob)
    n1, d1 = prob.num_lin, prob.den_lin
    two_bb = 2.0 * d1 * n1
    delta = (8.0 * a - two_bb) ** 2 - 4.0 * diff * diff * (prob.alpha * prob.mu - prob.beta) ** 2
    delta = max(delta, 0.0)
    # Smaller root of diff^2*l^2 + (8a - 2*n1*d1)*l + (alpha*mu - beta)^2 = 0,
    # in the cancellation-free arrangement (2*n1*d1 - 8a > 0 on this branch).
    lam = 2.0 * (prob.alpha * prob.mu - prob.beta) ** 2 / (two_bb - 8.0 * a + math.sqrt(delta))
    return LambdaSolution(lam, x_crit, SolverBranch.INTERIOR)


def lambda_hat_bisection(prob: RatioQuadraticProblem, tol: float = 1e-12) -> LambdaSolution:
    """Bisection on pi over the bracket, finished with a few Newton steps.

    pi is strictly decreasing with a sign change across the bracket, so the
    root is unique. The Newton polish pushes the residual |pi(lambda)| down
    to rounding level even when the pi coefficients are large, where a bare
    1e-12 interval on lambda would not.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if _is_degenerate(prob):
        return _DEGENERATE_SOLUTION
    lo, hi = 1.0, _bracket_upper(prob)
    f_lo = pi_of_lambda(prob, lo)
    f_hi = pi_of_lambda(prob, hi)
    if not (f_lo > 0.0 and f_hi < 0.0):
        raise RuntimeError(
            "pi does not change sign across the bracket; "
            f"pi({lo})={f_lo!r}, pi({hi})={f_hi!r}"
        )
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if pi_of_lambda(prob, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    lam = 0.5 * (lo + hi)
    upper = _bracket_upper(prob)
    for _ in range(3):
        d = _pi_derivative(prob, lam)
        if d == 0.0:
            break
        nxt = lam - pi_of_lambda(prob, lam) / d
        if not (1.0 <= nxt <= upper):
            break
        lam = nxt
    x_hat = x_of_lambda(prob, lam)
    branch = SolverBranch.ENDPOINT if lam <= _endpoint_threshold(prob) else SolverBranch.INTERIOR
    return LambdaSolution(lam, x_hat, branch)


def maximize_on_interval(fun, x_max: float, n_points: int = 1_000_000,
                         refine_tol: float = 1e-12) -> tuple[float, float]:
    """Grid scan of `fun` over [0, x_max] refined by golden-section search.

    `fun` must accept a numpy array and evaluate elementwise. Ties resolve to
    the smallest x (first grid argmax; the section search keeps the left side
    on equal values). Deliberately brute force: this is the oracle the
    analytic solvers are checked against.
    """
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    if x_max < 0:
        raise ValueError("x_max must be nonnegative")
    if x_max == 0.0:
        return 0.0, float(np.asarray(fun(np.zeros(1)))[0])
    xs = np.linspace(0.0, x_max, n_points)
    vals = np.asarray(fun(xs), dtype=float)
    i = int(np.argmax(vals))
    lo = xs[i - 1] if i > 0 else 0.0
    hi = xs[i + 1] if i + 1 < n_points else x_max

    def _scalar(x: float) -> float:
        return float(np.asarray(fun(np.array([x])))[0])

    while hi - lo > refine_tol:
        span = hi - lo
        c = hi - span * _INV_GOLDEN
        d = lo + span * _INV_GOLDEN
        if _scalar(c) >= _scalar(d):
            hi = d
        else:
            lo = c
    x_star = 0.5 * (lo + hi)
    f_star = _scalar(x_star)
    # Keep the grid point only when refinement made things strictly worse
    # (impossible for a unimodal objective, cheap insurance otherwise). On a
    # flat objective the left-biased section search already lands at the
    # smallest x up to refine_tol.
    if vals[i] > f_star:
        return float(xs[i]), float(vals[i])
    return float(x_star), f_star


def grid_oracle(prob: RatioQuadraticProblem, n_points: int = 1_000_000) -> tuple[float, float]:
    """Brute-force (argmax, max) of f over [0, x_max]."""
    return maximize_on_interval(lambda xs: eval_f(prob, xs), prob.x_max, n_points)
