"""Gaussian type/wealth admission model and its wealth update rule.

Types are ``T ~ N(0, gamma^2)``, wealth is ``W ~ N(mu, sigma^2)`` and the
university observes the signal ``S = beta*T + (1-beta)*W``. It admits an
applicant iff ``E[alpha*T + (1-alpha)*W | S] >= tau``; the admitted fraction
becomes the group's mean wealth in the next generation, giving the update map

    f(x) = 1 - Phi(K * (tau - (1-alpha)*x)),
    K    = sqrt(beta^2 gamma^2 + (1-beta)^2 sigma^2)
           / (alpha beta gamma^2 + (1-alpha)(1-beta) sigma^2).

A nonzero type mean can always be absorbed into ``tau``, so it is fixed to 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateModelError
from .special import INV_SQRT2PI, std_normal_cdf

# Sample chunk for the Monte Carlo oracle; bounds peak memory at ~3 arrays of this size.
MC_CHUNK = 1 << 20


@dataclass(frozen=True)
class GaussianParams:
    """One group's admission model.

    Attributes
    ----------
    alpha : float
        University's weight on type in its objective, in [0, 1].
    beta : float
        Signal's weight on type, in [0, 1].
    gamma : float
        Standard deviation of type, > 0.
    sigma : float
        Standard deviation of wealth, > 0.
    tau : float
        Admission threshold on the posterior objective.
    """

    alpha: float
    beta: float
    gamma: float
    sigma: float
    tau: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "sigma", "tau"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must lie in [0, 1], got {self.beta}")
        if self.gamma <= 0.0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        if self.sigma <= 0.0:
            raise ValueError(f"sigma must be > 0, got {self.sigma}")
        if self.cov_objective_signal <= 0.0:
            raise DegenerateModelError(
                "alpha*beta*gamma^2 + (1-alpha)*(1-beta)*sigma^2 must be > 0 "
                f"(alpha={self.alpha}, beta={self.beta}); the signal carries no "
                "information about the objective"
            )

    @property
    def var_signal(self) -> float:
        return self.beta**2 * self.gamma**2 + (1.0 - self.beta) ** 2 * self.sigma**2

    @property
    def cov_objective_signal(self) -> float:
        return (self.alpha * self.beta * self.gamma**2
                + (1.0 - self.alpha) * (1.0 - self.beta) * self.sigma**2)

    def with_(self, **changes) -> "GaussianParams":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma,
                "sigma": self.sigma, "tau": self.tau}


def eval_K(params: GaussianParams) -> float:
    """Standardisation constant sqrt(Var S) / Cov(objective, S)."""
    return math.sqrt(params.var_signal) / params.cov_objective_signal


def posterior_means(params: GaussianParams, mu: float, s):
    """Return ``(E[T | S=s], E[W | S=s])`` for a group with mean wealth ``mu``.

    ``s`` may be a scalar or an array.
    """
    var_s = params.var_signal
    if var_s <= 0.0:
        raise DegenerateModelError("signal variance is zero")
    dev = np.asarray(s, dtype=float) - (1.0 - params.beta) * mu
    e_type = params.beta * params.gamma**2 / var_s * dev
    e_wealth = mu + (1.0 - params.beta) * params.sigma**2 / var_s * dev
    if np.ndim(s) == 0:
        return float(e_type), float(e_wealth)
    return e_type, e_wealth


def admission_score_threshold(params: GaussianParams, mu: float) -> float:
    """Score ``s*`` such that an applicant is admitted iff ``S >= s*``."""
    k = eval_K(params)
    return ((1.0 - params.beta) * mu
            + math.sqrt(params.var_signal) * k * (params.tau - (1.0 - params.alpha) * mu))


def update_f(params: GaussianParams, x):
    """Next-generation mean wealth ``f(x)``; vectorised over ``x``."""
    k = eval_K(params)
    if np.isscalar(x):
        return 1.0 - std_normal_cdf(k * (params.tau - (1.0 - params.alpha) * x))
    x = np.asarray(x, dtype=float)
    return 1.0 - std_normal_cdf(k * (params.tau - (1.0 - params.alpha) * x))


def update_f_deriv(params: GaussianParams, x):
    """First and second derivative of :func:`update_f` at ``x``."""
    k = eval_K(params)
    a1 = 1.0 - params.alpha
    u = params.tau - a1 * np.asarray(x, dtype=float)
    e = INV_SQRT2PI * np.exp(-0.5 * (k * u) ** 2)
    first = k * a1 * e
    second = k**3 * a1**2 * u * e
    if np.ndim(x) == 0:
        return float(first), float(second)
    return first, second


def inflection_point(params: GaussianParams) -> float:
    """Point where ``f`` switches from convex to concave, clamped to [0, 1].

    For ``alpha == 1`` the map is constant; 1 is returned by convention.
    """
    if params.alpha >= 1.0:
        return 1.0
    if params.tau <= 0.0:
        return 0.0
    if params.tau >= 1.0 - params.alpha:
        return 1.0
    return params.tau / (1.0 - params.alpha)


def _sample_signal(params, mu, n, rng):
    t = rng.normal(0.0, params.gamma, size=n)
    w = rng.normal(mu, params.sigma, size=n)
    return t, w, params.beta * t + (1.0 - params.beta) * w


def _chunks(n: int, seed: int):
    """Deterministic (size, generator) pairs covering ``n`` samples."""
    n_chunks = -(-n // MC_CHUNK)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    for i, ss in enumerate(children):
        size = min(MC_CHUNK, n - i * MC_CHUNK)
        yield size, np.random.default_rng(ss)


def monte_carlo_admit_fraction(params: GaussianParams, mu: float, n: int, seed: int):
    """Simulate ``n`` applicants and return ``(admitted_fraction, std_error)``.

    Samples are drawn in fixed-size chunks from substreams spawned off ``seed``,
    so the result depends only on ``(params, mu, n, seed)``.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    s_star = admission_score_threshold(params, mu)
    admitted = 0
    for size, rng in _chunks(n, seed):
        _, _, s = _sample_signal(params, mu, size, rng)
        admitted += int(np.count_nonzero(s >= s_star))
    frac = admitted / n
    return frac, math.sqrt(frac * (1.0 - frac) / n)


def monte_carlo_posterior_means(params: GaussianParams, mu: float, s: float,
                                n: int, seed: int, half_width: float = 0.01):
    """Conditional means of type and wealth among samples with ``|S - s| <= half_width``.

    Returns ``(e_type, e_wealth, se_type, se_wealth, n_window)``.
    """
    sum_t = sum_w = sq_t = sq_w = 0.0
    m = 0
    for size, rng in _chunks(n, seed):
        t, w, sig = _sample_signal(params, mu, size, rng)
        sel = np.abs(sig - s) <= half_width
        tt, ww = t[sel], w[sel]
        m += tt.size
        sum_t += tt.sum()
        sum_w += ww.sum()
        sq_t += (tt * tt).sum()
        sq_w += (ww * ww).sum()
    if m < 2:
        raise ValueError("too few samples fell in the score window")
    e_t, e_w = sum_t / m, sum_w / m
    var_t = max(sq_t / m - e_t**2, 0.0)
    var_w = max(sq_w / m - e_w**2, 0.0)
    return e_t, e_w, math.sqrt(var_t / m), math.sqrt(var_w / m), m


class GaussianUpdateMap:
    """Callable wrapper of ``update_f`` that also exposes the closed-form derivative."""

    def __init__(self, params: GaussianParams):
        self.params = params
        self.K = eval_K(params)

    def __call__(self, x):
        return update_f(self.params, x)

    def derivative(self, x):
        return update_f_deriv(self.params, x)[0]

    def __repr__(self):
        p = self.params
        return (f"GaussianUpdateMap(alpha={p.alpha}, beta={p.beta}, gamma={p.gamma}, "
                f"sigma={p.sigma}, tau={p.tau})")
