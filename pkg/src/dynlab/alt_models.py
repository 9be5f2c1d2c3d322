"""Alternative type/wealth models.

Bernoulli type with Gaussian wealth: ``T ~ Bernoulli(p)``, ``W ~ N(mu, sigma^2)``,
score ``S = T + W``. An employer with fit weight ``alpha`` and threshold ``beta``
hires iff ``(2 alpha - 1) P[T=1 | S=s] >= beta - (1 - alpha) s``. For
``alpha = 1`` this is ``s >= mu + k``; for ``alpha = 1/2`` it is ``s >= 2 beta``.

Bernoulli type with Pareto wealth: only the acceptance set is modelled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import expit

from .errors import NumericError
from .special import std_normal_cdf, std_normal_pdf


@dataclass(frozen=True)
class BernGaussParams:
    p: float
    beta_thr: float
    sigma: float
    alpha_mix: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.p < 1.0):
            raise ValueError(f"p must lie in (0, 1), got {self.p}")
        if not (0.0 < self.beta_thr < 1.0):
            raise ValueError(f"beta_thr must lie in (0, 1), got {self.beta_thr}")
        if not (self.sigma > 0.0 and math.isfinite(self.sigma)):
            raise ValueError(f"sigma must be > 0, got {self.sigma}")
        if not (0.0 <= self.alpha_mix <= 1.0):
            raise ValueError(f"alpha_mix must lie in [0, 1], got {self.alpha_mix}")

    @property
    def log_odds(self) -> float:
        return math.log(self.p / (1.0 - self.p))


def bg_threshold_k(params: BernGaussParams) -> float:
    """Offset ``k`` such that a fit-only employer hires iff ``s >= mu + k``."""
    b = params.beta_thr
    return 0.5 - params.sigma**2 * (math.log(1.0 / b - 1.0) + params.log_odds)


def bg_posterior(params: BernGaussParams, mu: float, s):
    """``P[T = 1 | S = s]``, computed in log-odds space."""
    z = params.log_odds + (2.0 * (np.asarray(s, dtype=float) - mu) - 1.0) / (2.0 * params.sigma**2)
    out = expit(z)
    return float(out) if np.ndim(out) == 0 else out


def _rule_gap(params: BernGaussParams, mu: float, s):
    a = params.alpha_mix
    return (2.0 * a - 1.0) * bg_posterior(params, mu, s) - params.beta_thr + (1.0 - a) * np.asarray(s)


@dataclass(frozen=True)
class CutoffReport:
    s_star: float
    crossings: int

    @property
    def unique(self) -> bool:
        return self.crossings == 1


def bg_cutoff_report(params: BernGaussParams, mu: float, scan: int = 4096) -> CutoffReport:
    """Score cutoff with the number of sign changes of the hiring rule.

    For ``alpha >= 1/2`` the rule is monotone in ``s`` and the cutoff unique.
    Below 1/2 a steep posterior can create several crossings; the largest one
    is returned, so every score above the cutoff is hired.
    """
    sig = params.sigma
    lo, hi = mu - 10.0 * sig, mu + 10.0 * sig + 1.0
    for _ in range(60):
        if _rule_gap(params, mu, lo) < 0.0 < _rule_gap(params, mu, hi):
            break
        lo, hi = lo - (hi - lo), hi + (hi - lo)
    else:
        raise NumericError("could not bracket the score cutoff")
    xs = np.linspace(lo, hi, scan + 1)
    g = _rule_gap(params, mu, xs)
    change = np.flatnonzero((g[:-1] < 0.0) != (g[1:] < 0.0))
    if change.size == 0:
        raise NumericError("could not bracket the score cutoff")
    i = int(change[-1])
    a_, b_ = float(xs[i]), float(xs[i + 1])
    ga = float(g[i])
    for _ in range(200):
        m = 0.5 * (a_ + b_)
        gm = float(_rule_gap(params, mu, m))
        if gm == 0.0 or b_ - a_ <= 4e-16 * max(1.0, abs(m)):
            break
        if (gm < 0.0) == (ga < 0.0):
            a_, ga = m, gm
        else:
            b_ = m
    return CutoffReport(0.5 * (a_ + b_), int(change.size))


def bg_score_cutoff(params: BernGaussParams, mu: float) -> float:
    """Cutoff ``s*``: hire iff ``S >= s*``."""
    return bg_cutoff_report(params, mu).s_star


def _cutoff(params, mu):
    if params.alpha_mix == 1.0:
        return mu + bg_threshold_k(params)
    if params.alpha_mix == 0.5:
        return 2.0 * params.beta_thr
    return bg_score_cutoff(params, mu)


def bg_update(params: BernGaussParams, mu: float) -> float:
    """Hired fraction ``(1-p) P[W >= s*] + p P[W >= s* - 1]`` for mean wealth ``mu``."""
    s, sig, p = _cutoff(params, mu), params.sigma, params.p
    return (1.0 - p) * (1.0 - std_normal_cdf((s - mu) / sig)) + p * (1.0 - std_normal_cdf((s - mu - 1.0) / sig))


def bg_update_deriv(params: BernGaussParams, mu: float) -> float:
    """Derivative of :func:`bg_update` in ``mu`` (closed form for ``alpha`` in {1/2, 1})."""
    if params.alpha_mix == 1.0:
        return 0.0
    if params.alpha_mix != 0.5:
        raise ValueError("closed-form derivative only for alpha_mix in {0.5, 1}")
    s, sig, p = 2.0 * params.beta_thr, params.sigma, params.p
    return ((1.0 - p) * std_normal_pdf((s - mu) / sig) + p * std_normal_pdf((s - mu - 1.0) / sig)) / sig


def bg_monte_carlo_update(params: BernGaussParams, mu: float, n: int, seed: int):
    """Sampled hired fraction and its standard error."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    t = rng.random(n) < params.p
    w = rng.normal(mu, params.sigma, size=n)
    frac = float(np.mean(t + w >= _cutoff(params, mu)))
    return frac, math.sqrt(frac * (1.0 - frac) / n)


@dataclass(frozen=True)
class ParetoParams:
    x_m: float
    shape: float
    p: float
    beta_thr: float

    def __post_init__(self):
        if not (self.x_m > 0.0 and self.shape > 0.0):
            raise ValueError("x_m and shape must be > 0")
        if not (0.0 < self.p < 1.0):
            raise ValueError(f"p must lie in (0, 1), got {self.p}")
        # beta_thr = 1 is allowed: it is the limit where nothing but type-1 certainty is hired.
        if not (0.0 < self.beta_thr <= 1.0):
            raise ValueError(f"beta_thr must lie in (0, 1], got {self.beta_thr}")


@dataclass(frozen=True)
class ParetoAcceptance:
    ratio: float
    accept_all: bool
    lo: float
    hi: Optional[float]

    @property
    def empty(self) -> bool:
        return self.hi is not None and self.lo > self.hi

    def accepts(self, s: float) -> bool:
        if s < self.lo:
            return False
        return self.accept_all or s <= self.hi


def pareto_acceptance(params: ParetoParams) -> ParetoAcceptance:
    """Scores accepted by a fit-only employer when wealth is Pareto.

    With ``r = (p/(1-p) * (1-beta)/beta) ** (1/(shape+1))`` every score is
    accepted if ``r >= 1``; otherwise scores in ``[x_m, 1/(1-r)]``.
    """
    b = params.beta_thr
    r = (params.p / (1.0 - params.p) * (1.0 - b) / b) ** (1.0 / (params.shape + 1.0))
    if r >= 1.0:
        return ParetoAcceptance(r, True, params.x_m, None)
    return ParetoAcceptance(r, False, params.x_m, 1.0 / (1.0 - r))
