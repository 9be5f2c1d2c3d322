"""Binary wealth/type model with a threshold employer.

Each candidate has wealth ``w`` and type ``t`` in {0, 1} and score ``w + t``.
Scores 0 and 2 are decided outright; whether score-1 candidates are accepted
depends on the wealthy fraction ``lam``. ``A[w][j]`` is the chance that a
candidate of wealth ``w`` whose application was accepted (``j = 1``) or
rejected (``j = 0``) has a wealthy child.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dynamics import Trajectory, iterate

CANONICAL_A = ((0.0, 1.0), (0.0, 1.0))
CASES = (1, 2, 3)


@dataclass(frozen=True)
class DiscreteParams:
    p: float
    beta_thr: float
    alpha_mix: float = 1.0
    A: tuple = CANONICAL_A

    def __post_init__(self):
        if not (0.0 < self.p < 1.0):
            raise ValueError(f"p must lie in (0, 1), got {self.p}")
        for name in ("beta_thr", "alpha_mix"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        a = tuple(tuple(float(v) for v in row) for row in self.A)
        if len(a) != 2 or any(len(r) != 2 for r in a):
            raise ValueError("A must be 2x2")
        if any(not (0.0 <= v <= 1.0) for r in a for v in r):
            raise ValueError("entries of A must be probabilities")
        object.__setattr__(self, "A", a)


def lambda_star(p: float, beta_thr: float, case: int) -> float:
    """Wealthy fraction at which score-1 acceptance flips.

    Case 1 accepts score 1 iff ``lam <= lambda_star``; case 2 iff ``lam >= lambda_star``.
    """
    if case == 1:
        num, den = p * (1.0 - beta_thr), p + beta_thr * (1.0 - 2.0 * p)
    elif case == 2:
        num, den = p * beta_thr, 1.0 - (p + beta_thr - 2.0 * beta_thr * p)
    else:
        raise ValueError(f"lambda_star is defined for cases 1 and 2, got {case}")
    if den <= 0.0:
        raise ValueError(f"degenerate threshold: denominator {den} for p={p}, beta={beta_thr}")
    return num / den


def accept_condition_case3(p: float, beta_thr: float, alpha_mix: float, lam: float) -> bool:
    """Mixed-objective acceptance of score 1: ``lam (1 - (a + p + b - 2bp)) >= p (b - a)``."""
    a, b = alpha_mix, beta_thr
    return lam * (1.0 - (a + p + b - 2.0 * b * p)) >= p * (b - a)


def accepts_score_one(params: DiscreteParams, lam: float, case: int) -> bool:
    if case == 1:
        return lam <= lambda_star(params.p, params.beta_thr, 1)
    if case == 2:
        return lam >= lambda_star(params.p, params.beta_thr, 2)
    if case == 3:
        return accept_condition_case3(params.p, params.beta_thr, params.alpha_mix, lam)
    raise ValueError(f"case must be one of {CASES}, got {case}")


def discrete_update(params: DiscreteParams, lam: float, case: int) -> float:
    """Next wealthy fraction."""
    if not (0.0 <= lam <= 1.0):
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    (a11, a12), (a21, a22) = params.A
    p = params.p
    if accepts_score_one(params, lam, case):
        nxt = a22 * lam + a12 * (1.0 - lam) * p + a11 * (1.0 - lam) * (1.0 - p)
    else:
        nxt = a22 * lam * p + a21 * lam * (1.0 - p) + a11 * (1.0 - lam)
    return min(1.0, max(0.0, nxt))


def discrete_simulate(params: DiscreteParams, lambda0: float, case: int,
                      max_steps: int = 10**6, tol: float = 1e-10) -> Trajectory:
    if case not in CASES:
        raise ValueError(f"case must be one of {CASES}, got {case}")
    return iterate(lambda x: discrete_update(params, x, case), lambda0, max_steps=max_steps, tol=tol)

