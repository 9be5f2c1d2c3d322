"""Fixed points of increasing update maps on [0, 1].

The solver scans ``g(x) = f(x) - x`` on a uniform grid, refines every sign
change by bisection and labels each root from the slope of ``f``. It works for
any continuous map of [0, 1] into itself; for the Gaussian model
the closed-form derivative is used, otherwise a central difference.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .errors import ShapeViolationError
from .model import GaussianParams, GaussianUpdateMap, eval_K

SCAN_CELLS = 4096
ROOT_TOL = 1e-12
DEDUP_TOL = 1e-9
TANGENT_TOL = 1e-6
FD_STEP = 1e-6
SQRT2PI = math.sqrt(2.0 * math.pi)

ATTRACTING = "attracting"
UNSTABLE = "unstable"
TANGENT = "tangent-degenerate"


@dataclass(frozen=True)
class FixedPoint:
    z: float
    derivative: float
    stability: str


@dataclass(frozen=True)
class Basin:
    """Interval of starting points whose trajectories converge to ``target``."""

    lo: float
    hi: float
    lo_closed: bool
    hi_closed: bool
    target: float

    def contains(self, x: float) -> bool:
        above = x >= self.lo if self.lo_closed else x > self.lo
        below = x <= self.hi if self.hi_closed else x < self.hi
        return above and below


@dataclass(frozen=True)
class FixedPointReport:
    points: tuple
    is_contraction: Optional[bool] = None
    three_fp_sufficient: Optional[bool] = None
    basins: tuple = field(default_factory=tuple)

    @property
    def count(self) -> int:
        return len(self.points)

    @property
    def zs(self) -> list:
        return [p.z for p in self.points]

    @property
    def tangent_degenerate(self) -> bool:
        return any(p.stability == TANGENT for p in self.points)

    def target_of(self, x: float) -> float:
        for b in self.basins:
            if b.contains(x):
                return b.target
        raise ValueError(f"{x} is not covered by any basin")

    def to_json(self) -> dict:
        return {
            "n_fixed_points": self.count,
            "points": [p.z for p in self.points],
            "derivative": [p.derivative for p in self.points],
            "stability": [p.stability for p in self.points],
            "basins": [asdict(b) for b in self.basins],
            "is_contraction": self.is_contraction,
            "three_fp_sufficient": self.three_fp_sufficient,
        }


def _bisect(g: Callable[[float], float], lo: float, hi: float, glo: float) -> float:
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0.0 or (hi - lo) <= 4e-16:
            return mid
        if (gm > 0.0) == (glo > 0.0):
            lo, glo = mid, gm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _slope(f, x: float) -> float:
    d = getattr(f, "derivative", None)
    if d is not None:
        return float(d(x))
    return (float(f(x + FD_STEP)) - float(f(x - FD_STEP))) / (2.0 * FD_STEP)


def _label(derivative: float) -> str:
    if abs(derivative - 1.0) < TANGENT_TOL:
        return TANGENT
    return ATTRACTING if derivative < 1.0 else UNSTABLE


def find_fixed_points(f, n_cells: int = SCAN_CELLS, with_basins: bool = True) -> FixedPointReport:
    """Locate and classify every fixed point of ``f`` on [0, 1].

    ``f`` must accept a float; if it also accepts arrays the scan is vectorised.

    Raises
    ------
    ValueError
        If ``f(0) < 0`` or ``f(1) > 1`` (the map leaves [0, 1]).
    ShapeViolationError
        If more than three sign changes are found.
    """
    xs = np.linspace(0.0, 1.0, n_cells + 1)
    try:
        fx = np.asarray(f(xs), dtype=float)
        if fx.shape != xs.shape:
            raise TypeError
    except (TypeError, ValueError):
        fx = np.array([float(f(x)) for x in xs])
    gx = fx - xs
    # f(0) == 0 or f(1) == 1 happen through underflow of the normal tail; the
    # endpoint is then a genuine fixed point in floating point and kept as one.
    if gx[0] < 0.0 or gx[-1] > 0.0:
        raise ValueError("update map must satisfy f(0) >= 0 and f(1) <= 1")

    def g(x):
        return float(f(x)) - x

    # Exact grid zeros are roots as they stand; cells starting at one are skipped.
    roots = [float(x) for x in xs[gx == 0.0]]
    a, b = gx[:-1], gx[1:]
    crossing = np.flatnonzero((a != 0.0) & (b != 0.0) & ((a > 0.0) != (b > 0.0)))
    if crossing.size > 3:
        raise ShapeViolationError(
            f"found {crossing.size} sign changes; an S-shaped increasing map has at most 3")
    for i in crossing:
        roots.append(_bisect(g, float(xs[i]), float(xs[i + 1]), float(a[i])))
    roots.sort()
    merged = []
    for r in roots:
        if not merged or r - merged[-1] > DEDUP_TOL:
            merged.append(r)
    if len(merged) > 3:
        raise ShapeViolationError(
            f"found {len(merged)} fixed points; an S-shaped increasing map has at most 3")

    points = []
    for z in merged:
        d = _slope(f, z)
        points.append(FixedPoint(z, d, _label(d)))
    if len(points) == 2:
        # Two fixed points only arise when f is tangent to the diagonal.
        i = int(np.argmin([abs(p.derivative - 1.0) for p in points]))
        points[i] = replace(points[i], stability=TANGENT)
    report = FixedPointReport(points=tuple(points))
    if with_basins:
        report = classify_basins(report, f)
    if isinstance(f, GaussianUpdateMap) and f.params.alpha < 1.0:
        report = replace(report, is_contraction=contraction_check(f.params),
                         three_fp_sufficient=three_fp_sufficient(f.params))
    elif isinstance(f, GaussianUpdateMap):
        report = replace(report, is_contraction=True, three_fp_sufficient=False)
    return report


def classify_basins(report: FixedPointReport, f=None) -> FixedPointReport:
    """Fill in basins of attraction from the sign of ``f(x) - x`` between points.

    For an increasing map the trajectory from a point strictly between two
    consecutive fixed points moves monotonically toward the upper one if
    ``f(x) > x`` there and toward the lower one otherwise. Left of the first
    point ``f > id`` and right of the last ``f < id``, since ``f`` maps [0, 1]
    into itself. When ``f`` is omitted the standard alternating sign pattern
    is assumed.
    """
    zs = report.zs
    if not zs:
        return report
    pieces = []
    # (lo, hi, lo_closed, hi_closed, target)
    pieces.append((0.0, zs[0], True, False, zs[0]))
    for i, z in enumerate(zs):
        pieces.append((z, z, True, True, z))
        if i + 1 < len(zs):
            nxt = zs[i + 1]
            mid = 0.5 * (z + nxt)
            if f is not None:
                up = float(f(mid)) > mid
            else:
                up = i % 2 == 1
            pieces.append((z, nxt, False, False, nxt if up else z))
    pieces.append((zs[-1], 1.0, False, True, zs[-1]))
    pieces = [p for p in pieces if p[0] < p[1] or (p[2] and p[3])]

    merged = [list(pieces[0])]
    for lo, hi, lc, hc, tgt in pieces[1:]:
        cur = merged[-1]
        if cur[4] == tgt and cur[1] == lo and (cur[3] or lc):
            cur[1], cur[3] = hi, hc
        else:
            merged.append([lo, hi, lc, hc, tgt])
    basins = tuple(Basin(*m) for m in merged)
    return replace(report, basins=basins)


def contraction_check(params: GaussianParams) -> bool:
    """Sufficient condition for a unique attracting fixed point: ``K <= sqrt(2 pi)/(1-alpha)``."""
    if params.alpha >= 1.0:
        return True
    return eval_K(params) <= SQRT2PI / (1.0 - params.alpha)


def three_fp_sufficient(params: GaussianParams, tol: float = 1e-12) -> bool:
    """``K > sqrt(2 pi)/(1-alpha)`` together with ``tau == (1-alpha)/2``."""
    if params.alpha >= 1.0:
        return False
    a1 = 1.0 - params.alpha
    return eval_K(params) > SQRT2PI / a1 and abs(params.tau - a1 / 2.0) <= tol


# ---------------------------------------------------------------------------
# Grid survey

FILTERS = ("joint", "either", "contraction", "all")


def _passes(filter_name: str, alpha: float, k: float, tau: float) -> bool:
    a1 = 1.0 - alpha
    if a1 <= 0.0:
        return filter_name in ("contraction", "all")
    window = 0.0 <= tau <= a1
    steep = k > SQRT2PI / a1
    if filter_name == "joint":
        return window and steep
    if filter_name == "either":
        return window or steep
    if filter_name == "contraction":
        return not steep
    return True


def survey_grid(grid_points_per_axis: int) -> np.ndarray:
    """Interior grid ``i/(n+1)``, ``i = 1..n``, used on every axis."""
    n = grid_points_per_axis
    if n < 1:
        raise ValueError("grid_points_per_axis must be >= 1")
    return np.arange(1, n + 1) / (n + 1)


@dataclass(frozen=True)
class SurveyCase:
    alpha: float
    beta: float
    gamma: float
    sigma: float
    tau: float
    n_fixed_points: int
    K: float
    contraction: bool


def _survey_chunk(args):
    tuples, = args
    out = []
    for a, b, g, s, t in tuples:
        p = GaussianParams(a, b, g, s, t)
        rep = find_fixed_points(GaussianUpdateMap(p), with_basins=False)
        out.append(SurveyCase(a, b, g, s, t, rep.count, eval_K(p), contraction_check(p)))
    return out


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("DYNLAB_THREADS", "1")))
    except ValueError:
        return 1


def grid_multiplicity_survey(grid_points_per_axis: int, filter: str = "joint",
                             workers: Optional[int] = None):
    """Fraction of filtered grid tuples whose update map has three fixed points.

    The grid is ``survey_grid(n)`` on each of alpha, beta, gamma, sigma, tau,
    iterated in that nesting order. Filters:

    ``joint``        0 <= tau <= 1-alpha and K > sqrt(2 pi)/(1-alpha)
    ``either``       the same two conditions joined by "or"
    ``contraction``  K <= sqrt(2 pi)/(1-alpha)
    ``all``          every non-degenerate tuple

    Returns ``(fraction_three_fp, cases)`` with cases in grid order.
    """
    if filter not in FILTERS:
        raise ValueError(f"unknown filter {filter!r}; choose from {FILTERS}")
    axis = survey_grid(grid_points_per_axis).tolist()
    selected = []
    for a, b, g, s, t in itertools.product(axis, repeat=5):
        if a * b * g * g + (1 - a) * (1 - b) * s * s <= 0.0:
            continue
        k = math.sqrt(b * b * g * g + (1 - b) ** 2 * s * s) / (a * b * g * g + (1 - a) * (1 - b) * s * s)
        if _passes(filter, a, k, t):
            selected.append((a, b, g, s, t))
    if not selected:
        raise ValueError("the filter selects no grid tuples")

    workers = default_workers() if workers is None else max(1, workers)
    size = max(1, -(-len(selected) // (4 * workers)))
    chunks = [(selected[i:i + size],) for i in range(0, len(selected), size)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_survey_chunk, chunks))
    else:
        parts = [_survey_chunk(c) for c in chunks]
    cases = [c for part in parts for c in part]
    three = sum(1 for c in cases if c.n_fixed_points == 3)
    return three / len(cases), cases
