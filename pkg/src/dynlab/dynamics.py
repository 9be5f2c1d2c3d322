"""Forward iteration of one-dimensional maps, with cobweb data and cycle detection."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

DEFAULT_TOL = 1e-10
DEFAULT_MAX_STEPS = 10**6
CYCLE_WINDOW = 16

CONVERGED = "converged"
CYCLE = "cycle"
MAX_ITER = "max-iterations"


@dataclass(frozen=True)
class Trajectory:
    """States ``x_0, x_1, ...`` of an iterated map and how the run ended.

    ``limit`` is set when ``terminal == "converged"``; ``period`` and
    ``support`` when ``terminal == "cycle"``.
    """

    states: tuple
    terminal: str
    limit: Optional[float] = None
    period: Optional[int] = None
    support: tuple = ()

    @property
    def steps(self) -> int:
        return len(self.states) - 1

    @property
    def final(self) -> float:
        return self.states[-1]

    def to_json(self) -> dict:
        return {"terminal": self.terminal, "steps": self.steps, "limit": self.limit,
                "period": self.period, "support": list(self.support),
                "final": self.final}


def iterate(f: Callable[[float], float], x0: float, max_steps: int = DEFAULT_MAX_STEPS,
            tol: float = DEFAULT_TOL, cycle_window: int = CYCLE_WINDOW) -> Trajectory:
    """Iterate ``x_{t+1} = f(x_t)`` from ``x0``.

    Stops as soon as the next state is within ``tol`` of the current one
    (converged; the next state is reported as the limit and not appended),
    or within ``tol`` of the state ``k`` steps back for some ``2 <= k <=
    cycle_window`` (a period-``k`` cycle), or after ``max_steps`` steps.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    states = [float(x0)]
    x = float(x0)
    for _ in range(max_steps):
        nxt = float(f(x))
        if abs(nxt - x) <= tol:
            return Trajectory(tuple(states), CONVERGED, limit=nxt)
        n = len(states)
        for k in range(2, min(cycle_window, n) + 1):
            if abs(nxt - states[n - k]) <= tol:
                return Trajectory(tuple(states), CYCLE, period=k,
                                  support=tuple(states[n - k:]))
        states.append(nxt)
        x = nxt
    return Trajectory(tuple(states), MAX_ITER)


def cobweb_points(trajectory) -> list:
    """Staircase segments ``(x0, y0, x1, y1)`` between ``y = f(x)`` and ``y = x``.

    Accepts a :class:`Trajectory` or a plain sequence of states. Each step
    ``x_t -> x_{t+1}`` contributes a vertical segment to the curve followed by
    a horizontal segment back to the diagonal.
    """
    states = trajectory.states if isinstance(trajectory, Trajectory) else tuple(trajectory)
    if not states:
        raise ValueError("trajectory is empty")
    segs = []
    for a, b in zip(states[:-1], states[1:]):
        segs.append((a, a, a, b))
        segs.append((a, b, b, b))
    return segs


def fmt(x: float) -> str:
    return format(x, ".17g")


def write_trajectory_csv(trajectory: Trajectory, stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["step", "x"])
    for i, x in enumerate(trajectory.states):
        w.writerow([i, fmt(x)])


def write_cobweb_csv(segments: Iterable[Sequence[float]], stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["segment_index", "x0", "y0", "x1", "y1"])
    for i, seg in enumerate(segments):
        w.writerow([i, *(fmt(v) for v in seg)])
