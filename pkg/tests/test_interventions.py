import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dynlab import interventions as iv
from dynlab.errors import ShapeViolationError
from dynlab.model import GaussianUpdateMap, update_f

# mpmath maximum of x - f(x) on [z1, z2] for the three-point figure map
DELTA_FIG3 = 0.19953438263516075632
ARGMAX_FIG3 = 0.32024363844314421226


@pytest.fixture(scope="module")
def fmap():
    from conftest import FIG3
    return iv.GenericUpdateMap.from_params(FIG3)


def linear_segment(delta=0.05):
    xs = [0.0, 0.1, 0.16, 0.5, 0.6, 0.75, 0.9, 1.0]
    ys = [0.05, 0.1, 0.16 - delta, 0.5 - delta, 0.6, 0.85, 0.9, 0.95]
    return iv.GenericUpdateMap(lambda x: np.interp(x, xs, ys), "linear segment")


def test_generic_map_requires_three_points(fig1):
    with pytest.raises(ShapeViolationError):
        iv.GenericUpdateMap.from_params(fig1)


def test_compare_threshold(fig3):
    same = iv.compare_threshold(fig3, fig3.tau)
    assert same.differences == (0.0, 0.0, 0.0) and same.holds
    r = iv.compare_threshold(fig3, 0.48)
    assert r.comparable and r.holds
    d1, d2, d3 = r.differences
    assert d1 > 0 and d2 < 0 and d3 > 0
    with pytest.raises(ValueError):
        iv.compare_threshold(fig3, 0.6)


def test_lower_threshold_raises_map(fig3):
    xs = np.linspace(0, 1, 101)
    assert np.all(update_f(fig3.with_(tau=0.48), xs) > update_f(fig3, xs))
    assert np.all(iv.partial_f_tau(fig3, xs) < 0)


def test_not_comparable(fig1, fig3):
    r = iv.compare_threshold(fig1, 0.1)
    assert not r.comparable and r.holds is None and r.differences is None
    assert r.rows()[0][2] is None


def test_compare_beta(fig3):
    r = iv.compare_beta(fig3, 0.9)
    assert r.comparable and r.holds
    assert r.differences[0] > 0 and r.differences[2] < 0
    assert iv.compare_beta(fig3, fig3.beta).differences == (0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        iv.compare_beta(fig3, 0.05)


@pytest.mark.parametrize("x", [0.2, 0.5, 0.6, 0.9])
def test_partial_beta_matches_finite_difference(fig3, x):
    h = 1e-6
    fd = (update_f(fig3.with_(beta=fig3.beta + h), x) - update_f(fig3.with_(beta=fig3.beta - h), x)) / (2 * h)
    exact = iv.partial_f_beta(fig3, x)
    assert exact == pytest.approx(fd, rel=1e-5, abs=1e-10)
    u = fig3.tau - (1 - fig3.alpha) * x
    assert np.sign(exact) == np.sign((fig3.alpha - fig3.beta) * u)


def test_delta_gaussian(fmap):
    rep = iv.compute_delta(fmap)
    assert rep.delta == pytest.approx(DELTA_FIG3, abs=1e-12)
    assert rep.argmax_x == pytest.approx(ARGMAX_FIG3, abs=1e-6)
    xs = np.linspace(fmap.z1, fmap.z2, 10**6)
    assert rep.delta >= np.max(xs - fmap(xs)) - 1e-15
    assert rep.delta < fmap.z2 - fmap.z1


def test_delta_linear_segment():
    m = linear_segment(0.05)
    rep = iv.compute_delta(m)
    assert rep.delta == pytest.approx(0.05, abs=1e-12)
    assert m.z1 < rep.argmax_x < m.z2


def test_one_shot_plan(fmap):
    mu0 = fmap.z1 + 0.05
    plan = iv.simulate_subsidy(fmap, fmap.z2 - mu0, 0.4, 0.7, mu0)
    assert plan.horizon_T == 1 and plan.reached
    assert plan.loss == pytest.approx(0.4 * (fmap.z2 - mu0), rel=1e-15)


def test_subsidy_domain(fmap):
    with pytest.raises(ValueError):
        iv.simulate_subsidy(fmap, 0.1, 0.5, 0.5, fmap.z2 + 0.01)
    with pytest.raises(ValueError):
        iv.simulate_subsidy(fmap, 0.1, 1.0, 0.5, fmap.z1)


def test_reachability_and_bound(fmap):
    d = iv.compute_delta(fmap)
    stuck = iv.simulate_subsidy(fmap, d.delta, 0.5, 0.5, fmap.z1, max_steps=2000)
    assert not stuck.reached and stuck.horizon_T is None
    for c in (d.delta + 0.01, d.delta + 0.1):
        for mu0 in np.linspace(fmap.z1, fmap.z2, 7)[:-1]:
            plan = iv.simulate_subsidy(fmap, c, 0.5, 0.5, float(mu0))
            assert plan.horizon_T <= iv.horizon_bound(fmap.z2, mu0, c, d.delta)


def test_loss_decomposition_by_hand(fmap):
    mu0, c, lam, rho = fmap.z1, 0.3, 0.6, 0.8
    plan = iv.simulate_subsidy(fmap, c, lam, rho, mu0)
    s = plan.states
    T = plan.horizon_T
    cost = sum(lam * rho**t * c for t in range(T))
    dist = sum((1 - lam) * rho**t * (fmap.z2 - s[t]) for t in range(1, T))
    assert plan.loss_cost_part == pytest.approx(cost, rel=1e-14)
    assert plan.loss_distance_part == pytest.approx(dist, rel=1e-14)
    assert plan.loss == plan.loss_cost_part + plan.loss_distance_part


def test_one_shot_verdicts(fmap):
    mu0 = fmap.z1 + 0.01
    v = iv.check_one_shot_optimality(fmap, 0.5, 0.9, mu0)
    assert v.rho_ge_lambda and v.one_shot_optimal_on_grid and v.consistent
    assert len(v.grid_costs) == 64
    d = iv.compute_delta(fmap).delta
    v = iv.check_one_shot_optimality(fmap, 0.9, 0.01, mu0, candidate_cost=d + 1e-4)
    assert v.necessary_condition and v.candidate_beats_one_shot


def test_linear_segment_limit():
    m = linear_segment(0.05)
    lam, rho, mu0 = 0.9, 0.5, 0.16
    limit = lam * 0.05 / (1 - rho) + rho * (1 - lam) * (m.z2 - mu0) / (1 - rho)
    gaps = [abs(iv.simulate_subsidy(m, 0.05 + eps, lam, rho, mu0).loss - limit) for eps in (1e-2, 1e-3, 1e-4)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] <= 0.01 * limit


def test_dp_trivial_start(fmap):
    res = iv.dp_optimal_subsidy(fmap, 0.5, 0.5, fmap.z2)
    assert res.schedule == () and res.loss == 0.0


def test_dp_one_shot_when_rho_ge_lambda(fmap):
    mu0 = fmap.z1 + 0.02
    res = iv.dp_optimal_subsidy(fmap, 0.3, 0.8, mu0, 201, 401)
    assert len(res.schedule) == 1
    assert res.schedule[0] >= fmap.z2 - mu0
    assert res.true_loss <= res.loss
    assert res.loss - 0.3 * (fmap.z2 - mu0) <= 0.3 * (res.wealth_points and (fmap.z2 - fmap.z1) / 200 + 0.01)


def test_dp_beats_constant_plans_on_grid(fmap):
    mu0, lam, rho = fmap.z1, 0.95, 0.05
    grid = iv.build_dp_grid(fmap, lam, 41, 41)
    res = iv.dp_optimal_subsidy(fmap, lam, rho, mu0, grid=grid)
    for j, c in enumerate(grid.costs):
        # constant-c plan run on the same snapped grid
        i = int(grid.snap(float(fmap(mu0 + c))))
        loss, disc = lam * c, rho
        for _ in range(10**4):
            if grid.terminal[i]:
                break
            loss += disc * (grid.stage[i] + lam * c)
            disc *= rho
            i = int(grid.next_index[i, j])
        else:
            continue
        assert res.loss <= loss + 1e-12


def test_dp_small_grid_matches_enumeration(fmap):
    lam, rho, mu0 = 0.7, 0.4, fmap.z1 + 0.05
    grid = iv.build_dp_grid(fmap, lam, 5, 5)
    res = iv.dp_optimal_subsidy(fmap, lam, rho, mu0, max_horizon=5, grid=grid)
    first = grid.snap(np.asarray(fmap(mu0 + grid.costs)))
    best = math.inf
    for n in range(1, 6):
        for seq in itertools.product(range(5), repeat=n):
            states = [int(first[seq[0]])]
            for j in seq[1:]:
                states.append(int(grid.next_index[states[-1], j]))
            hits = [k for k, s in enumerate(states) if grid.terminal[s]]
            if not hits or hits[0] != n - 1:
                continue
            v = 0.0
            for t in range(n - 1, 0, -1):
                v = (1.0 - lam) * (grid.z2 - grid.wealth[states[t - 1]]) + (lam * grid.costs[seq[t]] + rho * v)
            best = min(best, lam * grid.costs[seq[0]] + rho * v)
    assert res.loss == best


def test_equivalence(fmap):
    res = iv.subsidy_form_equivalence(fmap, 0.0, 0.4, 20)
    assert res.held and res.max_error == 0.0
    res = iv.subsidy_form_equivalence(fmap, 0.1, 0.5, 50)
    assert res.held and res.max_error <= 1e-12
    assert 0 <= res.horizon_pre - res.horizon_post <= 1


def test_affine_threshold_schedule(fig3):
    sched = iv.threshold_schedule_affine(fig3, 0.0, 0.5)
    for x in (0.0, 0.3, 0.9):
        assert sched(x) == pytest.approx((1 - fig3.alpha) * x, abs=1e-15)
    x0 = 0.37
    b = float(update_f(fig3, x0))
    assert iv.threshold_schedule_affine(fig3, 0.0, b)(x0) == pytest.approx(fig3.tau, abs=1e-10)
    a, b = 0.6, 0.2
    sched = iv.threshold_schedule_affine(fig3, a, b)
    for x in np.linspace(0, 1, 20):
        assert iv.induced_update(fig3, sched, float(x)) == pytest.approx(a * x + b, abs=1e-10)
    with pytest.raises(ValueError):
        iv.threshold_schedule_affine(fig3, 1.0, 0.5)(0.9)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.0, 0.4), st.floats(0.0, 0.99), st.floats(0.0, 0.99), st.floats(0.0, 0.999))
def test_loss_decomposition_property(c, lam, rho, frac):
    from conftest import FIG3
    m = _cached_map(FIG3)
    mu0 = m.z1 + frac * (m.z2 - m.z1)
    plan = iv.simulate_subsidy(m, c, lam, rho, mu0, max_steps=500)
    assert plan.loss == plan.loss_cost_part + plan.loss_distance_part
    assert plan.loss >= 0.0


@settings(max_examples=40, deadline=None)
@given(st.floats(0.001, 0.5), st.floats(0.0, 0.999))
def test_horizon_bound_property(excess, frac):
    from conftest import FIG3
    m = _cached_map(FIG3)
    d = iv.compute_delta(m).delta
    mu0 = m.z1 + frac * (m.z2 - m.z1)
    plan = iv.simulate_subsidy(m, d + excess, 0.5, 0.5, mu0)
    assert plan.reached and plan.horizon_T <= iv.horizon_bound(m.z2, mu0, d + excess, d)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.0, 0.95), st.floats(0.0, 1.0))
def test_one_shot_dominance_property(lam, slack):
    from conftest import FIG3
    m = _cached_map(FIG3)
    rho = lam + slack * (0.999 - lam)
    v = iv.check_one_shot_optimality(m, lam, rho, m.z1 + 0.1, n_grid=16)
    assert v.one_shot_optimal_on_grid


_maps = {}


def _cached_map(params):
    if params not in _maps:
        _maps[params] = iv.GenericUpdateMap.from_params(params)
    return _maps[params]
