"""Command-line front end.

Every command reads a flat JSON config (``--config``) and/or flags; flags win.
Exit codes: 0 success, 2 invalid configuration, 3 numeric failure. Errors are
reported as one JSON object on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from . import alt_models, discrete, dynamics, fixed_points, interventions, model
from .errors import NumericError

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3

GAUSS_KEYS = ("alpha", "beta", "gamma", "sigma", "tau")

KEY_TYPES = {
    "model": str,
    "alpha": float, "beta": float, "gamma": float, "sigma": float, "tau": float,
    "x0": float, "max_steps": int, "tol": float,
    "p": float, "beta_thr": float, "alpha_mix": float, "A": json.loads, "case": int,
    "lambda0": float,
    "mu": float, "n": int,
    "x_m": float, "shape": float,
    "tau_prime": float, "beta_prime": float,
    "cost": float, "lam": float, "rho": float, "mu0": float, "candidate_cost": float,
    "wealth_grid": int, "cost_grid": int, "max_horizon": int, "steps": int,
    "grid": int, "filter": str, "workers": int,
    "cobweb": str,
}

COMMAND_KEYS = {
    "analyze": ("model", *GAUSS_KEYS, "p", "beta_thr", "alpha_mix", "sigma", "mu", "x_m", "shape"),
    "simulate": ("model", *GAUSS_KEYS, "x0", "max_steps", "tol", "cobweb",
                 "p", "beta_thr", "alpha_mix", "A", "case", "lambda0"),
    "intervene": (*GAUSS_KEYS, "tau_prime", "beta_prime", "cost", "lam", "rho", "mu0",
                  "candidate_cost", "wealth_grid", "cost_grid", "max_horizon", "max_steps",
                  "x0", "steps"),
    "sweep": ("grid", "filter", "workers"),
    "oracle": (*GAUSS_KEYS, "mu", "n"),
    "discrete": ("p", "beta_thr", "alpha_mix", "A", "case", "lambda0", "max_steps", "tol"),
}

DEFAULTS = {
    "model": "gaussian", "max_steps": dynamics.DEFAULT_MAX_STEPS, "tol": dynamics.DEFAULT_TOL,
    "alpha_mix": 1.0, "A": discrete.CANONICAL_A, "n": 10**6,
    "wealth_grid": 201, "cost_grid": 201, "steps": 50,
    "grid": 10, "filter": "joint",
}


class ConfigError(ValueError):
    pass


def _flag(key: str) -> str:
    return "--" + key.replace("_", "-")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dynlab", description="Wealth-dynamics laboratory.")
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd, keys in COMMAND_KEYS.items():
        sp = sub.add_parser(cmd)
        if cmd == "intervene":
            sp.add_argument("kind", choices=("tau", "beta", "subsidy", "one-shot", "dp", "equivalence"))
        sp.add_argument("--config", help="flat JSON parameter file")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default=None)
        for key in dict.fromkeys(keys):
            sp.add_argument(_flag(key), dest=key, type=str, default=None)
    return parser


def load_config(command: str, args: argparse.Namespace) -> dict:
    allowed = set(COMMAND_KEYS[command])
    cfg = {}
    if args.config:
        try:
            with open(args.config) as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        unknown = sorted(set(raw) - allowed)
        if unknown:
            raise ConfigError(f"unknown config keys for {command}: {unknown}")
        cfg.update(raw)
    for key in allowed:
        v = getattr(args, key, None)
        if v is not None:
            cfg[key] = v
    out = {}
    for key, v in cfg.items():
        conv = KEY_TYPES[key]
        try:
            if conv is json.loads:
                out[key] = json.loads(v) if isinstance(v, str) else v
            elif conv is int and isinstance(v, float):
                if not v.is_integer():
                    raise ValueError(v)
                out[key] = int(v)
            else:
                out[key] = conv(v)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid value for {key}: {v!r}") from exc
    return out


def _get(cfg: dict, key: str):
    if key in cfg:
        return cfg[key]
    if key in DEFAULTS:
        return DEFAULTS[key]
    raise ConfigError(f"missing required parameter {key!r}")


def _gauss(cfg) -> model.GaussianParams:
    return model.GaussianParams(*(_get(cfg, k) for k in GAUSS_KEYS))


def _finite(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    return obj


def dump_json(obj) -> str:
    return json.dumps(_finite(obj), indent=2, sort_keys=True) + "\n"


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else dynamics.fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Commands; each returns the text to emit.


def cmd_analyze(cfg, fmt):
    kind = _get(cfg, "model")
    if kind == "gaussian":
        params = _gauss(cfg)
        fmap = model.GaussianUpdateMap(params)
        report = fixed_points.find_fixed_points(fmap)
        if fmt == "csv":
            return csv_text(["z", "derivative", "stability"],
                            [(p.z, p.derivative, p.stability) for p in report.points])
        d = report.to_json()
        d.update(K=fmap.K, params=params.as_dict(), inflection_point=model.inflection_point(params))
        return dump_json(d)
    if kind == "bern-gauss":
        bp = alt_models.BernGaussParams(_get(cfg, "p"), _get(cfg, "beta_thr"), _get(cfg, "sigma"),
                                        _get(cfg, "alpha_mix"))
        mu = _get(cfg, "mu")
        rep = alt_models.bg_cutoff_report(bp, mu)
        return dump_json({"k": alt_models.bg_threshold_k(bp), "s_star": rep.s_star,
                          "cutoff_unique": rep.unique, "update": alt_models.bg_update(bp, mu)})
    if kind == "pareto":
        pp = alt_models.ParetoParams(_get(cfg, "x_m"), _get(cfg, "shape"), _get(cfg, "p"),
                                     _get(cfg, "beta_thr"))
        acc = alt_models.pareto_acceptance(pp)
        return dump_json({"ratio": acc.ratio, "accept_all": acc.accept_all, "lo": acc.lo,
                          "hi": acc.hi, "empty": acc.empty})
    raise ConfigError(f"analyze does not support model {kind!r}")


def _emit_trajectory(traj, cfg, fmt):
    cob = cfg.get("cobweb")
    if cob:
        with open(cob, "w", newline="") as fh:
            dynamics.write_cobweb_csv(dynamics.cobweb_points(traj), fh)
    if fmt == "json":
        d = traj.to_json()
        d["states"] = list(traj.states)
        return dump_json(d)
    buf = io.StringIO()
    dynamics.write_trajectory_csv(traj, buf)
    print(json.dumps(_finite(traj.to_json()), sort_keys=True), file=sys.stderr)
    return buf.getvalue()


def cmd_simulate(cfg, fmt):
    kind = _get(cfg, "model")
    if kind == "gaussian":
        fmap = model.GaussianUpdateMap(_gauss(cfg))
        traj = dynamics.iterate(fmap, _get(cfg, "x0"), _get(cfg, "max_steps"), _get(cfg, "tol"))
    elif kind == "discrete":
        traj = _discrete_traj(cfg)
    else:
        raise ConfigError(f"simulate does not support model {kind!r}")
    return _emit_trajectory(traj, cfg, fmt or "csv")


def _discrete_params(cfg):
    return discrete.DiscreteParams(_get(cfg, "p"), _get(cfg, "beta_thr"), _get(cfg, "alpha_mix"),
                                   tuple(map(tuple, _get(cfg, "A"))))


def _discrete_traj(cfg):
    return discrete.discrete_simulate(_discrete_params(cfg), _get(cfg, "lambda0"), _get(cfg, "case"),
                                      _get(cfg, "max_steps"), _get(cfg, "tol"))


def cmd_discrete(cfg, fmt):
    params, case = _discrete_params(cfg), _get(cfg, "case")
    traj = _discrete_traj(cfg)
    if (fmt or "json") == "csv":
        return _emit_trajectory(traj, cfg, "csv")
    d = traj.to_json()
    d["states"] = list(traj.states)
    if case in (1, 2):
        d["lambda_star"] = discrete.lambda_star(params.p, params.beta_thr, case)
    return dump_json(d)


def cmd_intervene(kind, cfg, fmt):
    params = _gauss(cfg)
    if kind == "tau":
        res = interventions.compare_threshold(params, _get(cfg, "tau_prime"))
    elif kind == "beta":
        res = interventions.compare_beta(params, _get(cfg, "beta_prime"))
    if kind in ("tau", "beta"):
        if fmt == "csv":
            return csv_text(["tau_or_beta", "z1", "z2", "z3"], res.rows())
        return dump_json(res.to_json())

    fmap = interventions.GenericUpdateMap.from_params(params)
    if kind == "subsidy":
        plan = interventions.simulate_subsidy(fmap, _get(cfg, "cost"), _get(cfg, "lam"), _get(cfg, "rho"),
                                              _get(cfg, "mu0"), cfg.get("max_steps", 10**5))
        return dump_json(plan.to_json(include_states=True))
    if kind == "one-shot":
        verdict = interventions.check_one_shot_optimality(
            fmap, _get(cfg, "lam"), _get(cfg, "rho"), _get(cfg, "mu0"), cfg.get("candidate_cost"),
            max_steps=cfg.get("max_steps", 10**5))
        return dump_json(verdict.to_json())
    if kind == "dp":
        res = interventions.dp_optimal_subsidy(fmap, _get(cfg, "lam"), _get(cfg, "rho"), _get(cfg, "mu0"),
                                               _get(cfg, "wealth_grid"), _get(cfg, "cost_grid"),
                                               cfg.get("max_horizon"))
        return dump_json(res.to_json())
    res = interventions.subsidy_form_equivalence(fmap, _get(cfg, "cost"), _get(cfg, "x0"), _get(cfg, "steps"))
    return dump_json({"held": res.held, "max_error": res.max_error,
                      "horizon_pre": res.horizon_pre, "horizon_post": res.horizon_post})


def _workers(cfg) -> int:
    w = cfg.get("workers")
    cap = os.environ.get("DYNLAB_THREADS")
    if w is None:
        return fixed_points.default_workers()
    if cap:
        try:
            w = min(w, max(1, int(cap)))
        except ValueError:
            pass
    return max(1, w)


def cmd_sweep(cfg, fmt):
    frac, cases = fixed_points.grid_multiplicity_survey(_get(cfg, "grid"), _get(cfg, "filter"), _workers(cfg))
    print(json.dumps({"fraction_three_fp": frac, "n_cases": len(cases),
                      "n_three_fp": sum(c.n_fixed_points == 3 for c in cases)}), file=sys.stderr)
    cols = ["alpha", "beta", "gamma", "sigma", "tau", "n_fixed_points", "K", "contraction"]
    if fmt == "json":
        return dump_json({"fraction_three_fp": frac,
                          "cases": [{c: getattr(x, c) for c in cols} for x in cases]})
    return csv_text(cols, [(c.alpha, c.beta, c.gamma, c.sigma, c.tau, c.n_fixed_points, c.K,
                            str(c.contraction).lower()) for c in cases])


def cmd_oracle(cfg, fmt, seed):
    params, mu, n = _gauss(cfg), _get(cfg, "mu"), _get(cfg, "n")
    closed = float(model.update_f(params, mu))
    frac, se = model.monte_carlo_admit_fraction(params, mu, n, seed)
    return dump_json({"closed_form": closed, "simulated": frac, "std_error": se, "n": n, "seed": seed,
                      "abs_diff": abs(closed - frac), "within_3se": abs(closed - frac) <= 3.0 * se})


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.command, args)
        fmt = args.format
        if args.command == "analyze":
            text = cmd_analyze(cfg, fmt or "json")
        elif args.command == "simulate":
            text = cmd_simulate(cfg, fmt)
        elif args.command == "intervene":
            text = cmd_intervene(args.kind, cfg, fmt or "json")
        elif args.command == "sweep":
            text = cmd_sweep(cfg, fmt or "csv")
        elif args.command == "oracle":
            text = cmd_oracle(cfg, fmt, args.seed)
        else:
            text = cmd_discrete(cfg, fmt)
    except NumericError as exc:
        print(json.dumps({"error": "numeric", "message": str(exc)}), file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, TypeError, OSError) as exc:
        print(json.dumps({"error": "config", "type": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return EXIT_CONFIG
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
