"""Command-line front end: seeded experiments, theory tables, CSV/JSON/SVG export.

Every run prints its fully resolved configuration (including the defaulted
seed) as JSON on stderr; feeding that JSON back through ``--config``
reproduces the outputs byte for byte.  Flags override config-file values; a
missing seed falls back to the ``IPR_RMT_SEED`` environment variable and then
to OS entropy.

Exit codes: 0 success, 1 usage error, 2 runtime or data error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import ensembles, experiments, output, theory
from .core import double_factorial_odd, factorial

__all__ = ["main"]

_REQUIRED = object()

_ENSEMBLE_ALIASES = {
    "elliptic": "elliptic_real",
    "ginibre-real": "ginibre_real",
    "ginibre-complex": "ginibre_complex",
    "induced": "induced_ginibre",
    "orthogonal-sum": "orthogonal_sum",
    "permutation-sum": "permutation_sum",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ensemble_kind(name):
    kind = _ENSEMBLE_ALIASES.get(name, name)
    if kind not in ensembles.KINDS:
        raise ValueError(f"unknown ensemble {name!r}")
    return kind


def _q_list(value):
    parts = value if isinstance(value, (list, tuple)) else str(value).split(",")
    return tuple(sorted(int(p) for p in parts))


def _int_list(value):
    parts = value if isinstance(value, (list, tuple)) else str(value).split(",")
    return [int(p) for p in parts]


def _grid(value):
    lo, hi, n = value if isinstance(value, (list, tuple)) else str(value).split(":")
    return float(lo), float(hi), int(n)


def _pair(value):
    a, b = value if isinstance(value, (list, tuple)) else str(value).split(",")
    return float(a), float(b)


# name -> (converter, default); _REQUIRED marks parameters with no default.
_COMMON_RUN = {
    "ensemble": (str, _REQUIRED),
    "N": (int, _REQUIRED),
    "tau": (float, 0.0),
    "nu": (int, 0),
    "d": (int, 1),
    "perm_mode": (str, "uniform"),
    "theta": (float, 1.0),
    "normalization": (str, "none"),
    "trials": (int, 10),
    "seed": (int, None),
    "workers": (int, None),
    "out": (str, "-"),
}

_COMMANDS = {
    "sample-spectrum": dict(_COMMON_RUN, q=(_q_list, (2,))),
    "figure": dict(_COMMON_RUN, q=(int, 2)),
    "theory-density": {
        "q": (int, 2),
        "y": (float, _REQUIRED),
        "tau": (float, 0.0),
        "grid": (_grid, None),
        "out": (str, "-"),
    },
    "theory-cdf": {
        "q": (int, 2),
        "y": (float, _REQUIRED),
        "tau": (float, 0.0),
        "grid": (_grid, None),
        "out": (str, "-"),
    },
    "theory-sample": {
        "q": (int, 2),
        "y": (float, _REQUIRED),
        "tau": (float, 0.0),
        "n": (int, 10000),
        "seed": (int, None),
        "out": (str, "-"),
    },
    "theory-mean": {
        "q": (int, 2),
        "y": (float, _REQUIRED),
        "tau": (float, 0.0),
        "N": (int, None),
        "out": (str, "-"),
    },
    "compare": {
        "ensemble": (str, "elliptic"),
        "N": (int, _REQUIRED),
        "tau": (float, 0.0),
        "trials": (int, _REQUIRED),
        "q": (int, 2),
        "y": (float, 0.5),
        "relwidth": (float, 0.1),
        "xwindow": (float, 0.5),
        "threshold": (float, 0.06),
        "seed": (int, None),
        "workers": (int, None),
        "out": (str, "-"),
    },
    "convergence": {
        "q": (int, 2),
        "y": (float, 0.5),
        "tau": (float, 0.0),
        "N_list": (_int_list, [256, 1024, 4096]),
        "trials": (int, 1000),
        "st": (_pair, None),
        "seed": (int, None),
        "out": (str, "-"),
    },
}


def _build_parser():
    parser = _Parser(prog="eigipr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, params in _COMMANDS.items():
        p = sub.add_parser(name)
        p.add_argument("--config", default=None, help="JSON file with parameter values")
        for key in params:
            flag = "--" + key.replace("_", "-")
            p.add_argument(flag, dest=key, default=None, type=str)
    return parser


def _resolve(command, args):
    """Merge defaults, config file and explicit flags; convert types."""
    schema = _COMMANDS[command]
    merged = {}
    if args.config is not None:
        try:
            with open(args.config, encoding="utf-8") as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config file {args.config}: {exc}")
        if "command" in cfg:
            if cfg["command"] != command:
                raise UsageError(
                    f"config file is for {cfg['command']!r}, not {command!r}"
                )
            cfg = cfg.get("params", {})
        unknown = set(cfg) - set(schema)
        if unknown:
            raise UsageError(f"unknown config keys for {command}: {sorted(unknown)}")
        merged.update(cfg)
    for key in schema:
        flag_val = getattr(args, key)
        if flag_val is not None:
            merged[key] = flag_val
    params = {}
    for key, (conv, default) in schema.items():
        if key in merged:
            try:
                params[key] = conv(merged[key])
            except (TypeError, ValueError) as exc:
                raise UsageError(f"bad value for --{key.replace('_', '-')}: {exc}")
        elif default is _REQUIRED:
            raise UsageError(f"--{key.replace('_', '-')} is required")
        else:
            params[key] = default
    if "seed" in schema and params.get("seed") is None:
        env = os.environ.get("IPR_RMT_SEED")
        params["seed"] = int(env) if env else int.from_bytes(os.urandom(8), "little")
    if "workers" in schema and params.get("workers") is None:
        params["workers"] = os.cpu_count() or 1
    return params


def _echo(command, params):
    line = json.dumps({"command": command, "params": params}, sort_keys=True, default=list)
    print(line, file=sys.stderr)


def _make_run_config(p, q_set):
    spec = ensembles.EnsembleSpec(
        kind=_ensemble_kind(p["ensemble"]),
        N=p["N"],
        tau=p["tau"],
        nu=p.get("nu", 0),
        d=p.get("d", 1),
        perm_mode=p.get("perm_mode", "uniform"),
        theta=p.get("theta", 1.0),
        normalization=p.get("normalization", "none"),
    )
    return experiments.RunConfig(
        spec=spec,
        trials=p["trials"],
        q_set=q_set,
        seed=p["seed"],
        y_center=p.get("y", 0.5),
        rel_width=p.get("relwidth", 0.1),
        x_window=p.get("xwindow", 0.5),
        workers=p["workers"],
    )


def _default_grid(q, n=500):
    lo, hi = factorial(q), double_factorial_odd(q)
    return np.linspace(lo, hi, n + 2)[1:-1]


def _grid_points(p):
    if p["grid"] is None:
        return _default_grid(p["q"])
    lo, hi, n = p["grid"]
    return np.linspace(lo, hi, n)


def _emit_json(payload, out):
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _run_sample_spectrum(p):
    config = _make_run_config(p, p["q"])
    records = experiments.spectrum_ipr_map(config)
    output.write_records_csv(records, p["out"], q_set=p["q"])
    return 0


def _run_figure(p):
    config = _make_run_config(p, (p["q"],))
    records = experiments.spectrum_ipr_map(config)
    if config.spec.normalization != "none":
        lams = np.array([complex(r.re_lambda, r.im_lambda) for r in records])
        lams = ensembles.normalize_spectrum(
            lams, config.spec.normalization, kind=config.spec.kind, d=config.spec.d
        )
        for rec, lam in zip(records, lams):
            rec.re_lambda = lam.real
            rec.im_lambda = lam.imag
    output.write_svg_scatter(records, p["q"], p["out"])
    return 0


def _run_theory_density(p):
    xs = _grid_points(p)
    output.write_density_csv(xs, theory.density_ell(p["q"], xs, p["y"], p["tau"]), p["out"])
    return 0


def _run_theory_cdf(p):
    xs = _grid_points(p)
    output.write_density_csv(
        xs, theory.cdf_ell(p["q"], xs, p["y"], p["tau"]), p["out"], value_name="cdf"
    )
    return 0


def _run_theory_sample(p):
    rng = np.random.default_rng(p["seed"])
    xs = theory.sample_ell(p["q"], p["y"], p["tau"], rng, size=p["n"])
    output.write_column_csv(xs, p["out"])
    return 0


def _run_theory_mean(p):
    result = {
        "q": p["q"],
        "y": p["y"],
        "tau": p["tau"],
        "mean_limit": theory.mean_ipr_depletion_finite_N(math.inf, p["q"], p["y"], p["tau"]),
        "bulk_limit": float(factorial(p["q"])),
        "real_axis_limit": float(double_factorial_odd(p["q"])),
    }
    if p["N"] is not None:
        result["N"] = p["N"]
        result["mean_finite_N"] = theory.mean_ipr_depletion_finite_N(
            p["N"], p["q"], p["y"], p["tau"]
        )
    _emit_json(result, p["out"])
    return 0


def _run_compare(p):
    config = _make_run_config(dict(p, trials=p["trials"]), (p["q"],))
    records = experiments.spectrum_ipr_map(config)
    dist = experiments.conditional_ipr(
        records, p["q"], p["y"], p["relwidth"], p["xwindow"], config.spec.N
    )
    ks = experiments.ks_distance(
        dist, lambda xs: theory.cdf_ell(p["q"], xs, p["y"], p["tau"])
    )
    _emit_json(
        {
            "ensemble": config.spec.kind,
            "N": config.spec.N,
            "tau": p["tau"],
            "q": p["q"],
            "y_center": p["y"],
            "rel_width": p["relwidth"],
            "x_window": p["xwindow"],
            "trials": p["trials"],
            "seed": p["seed"],
            "n_samples": dist.count,
            "ks_distance": ks,
            "threshold": p["threshold"],
            "pass": ks < p["threshold"],
            "summary": dist.summary(),
        },
        p["out"],
    )
    return 0


def _run_convergence(p):
    rng = np.random.default_rng(p["seed"])
    rows = experiments.convergence_study(
        p["q"], p["y"], p["tau"], p["N_list"], p["trials"], rng, st=p["st"]
    )
    output.write_table_csv(["N", "mean", "std", "stderr", "theory_mean"], rows, p["out"])
    return 0


_RUNNERS = {
    "sample-spectrum": _run_sample_spectrum,
    "figure": _run_figure,
    "theory-density": _run_theory_density,
    "theory-cdf": _run_theory_cdf,
    "theory-sample": _run_theory_sample,
    "theory-mean": _run_theory_mean,
    "compare": _run_compare,
    "convergence": _run_convergence,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        params = _resolve(args.command, args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    _echo(args.command, params)
    try:
        return _RUNNERS[args.command](params)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
