"""Config-driven experiment runner.

Usage::

    entperc validate --config exp.ini
    entperc run --config exp.ini --out results/ [--seed 7] [--threads 1]

A config is an INI file with one experiment. Lists are comma separated;
``a:b:n`` expands to ``n`` evenly spaced values from ``a`` to ``b``::

    [experiment]
    kind = compare          ; generate, percolate, qswap_scan, limited_scan,
                            ; fidelity_scan, analytic_table or compare
    seed = 42

    [generator]
    kind = er               ; config, er, random_regular, ws, honeycomb, edge_list
    N = 100000
    z = 2.5

    [strategy]
    q = 2, 3
    pi = 1, 1

    [sweep]
    phi = 0.05:1:20
    replicas = 2
"""

from __future__ import annotations

import argparse
import configparser
import hashlib
import json
import math
import platform
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .analytic import giant_S, giant_S_tilde, solve_u, solve_u_tilde
from .degree_models import DegreeModel, read_histogram
from .errors import ConfigError, DomainError, EntpercError
from .generators import GENERATOR_KINDS, GeneratorSpec, generate
from .graph_core import write_edge_list
from .percolation_sim import (
    SweepConfig,
    fidelity_scan,
    limited_component_scan,
    threshold_scan,
)
from .qswap import SwapStrategy
from .quantum_links import phi2_of_phi1
from .seeding import GRAPH, derive_rng

KINDS = (
    "generate",
    "percolate",
    "qswap_scan",
    "limited_scan",
    "fidelity_scan",
    "analytic_table",
    "compare",
)
CSV_COLUMNS = ("model", "N", "seed", "phi_or_F", "l", "S", "s_avg", "s_l_over_N", "stderr")
DEGREE_KINDS = ("poisson", "delta", "power_law", "histogram")

# which sweep keys each experiment needs
_NEEDS = {
    "percolate": ("phi",),
    "qswap_scan": ("phi",),
    "compare": ("phi",),
    "analytic_table": ("phi",),
    "fidelity_scan": ("F",),
    "limited_scan": (),
    "generate": (),
}


# -- parsing -----------------------------------------------------------------------


def parse_list(text, key, cast=float):
    """Comma list or ``a:b:n`` range."""
    text = text.strip()
    if not text:
        return []
    try:
        if ":" in text:
            a, b, n = text.split(":")
            vals = np.linspace(float(a), float(b), int(n))
            return [cast(round(float(v), 12)) for v in vals]
        return [cast(v.strip()) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(key, f"cannot parse list {text!r}") from exc


def _get(cp, section, key, cast=str, default=None, required=False):
    name = f"{section}.{key}"
    if not cp.has_option(section, key):
        if required:
            raise ConfigError(key, f"missing required key {name}")
        return default
    raw = cp.get(section, key)
    try:
        if cast is bool:
            return cp.getboolean(section, key)
        return cast(raw)
    except ValueError as exc:
        raise ConfigError(key, f"{name}: cannot parse {raw!r}") from exc


def read_config(path):
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    cp.optionxform = str  # keep key case (N, F)
    try:
        with open(path) as fh:
            cp.read_file(fh)
    except configparser.Error as exc:
        raise ConfigError("config", f"malformed config: {exc}") from exc
    return cp


def _degree_model(cp):
    kind = _get(cp, "generator", "degree", default="poisson")
    if kind == "poisson":
        return DegreeModel.poisson(_get(cp, "generator", "z", float, required=True))
    if kind == "delta":
        return DegreeModel.delta(_get(cp, "generator", "k", int, required=True))
    if kind == "power_law":
        return DegreeModel.power_law_cutoff(
            _get(cp, "generator", "tau", float, required=True),
            _get(cp, "generator", "kappa", float, required=True),
            _get(cp, "generator", "k_min", int, default=1),
            _get(cp, "generator", "k_max", int),
        )
    if kind == "histogram":
        return read_histogram(_get(cp, "generator", "histogram", required=True))
    raise ConfigError("degree", f"generator.degree must be one of {DEGREE_KINDS}")


def generator_spec(cp, seed):
    if not cp.has_section("generator"):
        raise ConfigError("generator", "missing [generator] section")
    kind = _get(cp, "generator", "kind", required=True)
    if kind not in GENERATOR_KINDS:
        raise ConfigError("kind", f"generator.kind must be one of {GENERATOR_KINDS}")
    N = _get(cp, "generator", "N", int, default=0)
    params = {}
    if kind == "config":
        params["model"] = _degree_model(cp)
    elif kind == "er":
        params["z"] = _get(cp, "generator", "z", float, required=True)
    elif kind == "random_regular":
        params["k"] = _get(cp, "generator", "k", int, required=True)
    elif kind == "ws":
        params["beta"] = _get(cp, "generator", "beta", float, required=True)
    elif kind == "honeycomb":
        params["rows"] = _get(cp, "generator", "rows", int, required=True)
        params["cols"] = _get(cp, "generator", "cols", int, required=True)
        N = 2 * params["rows"] * params["cols"]
    elif kind == "edge_list":
        params["path"] = _get(cp, "generator", "path", required=True)
        params["bidirectional_only"] = _get(
            cp, "generator", "bidirectional_only", bool, default=False
        )
        params["degree_cutoff"] = _get(cp, "generator", "degree_cutoff", int)
    return GeneratorSpec(kind, N, params, seed)


def strategy_of(cp):
    if not cp.has_section("strategy"):
        return SwapStrategy({})
    qs = parse_list(_get(cp, "strategy", "q", default=""), "q", int)
    pis = parse_list(_get(cp, "strategy", "pi", default=""), "pi", float)
    if not pis:
        pis = [1.0] * len(qs)
    if len(pis) != len(qs):
        raise ConfigError("pi", "strategy.pi needs one value per strategy.q entry")
    try:
        return SwapStrategy(dict(zip(qs, pis)))
    except DomainError as exc:
        raise ConfigError("q" if "degree" in str(exc) else "pi", str(exc)) from exc


def sweep_of(cp, seed):
    s = "sweep"
    ls = _get(cp, s, "l", default=None)
    return SweepConfig(
        phi_grid=parse_list(_get(cp, s, "phi", default=""), "phi"),
        F_grid=parse_list(_get(cp, s, "F", default=""), "F"),
        replicas=_get(cp, s, "replicas", int, default=1),
        source_sample=_get(cp, s, "source_sample", int, default=1000),
        l_values=parse_list(ls, "l", int) if ls else [],
        seed=seed,
        f_min=_get(cp, s, "f_min", float, default=2.0 / 3.0),
        regenerate=_get(cp, s, "regenerate", bool, default=True),
        bootstrap=_get(cp, s, "bootstrap", int, default=1000),
    )


def load(path, seed=None):
    """Parse a config into its parts; ``seed`` overrides ``experiment.seed``."""
    cp = read_config(path)
    if not cp.has_section("experiment"):
        raise ConfigError("experiment", "missing [experiment] section")
    kind = _get(cp, "experiment", "kind", required=True)
    if kind not in KINDS:
        raise ConfigError("kind", f"experiment.kind must be one of {KINDS}")
    if seed is None:
        seed = _get(cp, "experiment", "seed", int, required=True)
    if seed < 0:
        raise ConfigError("seed", "experiment.seed must be non-negative")
    gen = generator_spec(cp, seed)
    strategy = strategy_of(cp)
    try:
        sweep = sweep_of(cp, seed)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError("sweep", str(exc)) from exc
    for msg in gen.violations():
        raise ConfigError(msg.split(":")[0].split(".")[-1], msg)
    for key in _NEEDS[kind]:
        if not getattr(sweep, "phi_grid" if key == "phi" else "F_grid"):
            raise ConfigError(key, f"sweep.{key} is required for {kind}")
    return {"cp": cp, "kind": kind, "seed": seed, "gen": gen, "strategy": strategy,
            "sweep": sweep}


# -- validation ----------------------------------------------------------------------


def validate(path):
    """Schema and range checks; returns a list of violation strings."""
    out = []
    try:
        cp = read_config(path)
    except (ConfigError, OSError) as exc:
        return [str(exc)]
    if not cp.has_section("experiment"):
        out.append("experiment: missing section")
    else:
        kind = cp.get("experiment", "kind", fallback=None)
        if kind not in KINDS:
            out.append(f"experiment.kind: must be one of {', '.join(KINDS)}")
        if not cp.has_option("experiment", "seed"):
            out.append("experiment.seed: missing")
    # strategy: checked key by key so several violations can be reported
    if cp.has_section("strategy"):
        try:
            qs = parse_list(cp.get("strategy", "q", fallback=""), "q", int)
            pis = parse_list(cp.get("strategy", "pi", fallback=""), "pi", float)
        except ConfigError as exc:
            out.append(str(exc))
            qs, pis = [], []
        for q in qs:
            if q < 2:
                out.append(f"strategy.q: q={q} must be >= 2")
        for p in pis:
            if not 0.0 <= p <= 1.0:
                out.append(f"strategy.pi: {p} outside [0, 1]")
        if pis and len(pis) != len(qs):
            out.append("strategy.pi: needs one value per strategy.q entry")
    try:
        gen = generator_spec(cp, 0)
        out.extend(gen.violations())
    except (ConfigError, EntpercError, ValueError) as exc:
        out.append(str(exc))
    if cp.has_section("sweep"):
        try:
            sw = sweep_of(cp, 0)
            out.extend(f"sweep.phi: {p} outside [0, 1]" for p in sw.phi_grid
                       if not 0.0 <= p <= 1.0)
            out.extend(f"sweep.F: {F} outside (1/4, 1]" for F in sw.F_grid
                       if not 0.25 < F <= 1.0)
            if not 0.5 < sw.f_min < 1.0:
                out.append("sweep.f_min: must lie in (1/2, 1)")
        except (ConfigError, ValueError) as exc:
            out.append(f"sweep: {exc}")
    return out


# -- output --------------------------------------------------------------------------


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return ""
    if math.isinf(x):
        return "inf"
    return f"{x:.10g}"


def write_csv(path, header, rows):
    lines = [",".join(header)]
    lines += [",".join(_fmt(v) if not isinstance(v, str) else v for v in row) for row in rows]
    Path(path).write_text("\n".join(lines) + "\n")


def _model_name(gen):
    p = {k: v for k, v in gen.params.items() if k != "model"}
    if "model" in gen.params:
        p["degree"] = repr(gen.params["model"])
    inner = ";".join(f"{k}={v}" for k, v in sorted(p.items()))
    return f"{gen.kind}({inner})"


def _sha256(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _versions():
    import numba
    import scipy

    return {
        "entperc": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "numba": numba.__version__,
    }


# -- experiments ---------------------------------------------------------------------


def _graph(exp):
    return generate(exp["gen"], derive_rng(exp["seed"], GRAPH))


def _analytic_model(exp):
    gen = exp["gen"]
    m = gen.degree_model()
    if m is None and gen.kind == "edge_list":
        m = DegreeModel.from_graph(_graph(exp))
    if m is None:
        raise ConfigError("kind", f"no analytic degree model for generator {gen.kind!r}")
    return m


def _scan_rows(exp, res, N):
    name, seed = _model_name(exp["gen"]), exp["seed"]
    return [
        (name, N, seed, phi, None, S, s, None, err)
        for phi, S, s, err in zip(res.grid, res.S, res.s_avg, res.S_err)
    ]


def _hist_rows(hist):
    return [(l, int(c)) for l, c in enumerate(hist)]


def run_experiment(exp, out_dir):
    """Execute one parsed experiment; returns (files written, summary dict)."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    kind, gen, sweep = exp["kind"], exp["gen"], exp["sweep"]
    strategy = exp["strategy"]
    files, summary = [], {}
    name, seed = _model_name(gen), exp["seed"]

    if kind == "generate":
        g = _graph(exp)
        path = out_dir / "graph.edges"
        write_edge_list(g, path)
        files.append(path)
        summary.update(N=g.N, edges=g.edge_count)

    elif kind in ("percolate", "qswap_scan"):
        strat = strategy if kind == "qswap_scan" else None
        res = threshold_scan(gen, strat, sweep)
        N = _graph_size(exp)
        path = out_dir / "results.csv"
        write_csv(path, CSV_COLUMNS, _scan_rows(exp, res, N))
        files.append(path)
        summary.update(threshold=res.threshold, threshold_onset=res.threshold_onset,
                       eta={str(q): v for q, v in res.eta.items()})

    elif kind in ("limited_scan", "fidelity_scan"):
        g = _graph(exp)
        if kind == "limited_scan":
            res = limited_component_scan(
                g, sweep.l_values or None, sweep.source_sample, seed=seed,
                bootstrap=sweep.bootstrap,
            )
            rows = [(name, g.N, seed, None, l, None, None, s, e)
                    for l, s, e in zip(res.l_values, res.s_l, res.s_l_err)]
        else:
            res = fidelity_scan(g, sweep.F_grid, sweep.f_min, sweep.source_sample,
                                seed=seed, bootstrap=sweep.bootstrap)
            rows = [(name, g.N, seed, F, l, None, None, s, e)
                    for F, l, s, e in zip(res.grid, res.l_values, res.s_l, res.s_l_err)]
        path = out_dir / "results.csv"
        write_csv(path, CSV_COLUMNS, rows)
        hpath = out_dir / "histogram.csv"
        write_csv(hpath, ("l", "count"), _hist_rows(res.hist))
        files += [path, hpath]
        summary.update(l_av=res.l_av)

    elif kind == "analytic_table":
        m = _analytic_model(exp)
        rows = []
        for phi in sweep.phi_grid:
            if strategy:
                fp = solve_u_tilde(phi, m, strategy)
                val = giant_S_tilde(phi, m, strategy)
            else:
                fp = solve_u(phi2_of_phi1(phi), m)
                val = giant_S(phi2_of_phi1(phi), m)
            rows.append((f"{name};phi1={_fmt(phi)}", val, fp.iterations, fp.residual))
        path = out_dir / "analytic.csv"
        write_csv(path, ("parameters", "value", "iterations", "residual"), rows)
        files.append(path)

    elif kind == "compare":
        m = _analytic_model(exp)
        strat = strategy or None
        res = threshold_scan(gen, strat, sweep)
        rows, diffs = [], []
        for phi, S, err in zip(res.grid, res.S, res.S_err):
            if strat:
                a = giant_S_tilde(phi, m, strat, eta=res.eta or None)
            else:
                a = giant_S(phi2_of_phi1(phi), m)
            diffs.append(abs(a - S))
            rows.append((phi, a, S, err, abs(a - S)))
        path = out_dir / "compare.csv"
        write_csv(path, ("phi1", "S_analytic", "S_sim", "stderr", "abs_diff"), rows)
        files.append(path)
        summary.update(max_abs_diff=max(diffs) if diffs else math.nan,
                       eta={str(q): v for q, v in res.eta.items()})

    return files, summary


def _graph_size(exp):
    gen = exp["gen"]
    if gen.kind in ("honeycomb", "edge_list"):
        return _graph(exp).N
    return gen.N


def _config_echo(cp):
    return {s: dict(cp.items(s)) for s in cp.sections()}


def run(config_path, out_dir, seed=None, threads=1):
    """Run the experiment in ``config_path``; writes outputs and ``manifest.json``."""
    t0 = time.perf_counter()
    exp = load(config_path, seed)
    files, summary = run_experiment(exp, out_dir)
    manifest = {
        "config_path": str(config_path),
        "config": _config_echo(exp["cp"]),
        "kind": exp["kind"],
        "seed": exp["seed"],
        "seed_rule": "numpy SeedSequence(seed, spawn_key=(stream, *indices))",
        "threads": threads,
        "versions": _versions(),
        "outputs": {Path(f).name: _sha256(f) for f in files},
        "summary": summary,
        "wall_time_s": time.perf_counter() - t0,
    }
    mpath = Path(out_dir) / "manifest.json"
    mpath.write_text(json.dumps(manifest, indent=2, default=_json_default) + "\n")
    return files + [mpath], summary


def _json_default(x):
    if isinstance(x, np.generic):
        return x.item()
    return str(x)


# -- entry point ---------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="entperc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="execute an experiment config")
    r.add_argument("--config", required=True, type=Path)
    r.add_argument("--out", required=True, type=Path)
    r.add_argument("--seed", type=int, default=None, help="overrides experiment.seed")
    r.add_argument("--threads", type=int, default=1)
    v = sub.add_parser("validate", help="check a config without running it")
    v.add_argument("--config", required=True, type=Path)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        problems = validate(args.config)
        for p in problems:
            print(p)
        if not problems:
            print("ok")
        return 1 if problems else 0
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        files, summary = run(args.config, args.out, args.seed, args.threads)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3
    for f in files:
        print(f)
    if "max_abs_diff" in summary:
        print(f"max |dS| = {summary['max_abs_diff']:.6g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
