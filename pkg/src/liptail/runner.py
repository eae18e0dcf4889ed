"""Declarative experiment runner.

A JSON config names a prior, an optional map, sample size, replica count,
master seed and kind-specific parameters.  ``run`` writes ``report.json`` and
one CSV per result table.  CSV bytes depend only on the config (and seed
override), never on the thread count.
"""

from concurrent.futures import ThreadPoolExecutor
import json
import math
import os
import time

import jsonschema
import numpy as np

from . import __version__
from . import concentration as conc
from . import evt
from . import io as lio
from . import lipschitz as lz
from . import quadrature as quad
from .errors import ParameterError, ValidationError
from .priors import RADIAL_GAUSSIAN, PriorSpec, sample_prior
from .rng import derive_seed

THREADS_ENV = "LIPTAIL_THREADS"

KINDS = ("TailScan", "CmrCurve", "Concentration", "Isoperimetry", "QuadratureCheck", "SampleDump")


def _battery():
    return {
        "one": lambda x: np.ones(x.shape[0]),
        "norm_sq": lambda x: np.sum(x * x, axis=1),
        "first_coord": lambda x: x[:, 0],
        "abs_first": lambda x: np.abs(x[:, 0]),
        "norm": lambda x: np.linalg.norm(x, axis=1),
        "cos_product": lambda x: np.cos(x[:, 0]) * np.cos(x[:, 1]),
    }


INTEGRAND_BATTERY = _battery()

_num_list = {"type": "array", "items": {"type": "number"}, "minItems": 1}
_pos_list = {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}, "minItems": 1}

_PARAMS_SCHEMA = {
    "TailScan": {
        "type": "object",
        "additionalProperties": False,
        "required": ["estimator", "k_grid"],
        "properties": {
            "estimator": {"enum": list(evt.ESTIMATORS)},
            "k_grid": {
                "oneOf": [
                    {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
                    {
                        "type": "object",
                        "additionalProperties": False,
                        "required": ["start", "stop", "step"],
                        "properties": {
                            "start": {"type": "integer", "minimum": 1},
                            "stop": {"type": "integer", "minimum": 1},
                            "step": {"type": "integer", "minimum": 1},
                        },
                    },
                ]
            },
        },
    },
    "CmrCurve": {
        "type": "object",
        "additionalProperties": False,
        "required": ["gammas"],
        "properties": {
            "gammas": {"type": "array", "items": {"type": "number", "minimum": 0}, "minItems": 1},
            "thresholds": _num_list,
            "threshold_quantiles": {
                "type": "array",
                "items": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
                "minItems": 1,
            },
        },
    },
    "Concentration": {
        "type": "object",
        "additionalProperties": False,
        "required": ["epsilons"],
        "properties": {"epsilons": _pos_list, "center": {"enum": [conc.MEAN, conc.MEDIAN]}},
    },
    "Isoperimetry": {
        "type": "object",
        "additionalProperties": False,
        "required": ["set", "epsilons"],
        "properties": {
            "epsilons": _pos_list,
            "set": {
                "type": "object",
                "additionalProperties": False,
                "required": ["kind", "dim"],
                "properties": {
                    "kind": {"enum": [conc.HALF_SPACE, conc.BALL, conc.COMPLEMENT]},
                    "dim": {"type": "integer", "minimum": 1, "maximum": 3},
                    "a": {"type": "number"},
                    "direction": _num_list,
                    "center": _num_list,
                    "radius": {"type": "number", "exclusiveMinimum": 0},
                },
            },
        },
    },
    "QuadratureCheck": {
        "type": "object",
        "additionalProperties": False,
        "properties": {
            "integrands": {"type": "array", "items": {"enum": list(INTEGRAND_BATTERY)}, "minItems": 1},
            "abs_tol": {"type": "number", "exclusiveMinimum": 0},
            "rel_tol": {"type": "number", "exclusiveMinimum": 0},
        },
    },
    "SampleDump": {
        "type": "object",
        "additionalProperties": False,
        "properties": {
            "formats": {"type": "array", "items": {"enum": ["csv", "binary"]}, "minItems": 1},
            "include_values": {"type": "boolean"},
        },
    },
}

CONFIG_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "liptail experiment config",
    "type": "object",
    "additionalProperties": False,
    "required": ["kind", "prior", "n", "replicas", "master_seed"],
    "properties": {
        "kind": {"enum": list(KINDS)},
        "description": {"type": "string"},
        "prior": {
            "type": "object",
            "additionalProperties": False,
            "required": ["kind", "dim"],
            "properties": {
                "kind": {"enum": ["RadialGaussian", "Pareto", "StudentT"]},
                "dim": {"type": "integer", "minimum": 1},
                "k": {"type": "integer", "minimum": 0},
                "alpha": {"type": "number", "exclusiveMinimum": 0},
                "nu": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "map": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["kind"],
                    "properties": {
                        "kind": {"enum": list(lz.KINDS)},
                        "seed": {"type": "integer", "minimum": 0},
                        "dim": {"type": "integer", "minimum": 1},
                        "w": _num_list,
                        "a": {"type": "number"},
                        "b": {"type": "number"},
                        "layer_widths": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 2},
                        "activation": {"enum": list(lz.ACTIVATIONS)},
                        "weight_scale": {"type": "number", "exclusiveMinimum": 0},
                        "slope": {"type": "number"},
                        "bias_scale": {"type": "number", "minimum": 0},
                        "weights": {"type": "array", "minItems": 1, "items": {"type": "array"}},
                        "biases": {"type": "array", "items": {"type": "array"}},
                    },
                },
            ]
        },
        "n": {"type": "integer", "minimum": 1},
        "replicas": {"type": "integer", "minimum": 1},
        "master_seed": {"type": "integer", "minimum": 0, "maximum": 2**64 - 1},
        "params": {"type": "object"},
    },
    "allOf": [
        {"if": {"properties": {"kind": {"const": kind}}, "required": ["kind"]},
         "then": {"properties": {"params": schema},
                  "required": ["params"] if "required" in schema else []}}
        for kind, schema in _PARAMS_SCHEMA.items()
    ],
}


class Config:
    """A validated experiment configuration."""

    def __init__(self, raw):
        self.raw = raw
        self.kind = raw["kind"]
        self.prior = PriorSpec.from_dict(raw["prior"])
        self.map_desc = raw.get("map")
        self.map = lz.from_description(self.map_desc) if self.map_desc else None
        self.n = int(raw["n"])
        self.replicas = int(raw["replicas"])
        self.master_seed = int(raw["master_seed"])
        self.params = dict(raw.get("params") or {})

    def replica_seed(self, i):
        return derive_seed(self.master_seed, i)

    def scalar_map(self):
        """The map to apply; scalar priors default to the identity."""
        if self.map is not None:
            return self.map
        return lz.build_map(lz.LINEAR, {"w": [1.0]})

    def k_grid(self):
        g = self.params["k_grid"]
        if isinstance(g, dict):
            return list(range(g["start"], g["stop"] + 1, g["step"]))
        return list(g)


def _semantic_failures(raw):
    """Cross-field checks that the schema cannot express."""
    fails = []
    try:
        prior = PriorSpec.from_dict(raw["prior"])
    except ParameterError as exc:
        return [f"prior: {exc}"]
    fmap = None
    if raw.get("map"):
        try:
            fmap = lz.from_description(raw["map"])
        except (ParameterError, ArithmeticError) as exc:
            fails.append(f"map: {exc}")
        else:
            if fmap.dim != prior.dim:
                fails.append(f"map: input dimension {fmap.dim} does not match prior dim {prior.dim}")
    kind = raw["kind"]
    params = raw.get("params") or {}
    n = raw["n"]
    if kind == "TailScan":
        if not raw.get("map") and prior.dim != 1:
            fails.append("map: TailScan without a map needs a scalar prior (dim = 1)")
        g = params.get("k_grid")
        ks = list(range(g["start"], g["stop"] + 1, g["step"])) if isinstance(g, dict) else list(g or [])
        if isinstance(g, dict) and not ks:
            fails.append("params.k_grid: empty range")
        limit = n // 4 if params.get("estimator") == evt.PICKANDS else n - 1
        if ks and max(ks) > limit:
            fails.append(f"params.k_grid: k = {max(ks)} exceeds the estimator limit {limit} at n = {n}")
    elif kind == "CmrCurve":
        if not raw.get("map") and prior.dim != 1:
            fails.append("map: CmrCurve without a map needs a scalar prior (dim = 1)")
        if "thresholds" in params and "threshold_quantiles" in params:
            fails.append("params: give thresholds or threshold_quantiles, not both")
        t = params.get("thresholds")
        if t is not None and any(b <= a for a, b in zip(t[:-1], t[1:])):
            fails.append("params.thresholds: must be strictly increasing")
        qs = params.get("threshold_quantiles")
        if qs is not None and any(b <= a for a, b in zip(qs[:-1], qs[1:])):
            fails.append("params.threshold_quantiles: must be strictly increasing")
    elif kind == "Concentration":
        if not raw.get("map"):
            fails.append("map: Concentration requires a map")
        if prior.kind != RADIAL_GAUSSIAN or prior.k != 0:
            fails.append("prior: Concentration requires a standard Gaussian prior (RadialGaussian, k = 0)")
        if n < conc.MIN_SAMPLES:
            fails.append(f"n: Concentration requires n >= {conc.MIN_SAMPLES}")
    elif kind == "Isoperimetry":
        if prior.kind != RADIAL_GAUSSIAN or prior.k != 0:
            fails.append("prior: Isoperimetry requires a standard Gaussian prior")
        s = params.get("set")
        if s is not None:
            if s.get("dim") != prior.dim:
                fails.append("params.set.dim: must equal prior dim")
            try:
                conc.BorelSetSpec.from_dict(s)
            except (ParameterError, TypeError) as exc:
                fails.append(f"params.set: {exc}")
    elif kind == "QuadratureCheck":
        if prior.kind != RADIAL_GAUSSIAN or prior.dim not in (2, 3):
            fails.append("prior: QuadratureCheck requires a RadialGaussian prior with dim 2 or 3")
        if n < 2:
            fails.append("n: QuadratureCheck requires n >= 2")
    return fails


def validate(raw):
    """Validate a parsed config; raise ``ValidationError`` listing every failure."""
    validator = jsonschema.Draft7Validator(CONFIG_SCHEMA)
    errors = sorted(validator.iter_errors(raw), key=lambda e: list(e.absolute_path))
    failures = []
    for e in errors:
        path = ".".join(str(p) for p in e.absolute_path) or "<root>"
        failures.append(f"{path}: {e.message}")
    if not failures:
        failures.extend(_semantic_failures(raw))
    if failures:
        raise ValidationError(failures)
    return Config(raw)


def load_config(path, seed_override=None):
    """Read and validate a config file; ``OSError``/``json.JSONDecodeError`` propagate."""
    with open(path) as fh:
        raw = json.load(fh)
    if seed_override is not None and isinstance(raw, dict):
        raw["master_seed"] = int(seed_override)
    return validate(raw)


# --- per-replica pipelines ----------------------------------------------------

def _pushforward(cfg, seed):
    batch = sample_prior(cfg.prior, cfg.n, seed)
    return lz.evaluate(cfg.scalar_map(), batch)


def _replica_tail_scan(cfg, seed):
    values = _pushforward(cfg, seed)
    scan = evt.tail_scan(values, cfg.params["estimator"], cfg.k_grid())
    rows = []
    for e in scan:
        if e.estimate is None:
            rows.append((e.k_order, None, None))
        else:
            rows.append((e.k_order, e.estimate.xi_hat, e.estimate.stderr))
    return {"tail_scan": (["k", "xi_hat", "stderr"], rows)}, {
        "failed_k": [e.k_order for e in scan if e.estimate is None]
    }


def _cmr_envelope_args(cfg):
    if cfg.prior.kind != RADIAL_GAUSSIAN:
        return {}
    m = cfg.scalar_map()
    return {"lip_bound": m.lip_bound, "value_at_origin": m.value_at_origin, "k": cfg.prior.k, "d": cfg.prior.dim}


CMR_HEADER = ["t", "c_hat", "count", "m_minus", "m_plus", "valid"]


def _replica_cmr(cfg, seed):
    values = _pushforward(cfg, seed)
    if "thresholds" in cfg.params:
        t = np.asarray(cfg.params["thresholds"], dtype=float)
    else:
        t = evt.default_thresholds(values, cfg.params.get("threshold_quantiles", evt.DEFAULT_QUANTILES))
    tables, summary = {}, {}
    env = _cmr_envelope_args(cfg)
    for j, gamma in enumerate(cfg.params["gammas"]):
        curve = evt.conditional_moment_ratio(values, gamma, t, **env)
        tables[f"cmr_gamma{j}"] = (CMR_HEADER, curve.rows())
        summary[f"gamma{j}"] = {"gamma": gamma, "se": [None if np.isnan(s) else float(s) for s in curve.se]}
    return tables, summary


CONCENTRATION_HEADER = ["eps", "p_hat", "se", "bound_median", "bound_paper", "viol_median", "viol_paper"]


def _replica_concentration(cfg, seed):
    report = conc.concentration_check(
        cfg.map, cfg.prior, cfg.n, seed, cfg.params["epsilons"], cfg.params.get("center", conc.MEDIAN)
    )
    return {"concentration": (CONCENTRATION_HEADER, report.rows())}, report.summary()


ISOPERIMETRY_HEADER = ["eps", "measure_A", "measure_A_eps", "rhs", "margin", "se"]


def _replica_isoperimetry(cfg, seed):
    s = conc.BorelSetSpec.from_dict(cfg.params["set"])
    rows = []
    for j, eps in enumerate(cfg.params["epsilons"]):
        r = conc.isoperimetry_check(s, eps, cfg.n, derive_seed(seed, j))
        rows.append((r["epsilon"], r["measure_A"], r["measure_A_eps"], r["rhs"], r["margin"], r["se"]))
    return {"isoperimetry": (ISOPERIMETRY_HEADER, rows)}, {}


QUADRATURE_HEADER = ["integrand", "oracle", "mc_mean", "mc_se", "z"]


def _quadrature_oracles(cfg):
    spec = quad.QuadratureSpec(
        abs_tol=cfg.params.get("abs_tol", 1e-10), rel_tol=cfg.params.get("rel_tol", 1e-8)
    )
    names = cfg.params.get("integrands", list(INTEGRAND_BATTERY))
    return {
        name: quad.hyperspherical_expectation(INTEGRAND_BATTERY[name], cfg.prior.k, cfg.prior.dim, spec)
        for name in names
    }


def _replica_quadrature(cfg, seed, oracles):
    x = sample_prior(cfg.prior, cfg.n, seed).data
    rows = []
    for name, oracle in oracles.items():
        v = INTEGRAND_BATTERY[name](x)
        mean = float(np.mean(v))
        se = float(np.std(v, ddof=1) / math.sqrt(v.size))
        z = (mean - oracle) / se if se > 0 else (0.0 if mean == oracle else math.inf)
        rows.append((name, oracle, mean, se, z))
    return {"quadrature": (QUADRATURE_HEADER, rows)}, {}


def _replica_sample_dump(cfg, seed):
    batch = sample_prior(cfg.prior, cfg.n, seed)
    data = batch.data
    if cfg.params.get("include_values") and cfg.map is not None:
        data = np.column_stack([data, lz.evaluate(cfg.map, batch)])
    return {"samples": data}, {}


def _run_replica(cfg, i, shared):
    seed = cfg.replica_seed(i)
    kind = cfg.kind
    t0 = time.perf_counter()
    if kind == "TailScan":
        tables, summary = _replica_tail_scan(cfg, seed)
    elif kind == "CmrCurve":
        tables, summary = _replica_cmr(cfg, seed)
    elif kind == "Concentration":
        tables, summary = _replica_concentration(cfg, seed)
    elif kind == "Isoperimetry":
        tables, summary = _replica_isoperimetry(cfg, seed)
    elif kind == "QuadratureCheck":
        tables, summary = _replica_quadrature(cfg, seed, shared["oracles"])
    else:
        tables, summary = _replica_sample_dump(cfg, seed)
    return {"index": i, "seed": seed, "tables": tables, "summary": summary,
            "seconds": time.perf_counter() - t0}


# --- aggregation ----------------------------------------------------------------

def _mean_se(values):
    """Mean and standard error of a replica-ordered list, NaN-aware; fixed summation order."""
    vals = [v for v in values if v is not None and not math.isnan(v)]
    if not vals:
        return None, None
    total = 0.0
    for v in vals:
        total += v
    mean = total / len(vals)
    if len(vals) < 2:
        return mean, None
    ss = 0.0
    for v in vals:
        ss += (v - mean) ** 2
    return mean, math.sqrt(ss / (len(vals) - 1) / len(vals))


def _aggregate(cfg, results):
    """Summary tables keyed by name; each lines up a value column across replicas."""
    spec = {
        "TailScan": {"tail_scan": ("k", 0, 1)},
        "Concentration": {"concentration": ("eps", 0, 1)},
        "Isoperimetry": {"isoperimetry": ("eps", 0, 4)},
        "QuadratureCheck": {"quadrature": ("integrand", 0, 2)},
    }.get(cfg.kind)
    if cfg.kind == "CmrCurve":
        # quantile thresholds move between replicas, so rows are keyed by quantile level
        fixed = "thresholds" in cfg.params
        spec = {f"cmr_gamma{j}": ("t" if fixed else "quantile", 0 if fixed else None, 1)
                for j in range(len(cfg.params["gammas"]))}
    if not spec:
        return {}
    out = {}
    for table, (key_name, key_col, val_col) in spec.items():
        per = [r["tables"][table][1] for r in results]
        header = [key_name] + [f"replica_{r['index']}" for r in results] + ["mean", "se"]
        rows = []
        for row_idx in range(len(per[0])):
            if key_col is None:
                key = cfg.params.get("threshold_quantiles", evt.DEFAULT_QUANTILES)[row_idx]
            else:
                key = per[0][row_idx][key_col]
            vals = [p[row_idx][val_col] for p in per]
            mean, se = _mean_se(vals)
            rows.append([key] + vals + [mean, se])
        out[f"{table}_summary"] = (header, rows)
    return out


# --- entry points ---------------------------------------------------------------

def default_threads():
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _check_indices(cfg, indices):
    if indices is None:
        return list(range(cfg.replicas))
    indices = sorted(set(int(i) for i in indices))
    bad = [i for i in indices if not 0 <= i < cfg.replicas]
    if bad or not indices:
        raise ParameterError(f"replica indices must lie in [0, {cfg.replicas}); got {bad or 'none'}")
    return indices


def execute(cfg, thread_count=1, replica_indices=None):
    """Run replicas; returns ``(results, aggregates, timings)`` without touching disk.

    ``replica_indices`` restricts the run to a subset; aggregates are only
    formed when every replica is present.
    """
    indices = _check_indices(cfg, replica_indices)
    timings = {}
    shared = {}
    t0 = time.perf_counter()
    if cfg.kind == "QuadratureCheck":
        shared["oracles"] = _quadrature_oracles(cfg)
        timings["oracles"] = time.perf_counter() - t0
    t1 = time.perf_counter()
    if thread_count <= 1 or len(indices) == 1:
        results = [_run_replica(cfg, i, shared) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=thread_count) as pool:
            results = list(pool.map(lambda i: _run_replica(cfg, i, shared), indices))
    timings["replicas"] = time.perf_counter() - t1
    t2 = time.perf_counter()
    aggregates = _aggregate(cfg, results) if len(results) == cfg.replicas else {}
    timings["aggregate"] = time.perf_counter() - t2
    return results, aggregates, timings


def run(config_path, out_dir, thread_count=None, seed_override=None, replica_indices=None):
    """Execute a config file and write ``report.json`` plus CSV tables into ``out_dir``.

    Returns the report dictionary.  Validation happens before anything is
    written.  With ``replica_indices`` only those replicas' tables (and no
    summaries) are produced; each is byte-identical to its full-run version.
    """
    cfg = load_config(config_path, seed_override)
    threads = default_threads() if thread_count is None else max(1, int(thread_count))
    _check_indices(cfg, replica_indices)
    results, aggregates, timings = execute(cfg, threads, replica_indices)
    os.makedirs(out_dir, exist_ok=True)
    files = []
    for r in results:
        for name, payload in r["tables"].items():
            if name == "samples":
                fmts = cfg.params.get("formats", ["csv", "binary"])
                if "csv" in fmts:
                    fn = f"samples_r{r['index']}.csv"
                    lio.write_batch_csv(os.path.join(out_dir, fn), payload)
                    files.append(fn)
                if "binary" in fmts:
                    fn = f"samples_r{r['index']}.bin"
                    lio.write_batch_binary(os.path.join(out_dir, fn), payload)
                    files.append(fn)
                continue
            fn = f"{name}_r{r['index']}.csv"
            lio.write_table(os.path.join(out_dir, fn), *payload)
            files.append(fn)
    for name, (header, rows) in aggregates.items():
        fn = f"{name}.csv"
        lio.write_table(os.path.join(out_dir, fn), header, rows)
        files.append(fn)
    report = {
        "tool": "liptail",
        "version": __version__,
        "config": cfg.raw,
        "threads": threads,
        "files": files,
        "replicas": [
            {
                "index": r["index"],
                "seed": r["seed"],
                "summary": r["summary"],
                "tables": {
                    name: {"header": p[0], "rows": [list(row) for row in p[1]]}
                    for name, p in r["tables"].items() if name != "samples"
                },
                "seconds": r["seconds"],
            }
            for r in results
        ],
        "aggregates": {name: {"header": h, "rows": rows} for name, (h, rows) in aggregates.items()},
        "timings": timings,
    }
    with open(os.path.join(out_dir, "report.json"), "w") as fh:
        json.dump(_json_safe(report), fh, indent=2, sort_keys=True)
    return report


def _json_safe(obj):
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return None if math.isnan(v) or math.isinf(v) else v
    return obj


def describe(config_path, pilot_n=100_000):
    """Human-readable plan: prior, map certificate, diagnostic, memory and envelope onset."""
    cfg = load_config(config_path)
    lines = [f"experiment: {cfg.kind}"]
    if cfg.raw.get("description"):
        lines.append(f"  {cfg.raw['description']}")
    lines.append(f"prior: {cfg.prior.to_dict()}")
    lines.append(f"samples: n = {cfg.n} x {cfg.replicas} replicas, master_seed = {cfg.master_seed}")
    fmap = cfg.map
    if fmap is None and cfg.prior.dim == 1 and cfg.kind in ("TailScan", "CmrCurve"):
        fmap = cfg.scalar_map()
        lines.append("map: identity (scalar prior)")
    if fmap is not None:
        lines.append(f"map: {fmap.kind}, dim = {fmap.dim}, certified L = {fmap.lip_bound:.6g}, "
                     f"f(0) = {fmap.value_at_origin:.6g}")
    lines.append(f"diagnostic: {json.dumps(cfg.params, sort_keys=True)}")
    per_replica = cfg.n * (cfg.prior.dim + 1) * 8
    lines.append(f"memory: ~{per_replica / 2**20:.1f} MiB per concurrent replica")
    if fmap is not None and cfg.prior.kind == RADIAL_GAUSSIAN:
        gammas = cfg.params.get("gammas") or [0.25, 0.5]
        k_plus = abs(cfg.prior.k + cfg.prior.dim - 2)
        pilot = lz.evaluate(fmap, sample_prior(cfg.prior, min(cfg.n, pilot_n), cfg.master_seed))
        q9999 = float(np.quantile(pilot, 0.9999))
        lines.append(f"pilot 0.9999 quantile of f(X): {q9999:.6g} (n = {pilot.size})")
        for g in gammas:
            if g <= 0:
                continue
            t_min = math.sqrt(k_plus + g) * fmap.lip_bound + abs(fmap.value_at_origin)
            onset = evt.envelope_onset(fmap.lip_bound, fmap.value_at_origin, cfg.prior.k, cfg.prior.dim, g)
            msg = (f"envelope gamma = {g}: t_min = sqrt(|k+d-2| + gamma) L + |f(0)| = {t_min:.6g}; "
                   f"all validity conditions hold for t > {onset:.6g}")
            if t_min > q9999:
                msg += "  WARNING: t_min exceeds the 0.9999 sample quantile; no valid envelope region"
            lines.append(msg)
    return "\n".join(lines)
