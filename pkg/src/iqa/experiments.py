"""Experiment catalog: config parsing, sweep orchestration, CSV output.

Each scenario sweeps (N, l, T, lambda, ...) grids, reusing annealing runs
through an on-disk trajectory cache, and writes one deterministic CSV table
to <output_dir>/<scenario>/ plus a provenance file.  Re-running a scenario
with an identical config yields byte-identical CSV bodies; only the
provenance file carries a timestamp.

Environment overrides: IQA_OUTPUT_DIR replaces the configured output
directory, IQA_WORKERS sets the number of processes used for independent
annealing runs.
"""

from __future__ import annotations

import datetime
import math
import os
import shutil
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields as dataclass_fields
from pathlib import Path

import numpy as np

from . import __version__
from ._backend import backend_info
from .annealer import IntegratorConfig, Schedule, anneal
from .cache import TrajectoryCache, make_key
from .commutator import commutator_matrix
from .errors import ConfigError
from .metrics import l_epsilon, max_R, r_avg_h, r_avg_K, range_profile, relative_distance
from .model import basis_descriptor, initial_couplings, kitaev_couplings, CouplingVector
from .oracle import MAX_DENSE_SITES, dense_commutator_matrix, dense_ground_overlap
from .spectra import fidelity

__all__ = ["SCENARIOS", "ExperimentConfig", "ResultTable", "parse_config",
           "load_config", "cache_key", "run"]

SCENARIOS = ("adiabaticity", "max-r-scaling", "fidelity-map", "fidelity-vs-l",
             "l-epsilon", "coupling-decay", "range-scaling", "oracle-check")

LAMBDA_CRITICAL = 0.5
ORACLE_LAMBDAS = (0.0, 0.25, 0.5, 0.75, 1.0)
DECAY_LAMBDAS = (0.25, 0.5, 0.75)
FID_VS_L_LAMBDAS = (0.9 * LAMBDA_CRITICAL, 1.1 * LAMBDA_CRITICAL)


@dataclass
class ExperimentConfig:
    scenario: str
    N_list: list[int] = field(default_factory=lambda: [50])
    l_list: list[int] = field(default_factory=lambda: [4, 6])
    T_list: list[float] = field(default_factory=lambda: [1000.0])
    lambda_points: int = 201
    epsilon: float = 0.005
    steps_per_unit_time: float = 10.0
    output_dir: str = "results"

    def validate(self) -> None:
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}; "
                              f"choose one of {', '.join(SCENARIOS)}")
        for key in ("N_list", "l_list", "T_list"):
            if not getattr(self, key):
                raise ConfigError(f"{key} must be a non-empty list")
        if any(n % 2 != 0 or n < 4 for n in self.N_list):
            raise ConfigError("N_list entries must be even and >= 4")
        if any(l < 1 for l in self.l_list):
            raise ConfigError("l_list entries must be >= 1")
        if any(t <= 0 for t in self.T_list):
            raise ConfigError("T_list entries must be positive")
        if self.lambda_points < 2:
            raise ConfigError("lambda_points must be >= 2")
        if not 0.0 < self.epsilon < 1.0:
            raise ConfigError("epsilon must lie in (0, 1)")
        if self.steps_per_unit_time <= 0:
            raise ConfigError("steps_per_unit_time must be positive")
        if self.scenario == "oracle-check" and any(n > MAX_DENSE_SITES for n in self.N_list):
            raise ConfigError(f"oracle-check needs N <= {MAX_DENSE_SITES}")

    def echo(self) -> list[str]:
        lines = []
        for f in dataclass_fields(self):
            v = getattr(self, f.name)
            if isinstance(v, list):
                v = ",".join(_fmt(x) for x in v)
            lines.append(f"{f.name} = {v}")
        return lines


@dataclass(frozen=True)
class ResultTable:
    scenario: str
    name: str
    columns: tuple[str, ...]
    rows: list[tuple]
    provenance: dict

    def csv_body(self) -> str:
        lines = [",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(_fmt(x) for x in row))
        return "\n".join(lines) + "\n"


def _fmt(x) -> str:
    """Deterministic CSV cell formatting; floats carry 17 significant digits."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


_LIST_KEYS = {"N_list": int, "l_list": int, "T_list": float}
_SCALAR_KEYS = {"scenario": str, "lambda_points": int, "epsilon": float,
                "steps_per_unit_time": float, "output_dir": str}


def parse_config(text: str) -> ExperimentConfig:
    """Parse "key = value" lines; '#' starts a comment, lists are
    comma-separated.  Unknown keys are errors."""
    values: dict = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {ln}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key in values:
            raise ConfigError(f"line {ln}: duplicate key {key!r}")
        try:
            if key in _LIST_KEYS:
                conv = _LIST_KEYS[key]
                items = [p.strip() for p in val.split(",") if p.strip()]
                values[key] = [conv(float(p)) if conv is int else conv(p) for p in items]
            elif key in _SCALAR_KEYS:
                values[key] = _SCALAR_KEYS[key](val)
            else:
                raise ConfigError(f"line {ln}: unknown key {key!r}")
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"line {ln}: bad value for {key!r}: {exc}") from None
    if "scenario" not in values:
        raise ConfigError("missing required key 'scenario'")
    cfg = ExperimentConfig(**values)
    cfg.validate()
    return cfg


def load_config(path: str | os.PathLike) -> ExperimentConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def cache_key(N: int, l: int, T: float, steps: int, shape: str = "linear") -> str:
    """Injective deterministic encoding of one run's parameters."""
    return make_key(N, l, T, steps, shape)


# ---------------------------------------------------------------------------
# sweep execution


def _valid_l(cfg: ExperimentConfig, N: int) -> list[int]:
    return [l for l in sorted(set(cfg.l_list)) if l <= N // 2]


def _worker_run(spec):
    N, l, T, sput, sample_count = spec
    icfg = IntegratorConfig.for_time(T, sput, sample_count)
    basis = basis_descriptor(N, l)
    traj = anneal(initial_couplings(basis), Schedule(T), icfg)
    return make_key(N, l, T, icfg.steps), traj


def _prefetch(cache: TrajectoryCache, specs, cfg: ExperimentConfig) -> None:
    """Fill the cache for all (N, l, T) specs, in parallel when requested."""
    todo = []
    seen = set()
    for N, l, T in specs:
        icfg = IntegratorConfig.for_time(T, cfg.steps_per_unit_time, cfg.lambda_points)
        key = make_key(N, l, T, icfg.steps)
        if key in seen:
            continue
        seen.add(key)
        if cache._lookup(key, cfg.lambda_points) is None:
            todo.append((N, l, T, cfg.steps_per_unit_time, cfg.lambda_points))
    if not todo:
        return
    workers = int(os.environ.get("IQA_WORKERS", "1"))
    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for key, traj in pool.map(_worker_run, todo):
                cache.store(key, traj)
    else:
        for spec in todo:
            key, traj = _worker_run(spec)
            cache.store(key, traj)


def _pair_specs(cfg: ExperimentConfig):
    for N in sorted(set(cfg.N_list)):
        for l in _valid_l(cfg, N):
            for T in sorted(set(cfg.T_list)):
                yield N, l, T
                yield N, l, 2 * T


def _get(cache: TrajectoryCache, cfg: ExperimentConfig, N: int, l: int, T: float):
    return cache.run(N, l, T, steps_per_unit_time=cfg.steps_per_unit_time,
                     sample_count=cfg.lambda_points)


def _scenario_adiabaticity(cfg, cache):
    _prefetch(cache, _pair_specs(cfg), cfg)
    rows = []
    for N in sorted(set(cfg.N_list)):
        for l in _valid_l(cfg, N):
            for T in sorted(set(cfg.T_list)):
                ta = _get(cache, cfg, N, l, T)
                tb = _get(cache, cfg, N, l, 2 * T)
                for j, lam in enumerate(ta.lams):
                    R = relative_distance(tb.hs[j], ta.hs[j])
                    rows.append((N, l, T, float(lam), R))
    return [("adiabaticity", ("N", "l", "T", "lambda", "R"), rows)]


def _scenario_max_r_scaling(cfg, cache):
    _prefetch(cache, _pair_specs(cfg), cfg)
    rows = []
    for N in sorted(set(cfg.N_list)):
        for l in _valid_l(cfg, N):
            Ts = sorted(set(cfg.T_list))
            peaks = []
            for T in Ts:
                ta = _get(cache, cfg, N, l, T)
                tb = _get(cache, cfg, N, l, 2 * T)
                peaks.append(max_R(ta, tb))
            if len(Ts) >= 2:
                coef = np.polyfit(np.log(Ts), np.log([p[1] for p in peaks]), 1)
                slope = float(coef[0])
            else:
                slope = math.nan
            for T, (lam_star, r_max) in zip(Ts, peaks):
                rows.append((N, l, T, lam_star, r_max, slope))
    return [("max-r-scaling",
             ("N", "l", "T", "lambda_star", "R_max", "fitted_slope"), rows)]


def _scenario_fidelity_map(cfg, cache):
    specs = [(N, l, T) for N in sorted(set(cfg.N_list))
             for l in _valid_l(cfg, N) for T in sorted(set(cfg.T_list))]
    _prefetch(cache, specs, cfg)
    rows = []
    for N, l, T in specs:
        traj = _get(cache, cfg, N, l, T)
        for j, lam in enumerate(traj.lams):
            rep = fidelity(traj.coupling_at(j), float(lam))
            rows.append((N, l, T, float(lam), rep.fidelity, len(rep.degenerate_modes)))
    return [("fidelity-map",
             ("N", "l", "T", "lambda", "fidelity", "degenerate_mode_count"), rows)]


def _scenario_fidelity_vs_l(cfg, cache):
    T = sorted(set(cfg.T_list))[0]
    specs = [(N, l, T) for N in sorted(set(cfg.N_list)) for l in _valid_l(cfg, N)]
    _prefetch(cache, specs, cfg)
    rows = []
    for N, l, _T in specs:
        traj = _get(cache, cfg, N, l, T)
        for lam in FID_VS_L_LAMBDAS:
            j = traj.index_of_lambda(lam)
            rep = fidelity(traj.coupling_at(j), float(traj.lams[j]))
            rows.append((N, l, float(traj.lams[j]), rep.fidelity))
    return [("fidelity-vs-l", ("N", "l", "lambda", "fidelity"), rows)]


def _scenario_l_epsilon(cfg, cache):
    T = sorted(set(cfg.T_list))[0]
    specs = [(N, l, T) for N in sorted(set(cfg.N_list)) for l in range(1, N // 2 + 1)]
    _prefetch(cache, specs, cfg)
    rows = []
    for N in sorted(set(cfg.N_list)):
        ref = _get(cache, cfg, N, 1, T)
        for lam in ref.lams:
            le = l_epsilon(float(lam), N, cfg.epsilon, T, cache=cache,
                           steps_per_unit_time=cfg.steps_per_unit_time,
                           sample_count=cfg.lambda_points)
            rows.append((N, float(lam), cfg.epsilon, le))
    return [("l-epsilon", ("N", "lambda", "epsilon", "l_epsilon"), rows)]


def _scenario_coupling_decay(cfg, cache):
    T = sorted(set(cfg.T_list))[0]
    specs = [(N, N // 2, T) for N in sorted(set(cfg.N_list))]
    _prefetch(cache, specs, cfg)
    rows = []
    for N in sorted(set(cfg.N_list)):
        traj = _get(cache, cfg, N, N // 2, T)
        for lam in DECAY_LAMBDAS:
            j = traj.index_of_lambda(lam)
            profile = range_profile(traj.coupling_at(j))
            for r in range(N // 2 + 1):
                rows.append((N, float(traj.lams[j]), r, profile.norms[r]))
    return [("coupling-decay", ("N", "lambda", "r", "norm_h_r"), rows)]


def _scenario_range_scaling(cfg, cache):
    T = sorted(set(cfg.T_list))[0]
    specs = [(N, N // 2, T) for N in sorted(set(cfg.N_list))]
    _prefetch(cache, specs, cfg)
    rows = []
    for N in sorted(set(cfg.N_list)):
        traj = _get(cache, cfg, N, N // 2, T)
        basis = traj.basis
        for j, lam in enumerate(traj.lams):
            ra_h = r_avg_h(traj.coupling_at(j))
            ra_K = r_avg_K(commutator_matrix(float(lam), basis))
            rows.append((N, float(lam), ra_h, ra_K))
    return [("range-scaling", ("N", "lambda", "r_avg_h", "r_avg_K"), rows)]


def _scenario_oracle_check(cfg, cache):
    rows = []
    for N in sorted(set(cfg.N_list)):
        for l in _valid_l(cfg, N):
            basis = basis_descriptor(N, l)
            for lam in ORACLE_LAMBDAS:
                Ka = commutator_matrix(lam, basis).entries
                Kd = dense_commutator_matrix(lam, N, l)
                k_diff = float(np.max(np.abs(Ka - Kd)))
                rng = np.random.default_rng(100000 * N + 1000 * l + int(100 * lam))
                h = CouplingVector(basis, rng.standard_normal(basis.size))
                fid_diff = abs(fidelity(h, lam).fidelity - dense_ground_overlap(h, lam))
                rows.append((N, l, lam, k_diff, fid_diff))
    return [("oracle-check",
             ("N", "l", "lambda", "max_abs_K_diff", "fidelity_diff"), rows)]


_RUNNERS = {
    "adiabaticity": _scenario_adiabaticity,
    "max-r-scaling": _scenario_max_r_scaling,
    "fidelity-map": _scenario_fidelity_map,
    "fidelity-vs-l": _scenario_fidelity_vs_l,
    "l-epsilon": _scenario_l_epsilon,
    "coupling-decay": _scenario_coupling_decay,
    "range-scaling": _scenario_range_scaling,
    "oracle-check": _scenario_oracle_check,
}


def run(cfg: ExperimentConfig) -> list[ResultTable]:
    """Execute one scenario and write its CSV tables and provenance file.

    All tables are computed before anything is written, so a numerical
    failure leaves no partial outputs behind.
    """
    cfg.validate()
    out_root = Path(os.environ.get("IQA_OUTPUT_DIR", cfg.output_dir))
    cache = TrajectoryCache(out_root / "cache")
    scenario_dir = out_root / cfg.scenario
    try:
        raw_tables = _RUNNERS[cfg.scenario](cfg, cache)
    except Exception:
        if scenario_dir.exists():
            shutil.rmtree(scenario_dir, ignore_errors=True)
        raise
    provenance = {"version": __version__, "backend": backend_info()["selected"],
                  "config": tuple(cfg.echo())}
    tables = [ResultTable(cfg.scenario, name, cols, rows, provenance)
              for name, cols, rows in raw_tables]
    scenario_dir.mkdir(parents=True, exist_ok=True)
    for table in tables:
        (scenario_dir / f"{table.name}.csv").write_text(table.csv_body(), encoding="utf-8")
    _write_provenance(scenario_dir / "provenance.txt", cfg)
    return tables


def _write_provenance(path: Path, cfg: ExperimentConfig) -> None:
    lines = ["# iqa run provenance",
             f"version = {__version__}",
             f"backend = {backend_info()['selected']}",
             f"python = {sys.version.split()[0]}"]
    lines += cfg.echo()
    stamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
    lines.append(f"generated_at = {stamp}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
