"""Parameter sweeps evaluated by either engine and serialised as CSV.

A sweep varies one system parameter over a grid and evaluates named
metrics with the analytical engine, the Monte Carlo engine, or both.
Results come back as a flat list of ``CurvePoint`` rows mirroring the
CSV schema, in grid order regardless of worker scheduling.  Failed
points are kept as NaN rows with a diagnostic on stderr so one bad
parameter combination does not abort a long sweep.
"""

from __future__ import annotations

import csv
import functools
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Callable, Iterable, Sequence, TextIO

from . import montecarlo, rates, secrecy
from .params import SystemParams

__all__ = [
    "SWEEP_PARAMETERS",
    "ENGINES",
    "CSV_COLUMNS",
    "SweepSpec",
    "CurvePoint",
    "analytic_metric",
    "run_sweep",
    "run_preset",
    "write_csv",
    "read_csv",
    "FIG1_GRID",
    "FIG2_GRID",
    "PRESETS",
]

SWEEP_PARAMETERS = ("n_antennas", "lambda_p", "lambda_e", "s_users", "rho")

ENGINE_ANALYTICAL = "analytical"
ENGINE_MONTE_CARLO = "monte_carlo"
ENGINES = (ENGINE_ANALYTICAL, ENGINE_MONTE_CARLO, "both")

CSV_COLUMNS = ("parameter", "value", "metric", "engine", "estimate",
               "err_halfwidth", "trials", "seed")

# Analytical rows carry a deterministic evaluation-accuracy band rather
# than a sampling interval; Monte Carlo rows report the 95% half-width.
_ANALYTIC_ABS_HALFWIDTH = 1e-8
_ANALYTIC_REL_HALFWIDTH = 1e-6

_DEFAULT_TRIALS = 20_000
_MIN_MC_TRIALS = 100
_DEFAULT_WORKERS = 4

# Integer-valued system parameters; grid values must be whole numbers.
_INT_PARAMETERS = frozenset({"n_antennas", "s_users"})


@dataclass(frozen=True)
class SweepSpec:
    """What to sweep: one parameter, a grid, metrics, and the engine."""

    parameter: str
    grid: tuple[float, ...]
    metrics: tuple[str, ...]
    engine: str = "both"
    trials: int = _DEFAULT_TRIALS

    def __post_init__(self) -> None:
        if self.parameter not in SWEEP_PARAMETERS:
            raise ValueError(
                f"unknown sweep parameter {self.parameter!r}; choose from "
                f"{', '.join(SWEEP_PARAMETERS)}")
        if len(self.grid) == 0:
            raise ValueError("sweep grid must not be empty")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("sweep grid must be strictly increasing")
        if self.parameter in _INT_PARAMETERS:
            for v in self.grid:
                if v != int(v):
                    raise ValueError(
                        f"{self.parameter} grid values must be integers, "
                        f"got {v!r}")
        if not self.metrics:
            raise ValueError("sweep needs at least one metric")
        if self.engine not in ENGINES:
            raise ValueError(
                f"unknown engine {self.engine!r}; choose from "
                f"{', '.join(ENGINES)}")
        if self.engine != ENGINE_ANALYTICAL and self.trials < _MIN_MC_TRIALS:
            raise ValueError(
                f"Monte Carlo sweeps need at least {_MIN_MC_TRIALS} trials, "
                f"got {self.trials}")

    @property
    def engines(self) -> tuple[str, ...]:
        if self.engine == "both":
            return (ENGINE_ANALYTICAL, ENGINE_MONTE_CARLO)
        return (self.engine,)


@dataclass(frozen=True)
class CurvePoint:
    """One CSV row of a sweep result."""

    parameter: str
    value: float
    metric: str
    engine: str
    estimate: float
    err_halfwidth: float
    trials: int
    seed: int

    @property
    def ok(self) -> bool:
        return not math.isnan(self.estimate)


# The three outage metrics of one sweep point share a single evaluation;
# the underlying quadratures are deterministic, so caching is safe.
@functools.lru_cache(maxsize=256)
def _cached_outage(params: SystemParams) -> secrecy.SecrecyOutcome:
    return secrecy.secrecy_outage(params)


def analytic_metric(metric: str, params: SystemParams) -> float:
    """Evaluate one named metric with the closed-form engine."""
    name, _, arg = metric.partition(":")
    if name == "assoc_frac_macro":
        return rates.association_probabilities(params).macro
    if name == "assoc_frac_pico":
        return rates.association_probabilities(params).pico
    if name == "ergodic_rate_macro":
        return rates.rate_lower_bound_macro(params)
    if name == "ergodic_rate_pico":
        return rates.ergodic_rate_pico(params)
    if name == "sinr_cdf_pico":
        return rates.cdf_sinr_pico(float(arg), params)
    if name == "eve_cdf_macro":
        return secrecy.cdf_eve_sinr_macro(float(arg), params)
    if name == "eve_cdf_pico":
        return secrecy.cdf_eve_sinr_pico(float(arg), params)
    if name == "secrecy_outage_macro":
        return _cached_outage(params).outage_macro
    if name == "secrecy_outage_pico":
        return _cached_outage(params).outage_pico
    if name == "secrecy_outage_overall":
        return _cached_outage(params).outage_overall
    raise ValueError(f"unknown metric {metric!r}")


def _point_params(base: SystemParams, parameter: str,
                  value: float) -> SystemParams:
    if parameter in _INT_PARAMETERS:
        return base.with_overrides(**{parameter: int(value)})
    return base.with_overrides(**{parameter: value})


def _evaluate(parameter: str, value: float, metric: str, engine: str,
              params: SystemParams, trials: int, seed: int) -> CurvePoint:
    try:
        if engine == ENGINE_ANALYTICAL:
            est = analytic_metric(metric, params)
            half = max(_ANALYTIC_ABS_HALFWIDTH,
                       _ANALYTIC_REL_HALFWIDTH * abs(est))
            return CurvePoint(parameter, value, metric, engine,
                              est, half, 0, seed)
        mc = montecarlo.estimate_metric(metric, params, trials, seed)
        return CurvePoint(parameter, value, metric, engine,
                          mc.value, mc.half_width, mc.trials, seed)
    except Exception as exc:  # noqa: BLE001 - one bad point must not kill the sweep
        print(f"sweep point failed: {parameter}={value:g} {metric} "
              f"[{engine}]: {exc}", file=sys.stderr)
        return CurvePoint(parameter, value, metric, engine,
                          math.nan, math.nan,
                          trials if engine == ENGINE_MONTE_CARLO else 0, seed)


def run_sweep(spec: SweepSpec, base: SystemParams | None = None,
              seed: int = 0, max_workers: int = _DEFAULT_WORKERS,
              point_params: Callable[[SystemParams, float],
                                     SystemParams] | None = None,
              point_trials: Callable[[float], int] | None = None
              ) -> list[CurvePoint]:
    """Evaluate a sweep and return rows in grid order.

    ``point_params`` and ``point_trials`` let presets attach per-point
    tuning (simulation window, realization budget) without changing the
    public schema; by default each point just overrides the swept field.
    Points are dispatched to a bounded thread pool; the returned order
    is (grid value, metric, engine) regardless of completion order.
    """
    if base is None:
        base = SystemParams()
    if max_workers < 1:
        raise ValueError("max_workers must be positive")
    tasks = []
    for value in spec.grid:
        try:
            params = point_params(base, value) if point_params is not None \
                else _point_params(base, spec.parameter, value)
            bad = None
        except Exception as exc:  # noqa: BLE001 - keep sweeping past bad points
            params, bad = base, exc
        trials = point_trials(value) if point_trials is not None \
            else spec.trials
        for metric in spec.metrics:
            for engine in spec.engines:
                tasks.append((spec.parameter, value, metric, engine,
                              params, trials, seed, bad))

    def work(task) -> CurvePoint:
        parameter, value, metric, engine, params, trials, seed_, bad_ = task
        if bad_ is not None:
            print(f"sweep point failed: {parameter}={value:g} {metric} "
                  f"[{engine}]: {bad_}", file=sys.stderr)
            return CurvePoint(parameter, value, metric, engine,
                              math.nan, math.nan, 0, seed_)
        return _evaluate(parameter, value, metric, engine, params,
                         trials, seed_)

    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(work, tasks))


# ---------------------------------------------------------------------------
# CSV serialisation

def write_csv(target: str | TextIO, points: Iterable[CurvePoint],
              timestamp: bool = True) -> None:
    """Write sweep rows as CSV with a header.

    A leading ``#`` comment carries the wall-clock time for provenance;
    it is the one line excluded from reproducibility comparisons, and
    ``timestamp=False`` suppresses it entirely.
    """
    own = isinstance(target, str)
    fh = open(target, "w", newline="") if own else target
    try:
        if timestamp:
            stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
            fh.write(f"# generated {stamp}\n")
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for pt in points:
            writer.writerow([pt.parameter, repr(float(pt.value)), pt.metric,
                             pt.engine, repr(float(pt.estimate)),
                             repr(float(pt.err_halfwidth)),
                             pt.trials, pt.seed])
    finally:
        if own:
            fh.close()


def read_csv(source: str | TextIO) -> list[CurvePoint]:
    """Read rows written by :func:`write_csv`, skipping ``#`` comments."""
    own = isinstance(source, str)
    fh = open(source, newline="") if own else source
    try:
        rows = [r for r in csv.reader(fh)
                if r and not r[0].lstrip().startswith("#")]
    finally:
        if own:
            fh.close()
    if not rows:
        raise ValueError("CSV holds no header row")
    header = tuple(rows[0])
    if header != CSV_COLUMNS:
        raise ValueError(
            f"unexpected CSV header {header!r}; expected {CSV_COLUMNS!r}")
    points = []
    for row in rows[1:]:
        if len(row) != len(CSV_COLUMNS):
            raise ValueError(f"malformed CSV row: {row!r}")
        points.append(CurvePoint(
            parameter=row[0], value=float(row[1]), metric=row[2],
            engine=row[3], estimate=float(row[4]),
            err_halfwidth=float(row[5]), trials=int(row[6]),
            seed=int(row[7])))
    return points


# ---------------------------------------------------------------------------
# Presets

FIG1_GRID = (50, 100, 150, 200, 250, 300)

FIG2_GRID = tuple(10.0 ** (-4.0 + 0.5 * i) for i in range(9))

# Monte Carlo windows for the density sweep shrink as the pico tier
# densifies: interference then becomes short-range, and a smaller disc
# keeps the eavesdropper-station pair count (the cost driver) bounded.
# Realization budgets grow where outage levels are near 0 or 1 so the
# trend comparisons stay above the sampling noise.
_FIG2_WINDOWS = ((1e-3, 120.0), (1e-2, 100.0), (1e-1, 60.0),
                 (math.inf, 40.0))
_FIG2_TRIALS = ((1e-3, 4000), (1e-2, 2000), (1e-1, 1200), (math.inf, 600))


def _tiered(table: Sequence[tuple[float, float]], lambda_p: float) -> float:
    for cutoff, setting in table:
        if lambda_p <= cutoff:
            return setting
    raise AssertionError("tier table must end with an infinite cutoff")


def fig1_spec(engine: str = "both",
              trials: int = _DEFAULT_TRIALS) -> SweepSpec:
    """Antenna-count sweep of both tiers' user rates."""
    return SweepSpec(parameter="n_antennas", grid=FIG1_GRID,
                     metrics=("ergodic_rate_macro", "ergodic_rate_pico"),
                     engine=engine, trials=trials)


def fig2_spec(engine: str = "both", trials: int | None = None) -> SweepSpec:
    """Pico-density sweep of the secrecy outage probabilities."""
    return SweepSpec(parameter="lambda_p", grid=FIG2_GRID,
                     metrics=("secrecy_outage_macro", "secrecy_outage_pico",
                              "secrecy_outage_overall"),
                     engine=engine,
                     trials=_DEFAULT_TRIALS if trials is None else trials)


PRESETS = ("fig1", "fig2")


def run_preset(name: str, base: SystemParams | None = None,
               engine: str = "both", trials: int | None = None,
               seed: int = 0,
               max_workers: int = _DEFAULT_WORKERS) -> list[CurvePoint]:
    """Run one of the named sweep presets and return its rows.

    ``trials`` overrides the preset's per-point realization budget when
    given; the density preset otherwise chooses budget and simulation
    window per point.
    """
    if base is None:
        base = SystemParams()
    if name == "fig1":
        spec = fig1_spec(engine=engine,
                         trials=_DEFAULT_TRIALS if trials is None else trials)
        base = base.with_overrides(sim_radius=base.sim_radius or 100.0)
        return run_sweep(spec, base, seed=seed, max_workers=max_workers)
    if name == "fig2":
        spec = fig2_spec(engine=engine, trials=trials)

        def tuned_params(b: SystemParams, lam: float) -> SystemParams:
            return b.with_overrides(lambda_p=lam,
                                    sim_radius=_tiered(_FIG2_WINDOWS, lam))

        tuned_trials = None if trials is not None else \
            (lambda lam: int(_tiered(_FIG2_TRIALS, lam)))
        return run_sweep(spec, base, seed=seed, max_workers=max_workers,
                         point_params=tuned_params,
                         point_trials=tuned_trials)
    raise ValueError(f"unknown preset {name!r}; choose from {PRESETS}")
