"""Monte Carlo engine for the two-tier downlink and its eavesdroppers.

Two layers live here.  The single-trial functions (sample a realization,
associate the origin user, draw one SINR) are the readable reference
implementation of the model; the batch drivers vectorise the same model
over thousands of trials with flat arrays and segment reductions, and the
test suite checks the two layers agree in distribution.

Reproducibility: work is split into fixed-size partitions of
``PARTITION_TRIALS`` trials, each with its own generator seeded from
(seed, context tag, partition index).  Estimates therefore do not depend
on how partitions are scheduled, and rejected trials never shift the
random draws of later partitions.

Simulations run in a finite disc (``SystemParams.effective_sim_radius``),
so far-field interference beyond the window is absent; the window
defaults are chosen to keep that truncation below the statistical noise
of the supported trial counts.
"""

from __future__ import annotations

import functools
import math
import zlib
from dataclasses import dataclass

import numpy as np

from .params import SystemParams, Tier
from .rates import (association_probabilities, ergodic_rate_pico,
                    rate_lower_bound_macro)

__all__ = [
    "PARTITION_TRIALS",
    "EmptyRealizationError",
    "PppRealization",
    "Association",
    "TrialResult",
    "MetricEstimate",
    "sample_ppp",
    "sample_realization",
    "associate",
    "simulate_user_sinr",
    "simulate_eve_max_sinr",
    "simulate_trial",
    "estimate_association",
    "sample_user_sinr",
    "sample_eve_max_sinr",
    "estimate_metric",
    "MC_METRICS",
]

PARTITION_TRIALS = 1024

# How many times an empty-window draw is repeated before giving up, and the
# cap on partitions burnt while rejection-conditioning on one tier.
_MAX_EMPTY_REDRAWS = 100
_MAX_REJECTION_FACTOR = 200

# Pairwise eavesdropper-station matrices are processed in chunks of at most
# this many elements to bound peak memory.
_EVE_CHUNK_ELEMENTS = 20_000_000

_CONFIDENCE_FACTOR = 1.96  # normal 95% half-width reported in estimates


class EmptyRealizationError(RuntimeError):
    """The simulation window kept coming up empty of base stations."""


def _partition_rng(seed: int, context: str, partition: int) -> np.random.Generator:
    tag = zlib.crc32(context.encode("utf-8"))
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence((seed, tag, partition))))


@dataclass(frozen=True)
class PppRealization:
    """One draw of the three point processes inside a disc window."""

    macro_xy: np.ndarray
    pico_xy: np.ndarray
    eve_xy: np.ndarray
    radius: float

    @property
    def macro_r(self) -> np.ndarray:
        return np.hypot(self.macro_xy[:, 0], self.macro_xy[:, 1])

    @property
    def pico_r(self) -> np.ndarray:
        return np.hypot(self.pico_xy[:, 0], self.pico_xy[:, 1])


@dataclass(frozen=True)
class Association:
    """Outcome of the biased max-power attachment rule at the origin."""

    tier: Tier
    distance: float
    index: int


@dataclass(frozen=True)
class TrialResult:
    tier: Tier
    serving_distance: float
    sinr: float


@dataclass(frozen=True)
class MetricEstimate:
    """A Monte Carlo point estimate with its sampling uncertainty."""

    metric: str
    value: float
    se: float
    trials: int
    seed: int

    @property
    def half_width(self) -> float:
        """Normal-approximation 95% half-width."""
        return _CONFIDENCE_FACTOR * self.se


def sample_ppp(rng: np.random.Generator, density: float,
               radius: float) -> np.ndarray:
    """Draw one Poisson process on a disc, returned as an (n, 2) array."""
    if density < 0.0:
        raise ValueError(f"density must be >= 0, got {density}")
    n = rng.poisson(density * math.pi * radius * radius)
    r = radius * np.sqrt(rng.random(n))
    theta = rng.uniform(0.0, 2.0 * math.pi, n)
    return np.column_stack((r * np.cos(theta), r * np.sin(theta)))


def sample_realization(rng: np.random.Generator, params: SystemParams,
                       include_eves: bool = True) -> PppRealization:
    """Draw the base-station tiers (and optionally eavesdroppers).

    Redraws when both station tiers come up empty, since the origin user
    then has nothing to attach to; persistent emptiness raises.
    """
    radius = params.effective_sim_radius()
    for _ in range(_MAX_EMPTY_REDRAWS):
        macro = sample_ppp(rng, params.lambda_m, radius)
        pico = sample_ppp(rng, params.lambda_p, radius)
        if len(macro) or len(pico):
            eve = sample_ppp(rng, params.lambda_e, radius) if include_eves \
                else np.empty((0, 2))
            return PppRealization(macro_xy=macro, pico_xy=pico,
                                  eve_xy=eve, radius=radius)
    raise EmptyRealizationError(
        f"no base stations after {_MAX_EMPTY_REDRAWS} redraws "
        f"(window radius {radius:.3g})")


def associate(realization: PppRealization, params: SystemParams) -> Association:
    """Attach the origin user to the strongest biased mean received power.

    The macro tier's candidate power carries the beamforming gain and the
    per-stream power split; path-loss intercepts cancel between tiers.
    Exact power ties resolve to the macro tier.
    """
    macro_r = realization.macro_r
    pico_r = realization.pico_r
    best_m = float(macro_r.min()) if macro_r.size else math.inf
    best_p = float(pico_r.min()) if pico_r.size else math.inf
    power_m = params.array_gain * params.p_macro_per_user_w \
        * best_m ** (-params.alpha_macro) if best_m < math.inf else 0.0
    power_p = params.p_pico_w * best_p ** (-params.alpha_pico) \
        if best_p < math.inf else 0.0
    if power_m == 0.0 and power_p == 0.0:
        raise EmptyRealizationError("no base station to associate with")
    if power_m >= power_p:
        return Association(tier=Tier.MACRO, distance=best_m,
                           index=int(macro_r.argmin()))
    return Association(tier=Tier.PICO, distance=best_p,
                       index=int(pico_r.argmin()))


def _interference_to_point(realization: PppRealization,
                           params: SystemParams,
                           rng: np.random.Generator,
                           exclude_tier: Tier | None,
                           exclude_index: int,
                           macro_dist: np.ndarray | None = None,
                           pico_dist: np.ndarray | None = None) -> float:
    """Aggregate interference at one location from both station tiers.

    Distances default to station distances from the origin; eavesdropper
    callers pass their own.  Every macro station radiates S streams with a
    combined gamma(S) gain at per-stream power; pico stations radiate a
    single exponential-gain stream at full power.
    """
    beta = params.beta_pl
    total = 0.0
    d_m = realization.macro_r if macro_dist is None else macro_dist
    if d_m.size:
        gains = rng.gamma(params.s_users, size=d_m.size)
        terms = params.p_macro_per_user_w * gains * beta \
            * d_m ** (-params.alpha_macro)
        if exclude_tier is Tier.MACRO:
            terms[exclude_index] = 0.0
        total += float(terms.sum())
    d_p = realization.pico_r if pico_dist is None else pico_dist
    if d_p.size:
        gains = rng.standard_exponential(d_p.size)
        terms = params.p_pico_w * gains * beta * d_p ** (-params.alpha_pico)
        if exclude_tier is Tier.PICO:
            terms[exclude_index] = 0.0
        total += float(terms.sum())
    return total


def simulate_user_sinr(realization: PppRealization, assoc: Association,
                       params: SystemParams,
                       rng: np.random.Generator) -> float:
    """One SINR draw for the origin user given its attachment.

    Macro attachment enjoys the beamforming gain (gamma with shape
    N - S + 1) and, by zero-forcing, no interference from the serving
    station's other streams; pico attachment has an exponential signal
    gain.  All other stations of both tiers interfere.
    """
    beta = params.beta_pl
    if assoc.tier is Tier.MACRO:
        gain = rng.gamma(params.array_gain)
        signal = params.p_macro_per_user_w * gain * beta \
            * assoc.distance ** (-params.alpha_macro)
    else:
        gain = rng.standard_exponential()
        signal = params.p_pico_w * gain * beta \
            * assoc.distance ** (-params.alpha_pico)
    interference = _interference_to_point(
        realization, params, rng, assoc.tier, assoc.index)
    return signal / (interference + params.noise_w)


def simulate_eve_max_sinr(realization: PppRealization, params: SystemParams,
                          tier: Tier, rng: np.random.Generator) -> float:
    """Largest eavesdropper SINR on a tapped transmission from the origin.

    The tapped station sits at the origin and is not part of the drawn
    point processes, so every station of the realization interferes; by
    stationarity the eavesdroppers around it see the tapped tier's
    typical transmission.  Each eavesdropper receives the tapped stream
    with an exponential gain; a tapped macro station also hits it with
    its other S - 1 streams at the same path loss.  Returns 0 when the
    window holds no eavesdroppers.
    """
    eve_xy = realization.eve_xy
    if len(eve_xy) == 0:
        return 0.0
    if tier is Tier.MACRO:
        alpha_s = params.alpha_macro
        power_s = params.p_macro_per_user_w
    else:
        alpha_s = params.alpha_pico
        power_s = params.p_pico_w
    beta = params.beta_pl
    d_serv = np.hypot(eve_xy[:, 0], eve_xy[:, 1])
    d_serv = np.maximum(d_serv, 1e-12)
    path_serv = beta * d_serv ** (-alpha_s)
    signal = power_s * rng.standard_exponential(len(eve_xy)) * path_serv
    if tier is Tier.MACRO and params.s_users > 1:
        intra = power_s * rng.gamma(params.s_users - 1.0,
                                    size=len(eve_xy)) * path_serv
    else:
        intra = np.zeros(len(eve_xy))

    interference = np.zeros(len(eve_xy))
    for sites, alpha, per_site_power, shape in (
            (realization.macro_xy, params.alpha_macro,
             params.p_macro_per_user_w, float(params.s_users)),
            (realization.pico_xy, params.alpha_pico,
             params.p_pico_w, 1.0)):
        if len(sites) == 0:
            continue
        chunk = max(1, _EVE_CHUNK_ELEMENTS // max(1, len(sites)))
        for lo in range(0, len(eve_xy), chunk):
            hi = min(lo + chunk, len(eve_xy))
            d = np.hypot(eve_xy[lo:hi, None, 0] - sites[None, :, 0],
                         eve_xy[lo:hi, None, 1] - sites[None, :, 1])
            d = np.maximum(d, 1e-12)
            gains = rng.gamma(shape, size=d.shape) if shape != 1.0 \
                else rng.standard_exponential(d.shape)
            interference[lo:hi] += per_site_power * beta \
                * (gains * d ** (-alpha)).sum(axis=1)

    sinr = signal / (interference + intra + params.noise_w)
    return float(sinr.max())


def simulate_trial(params: SystemParams,
                   rng: np.random.Generator) -> TrialResult:
    """Sample one full network draw and the origin user's SINR."""
    realization = sample_realization(rng, params, include_eves=False)
    assoc = associate(realization, params)
    sinr = simulate_user_sinr(realization, assoc, params, rng)
    return TrialResult(tier=assoc.tier, serving_distance=assoc.distance,
                       sinr=sinr)


# ---------------------------------------------------------------------------
# Batch drivers


def _segment_min(values: np.ndarray, counts: np.ndarray,
                 fill: float = np.inf) -> np.ndarray:
    """Minimum of each of len(counts) consecutive segments of ``values``.

    Empty segments yield ``fill``.  Implemented with a reduceat over the
    sentinel-padded flat array; the sentinel keeps the final offset valid
    and cannot win a minimum because it equals ``fill``.
    """
    n_seg = len(counts)
    out = np.full(n_seg, fill, dtype=float)
    if values.size == 0 or n_seg == 0:
        return out
    offsets = np.zeros(n_seg, dtype=np.int64)
    np.cumsum(counts[:-1], out=offsets[1:])
    padded = np.append(values, fill)
    mins = np.minimum.reduceat(padded, offsets)
    return np.where(counts > 0, mins, fill)


def _segment_sum(values: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """Sum of each consecutive segment; empty segments yield 0."""
    n_seg = len(counts)
    if values.size == 0 or n_seg == 0:
        return np.zeros(n_seg)
    offsets = np.zeros(n_seg, dtype=np.int64)
    np.cumsum(counts[:-1], out=offsets[1:])
    padded = np.append(values, 0.0)
    sums = np.add.reduceat(padded, offsets)
    return np.where(counts > 0, sums, 0.0)


def _segment_argmin(values: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """Flat index of each segment's first minimum; -1 for empty segments."""
    n_seg = len(counts)
    out = np.full(n_seg, -1, dtype=np.int64)
    if values.size == 0 or n_seg == 0:
        return out
    mins = _segment_min(values, counts)
    seg_ids = np.repeat(np.arange(n_seg), counts)
    hits = np.flatnonzero(values == mins[seg_ids])
    first_seg, first_pos = np.unique(seg_ids[hits], return_index=True)
    out[first_seg] = hits[first_pos]
    return out


def _min_distance_sq(rng: np.random.Generator, counts: np.ndarray,
                     radius: float) -> np.ndarray:
    """Squared distance to the nearest of ``counts`` uniform disc points.

    Squared radii of disc-uniform points are uniform on (0, R^2), so the
    minimum over k points is R^2 times a Beta(1, k) variate, sampled by
    inversion; empty rows give infinity.
    """
    u = rng.random(len(counts))
    with np.errstate(divide="ignore"):
        mins = radius * radius * (1.0 - (1.0 - u) ** (1.0 / counts))
    return np.where(counts > 0, mins, np.inf)


def _association_partition(rng: np.random.Generator, count: int,
                           params: SystemParams,
                           radius: float) -> tuple[int, int]:
    """Count macro/pico attachments among ``count`` trials."""
    mu_m = params.lambda_m * math.pi * radius * radius
    mu_p = params.lambda_p * math.pi * radius * radius
    n_m = rng.poisson(mu_m, count)
    n_p = rng.poisson(mu_p, count)
    d2_m = _min_distance_sq(rng, n_m, radius)
    d2_p = _min_distance_sq(rng, n_p, radius)
    for _ in range(_MAX_EMPTY_REDRAWS):
        empty = np.isinf(d2_m) & np.isinf(d2_p)
        if not empty.any():
            break
        k = int(empty.sum())
        n_m[empty] = rng.poisson(mu_m, k)
        n_p[empty] = rng.poisson(mu_p, k)
        d2_m[empty] = _min_distance_sq(rng, n_m[empty], radius)
        d2_p[empty] = _min_distance_sq(rng, n_p[empty], radius)
    else:
        raise EmptyRealizationError(
            f"window radius {radius:.3g} keeps coming up empty")
    am, ap = params.alpha_macro, params.alpha_pico
    with np.errstate(divide="ignore"):
        power_m = np.where(
            np.isfinite(d2_m),
            params.array_gain * params.p_macro_per_user_w
            * d2_m ** (-am / 2.0), 0.0)
        power_p = np.where(
            np.isfinite(d2_p),
            params.p_pico_w * d2_p ** (-ap / 2.0), 0.0)
    macro_wins = power_m >= power_p
    n_macro = int(macro_wins.sum())
    return n_macro, count - n_macro


def estimate_association(params: SystemParams, trials: int,
                         seed: int = 0) -> tuple[MetricEstimate, MetricEstimate]:
    """Monte Carlo attachment probabilities (macro, pico) of the origin user."""
    if trials < 1:
        raise ValueError("trials must be positive")
    radius = params.effective_sim_radius()
    macro_hits = 0
    done = 0
    part = 0
    while done < trials:
        count = min(PARTITION_TRIALS, trials - done)
        rng = _partition_rng(seed, "association", part)
        n_macro, _ = _association_partition(rng, count, params, radius)
        macro_hits += n_macro
        done += count
        part += 1
    p_macro = macro_hits / trials
    se = math.sqrt(max(p_macro * (1.0 - p_macro), 1.0 / trials) / trials)
    return (
        MetricEstimate("assoc_frac_macro", p_macro, se, trials, seed),
        MetricEstimate("assoc_frac_pico", 1.0 - p_macro, se, trials, seed),
    )


def _user_sinr_partition(rng: np.random.Generator, count: int,
                         params: SystemParams, tier: Tier,
                         radius: float) -> np.ndarray:
    """SINR draws for the trials of one partition that attach to ``tier``."""
    mu_m = params.lambda_m * math.pi * radius * radius
    mu_p = params.lambda_p * math.pi * radius * radius
    beta = params.beta_pl
    am, ap = params.alpha_macro, params.alpha_pico
    ppu = params.p_macro_per_user_w

    n_m = rng.poisson(mu_m, count)
    n_p = rng.poisson(mu_p, count)
    r2_m = radius * radius * rng.random(int(n_m.sum()))
    r2_p = radius * radius * rng.random(int(n_p.sum()))
    gain_m = rng.gamma(float(params.s_users), size=r2_m.size)
    gain_p = rng.standard_exponential(r2_p.size)
    signal_gain_m = rng.gamma(float(params.array_gain), size=count)
    signal_gain_p = rng.standard_exponential(count)

    d2_m = _segment_min(r2_m, n_m)
    d2_p = _segment_min(r2_p, n_p)
    with np.errstate(divide="ignore"):
        power_m = np.where(np.isfinite(d2_m),
                           params.array_gain * ppu * d2_m ** (-am / 2.0), 0.0)
        power_p = np.where(np.isfinite(d2_p),
                           params.p_pico_w * d2_p ** (-ap / 2.0), 0.0)
    # Trials where both tiers are empty have no attachment and are simply
    # dropped here; the estimators condition on the requested tier anyway.
    served = (power_m > 0.0) | (power_p > 0.0)
    attach_macro = (power_m >= power_p) & served
    accepted = attach_macro if tier is Tier.MACRO else (~attach_macro & served)

    term_m = ppu * beta * gain_m * r2_m ** (-am / 2.0)
    term_p = params.p_pico_w * beta * gain_p * r2_p ** (-ap / 2.0)
    i_macro = _segment_sum(term_m, n_m)
    i_pico = _segment_sum(term_p, n_p)

    arg_m = _segment_argmin(r2_m, n_m)
    arg_p = _segment_argmin(r2_p, n_p)

    if tier is Tier.MACRO:
        idx = np.flatnonzero(accepted)
        if idx.size == 0:
            return np.empty(0)
        d2 = d2_m[idx]
        signal = ppu * beta * signal_gain_m[idx] * d2 ** (-am / 2.0)
        interference = i_macro[idx] - term_m[arg_m[idx]] + i_pico[idx]
    else:
        idx = np.flatnonzero(accepted)
        if idx.size == 0:
            return np.empty(0)
        d2 = d2_p[idx]
        signal = params.p_pico_w * beta * signal_gain_p[idx] \
            * d2 ** (-ap / 2.0)
        interference = i_pico[idx] - term_p[arg_p[idx]] + i_macro[idx]
    return signal / (interference + params.noise_w)


def sample_user_sinr(params: SystemParams, tier: Tier, trials: int,
                     seed: int = 0) -> np.ndarray:
    """SINR samples of the origin user conditioned on attaching to a tier.

    Partitions are consumed until ``trials`` accepted samples accumulate;
    a cap proportional to 1/acceptance guards against conditioning on a
    tier the parameters almost never select.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    radius = params.effective_sim_radius()
    chunks: list[np.ndarray] = []
    accepted = 0
    max_parts = _MAX_REJECTION_FACTOR * (1 + trials // PARTITION_TRIALS)
    part = 0
    while accepted < trials:
        if part >= max_parts:
            raise EmptyRealizationError(
                f"tier {tier} accepted only {accepted} of the requested "
                f"{trials} trials after {part} partitions; its attachment "
                f"probability is too small to condition on")
        rng = _partition_rng(seed, f"user_sinr_{tier.value}", part)
        got = _user_sinr_partition(rng, PARTITION_TRIALS, params, tier, radius)
        if got.size:
            chunks.append(got)
            accepted += got.size
        part += 1
    return np.concatenate(chunks)[:trials]


def sample_eve_max_sinr(params: SystemParams, tier: Tier, realizations: int,
                        seed: int = 0) -> np.ndarray:
    """Max-eavesdropper-SINR samples for a tapped tier.

    Each realization tags a transmitter of the requested tier at the
    origin, draws the station and eavesdropper processes around it, and
    records the largest eavesdropper SINR on the tapped stream.  There is
    no attachment step, so every realization counts; one generator per
    realization keeps the samples independent of evaluation order.
    """
    if realizations < 1:
        raise ValueError("realizations must be positive")
    radius = params.effective_sim_radius()
    out = np.empty(realizations)
    context = f"eve_{tier.value}"
    for i in range(realizations):
        rng = _partition_rng(seed, context, i)
        realization = PppRealization(
            macro_xy=sample_ppp(rng, params.lambda_m, radius),
            pico_xy=sample_ppp(rng, params.lambda_p, radius),
            eve_xy=sample_ppp(rng, params.lambda_e, radius),
            radius=radius)
        out[i] = simulate_eve_max_sinr(realization, params, tier, rng)
    return out


# ---------------------------------------------------------------------------
# Metric dispatch

MC_METRICS = (
    "assoc_frac_macro",
    "assoc_frac_pico",
    "ergodic_rate_macro",
    "ergodic_rate_pico",
    "sinr_cdf_pico:<gamma>",
    "eve_cdf_macro:<gamma>",
    "eve_cdf_pico:<gamma>",
    "secrecy_outage_macro",
    "secrecy_outage_pico",
    "secrecy_outage_overall",
)


@functools.lru_cache(maxsize=64)
def _cached_user_sinr(params: SystemParams, tier: Tier, trials: int,
                      seed: int) -> np.ndarray:
    return sample_user_sinr(params, tier, trials, seed)


@functools.lru_cache(maxsize=64)
def _cached_eve_max(params: SystemParams, tier: Tier, realizations: int,
                    seed: int) -> np.ndarray:
    return sample_eve_max_sinr(params, tier, realizations, seed)


@functools.lru_cache(maxsize=64)
def _cached_association(params: SystemParams, trials: int,
                        seed: int) -> tuple[MetricEstimate, MetricEstimate]:
    return estimate_association(params, trials, seed)


def _binomial_estimate(metric: str, hits: np.ndarray, trials: int,
                       seed: int) -> MetricEstimate:
    p = float(hits.mean())
    se = math.sqrt(max(p * (1.0 - p), 1.0 / trials) / trials)
    return MetricEstimate(metric, p, se, trials, seed)


def _mean_estimate(metric: str, values: np.ndarray,
                   seed: int) -> MetricEstimate:
    value = float(values.mean())
    se = float(values.std(ddof=1) / math.sqrt(values.size)) \
        if values.size > 1 else math.inf
    return MetricEstimate(metric, value, se, values.size, seed)


def _outage_estimate(metric: str, tier: Tier, params: SystemParams,
                     trials: int, seed: int) -> MetricEstimate:
    """Fraction of realizations where the wiretap margin fails.

    The transmission rate is the analytical one for the tier, so this
    estimate isolates Monte Carlo noise in the eavesdropper side; outage
    is declared when the strongest eavesdropper could decode at or above
    the redundancy rate left after the secrecy rate is reserved.
    """
    if tier is Tier.MACRO:
        rate = rate_lower_bound_macro(params)
    else:
        rate = ergodic_rate_pico(params)
    redundancy = rate - params.rho * rate
    threshold = 2.0 ** redundancy - 1.0
    samples = _cached_eve_max(params, tier, trials, seed)
    return _binomial_estimate(metric, samples >= threshold, trials, seed)


def estimate_metric(metric: str, params: SystemParams, trials: int,
                    seed: int = 0) -> MetricEstimate:
    """Monte Carlo estimate of a named metric.

    Metric names follow ``MC_METRICS``; the CDF metrics carry their
    threshold after a colon (for example ``eve_cdf_macro:0.5``).  Sample
    sets are cached per (parameters, tier, trials, seed), so evaluating a
    CDF on a grid of thresholds reuses one simulation run.
    """
    name, _, arg = metric.partition(":")
    if name in ("assoc_frac_macro", "assoc_frac_pico"):
        macro_est, pico_est = _cached_association(params, trials, seed)
        return macro_est if name == "assoc_frac_macro" else pico_est
    if name in ("ergodic_rate_macro", "ergodic_rate_pico"):
        tier = Tier.MACRO if name == "ergodic_rate_macro" else Tier.PICO
        sinr = _cached_user_sinr(params, tier, trials, seed)
        return _mean_estimate(metric, np.log2(1.0 + sinr), seed)
    if name == "sinr_cdf_pico":
        gamma = float(arg)
        sinr = _cached_user_sinr(params, Tier.PICO, trials, seed)
        return _binomial_estimate(metric, sinr <= gamma, trials, seed)
    if name in ("eve_cdf_macro", "eve_cdf_pico"):
        gamma = float(arg)
        tier = Tier.MACRO if name == "eve_cdf_macro" else Tier.PICO
        samples = _cached_eve_max(params, tier, trials, seed)
        return _binomial_estimate(metric, samples <= gamma, trials, seed)
    if name in ("secrecy_outage_macro", "secrecy_outage_pico"):
        tier = Tier.MACRO if name == "secrecy_outage_macro" else Tier.PICO
        return _outage_estimate(metric, tier, params, trials, seed)
    if name == "secrecy_outage_overall":
        # Tier weights come from the analytical attachment probabilities;
        # the per-tier outage estimates carry all the sampling noise.
        assoc = association_probabilities(params)
        out_m = _outage_estimate("secrecy_outage_macro", Tier.MACRO, params,
                                 trials, seed)
        if params.lambda_p == 0.0:
            return MetricEstimate(metric, out_m.value, out_m.se, trials, seed)
        out_p = _outage_estimate("secrecy_outage_pico", Tier.PICO, params,
                                 trials, seed)
        value = assoc.macro * out_m.value + assoc.pico * out_p.value
        se = math.sqrt((assoc.macro * out_m.se) ** 2
                       + (assoc.pico * out_p.se) ** 2)
        return MetricEstimate(metric, value, se, trials, seed)
    raise ValueError(
        f"unknown metric {metric!r}; supported: {', '.join(MC_METRICS)}")
