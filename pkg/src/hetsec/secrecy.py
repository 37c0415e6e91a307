"""Eavesdropper SINR distributions and secrecy outage probabilities.

The strongest eavesdropper of a tier's transmission is characterised
through the CDF of the maximum SINR over a Poisson field of single-antenna
eavesdroppers.  Treating the per-eavesdropper intercept events as
independent lets the point process average collapse to an exponential of
an intercept-area integral; that independence step is the only
approximation in the chain and is validated against simulation in the
acceptance tests.

Outage combines a tier's user rate with the eavesdropper CDF at the
wiretap threshold 2^(R - r_s) - 1: secrecy fails when the strongest
eavesdropper could decode at a rate exceeding the redundancy R - r_s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import SystemParams
from .rates import (
    association_probabilities,
    ergodic_rate_pico,
    rate_lower_bound_macro,
)
from .special import QuadratureConfig, cosecant, integrate_semi_infinite

__all__ = [
    "SecrecyOutcome",
    "cdf_eve_sinr_macro",
    "cdf_eve_sinr_pico",
    "secrecy_outage_macro",
    "secrecy_outage_pico",
    "secrecy_outage",
]


def _field_coefficient(alpha: float, streams: int) -> float:
    """Interference field constant of a tier seen by an eavesdropper.

    Value of (1/alpha) * sum_k C(s,k) Gamma(k - m) Gamma(s - k + m) /
    Gamma(s) at m = 2/alpha, reduced to the closed form
    pi * csc(pi m) * Gamma(s + m) / (alpha * Gamma(1 + m) * Gamma(s)).
    Multiplied by density and the (power-scaled threshold)^m it gives the
    quadratic-in-distance exponent of that tier's Laplace transform.
    """
    m = 2.0 / alpha
    ratio = math.exp(math.lgamma(streams + m) - math.lgamma(streams)
                     - math.lgamma(1.0 + m))
    return math.pi * cosecant(math.pi * m) * ratio / alpha


def _intercept_area(coef_a: float, exp_a: float,
                    coef_b: float, exp_b: float,
                    coef_quad: float,
                    config: QuadratureConfig | None) -> float:
    """Integral of x * exp(-(a x^ea + b x^eb + q x^2)) over (0, inf).

    One eavesdropper's intercept probability at distance x decomposes
    into three power-law exponents (noise plus the two interference
    fields); whichever field shares the tapped tier's path-loss exponent
    produces the quadratic term.
    """

    def integrand(x: float) -> float:
        expo = coef_quad * x * x
        if coef_a > 0.0:
            expo += coef_a * x ** exp_a
        if coef_b > 0.0:
            expo += coef_b * x ** exp_b
        return x * math.exp(-expo)

    return integrate_semi_infinite(integrand, config)


def cdf_eve_sinr_macro(gamma: float, params: SystemParams,
                       config: QuadratureConfig | None = None) -> float:
    """CDF of the strongest eavesdropper's SINR on a macro transmission.

    The tapped stream carries power P_M / S; the same station's other
    S - 1 streams hit the eavesdropper with the same path loss, giving
    the distance-free factor (1 + gamma)^-(S-1) inside the intercept
    probability.  Macro and pico interference fields contribute
    power-law exponents in the eavesdropper distance.
    """
    if gamma < 0.0:
        return 0.0
    if params.lambda_e == 0.0:
        return 1.0
    if gamma == 0.0:
        return 0.0
    am, ap = params.alpha_macro, params.alpha_pico
    s = params.s_users
    coef_noise = gamma * s * params.noise_w / (params.beta_pl
                                               * params.p_macro_w)
    coef_macro = 2.0 * math.pi * params.lambda_m \
        * gamma ** (2.0 / am) * _field_coefficient(am, s)
    coef_pico = 2.0 * math.pi * params.lambda_p \
        * (gamma * s * params.p_pico_w / params.p_macro_w) ** (2.0 / ap) \
        * _field_coefficient(ap, 1)
    area = _intercept_area(coef_noise, am, coef_pico, 2.0 * am / ap,
                           coef_macro, config)
    exponent = 2.0 * math.pi * params.lambda_e \
        * (1.0 + gamma) ** (-(s - 1)) * area
    return math.exp(-exponent)


def cdf_eve_sinr_pico(gamma: float, params: SystemParams,
                      config: QuadratureConfig | None = None) -> float:
    """CDF of the strongest eavesdropper's SINR on a pico transmission.

    Pico stations serve a single stream at full power, so there is no
    intra-cell factor; the interference exponents mirror the macro case
    with the roles of the path-loss exponents exchanged.
    """
    if gamma < 0.0:
        return 0.0
    if params.lambda_e == 0.0:
        return 1.0
    if gamma == 0.0:
        return 0.0
    am, ap = params.alpha_macro, params.alpha_pico
    s = params.s_users
    coef_noise = gamma * params.noise_w / (params.beta_pl * params.p_pico_w)
    coef_macro = 2.0 * math.pi * params.lambda_m \
        * (gamma * params.p_macro_w / (params.p_pico_w * s)) ** (2.0 / am) \
        * _field_coefficient(am, s)
    coef_pico = 2.0 * math.pi * params.lambda_p \
        * gamma ** (2.0 / ap) * _field_coefficient(ap, 1)
    area = _intercept_area(coef_noise, ap, coef_macro, 2.0 * ap / am,
                           coef_pico, config)
    exponent = 2.0 * math.pi * params.lambda_e * area
    return math.exp(-exponent)


def _wiretap_threshold(rate: float, secrecy_rate: float) -> float:
    """SINR the strongest eavesdropper must stay below, 2^(R - r_s) - 1."""
    return 2.0 ** (rate - secrecy_rate) - 1.0


def _resolve_secrecy_rate(rate: float, params: SystemParams,
                          secrecy_rate: float | None) -> float:
    if secrecy_rate is None:
        return params.rho * rate
    if secrecy_rate < 0.0:
        raise ValueError(f"secrecy rate must be >= 0, got {secrecy_rate}")
    return secrecy_rate


def secrecy_outage_macro(params: SystemParams,
                         secrecy_rate: float | None = None,
                         config: QuadratureConfig | None = None) -> float:
    """Secrecy outage probability of the macro tier.

    ``secrecy_rate`` is the absolute confidential rate in bits/s/Hz; when
    omitted it defaults to the fraction ``params.rho`` of the tier's user
    rate.  A secrecy rate at or above the user rate leaves no redundancy
    and the outage is 1 by convention.
    """
    rate = rate_lower_bound_macro(params, config)
    r_s = _resolve_secrecy_rate(rate, params, secrecy_rate)
    if r_s >= rate:
        return 1.0
    threshold = _wiretap_threshold(rate, r_s)
    return 1.0 - cdf_eve_sinr_macro(threshold, params, config)


def secrecy_outage_pico(params: SystemParams,
                        secrecy_rate: float | None = None,
                        config: QuadratureConfig | None = None) -> float:
    """Secrecy outage probability of the pico tier (see macro variant)."""
    rate = ergodic_rate_pico(params, config)
    r_s = _resolve_secrecy_rate(rate, params, secrecy_rate)
    if r_s >= rate:
        return 1.0
    threshold = _wiretap_threshold(rate, r_s)
    return 1.0 - cdf_eve_sinr_pico(threshold, params, config)


@dataclass(frozen=True)
class SecrecyOutcome:
    """Joint secrecy picture of the network at one operating point.

    Pico fields are NaN when the pico tier has zero density; the overall
    outage then reduces to the macro term.
    """

    rate_macro: float
    rate_pico: float
    secrecy_rate_macro: float
    secrecy_rate_pico: float
    outage_macro: float
    outage_pico: float
    assoc_macro: float
    assoc_pico: float
    outage_overall: float


def secrecy_outage(params: SystemParams,
                   secrecy_rate: float | None = None,
                   config: QuadratureConfig | None = None) -> SecrecyOutcome:
    """Per-tier and association-weighted secrecy outage probabilities.

    The overall figure weighs each tier's outage by the probability that
    the typical user is served by that tier.
    """
    probs = association_probabilities(params, config)
    rate_m = rate_lower_bound_macro(params, config)
    rs_m = _resolve_secrecy_rate(rate_m, params, secrecy_rate)
    if rs_m >= rate_m:
        out_m = 1.0
    else:
        out_m = 1.0 - cdf_eve_sinr_macro(
            _wiretap_threshold(rate_m, rs_m), params, config)

    if params.lambda_p == 0.0 or probs.pico == 0.0:
        rate_p = math.nan
        rs_p = math.nan
        out_p = math.nan
        overall = out_m
    else:
        rate_p = ergodic_rate_pico(params, config)
        rs_p = _resolve_secrecy_rate(rate_p, params, secrecy_rate)
        if rs_p >= rate_p:
            out_p = 1.0
        else:
            out_p = 1.0 - cdf_eve_sinr_pico(
                _wiretap_threshold(rate_p, rs_p), params, config)
        overall = probs.macro * out_m + probs.pico * out_p

    return SecrecyOutcome(
        rate_macro=rate_m, rate_pico=rate_p,
        secrecy_rate_macro=rs_m, secrecy_rate_pico=rs_p,
        outage_macro=out_m, outage_pico=out_p,
        assoc_macro=probs.macro, assoc_pico=probs.pico,
        outage_overall=overall,
    )
