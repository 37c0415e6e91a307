"""Closed-form association probabilities and downlink rates.

Everything here conditions on the typical user at the origin attaching to
the tier with the strongest biased average received power.  The macro tier
serves S simultaneous streams through N antennas (beamforming gain
N - S + 1, per-stream power P_M / S); the pico tier serves one stream at
full power.  Association regions translate into per-tier exclusion radii,
which in turn shape both the serving-distance densities and the
interference seen by an attached user.

The macro-tier rate is a Jensen lower bound on the ergodic rate (exact in
the noise-limited regime, slightly pessimistic otherwise).  The pico-tier
SINR distribution is exact under the model, combining the two tiers'
interferer point processes through their Laplace transforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from .params import SystemParams
from .special import (
    QuadratureConfig,
    gauss_2f1,
    integrate_semi_infinite,
)

__all__ = [
    "AssociationProbabilities",
    "bias_ratio",
    "pico_exclusion_for_macro_user",
    "macro_exclusion_for_pico_user",
    "association_probabilities",
    "serving_distance_pdf",
    "mean_interference_macro_user",
    "rate_lower_bound_macro",
    "interference_shape_pico_user",
    "cdf_sinr_pico",
    "ergodic_rate_pico",
]

# Outer integral over the SINR threshold in the ergodic pico rate.
_RATE_OUTER_EPSABS = 1e-9
_RATE_OUTER_EPSREL = 1e-6
_RATE_OUTER_LIMIT = 150


def bias_ratio(params: SystemParams) -> float:
    """Biased-power ratio of the macro tier over the pico tier.

    This is (N - S + 1) (P_M / S) / P_P: the factor by which the macro
    tier's per-stream beamformed power exceeds the pico tier's at equal
    distance.  Association boundaries are where the distance-dependent
    path losses offset exactly this ratio.
    """
    return params.array_gain * params.p_macro_per_user_w / params.p_pico_w


def pico_exclusion_for_macro_user(x: float, params: SystemParams) -> float:
    """Closest possible pico station when the serving macro is at x.

    A user attached to a macro station at distance x would have preferred
    any pico station closer than this radius, so none exists there.
    """
    k = bias_ratio(params)
    return (x ** params.alpha_macro / k) ** (1.0 / params.alpha_pico)


def macro_exclusion_for_pico_user(x: float, params: SystemParams) -> float:
    """Closest possible macro station when the serving pico is at x."""
    k = bias_ratio(params)
    return (k * x ** params.alpha_pico) ** (1.0 / params.alpha_macro)


@dataclass(frozen=True)
class AssociationProbabilities:
    """Probability that the typical user attaches to each tier."""

    macro: float
    pico: float


def association_probabilities(
        params: SystemParams,
        config: QuadratureConfig | None = None) -> AssociationProbabilities:
    """Tier attachment probabilities of the typical user.

    Each tier's probability integrates the joint event that the nearest
    station of that tier sits at distance x while the other tier has no
    station inside the corresponding exclusion radius.
    """
    lam_m, lam_p = params.lambda_m, params.lambda_p

    def macro_integrand(x: float) -> float:
        d = pico_exclusion_for_macro_user(x, params)
        return x * math.exp(-math.pi * (lam_m * x * x + lam_p * d * d))

    a_macro = 2.0 * math.pi * lam_m * integrate_semi_infinite(
        macro_integrand, config)

    if lam_p == 0.0:
        return AssociationProbabilities(macro=a_macro, pico=0.0)

    def pico_integrand(x: float) -> float:
        d = macro_exclusion_for_pico_user(x, params)
        return x * math.exp(-math.pi * (lam_p * x * x + lam_m * d * d))

    a_pico = 2.0 * math.pi * lam_p * integrate_semi_infinite(
        pico_integrand, config)
    return AssociationProbabilities(macro=a_macro, pico=a_pico)


def _pico_association_transposed_variant(
        params: SystemParams,
        config: QuadratureConfig | None = None) -> float:
    """Pico attachment probability with the exclusion exponents swapped.

    Defective on purpose: the macro-void term uses the inverted power
    ratio and trades the two path-loss exponents.  Kept as a fixture so
    the simulation cross-check tests can demonstrate they would catch
    this class of error; never used by the public API.
    """
    lam_m, lam_p = params.lambda_m, params.lambda_p
    if lam_p == 0.0:
        return 0.0
    k = bias_ratio(params)
    ratio = (1.0 / k) ** (2.0 / params.alpha_pico)
    exponent = 2.0 * params.alpha_macro / params.alpha_pico

    def integrand(x: float) -> float:
        d_sq = ratio * x ** exponent
        return x * math.exp(-math.pi * (lam_p * x * x + lam_m * d_sq))

    return 2.0 * math.pi * lam_p * integrate_semi_infinite(integrand, config)


def serving_distance_pdf(x: float, tier: str,
                         params: SystemParams) -> float:
    """Density of the serving-station distance given attachment to a tier.

    ``tier`` is ``"macro"``, ``"pico"``, or the ``Tier`` enum.  The
    density is the tier's unnormalised attachment integrand divided by
    the attachment probability, so it integrates to one.
    """
    tier = str(tier)
    if x <= 0.0:
        return 0.0
    probs = association_probabilities(params)
    lam_m, lam_p = params.lambda_m, params.lambda_p
    if tier == "macro":
        d = pico_exclusion_for_macro_user(x, params)
        num = 2.0 * math.pi * lam_m * x * math.exp(
            -math.pi * (lam_m * x * x + lam_p * d * d))
        return num / probs.macro
    if tier == "pico":
        if probs.pico == 0.0:
            raise ValueError("pico tier has zero attachment probability")
        d = macro_exclusion_for_pico_user(x, params)
        num = 2.0 * math.pi * lam_p * x * math.exp(
            -math.pi * (lam_p * x * x + lam_m * d * d))
        return num / probs.pico
    raise ValueError(f"tier must be 'macro' or 'pico', got {tier!r}")


def mean_interference_macro_user(x: float, params: SystemParams) -> float:
    """Mean interference power at a macro-attached user served from x.

    Campbell's formula over both tiers outside their exclusion radii.
    Each interfering macro station contributes mean power P_M (S streams
    at P_M/S with unit-mean gains); each pico station contributes P_P.
    """
    if x <= 0.0:
        raise ValueError(f"serving distance must be positive, got {x}")
    am, ap = params.alpha_macro, params.alpha_pico
    beta = params.beta_pl
    i_macro = 2.0 * math.pi * params.lambda_m * params.p_macro_w * beta \
        * x ** (2.0 - am) / (am - 2.0)
    d = pico_exclusion_for_macro_user(x, params)
    if params.lambda_p > 0.0 and d > 0.0:
        i_pico = 2.0 * math.pi * params.lambda_p * params.p_pico_w * beta \
            * d ** (2.0 - ap) / (ap - 2.0)
    else:
        i_pico = 0.0
    return i_macro + i_pico


def rate_lower_bound_macro(params: SystemParams,
                           config: QuadratureConfig | None = None) -> float:
    """Jensen lower bound on the macro-tier ergodic rate, bits/s/Hz.

    Bounds E[log(1 + SINR)] below by moving the expectation of the
    interference-plus-noise-to-signal ratio inside the logarithm.  The
    required moment averages x^alpha_1 (I(x) + noise) over the serving
    distance distribution.
    """
    lam_m, lam_p = params.lambda_m, params.lambda_p
    am = params.alpha_macro

    def integrand(x: float) -> float:
        d = pico_exclusion_for_macro_user(x, params)
        envelope = math.exp(-math.pi * (lam_m * x * x + lam_p * d * d))
        load = mean_interference_macro_user(x, params) + params.noise_w
        return load * envelope * x ** (am + 1.0)

    moment = integrate_semi_infinite(integrand, config)
    a_macro = association_probabilities(params, config).macro
    signal = params.array_gain * params.p_macro_per_user_w * params.beta_pl
    mean_sinr_floor = signal * a_macro / (2.0 * math.pi * lam_m * moment)
    return math.log2(1.0 + mean_sinr_floor)


def interference_shape_pico_user(g: float, params: SystemParams) -> float:
    """Macro-interference exponent shape for a pico-attached user.

    Equals the integral int_1^inf (1 - (1 + g t^(-alpha_1))^(-S)) t dt:
    the Laplace-transform exponent of the macro tier's interference,
    normalised by the exclusion-radius area, at SINR-scaled argument g.
    Expanded into S positive hypergeometric terms; each term is assembled
    in log space so large g cannot overflow the g^k factors.
    """
    if g < 0.0:
        raise ValueError(f"shape argument must be >= 0, got {g}")
    if g == 0.0:
        return 0.0
    am = params.alpha_macro
    s = params.s_users
    two_over = 2.0 / am
    log_g = math.log(g)
    total = 0.0
    for k in range(1, s + 1):
        a_k = k - two_over
        f_k = gauss_2f1(a_k, float(s), a_k + 1.0, -g)
        log_coef = math.lgamma(s + 1) - math.lgamma(k + 1) \
            - math.lgamma(s - k + 1) - math.log(am * a_k)
        total += math.exp(log_coef + k * log_g + math.log(f_k))
    return total


def _pico_cdf_coefficients(gamma: float,
                           params: SystemParams) -> tuple[float, float, float]:
    """Coefficients (A, B, C) of the pico SINR survival integrand.

    The conditional coverage probability at serving distance x is
    exp(-A x^(2 alpha_2 / alpha_1) - B x^2 - C x^(alpha_2)): A collects
    the macro tier's exclusion void and Laplace exponent, B the pico
    tier's, and C the noise term.
    """
    ap = params.alpha_pico
    k_assoc = bias_ratio(params) ** (2.0 / params.alpha_macro)
    g = gamma / params.array_gain
    shape = interference_shape_pico_user(g, params)
    coef_a = math.pi * params.lambda_m * k_assoc * (2.0 * shape + 1.0)
    pico_lt = 2.0 * gamma / (ap - 2.0) * gauss_2f1(
        1.0, 1.0 - 2.0 / ap, 2.0 - 2.0 / ap, -gamma)
    coef_b = math.pi * params.lambda_p * (1.0 + pico_lt)
    coef_c = gamma * params.noise_w / (params.p_pico_w * params.beta_pl)
    return coef_a, coef_b, coef_c


def _pico_survival_mass(gamma: float, params: SystemParams,
                        config: QuadratureConfig | None) -> float:
    """Integral of x times the conditional coverage over serving distance."""
    coef_a, coef_b, coef_c = _pico_cdf_coefficients(gamma, params)
    exp_ratio = 2.0 * params.alpha_pico / params.alpha_macro
    ap = params.alpha_pico

    def integrand(x: float) -> float:
        return x * math.exp(-coef_a * x ** exp_ratio - coef_b * x * x
                            - coef_c * x ** ap)

    return integrate_semi_infinite(integrand, config)


def cdf_sinr_pico(gamma: float, params: SystemParams,
                  config: QuadratureConfig | None = None) -> float:
    """CDF of the pico-attached user's SINR at threshold gamma (exact)."""
    if params.lambda_p == 0.0:
        raise ValueError("pico tier has zero density; its SINR is undefined")
    if gamma <= 0.0:
        return 0.0
    mass = _pico_survival_mass(gamma, params, config)
    a_pico = association_probabilities(params, config).pico
    cdf = 1.0 - 2.0 * math.pi * params.lambda_p * mass / a_pico
    return min(1.0, max(0.0, cdf))


def ergodic_rate_pico(params: SystemParams,
                      config: QuadratureConfig | None = None) -> float:
    """Ergodic rate of the pico-attached user in bits/s/Hz.

    Integrates the SINR survival function against 1/(1 + gamma).  The
    survival tail decays only polynomially (like gamma^(-2/alpha_2)), so
    the threshold axis is compactified with gamma = u / (1 - u); the
    resulting endpoint singularity at u = 1 is integrable and handled by
    the adaptive rule's extrapolation.
    """
    if params.lambda_p == 0.0:
        raise ValueError("pico tier has zero density; its rate is undefined")
    a_pico = association_probabilities(params, config).pico
    prefactor = 2.0 * math.pi * params.lambda_p / a_pico

    def compactified(u: float) -> float:
        if u <= 0.0 or u >= 1.0:
            return 0.0
        gamma = u / (1.0 - u)
        survival = prefactor * _pico_survival_mass(gamma, params, config)
        survival = min(1.0, max(0.0, survival))
        return survival / (1.0 - u)

    val, _err = quad(compactified, 0.0, 1.0,
                     epsabs=_RATE_OUTER_EPSABS, epsrel=_RATE_OUTER_EPSREL,
                     limit=_RATE_OUTER_LIMIT)
    return val / math.log(2.0)
