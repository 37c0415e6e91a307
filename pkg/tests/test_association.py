"""Tier attachment probabilities: identities, closed forms, MC pairing."""

import math

import pytest
from scipy.integrate import quad

from hetsec import montecarlo, rates
from hetsec.params import SystemParams, Tier


def test_partition_identity_grid():
    worst = 0.0
    for lam_p in (1e-3, 1e-2, 1e-1):
        for n in (50, 200, 400):
            for s in (1, 10, 20):
                p = SystemParams(lambda_p=lam_p, n_antennas=n, s_users=s)
                probs = rates.association_probabilities(p)
                worst = max(worst, abs(probs.macro + probs.pico - 1.0))
                assert 0.0 <= probs.macro <= 1.0
    assert worst < 1e-6


def test_empty_pico_tier_gives_macro_everything():
    probs = rates.association_probabilities(SystemParams(lambda_p=0.0))
    assert probs.macro == 1.0
    assert probs.pico == 0.0


def test_equal_exponent_closed_form():
    # with alpha_1 = alpha_2 = alpha the thinning is scale-free:
    # A_M = lambda_M / (lambda_M + lambda_P k^(-2/alpha))
    for alpha in (3.0, 4.0):
        for lam_p in (1e-3, 3e-2):
            p = SystemParams(alpha_macro=alpha, alpha_pico=alpha,
                             lambda_p=lam_p)
            k = rates.bias_ratio(p)
            expected = p.lambda_m / (p.lambda_m
                                     + lam_p * k ** (-2.0 / alpha))
            got = rates.association_probabilities(p).macro
            assert got == pytest.approx(expected, rel=1e-8)


def test_exclusion_radii_are_mutually_inverse():
    p = SystemParams()
    for x in (0.5, 3.0, 40.0, 250.0):
        d = rates.pico_exclusion_for_macro_user(x, p)
        assert rates.macro_exclusion_for_pico_user(d, p) \
            == pytest.approx(x, rel=1e-12)


def test_association_monotone_in_bias_and_density():
    base = SystemParams()
    a0 = rates.association_probabilities(base).macro
    more_antennas = rates.association_probabilities(
        base.with_overrides(n_antennas=400)).macro
    denser_picos = rates.association_probabilities(
        base.with_overrides(lambda_p=1e-1)).macro
    assert more_antennas > a0
    assert denser_picos < a0


def test_serving_distance_pdf_normalised():
    p = SystemParams()
    for tier in (Tier.MACRO, Tier.PICO):
        mass, err = quad(lambda x: rates.serving_distance_pdf(x, tier, p),
                         0.0, math.inf, limit=300)
        assert mass == pytest.approx(1.0, rel=1e-6, abs=5.0 * abs(err))


def test_monte_carlo_pairing():
    trials = 40_000
    for overrides in ({}, {"lambda_p": 1e-1}, {"n_antennas": 64,
                                               "s_users": 4}):
        p = SystemParams(sim_radius=100.0, **overrides)
        analytic = rates.association_probabilities(p).macro
        est, _ = montecarlo.estimate_association(p, trials, seed=17)
        assert abs(est.value - analytic) <= 3.0 * est.se, overrides


def test_transposed_exponent_variant_is_rejected():
    # regression guard: the deliberately defective exclusion-exponent
    # variant must disagree with simulation far beyond sampling noise
    p = SystemParams(sim_radius=100.0)
    wrong = rates._pico_association_transposed_variant(p)
    est, pico_est = montecarlo.estimate_association(p, 40_000, seed=17)
    right = rates.association_probabilities(p).pico
    assert abs(pico_est.value - right) <= 3.0 * pico_est.se
    assert abs(pico_est.value - wrong) > 10.0 * pico_est.se
