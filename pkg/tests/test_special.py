"""Special-function layer: frozen oracles, identities, quadrature.

Reference values were computed once with mpmath at 50 significant
digits and are frozen here as literals, so the suite runs without any
multiprecision dependency.
"""

import math
import random

import pytest
from scipy.integrate import quad

from hetsec.special import (
    DomainError,
    NumericError,
    QuadratureConfig,
    cosecant,
    gauss_2f1,
    incomplete_beta,
    integrate_semi_infinite,
    log_gamma,
)

# (a, b, c, z, reference) spanning the direct-series, Pfaff,
# inverse-argument, Euler-integral, and polynomial evaluation paths.
GAUSS_2F1_ORACLES = [
    (1.0, 0.5, 1.5, -3.0, 0.6045997880780726168647),
    (0.8, 2.3, 3.1, 0.45, 1.40371513092937611758),
    (1.2, 0.7, 2.9, -0.85, 0.8216594103569286694262),
    (0.5714285714285714, 10.0, 1.5714285714285714, -40.0,
     0.03041064641605635158404),
    (2.0, 1.25, 3.75, -52000.0, 0.00000518354993840881150717),
    (1.5, 1.5, 3.2, -31000.0, 0.000004931907192067850336081),
    (-3.0, 2.2, 4.4, -7.5, 144.2812499999999975585),
]

# (z, a, b, reference) for B(z; a, b)
BETA_ORACLES = [
    (0.6, 2.5, 4.0, 0.02410464357103471114107),
    (0.25, 1.0, 7.0, 0.1237880161830357142857),
    (0.97, 4.0, 0.3, 0.8865636973093720651512),
]

LOG_GAMMA_ORACLES = [
    (0.25, 1.288022524698077457371),
    (1.0, 0.0),
    (7.5, 7.534364236758732955158),
    (191.0, 810.4774628758635315446),
]


def test_gauss_2f1_frozen_oracles():
    for a, b, c, z, ref in GAUSS_2F1_ORACLES:
        got = gauss_2f1(a, b, c, z)
        assert got == pytest.approx(ref, rel=2e-8), (a, b, c, z)


def test_gauss_2f1_argument_symmetry():
    rng = random.Random(11)
    for _ in range(60):
        a = rng.uniform(0.2, 4.0)
        b = rng.uniform(0.2, 4.0)
        c = max(a, b) + rng.uniform(0.2, 3.0)
        z = rng.choice([rng.uniform(0.01, 0.9), -rng.uniform(0.01, 200.0)])
        assert gauss_2f1(a, b, c, z) == pytest.approx(
            gauss_2f1(b, a, c, z), rel=1e-9)


def test_gauss_2f1_contiguous_relation():
    # (c-a) F(a-1,b;c;z) + (2a-c+(b-a)z) F(a,b;c;z)
    #   + a(z-1) F(a+1,b;c;z) = 0
    rng = random.Random(23)
    for _ in range(50):
        a = rng.uniform(0.3, 3.0)
        b = rng.uniform(0.3, 3.0)
        c = max(a, b) + rng.uniform(0.3, 2.0)
        z = rng.choice([rng.uniform(0.05, 0.85), -rng.uniform(0.1, 30.0)])
        residual = ((c - a) * gauss_2f1(a - 1.0, b, c, z)
                    + (2.0 * a - c + (b - a) * z) * gauss_2f1(a, b, c, z)
                    + a * (z - 1.0) * gauss_2f1(a + 1.0, b, c, z))
        scale = abs(gauss_2f1(a, b, c, z)) + 1.0
        assert abs(residual) / scale < 1e-10, (a, b, c, z)


def test_gauss_2f1_euler_transformation():
    rng = random.Random(31)
    for _ in range(50):
        a = rng.uniform(0.2, 2.5)
        b = rng.uniform(0.2, 2.5)
        c = max(a, b) + rng.uniform(0.5, 2.0)
        z = rng.choice([rng.uniform(0.05, 0.9), -rng.uniform(0.1, 50.0)])
        lhs = gauss_2f1(a, b, c, z)
        rhs = (1.0 - z) ** (c - a - b) * gauss_2f1(c - a, c - b, c, z)
        assert lhs == pytest.approx(rhs, rel=1e-9), (a, b, c, z)


def test_gauss_2f1_unit_argument_and_domain():
    assert gauss_2f1(0.5, 0.3, 2.0, 0.0) == 1.0
    with pytest.raises(DomainError):
        gauss_2f1(1.0, 1.0, 2.0, 1.0)
    with pytest.raises(DomainError):
        gauss_2f1(1.0, 1.0, -2.0, 0.5)


def test_incomplete_beta_frozen_oracles():
    for z, a, b, ref in BETA_ORACLES:
        assert incomplete_beta(z, a, b) == pytest.approx(ref, rel=1e-10)


def test_incomplete_beta_vs_quadrature():
    rng = random.Random(43)
    for _ in range(25):
        a = rng.uniform(0.4, 6.0)
        b = rng.uniform(0.2, 6.0)
        z = rng.uniform(0.02, 0.98)
        direct, err = quad(lambda t: t ** (a - 1.0) * (1.0 - t) ** (b - 1.0),
                           0.0, z)
        assert incomplete_beta(z, a, b) == pytest.approx(
            direct, rel=1e-8, abs=10.0 * err)


def test_incomplete_beta_negative_argument_integer_a():
    # with t -> -u the integrand stays real for integer a; compare in u
    rng = random.Random(59)
    for _ in range(15):
        a = float(rng.randint(1, 6))
        b = rng.uniform(0.5, 5.0)
        z = -rng.uniform(0.05, 8.0)
        direct, err = quad(
            lambda u: (-1.0) ** a * u ** (a - 1.0) * (1.0 + u) ** (b - 1.0),
            0.0, -z)
        assert incomplete_beta(z, a, b) == pytest.approx(
            direct, rel=1e-8, abs=10.0 * abs(err))
    with pytest.raises(DomainError):
        incomplete_beta(-0.5, 1.5, 2.0)


def test_log_gamma_values_and_recurrence():
    for x, ref in LOG_GAMMA_ORACLES:
        assert log_gamma(x) == pytest.approx(ref, rel=1e-12, abs=1e-12)
    rng = random.Random(7)
    for _ in range(40):
        x = rng.uniform(0.05, 80.0)
        assert log_gamma(x + 1.0) == pytest.approx(
            log_gamma(x) + math.log(x), rel=1e-12)


def test_cosecant():
    assert cosecant(math.pi / 2.0) == pytest.approx(1.0, rel=1e-15)
    assert cosecant(math.pi / 6.0) == pytest.approx(2.0, rel=1e-12)
    rng = random.Random(3)
    for _ in range(20):
        x = rng.uniform(0.05, math.pi - 0.05)
        assert cosecant(x) * math.sin(x) == pytest.approx(1.0, rel=1e-12)


def test_integrate_semi_infinite_known_values():
    assert integrate_semi_infinite(lambda x: x * math.exp(-x * x)) \
        == pytest.approx(0.5, rel=1e-9)
    assert integrate_semi_infinite(lambda x: x ** 4 * math.exp(-x)) \
        == pytest.approx(24.0, rel=1e-9)
    # mass centred far from the origin, wide enough for the octave scan
    mu, sigma = 1.0e4, 2.0e3
    val = integrate_semi_infinite(
        lambda x: math.exp(-0.5 * ((x - mu) / sigma) ** 2)
        / (sigma * math.sqrt(2.0 * math.pi)))
    assert val == pytest.approx(1.0, rel=1e-5)


def test_integrate_semi_infinite_scaling_property():
    # int x exp(-k x^2) dx = 1/(2k): exercises very different support scales
    for k in (1e-8, 1e-4, 1.0, 1e4, 1e8):
        val = integrate_semi_infinite(lambda x, k=k: x * math.exp(-k * x * x))
        assert val == pytest.approx(0.5 / k, rel=1e-8), k


def test_integrate_semi_infinite_rejects_divergent_tail():
    with pytest.raises(NumericError):
        integrate_semi_infinite(lambda x: 1.0 / (1.0 + x))


def test_quadrature_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(abs_tol=-1.0)
    cfg = QuadratureConfig(rel_tol=1e-6)
    got = integrate_semi_infinite(lambda x: x * math.exp(-x * x), cfg)
    assert got == pytest.approx(0.5, rel=1e-5)
