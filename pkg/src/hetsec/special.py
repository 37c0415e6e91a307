"""Special functions and adaptive quadrature backing the closed-form metrics.

The Gauss hypergeometric series is summed directly for arguments inside the
unit interval and routed through the Pfaff transformation z -> z/(z-1) for
negative arguments, which keeps the transformed argument in [0, 1).  For
strongly negative arguments the transformed series can stall against the
term cap; evaluation then switches to the 1/z connection formula (two short
series) when its Gamma coefficients are pole-free, and otherwise to adaptive
quadrature of the Euler integral representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy.integrate import quad

__all__ = [
    "DomainError",
    "NumericError",
    "QuadratureConfig",
    "DEFAULT_QUADRATURE",
    "log_gamma",
    "cosecant",
    "gauss_2f1",
    "incomplete_beta",
    "integrate_semi_infinite",
]


class DomainError(ValueError):
    """Argument outside the supported domain of a numerical routine."""


class NumericError(ArithmeticError):
    """A numerical routine failed to converge.

    Carries the best available estimate and, when known, an error bound so
    callers can decide whether the partial result is still usable.
    """

    def __init__(self, message: str, estimate: float | None = None,
                 error_bound: float | None = None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


# Series terms below this fraction of the partial sum stop the summation.
_SERIES_RTOL = 1e-16
_SERIES_MAX_TERMS = 10_000
_CONNECTION_POLE_MARGIN = 0.05

_INT_TOL = 1e-12


def _is_nonpositive_integer(x: float) -> bool:
    return x <= _INT_TOL and abs(x - round(x)) < _INT_TOL


def log_gamma(x: float) -> float:
    """Natural log of the Gamma function for strictly positive arguments."""
    if x <= 0.0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def cosecant(x: float) -> float:
    """1 / sin(x), rejecting arguments at the poles (multiples of pi)."""
    cycles = x / math.pi
    if abs(cycles - round(cycles)) < 1e-12:
        raise DomainError(f"cosecant pole at x = {x}")
    return 1.0 / math.sin(x)


def _hyp_series(a: float, b: float, c: float, w: float) -> float:
    """Direct Gauss series at argument w, |w| < 1 (or terminating)."""
    total = 1.0
    term = 1.0
    for n in range(_SERIES_MAX_TERMS):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * w
        total += term
        if abs(term) <= _SERIES_RTOL * abs(total) or abs(term) < 1e-300:
            return total
    raise NumericError(
        f"hypergeometric series did not converge in {_SERIES_MAX_TERMS} terms "
        f"(a={a}, b={b}, c={c}, w={w})",
        estimate=total,
        error_bound=abs(term),
    )


def _signed_log_gamma(x: float) -> tuple[float, float]:
    """(log |Gamma(x)|, sign of Gamma(x)) for non-integer or positive x."""
    if x > 0.0:
        return math.lgamma(x), 1.0
    s = math.sin(math.pi * x)
    if s == 0.0:
        raise DomainError(f"Gamma pole at x = {x}")
    # reflection: Gamma(x) = pi / (sin(pi x) * Gamma(1 - x))
    return math.log(math.pi / abs(s)) - math.lgamma(1.0 - x), \
        math.copysign(1.0, s)


def _gauss_2f1_inverse_argument(a: float, b: float, c: float,
                                z: float) -> float:
    """Connection formula in 1/z for strongly negative arguments.

    Splits 2F1 into two series at argument 1/z; needs b - a (and the
    auxiliary c - a, c - b Gamma factors) away from the integer poles of the
    connection coefficients, which the caller guards.
    """
    total = 0.0
    for p, q in ((a, b), (b, a)):
        if _is_nonpositive_integer(c - p):
            continue  # 1/Gamma(c - p) kills this branch
        num1, s1 = _signed_log_gamma(c)
        num2, s2 = _signed_log_gamma(q - p)
        den1, s3 = _signed_log_gamma(q)
        den2, s4 = _signed_log_gamma(c - p)
        pref_log = num1 + num2 - den1 - den2 - p * math.log(-z)
        pref = s1 * s2 * s3 * s4 * math.exp(pref_log)
        total += pref * _hyp_series(p, p - c + 1.0, p - q + 1.0, 1.0 / z)
    return total


def _gauss_2f1_euler(a: float, b: float, c: float, z: float) -> float:
    """Euler integral representation as a last-resort evaluation.

    Valid for z < 1 whenever the parameters can be ordered so that
    c > b > 0 (the (a, b) symmetry is used to find such an ordering).  For
    b < 1 the substitution t = u^(1/b) removes the t^(b-1) endpoint
    singularity; for b >= 1 the integral is taken in t with breakpoints at
    the knee 1/(1 - z) where strongly negative z concentrates the mass.
    """
    last_error: NumericError | None = None
    for aa, bb in ((a, b), (b, a)):
        if not (bb > 0.0 and c - bb > 0.0):
            continue
        lg = log_gamma(c) - log_gamma(bb) - log_gamma(c - bb)
        knee = 1.0 / (1.0 - z)
        if bb < 1.0:
            pref = math.exp(lg) / bb
            inv_bb = 1.0 / bb

            def integrand(u: float) -> float:
                t = u ** inv_bb
                return (1.0 - t) ** (c - bb - 1.0) * (1.0 - z * t) ** (-aa)

            pts = [knee ** bb]
        else:
            pref = math.exp(lg)

            def integrand(t: float) -> float:
                return t ** (bb - 1.0) * (1.0 - t) ** (c - bb - 1.0) \
                    * (1.0 - z * t) ** (-aa)

            pts = [knee, math.sqrt(knee)]
        pts = sorted(p for p in pts if 0.0 < p < 1.0)
        val, err = quad(integrand, 0.0, 1.0, epsabs=0.0, epsrel=1e-12,
                        limit=200, points=pts or None)
        if abs(val) > 0 and err > 1e-9 * abs(val):
            last_error = NumericError(
                f"Euler integral for 2F1({a},{b};{c};{z}) reached error "
                f"{err:.2e} only", estimate=pref * val, error_bound=pref * err)
            continue
        return pref * val
    if last_error is not None:
        raise last_error
    raise NumericError(
        f"no convergent evaluation path for 2F1({a},{b};{c};{z})")


def gauss_2f1(a: float, b: float, c: float, z: float) -> float:
    """Gauss hypergeometric function 2F1(a, b; c; z) for real z < 1."""
    if _is_nonpositive_integer(c):
        raise DomainError(f"2F1 undefined at non-positive integer c = {c}")
    if z >= 1.0:
        raise DomainError(f"2F1 supported for z < 1 only, got z = {z}")
    if z == 0.0 or a == 0.0 or b == 0.0:
        return 1.0
    # Terminating (polynomial) case: sum the finite series directly.
    if _is_nonpositive_integer(a) or _is_nonpositive_integer(b):
        return _hyp_series(a, b, c, z)
    if z > 0.0:
        return _hyp_series(a, b, c, z)
    # z < 0: Pfaff map w = z/(z-1) in (0, 1).  Pulling the smaller of the two
    # upper parameters out front leaves the faster-decaying transformed series.
    w = z / (z - 1.0)
    try:
        if a <= b:
            return (1.0 - z) ** (-a) * _hyp_series(a, c - b, c, w)
        return (1.0 - z) ** (-b) * _hyp_series(c - a, b, c, w)
    except NumericError:
        # Deep in z < 0 the mapped argument crowds 1 and the series stalls.
        # The 1/z connection formula converges in a handful of terms there,
        # provided b - a stays clear of the integer poles of its Gamma
        # coefficients; otherwise integrate directly.
        if abs((b - a) - round(b - a)) >= _CONNECTION_POLE_MARGIN:
            return _gauss_2f1_inverse_argument(a, b, c, z)
        return _gauss_2f1_euler(a, b, c, z)


def incomplete_beta(z: float, a: float, b: float) -> float:
    """Incomplete beta integral B(z; a, b) = int_0^z t^(a-1) (1-t)^(b-1) dt.

    Evaluated through the hypergeometric form z^a/a * 2F1(a, 1-b; a+1; z).
    Negative z is accepted only when a is an integer, which keeps z^a real
    (sign-carrying); other combinations are complex-valued and rejected.
    """
    if a <= 0.0:
        raise DomainError(f"incomplete_beta requires a > 0, got a = {a}")
    if z == 0.0:
        return 0.0
    if z >= 1.0:
        raise DomainError(f"incomplete_beta defined here for z < 1, got {z}")
    if z < 0.0:
        if abs(a - round(a)) >= _INT_TOL:
            raise DomainError(
                "incomplete_beta with z < 0 needs integer a for a real "
                f"result (got a = {a}); use the hypergeometric form directly")
        sign = -1.0 if int(round(a)) % 2 else 1.0
        za = sign * abs(z) ** a
    else:
        za = z ** a
    return za / a * gauss_2f1(a, 1.0 - b, a + 1.0, z)


@dataclass(frozen=True)
class QuadratureConfig:
    """Knobs for the semi-infinite adaptive quadrature."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_subdivisions: int = 200
    tail_cutoff_fraction: float = 1e-12

    def __post_init__(self):
        if self.abs_tol <= 0.0:
            raise ValueError("abs_tol must be positive")
        if self.rel_tol <= 0.0:
            raise ValueError("rel_tol must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be at least 1")
        if not 0.0 < self.tail_cutoff_fraction < 1.0:
            raise ValueError("tail_cutoff_fraction must lie in (0, 1)")


DEFAULT_QUADRATURE = QuadratureConfig()

# Geometric scan bracket used to locate the integrand peak and tail.
_SCAN_LO = 1e-9
_SCAN_HI = 1e18
_SCAN_RATIO = 2.0


def integrate_semi_infinite(f: Callable[[float], float],
                            config: QuadratureConfig | None = None) -> float:
    """Integrate f over (0, inf) for integrands that decay after a peak.

    The peak of |f| is located by a geometric scan; the domain is truncated
    where |f| has fallen below tail_cutoff_fraction of the peak, and the
    discarded tail is certified against abs_tol with a local exponential
    decay fit before the finite part is integrated adaptively.
    """
    cfg = DEFAULT_QUADRATURE if config is None else config

    xs: list[float] = []
    vals: list[float] = []
    peak = 0.0
    x_peak = None
    x = _SCAN_LO
    trunc = None
    while x <= _SCAN_HI:
        v = abs(f(x))
        xs.append(x)
        vals.append(v)
        if v > peak:
            peak = v
            x_peak = x
        elif peak > 0.0 and v <= cfg.tail_cutoff_fraction * peak:
            # Past the peak and below the cutoff: try to certify the tail.
            if v == 0.0:
                trunc = x
                break
            v_prev, x_prev = vals[-2], xs[-2]
            if v_prev > v:
                decay = math.log(v_prev / v) / (x - x_prev)
                if v / decay < cfg.abs_tol:
                    trunc = x
                    break
        x *= _SCAN_RATIO

    if peak == 0.0:
        return 0.0
    if trunc is None:
        raise NumericError(
            "integrand tail could not be certified below abs_tol within "
            f"the scan range (peak {peak:.3e} at x = {x_peak:.3e})")

    total = 0.0
    err_total = 0.0
    for lo, hi in ((0.0, x_peak), (x_peak, trunc)):
        if hi <= lo:
            continue
        res = quad(f, lo, hi, epsabs=cfg.abs_tol / 2.0, epsrel=cfg.rel_tol,
                   limit=cfg.max_subdivisions, full_output=1)
        y, abserr = res[0], res[1]
        total += y
        err_total += abserr
        if len(res) > 3:
            raise NumericError(
                f"quadrature failed to converge on [{lo:.3e}, {hi:.3e}]: "
                f"{res[3]}", estimate=total, error_bound=err_total)
    return total
