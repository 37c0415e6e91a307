"""System parameters for the two-tier downlink model.

A single frozen dataclass carries every knob the analytic formulas and the
simulator share: transmit powers, path-loss exponents and intercept, the
three point-process densities, the antenna/user counts of the macro tier,
noise power, and the secrecy-rate fraction.  Defaults reproduce the
reference operating point used across the documentation examples.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, fields, replace

__all__ = [
    "Tier",
    "SystemParams",
    "DEFAULT_BETA_PL",
    "dbm_to_watts",
    "watts_to_dbm",
    "path_loss",
    "parse_config_text",
    "params_from_mapping",
]

SPEED_OF_LIGHT = 299_792_458.0
DEFAULT_CARRIER_HZ = 1.0e9

# Free-space intercept (c / (4 pi f))^2 at the default 1 GHz carrier.
DEFAULT_BETA_PL = (SPEED_OF_LIGHT / (4.0 * math.pi * DEFAULT_CARRIER_HZ)) ** 2


class Tier(enum.Enum):
    """Which tier a base station (or an attachment decision) belongs to."""

    MACRO = "macro"
    PICO = "pico"

    def __str__(self) -> str:  # keeps CLI/CSV output free of the class name
        return self.value


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


def watts_to_dbm(watts: float) -> float:
    if watts <= 0.0:
        raise ValueError(f"power must be positive to convert to dBm: {watts}")
    return 10.0 * math.log10(watts) + 30.0


def path_loss(distance: float, alpha: float, beta: float) -> float:
    """Distance-dependent channel power gain beta * d^(-alpha)."""
    if distance <= 0.0:
        raise ValueError(f"path loss needs a positive distance, got {distance}")
    return beta * distance ** (-alpha)


@dataclass(frozen=True)
class SystemParams:
    """Operating point of the two-tier network.

    Powers are linear watts (use :func:`dbm_to_watts` for dBm figures).
    ``alpha_macro`` and ``alpha_pico`` must exceed 2 so mean interference
    and the association integrals stay finite.  ``sim_radius`` of ``None``
    lets the simulator pick a window of 5 / sqrt(lambda_m), wide enough
    that edge effects stay below the statistical noise of typical runs.
    """

    p_macro_w: float = dbm_to_watts(46.0)
    p_pico_w: float = dbm_to_watts(37.0)
    alpha_macro: float = 3.5
    alpha_pico: float = 4.0
    lambda_m: float = 1.0e-3
    lambda_p: float = 1.0e-2
    lambda_e: float = 0.1
    s_users: int = 10
    n_antennas: int = 200
    noise_w: float = dbm_to_watts(-90.0)
    beta_pl: float = DEFAULT_BETA_PL
    rho: float = 0.5
    sim_radius: float | None = None

    def __post_init__(self):
        if self.p_macro_w <= 0.0:
            raise ValueError(f"p_macro_w must be positive, got {self.p_macro_w}")
        if self.p_pico_w <= 0.0:
            raise ValueError(f"p_pico_w must be positive, got {self.p_pico_w}")
        if self.alpha_macro <= 2.0:
            raise ValueError(
                f"alpha_macro must exceed 2, got {self.alpha_macro}")
        if self.alpha_pico <= 2.0:
            raise ValueError(f"alpha_pico must exceed 2, got {self.alpha_pico}")
        if self.lambda_m <= 0.0:
            raise ValueError(
                f"lambda_m must be positive (the macro tier anchors "
                f"association), got {self.lambda_m}")
        if self.lambda_p < 0.0:
            raise ValueError(f"lambda_p must be >= 0, got {self.lambda_p}")
        if self.lambda_e < 0.0:
            raise ValueError(f"lambda_e must be >= 0, got {self.lambda_e}")
        if not isinstance(self.s_users, int) or self.s_users < 1:
            raise ValueError(
                f"s_users must be a positive integer, got {self.s_users!r}")
        if not isinstance(self.n_antennas, int) \
                or self.n_antennas < self.s_users:
            raise ValueError(
                f"n_antennas must be an integer >= s_users "
                f"({self.s_users}), got {self.n_antennas!r}")
        if self.noise_w < 0.0:
            raise ValueError(f"noise_w must be >= 0, got {self.noise_w}")
        if self.beta_pl <= 0.0:
            raise ValueError(f"beta_pl must be positive, got {self.beta_pl}")
        if not 0.0 < self.rho <= 1.0:
            raise ValueError(f"rho must lie in (0, 1], got {self.rho}")
        if self.sim_radius is not None and self.sim_radius <= 0.0:
            raise ValueError(
                f"sim_radius must be positive when given, got {self.sim_radius}")

    @property
    def array_gain(self) -> int:
        """Beamforming gain of the macro tier, N - S + 1."""
        return self.n_antennas - self.s_users + 1

    @property
    def p_macro_per_user_w(self) -> float:
        return self.p_macro_w / self.s_users

    def effective_sim_radius(self) -> float:
        if self.sim_radius is not None:
            return self.sim_radius
        return 5.0 / math.sqrt(self.lambda_m)

    def with_overrides(self, **changes) -> "SystemParams":
        return replace(self, **changes)


_INT_FIELDS = {"s_users", "n_antennas"}
_DBM_ALIASES = {
    "p_macro_dbm": "p_macro_w",
    "p_pico_dbm": "p_pico_w",
    "noise_dbm": "noise_w",
}


def parse_config_text(text: str) -> dict[str, str]:
    """Parse ``key = value`` lines into a string mapping.

    Blank lines and lines starting with ``#`` are skipped; inline comments
    are not supported (values run to end of line).  Duplicate keys are an
    error so config typos fail loudly instead of silently last-one-wins.
    """
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key = value, "
                             f"got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key or not value:
            raise ValueError(f"config line {lineno}: empty key or value "
                             f"in {raw!r}")
        if key in out:
            raise ValueError(f"config line {lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def params_from_mapping(mapping: dict[str, str],
                        base: SystemParams | None = None) -> SystemParams:
    """Build SystemParams from string key/value pairs over a base.

    Keys are SystemParams field names; the power fields additionally accept
    a ``_dbm`` spelling (``p_macro_dbm``, ``p_pico_dbm``, ``noise_dbm``)
    converted on the way in.  Unknown keys raise with the accepted list.
    """
    base = SystemParams() if base is None else base
    valid = {f.name for f in fields(SystemParams)}
    for alias, target in _DBM_ALIASES.items():
        if alias in mapping and target in mapping:
            raise ValueError(
                f"config sets both {alias!r} and its watts field {target!r}")
    changes: dict[str, object] = {}
    for key, raw in mapping.items():
        if key in _DBM_ALIASES:
            changes[_DBM_ALIASES[key]] = dbm_to_watts(float(raw))
            continue
        if key not in valid:
            accepted = sorted(valid | set(_DBM_ALIASES))
            raise ValueError(
                f"unknown config key {key!r}; accepted keys: "
                f"{', '.join(accepted)}")
        if key in _INT_FIELDS:
            changes[key] = int(raw)
        elif key == "sim_radius" and raw.lower() in {"none", "auto"}:
            changes[key] = None
        else:
            changes[key] = float(raw)
    return base.with_overrides(**changes)
