"""Association, rate, and secrecy analysis for a two-tier downlink.

A macro tier with large antenna arrays and zero-forcing beamforming
shares spectrum with a dense pico tier; base stations of both tiers and
passive eavesdroppers are modelled as independent Poisson point
processes.  The package computes tier-association probabilities, user
rates, and secrecy outage probabilities twice: once through closed-form
expressions built on hypergeometric special functions, and once through
a seeded Monte Carlo engine, so each side can be validated against the
other.
"""

from .params import SystemParams, Tier, dbm_to_watts, watts_to_dbm
from .rates import (AssociationProbabilities, association_probabilities,
                    cdf_sinr_pico, ergodic_rate_pico, rate_lower_bound_macro)
from .secrecy import (SecrecyOutcome, cdf_eve_sinr_macro, cdf_eve_sinr_pico,
                      secrecy_outage, secrecy_outage_macro,
                      secrecy_outage_pico)
from .montecarlo import (MC_METRICS, MetricEstimate, estimate_association,
                         estimate_metric, sample_eve_max_sinr,
                         sample_user_sinr)
from .sweeps import (CurvePoint, SweepSpec, read_csv, run_preset, run_sweep,
                     write_csv)

__version__ = "0.1.0"

__all__ = [
    "SystemParams",
    "Tier",
    "dbm_to_watts",
    "watts_to_dbm",
    "AssociationProbabilities",
    "association_probabilities",
    "cdf_sinr_pico",
    "ergodic_rate_pico",
    "rate_lower_bound_macro",
    "SecrecyOutcome",
    "cdf_eve_sinr_macro",
    "cdf_eve_sinr_pico",
    "secrecy_outage",
    "secrecy_outage_macro",
    "secrecy_outage_pico",
    "MC_METRICS",
    "MetricEstimate",
    "estimate_association",
    "estimate_metric",
    "sample_eve_max_sinr",
    "sample_user_sinr",
    "CurvePoint",
    "SweepSpec",
    "read_csv",
    "run_preset",
    "run_sweep",
    "write_csv",
    "__version__",
]
