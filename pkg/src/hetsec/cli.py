"""Command-line front end.

Five subcommands: ``assoc``, ``rate``, and ``secrecy`` evaluate the
core metrics at one parameter point, ``sweep`` runs a preset parameter
sweep to CSV, and ``validate`` cross-checks the two engines against
each other and prints a deterministic pass/fail report.

Parameter precedence everywhere: built-in defaults, then ``--config``
file values, then explicit flags.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import montecarlo, rates, sweeps
from .params import SystemParams, params_from_mapping, parse_config_text
from .special import gauss_2f1, incomplete_beta

__all__ = ["main", "build_parser"]

_ENGINE_FLAGS = ("analytical", "mc", "both")
_ENGINE_BY_FLAG = {"analytical": "analytical", "mc": "monte_carlo",
                   "both": "both"}

_VALIDATE_MIN_TRIALS = 10_000

# Default realization budgets per subcommand, sized so each command
# answers in at most a couple of minutes at the built-in parameters.
_DEFAULT_TRIALS = {"assoc": 100_000, "rate": 20_000, "secrecy": 1_000,
                   "validate": _VALIDATE_MIN_TRIALS}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hetsec",
        description="Two-tier massive MIMO downlink: association, rates, "
                    "and secrecy outage via closed forms and simulation.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, engine: bool = True) -> None:
        p.add_argument("--config", metavar="PATH",
                       help="key=value file overriding built-in parameters")
        p.add_argument("--seed", type=int, default=0, metavar="U64",
                       help="Monte Carlo seed (default 0)")
        p.add_argument("--trials", type=int, default=None, metavar="N",
                       help="Monte Carlo trials/realizations per estimate")
        if engine:
            p.add_argument("--engine", choices=_ENGINE_FLAGS, default="both",
                           help="which engine(s) to run (default both)")

    p_assoc = sub.add_parser("assoc", help="tier association probabilities")
    add_common(p_assoc)

    p_rate = sub.add_parser("rate", help="per-tier user rates")
    add_common(p_rate)

    p_secrecy = sub.add_parser("secrecy", help="secrecy outage probabilities")
    add_common(p_secrecy)

    p_sweep = sub.add_parser("sweep", help="run a preset parameter sweep")
    p_sweep.add_argument("--preset", choices=sweeps.PRESETS, required=True,
                         help="which curve family to reproduce")
    p_sweep.add_argument("--out", metavar="CSV",
                         help="CSV output path (default stdout)")
    add_common(p_sweep)

    p_val = sub.add_parser(
        "validate", help="cross-check the engines and print a report")
    p_val.add_argument("--out", metavar="PATH",
                       help="write the report to a file as well as stdout")
    add_common(p_val, engine=False)
    return parser


def _load_params(args: argparse.Namespace) -> SystemParams:
    if args.config is None:
        return SystemParams()
    with open(args.config, encoding="utf-8") as fh:
        mapping = parse_config_text(fh.read())
    return params_from_mapping(mapping)


def _trials(args: argparse.Namespace) -> int:
    if args.trials is not None:
        if args.trials < 1:
            raise SystemExit("--trials must be positive")
        return args.trials
    return _DEFAULT_TRIALS.get(args.command, 10_000)


def _engines(args: argparse.Namespace) -> tuple[str, ...]:
    engine = _ENGINE_BY_FLAG[getattr(args, "engine", "both")]
    if engine == "both":
        return ("analytical", "monte_carlo")
    return (engine,)


def _print_metrics(metrics: Sequence[str], params: SystemParams,
                   args: argparse.Namespace) -> int:
    trials = _trials(args)
    for engine in _engines(args):
        for metric in metrics:
            if engine == "analytical":
                value = sweeps.analytic_metric(metric, params)
                print(f"{metric:<24s} analytical   {value:.6f}")
            else:
                est = montecarlo.estimate_metric(metric, params, trials,
                                                 args.seed)
                print(f"{metric:<24s} monte_carlo  {est.value:.6f} "
                      f"+- {est.half_width:.6f}  "
                      f"({est.trials} trials, seed {est.seed})")
    return 0


def _cmd_assoc(args: argparse.Namespace) -> int:
    params = _load_params(args)
    return _print_metrics(["assoc_frac_macro", "assoc_frac_pico"],
                          params, args)


def _cmd_rate(args: argparse.Namespace) -> int:
    params = _load_params(args)
    metrics = ["ergodic_rate_macro"]
    if params.lambda_p > 0.0:
        metrics.append("ergodic_rate_pico")
    return _print_metrics(metrics, params, args)


def _cmd_secrecy(args: argparse.Namespace) -> int:
    params = _load_params(args)
    metrics = ["secrecy_outage_macro"]
    if params.lambda_p > 0.0:
        metrics.append("secrecy_outage_pico")
    metrics.append("secrecy_outage_overall")
    return _print_metrics(metrics, params, args)


def _cmd_sweep(args: argparse.Namespace) -> int:
    base = _load_params(args)
    engine = _ENGINE_BY_FLAG[args.engine]
    points = sweeps.run_preset(args.preset, base=base, engine=engine,
                               trials=args.trials, seed=args.seed)
    if args.out is None:
        sweeps.write_csv(sys.stdout, points)
    else:
        sweeps.write_csv(args.out, points)
        print(f"wrote {len(points)} rows to {args.out}")
    failed = sum(1 for pt in points if not pt.ok)
    if failed:
        print(f"{failed} of {len(points)} sweep points failed",
              file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# validate

def _report(lines: list[str], ok: bool, label: str, detail: str) -> bool:
    lines.append(f"  {'PASS' if ok else 'FAIL'} {label}: {detail}")
    return ok


def _run_validation(params: SystemParams, trials: int,
                    seed: int) -> tuple[str, bool]:
    """Cross-check the engines; returns (report text, all passed)."""
    lines: list[str] = [f"validation report (seed={seed}, trials={trials})"]
    results: list[bool] = []

    # closed-form spot identities for the special-function layer
    ref = 0.604599788078072616864692752547  # Gauss 2F1 at (1, 0.5; 1.5; -3)
    got = gauss_2f1(1.0, 0.5, 1.5, -3.0)
    results.append(_report(
        lines, abs(got - ref) <= 1e-12 * abs(ref), "hypergeometric value",
        f"|{got:.15f} - {ref:.15f}| = {abs(got - ref):.3e}"))
    beta_ref = incomplete_beta(0.7, 2.5, 3.5)
    beta_alt = (0.7 ** 2.5 / 2.5) * gauss_2f1(2.5, -2.5, 3.5, 0.7)
    results.append(_report(
        lines, abs(beta_ref - beta_alt) <= 1e-10 * max(1.0, abs(beta_ref)),
        "incomplete beta identity",
        f"gap {abs(beta_ref - beta_alt):.3e}"))

    # the two association fractions must partition the user population
    worst = 0.0
    for lam_p in (1e-3, 1e-2, 1e-1):
        for n in (50, 200, 400):
            probs = rates.association_probabilities(
                params.with_overrides(lambda_p=lam_p, n_antennas=n))
            worst = max(worst, abs(probs.macro + probs.pico - 1.0))
    results.append(_report(lines, worst <= 1e-6, "partition identity",
                           f"max |A_M + A_P - 1| = {worst:.3e}"))

    # engine pairing: attachment fraction
    analytic = rates.association_probabilities(params).macro
    est = montecarlo.estimate_metric("assoc_frac_macro", params, trials, seed)
    gap_se = abs(est.value - analytic) / est.se
    results.append(_report(
        lines, gap_se <= 3.0, "association pairing",
        f"analytic {analytic:.6f} vs mc {est.value:.6f} ({gap_se:.2f} se)"))

    # regression fixture: a transposed exclusion exponent must be rejected
    wrong = rates._pico_association_transposed_variant(params)
    est_p = montecarlo.estimate_metric("assoc_frac_pico", params, trials,
                                       seed)
    gap_wrong = abs(est_p.value - wrong) / est_p.se
    results.append(_report(
        lines, gap_wrong > 3.0, "exclusion-exponent regression",
        f"defective variant {wrong:.6f} vs mc {est_p.value:.6f} "
        f"({gap_wrong:.2f} se, must exceed 3)"))

    # engine pairing: pico SINR distribution
    worst_cdf = 0.0
    for gamma in (0.5, 2.0):
        ana = rates.cdf_sinr_pico(gamma, params)
        emp = montecarlo.estimate_metric(f"sinr_cdf_pico:{gamma}", params,
                                         trials, seed)
        worst_cdf = max(worst_cdf, abs(ana - emp.value))
    results.append(_report(lines, worst_cdf <= 0.02, "pico SINR cdf pairing",
                           f"max gap {worst_cdf:.4f} (tolerance 0.02)"))

    # engine pairing: pico user rate
    ana_rate = rates.ergodic_rate_pico(params)
    mc_rate = montecarlo.estimate_metric("ergodic_rate_pico", params, trials,
                                         seed)
    rel = abs(ana_rate - mc_rate.value) / ana_rate
    results.append(_report(
        lines, rel <= 0.05, "pico rate pairing",
        f"analytic {ana_rate:.4f} vs mc {mc_rate.value:.4f} "
        f"({100 * rel:.2f}% relative)"))

    # the macro rate expression is a lower bound, not an estimate
    bound = rates.rate_lower_bound_macro(params)
    mc_macro = montecarlo.estimate_metric("ergodic_rate_macro", params,
                                          trials, seed)
    results.append(_report(
        lines, bound <= mc_macro.value + 2.0 * mc_macro.se,
        "macro rate bound",
        f"bound {bound:.4f} <= mc {mc_macro.value:.4f} "
        f"+ 2 se ({2 * mc_macro.se:.4f})"))

    passed = sum(results)
    lines.append(f"overall: {'PASS' if all(results) else 'FAIL'} "
                 f"({passed}/{len(results)} checks)")
    return "\n".join(lines) + "\n", all(results)


def _cmd_validate(args: argparse.Namespace) -> int:
    params = _load_params(args)
    trials = _trials(args)
    if trials < _VALIDATE_MIN_TRIALS:
        raise SystemExit(
            f"validate needs at least {_VALIDATE_MIN_TRIALS} trials for "
            f"its pairings to have statistical power; got {trials}")
    report, ok = _run_validation(params, trials, args.seed)
    sys.stdout.write(report)
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report)
    return 0 if ok else 1


_COMMANDS = {
    "assoc": _cmd_assoc,
    "rate": _cmd_rate,
    "secrecy": _cmd_secrecy,
    "sweep": _cmd_sweep,
    "validate": _cmd_validate,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
