"""Command-line interface.

Three sub-commands:

``coherence-bench sweep --config cfg.txt --csv out.csv [--svg out.svg]``
    Run a sweep described by a flat ``key = value`` configuration file.

``coherence-bench probs --family qubit --theta 0.5236``
``coherence-bench probs --bloch 0,0,0``
``coherence-bench probs --family qutrit --alpha 0.7854``
    Print exact collective-measurement outcome probabilities and exact
    coherence values for one state.

``coherence-bench figure fig2 --out results/ [--seed S] [--reps T] [--shots N]``
    Reproduce a canonical benchmark figure (CSV + SVG, plus an averages
    table for the bar figures).

Exit codes: 0 success, 2 usage/configuration error, 3 runtime error.
"""

from __future__ import annotations

import argparse
import sys

from .estimators import PILOT_CHARGED, PILOT_UNCHARGED, SchemeSpec
from .exceptions import CoherenceBenchError, ConfigError
from .figures import (
    DEFAULT_FIGURE_REPS,
    DEFAULT_FIGURE_SEED,
    DEFAULT_FIGURE_SHOTS,
    FIGURE_NAMES,
    run_figure,
)
from .harness import SweepConfig, default_grid, run_sweep, write_csv
from .linalg import kron
from .measures import ALL_MEASURES, c_formation_qubit, c_l1, c_rel_ent
from .measurements import bell_basis, outcome_probs, two_qutrit_cms_basis
from .sampling import RNG_ALGORITHM
from .states import BlochVector, qubit_family, qutrit_family, rho_from_bloch
from .svgplot import sweep_svg

_CONFIG_KEYS = {
    "family",
    "measure",
    "schemes",
    "grid",
    "repetitions",
    "budget_n",
    "master_seed",
    "oracle",
    "adaptive_pilot",
    "step1_fraction",
}
_REQUIRED_KEYS = ("family", "measure", "schemes", "budget_n", "repetitions", "master_seed")


def parse_config_text(text: str) -> dict:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in entries:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        if not value:
            raise ConfigError(f"line {lineno}: empty value for {key!r}")
        entries[key] = value
    return entries


def _parse_bool(value: str, key: str) -> bool:
    lowered = value.lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no"):
        return False
    raise ConfigError(f"{key} must be boolean, got {value!r}")


def build_sweep_config(entries: dict) -> SweepConfig:
    """Turn parsed key/value pairs into a validated SweepConfig."""
    for key in _REQUIRED_KEYS:
        if key not in entries:
            raise ConfigError(f"missing required key {key!r}")
    try:
        measure = entries["measure"]
        if measure not in ALL_MEASURES:
            raise ConfigError(
                f"measure must be one of {', '.join(ALL_MEASURES)}, got {measure!r}"
            )
        budget_n = int(entries["budget_n"])
        repetitions = int(entries["repetitions"])
        master_seed = int(entries["master_seed"])
        pilot = entries.get("adaptive_pilot", PILOT_CHARGED)
        if pilot not in (PILOT_CHARGED, PILOT_UNCHARGED):
            raise ConfigError(f"adaptive_pilot must be charged|uncharged, got {pilot!r}")
        step1_fraction = float(entries.get("step1_fraction", 0.5))
        if "grid" in entries:
            grid = tuple(float(x) for x in entries["grid"].split(","))
        else:
            grid = default_grid()
        schemes = tuple(
            SchemeSpec(
                kind.strip(),
                measure,
                budget_n,
                adaptive_pilot=pilot,
                step1_fraction=step1_fraction,
            )
            for kind in entries["schemes"].split(",")
        )
        return SweepConfig(
            family=entries["family"],
            grid=grid,
            schemes=schemes,
            repetitions=repetitions,
            master_seed=master_seed,
            oracle=_parse_bool(entries.get("oracle", "false"), "oracle"),
        )
    except ConfigError:
        raise
    except (ValueError, CoherenceBenchError) as exc:
        raise ConfigError(str(exc)) from exc


def _cmd_sweep(args) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2
    config = build_sweep_config(parse_config_text(text))
    result = run_sweep(config)
    write_csv(result, args.csv)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(sweep_svg(result))
    return 0


def _print_distribution(dist) -> None:
    for label, p in zip(dist.labels, dist.probabilities):
        print("P(%s) = %.9g" % (label, p))


def _cmd_probs(args) -> int:
    chosen = [args.theta is not None, args.alpha is not None, args.bloch is not None]
    if sum(chosen) != 1:
        raise ConfigError("specify exactly one of --theta, --alpha, --bloch")
    if args.bloch is not None:
        parts = args.bloch.split(",")
        if len(parts) != 3:
            raise ConfigError("--bloch expects three comma-separated reals")
        try:
            bloch = BlochVector(*(float(x) for x in parts))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        rho = rho_from_bloch(bloch)
        family = "qubit"
        print("state: qubit bloch=(%.9g,%.9g,%.9g)" % (bloch.r_x, bloch.r_y, bloch.r_z))
    elif args.theta is not None:
        if args.family not in (None, "qubit"):
            raise ConfigError("--theta applies to the qubit family")
        rho = qubit_family(args.theta)
        family = "qubit"
        print("state: qubit theta=%.9g" % args.theta)
    else:
        if args.family not in (None, "qutrit"):
            raise ConfigError("--alpha applies to the qutrit family")
        rho = qutrit_family(args.alpha)
        family = "qutrit"
        print("state: qutrit alpha=%.9g" % args.alpha)

    if family == "qubit":
        _print_distribution(outcome_probs(kron(rho, rho), bell_basis()))
        print("C_l1 = %.9g" % c_l1(rho))
        print("C_rel_ent = %.9g" % c_rel_ent(rho))
        print("C_formation = %.9g" % c_formation_qubit(rho))
    else:
        _print_distribution(outcome_probs(kron(rho, rho), two_qutrit_cms_basis()))
        print("C_l1 = %.9g" % c_l1(rho))
        print("C_rel_ent = %.9g" % c_rel_ent(rho))
    return 0


def _cmd_figure(args) -> int:
    paths = run_figure(
        args.name,
        args.out,
        master_seed=args.seed,
        repetitions=args.reps,
        budget_n=args.shots,
    )
    for path in paths:
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coherence-bench",
        description="Finite-shot coherence-estimation benchmarks "
        f"(rng: {RNG_ALGORITHM})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run a sweep from a config file")
    p_sweep.add_argument("--config", required=True, help="key = value configuration file")
    p_sweep.add_argument("--csv", required=True, help="output CSV path")
    p_sweep.add_argument("--svg", default=None, help="optional output SVG path")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_probs = sub.add_parser(
        "probs", help="print exact outcome probabilities and coherence values"
    )
    p_probs.add_argument("--family", choices=("qubit", "qutrit"), default=None)
    p_probs.add_argument("--theta", type=float, default=None, help="qubit family angle (rad)")
    p_probs.add_argument("--alpha", type=float, default=None, help="qutrit family angle (rad)")
    p_probs.add_argument("--bloch", default=None, help="explicit qubit Bloch vector x,y,z")
    p_probs.set_defaults(func=_cmd_probs)

    p_fig = sub.add_parser("figure", help="reproduce a canonical benchmark figure")
    p_fig.add_argument("name", choices=FIGURE_NAMES)
    p_fig.add_argument("--out", required=True, help="output directory")
    p_fig.add_argument("--seed", type=int, default=DEFAULT_FIGURE_SEED)
    p_fig.add_argument("--reps", type=int, default=DEFAULT_FIGURE_REPS)
    p_fig.add_argument("--shots", type=int, default=DEFAULT_FIGURE_SHOTS)
    p_fig.set_defaults(func=_cmd_figure)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses exit code 2 for usage errors
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CoherenceBenchError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
