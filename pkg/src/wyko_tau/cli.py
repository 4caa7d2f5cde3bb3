"""Command-line interface: ``wyko-tau sweep|verify|state|optimize``.

Exit codes: 0 success, 1 verification failure, 2 argument error, 3 I/O error.
"""

import argparse
import logging
import sys
from typing import Optional, Sequence, TextIO

from wyko_tau import __version__, settings
from wyko_tau.bell import (
    bell_closed,
    bell_expectation,
    bell_theta,
    default_settings,
    quantum_violation,
    tau_from_violation,
)
from wyko_tau.measures import tau48, tau48_closed, tau_n, tau_n_closed
from wyko_tau.optimizer import optimize_settings
from wyko_tau.quantum.qstate import (
    FamilyParams,
    make_family_state,
    nonzero_amplitudes,
)
from wyko_tau.sweep import MODES, STDOUT, SweepConfig, sweep_rows, write_csv
from wyko_tau.verify import run_checks

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _to_params(theta1: float, theta2: float, degrees: bool) -> FamilyParams:
    if degrees:
        return FamilyParams.from_degrees(theta1, theta2)
    return FamilyParams(theta1, theta2)


def cmd_sweep(config: SweepConfig, stdout: TextIO = sys.stdout) -> int:
    rows = sweep_rows(config)
    if config.output_path == STDOUT:
        write_csv(rows, config.mode, stdout)
        return EXIT_OK
    try:
        with open(config.output_path, "w", newline="") as f:
            write_csv(rows, config.mode, f)
    except OSError as error:
        logger.error(f"Unable to write sweep output: {error}")
        print(f"error: cannot write {config.output_path}: {error}", file=sys.stderr)
        return EXIT_IO
    logger.debug(f"Wrote {len(rows)} rows to {config.output_path}")
    return EXIT_OK


def cmd_verify(seed: Optional[int] = None, stdout: TextIO = sys.stdout) -> int:
    results = run_checks(seed)
    for result in results:
        print(result, file=stdout)
    n_failed = sum(not r.passed for r in results)
    print(f"{len(results) - n_failed}/{len(results)} checks passed", file=stdout)
    return EXIT_VERIFY_FAILED if n_failed else EXIT_OK


def cmd_state(params: FamilyParams, stdout: TextIO = sys.stdout) -> int:
    psi = make_family_state(params)
    bell = bell_expectation(psi, default_settings())
    print(
        f"theta1 = {params.theta1:.12f} rad, theta2 = {params.theta2:.12f} rad",
        file=stdout,
    )
    print("amplitudes:", file=stdout)
    for label, amp in nonzero_amplitudes(psi):
        print(f"  |{label}>  {amp.real:+.12f}", file=stdout)
    print(f"{'':10}{'numeric':>18}{'closed form':>18}", file=stdout)
    for name, numeric, closed in (
        ("tau4", tau_n(psi), tau_n_closed(params)),
        ("tau48", tau48(psi), tau48_closed(params)),
        ("<B>", bell, bell_closed(params)),
    ):
        print(f"{name:10}{numeric:18.12f}{closed:18.12f}", file=stdout)
    print(f"violation |<B>| - 2 = {quantum_violation(bell):.12f}", file=stdout)
    if params.is_diagonal:
        from_violation = tau_from_violation(bell_theta(params.theta1))
        print(f"tau48 from violation = {from_violation:.12f}", file=stdout)
    return EXIT_OK


def cmd_optimize(
    params: FamilyParams, restarts: int, seed: int, stdout: TextIO = sys.stdout
) -> int:
    psi = make_family_state(params)
    result = optimize_settings(psi, restarts=restarts, seed=seed)
    default_value = bell_expectation(psi, default_settings())
    print(f"theta = {params.theta1:.12f} rad", file=stdout)
    print(
        f"best <B> = {result.best_value:.12f}"
        + f" ({result.restarts_used} restarts, {result.evaluations} evaluations)",
        file=stdout,
    )
    print(f"default settings <B> = {default_value:.12f}", file=stdout)
    print(f"gap to default = {result.best_value - default_value:.12f}", file=stdout)
    print("settings (Bloch vectors):", file=stdout)
    best = result.best_settings
    for name, obs in zip(best.names(), best.observables()):
        print(f"  {name.upper()}  {obs}", file=stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wyko-tau",
        description="Entanglement measures and WYKO Bell violation for a"
        + " family of four-qubit states",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="emit CSV sweep data")
    sweep.add_argument("--grid", type=int, help="points per axis")
    sweep.add_argument("--mode", choices=MODES, help="sweep mode")
    sweep.add_argument("--out", default=STDOUT, help="output path, '-' for stdout")
    sweep.add_argument("--preset", help="named figure preset")
    sweep.add_argument(
        "--list-presets", action="store_true", help="list figure presets and exit"
    )

    verify = sub.add_parser("verify", help="run every numeric cross-check")
    verify.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)

    state = sub.add_parser("state", help="report one family state")
    state.add_argument("--theta1", type=float)
    state.add_argument("--theta2", type=float)
    state.add_argument("--theta", type=float, help="sets theta1 = theta2")
    state.add_argument("--degrees", action="store_true", help="angles in degrees")

    optimize = sub.add_parser("optimize", help="search measurement settings")
    optimize.add_argument("--theta", type=float, required=True)
    optimize.add_argument("--restarts", type=int, default=settings.DEFAULT_RESTARTS)
    optimize.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    optimize.add_argument("--degrees", action="store_true", help="angles in degrees")
    return parser


def _sweep_config(args) -> SweepConfig:
    if args.preset:
        from wyko_tau.discover import presets

        if args.preset not in presets:
            raise ValueError(
                f"Unknown preset {args.preset!r}; choose from {sorted(presets)}"
            )
        preset = presets[args.preset]
        return SweepConfig(
            args.grid or preset.grid_size, args.mode or preset.mode, args.out
        )
    if args.grid is None or args.mode is None:
        raise ValueError("sweep needs --grid and --mode, or --preset")
    return SweepConfig(args.grid, args.mode, args.out)


def _list_presets(stdout: TextIO) -> int:
    from wyko_tau.discover import presets

    for name, preset in sorted(presets.items()):
        print(
            f"{name}: {preset.mode}, grid {preset.grid_size},"
            + f" plot {', '.join(preset.plot) or '-'} - {preset.description}",
            file=stdout,
        )
    return EXIT_OK


def _state_params(args) -> FamilyParams:
    if args.theta is not None:
        if args.theta1 is not None or args.theta2 is not None:
            raise ValueError("use either --theta or --theta1/--theta2")
        return _to_params(args.theta, args.theta, args.degrees)
    if args.theta1 is None or args.theta2 is None:
        raise ValueError("state needs --theta1 and --theta2 (or --theta)")
    return _to_params(args.theta1, args.theta2, args.degrees)


def _configure_logging():
    level = logging.getLevelName(settings.LOG_LEVEL)
    if not isinstance(level, int):
        raise ValueError(f"Unknown log level WYKO_LOG_LEVEL={settings.LOG_LEVEL!r}")
    logging.basicConfig(level=level, stream=sys.stderr)


def main(argv: Optional[Sequence[str]] = None, stdout: TextIO = sys.stdout) -> int:
    try:
        _configure_logging()
    except ValueError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_USAGE
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return EXIT_USAGE if exit_.code else EXIT_OK

    try:
        if args.command == "sweep":
            if args.list_presets:
                return _list_presets(stdout)
            return cmd_sweep(_sweep_config(args), stdout)
        if args.command == "verify":
            return cmd_verify(args.seed, stdout)
        if args.command == "state":
            return cmd_state(_state_params(args), stdout)
        if args.command == "optimize":
            params = _to_params(args.theta, args.theta, args.degrees)
            return cmd_optimize(params, args.restarts, args.seed, stdout)
    except ValueError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE
