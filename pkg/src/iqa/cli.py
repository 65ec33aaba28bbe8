"""Command-line entry point.

Subcommands:
    iqa run --config <path>       execute a scenario, write CSV tables
    iqa validate --config <path>  parse a config and echo the resolved values
    iqa oracle --n <N>            shortcut for the oracle-check scenario

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ConfigError, DegeneracyError, IntegrationError
from .experiments import ExperimentConfig, load_config, run

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iqa",
        description="Reconstruct local parent Hamiltonians of free-fermion "
                    "ground states by inverse annealing of coupling vectors.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a scenario from a config file")
    p_run.add_argument("--config", required=True, help="path to key = value config")

    p_val = sub.add_parser("validate", help="parse a config and echo it")
    p_val.add_argument("--config", required=True, help="path to key = value config")

    p_orc = sub.add_parser("oracle", help="dense-oracle consistency check")
    p_orc.add_argument("--n", type=int, required=True, help="chain length (even, <= 10)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            cfg = load_config(args.config)
            for line in cfg.echo():
                print(line)
            return EXIT_OK
        if args.command == "run":
            cfg = load_config(args.config)
        else:  # oracle
            try:
                cfg = ExperimentConfig(scenario="oracle-check", N_list=[args.n],
                                       l_list=list(range(1, max(args.n // 2, 1) + 1)))
                cfg.validate()
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        tables = run(cfg)
        for table in tables:
            print(f"wrote {table.scenario}/{table.name}.csv ({len(table.rows)} rows)")
        return EXIT_OK
    except (ConfigError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (IntegrationError, DegeneracyError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
