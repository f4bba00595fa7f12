#!/usr/bin/env python3
# coding=utf-8

"""
The ``entcone`` command line.

Exit codes: 0 when every verdict passes, 2 when a verdict fails, 1 on an execution or usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import NoReturn, override

from vt.quantum.entcone.errors import EntconeError
from vt.quantum.entcone.harness.config import ScenarioConfig, load_config, with_overrides
from vt.quantum.entcone.harness.outputs import OutputFormat, emit_outputs
from vt.quantum.entcone.harness.runner import (
    RunRecord,
    dispersion_for,
    load_record,
    merge_records,
    run_scenario,
    velocity_table,
)
from vt.quantum.entcone.velocity import DispersionLaw, DispersionLaws

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VERDICT_FAILED = 2

DEFAULT_MUS = (0.1, 0.25, 0.5, 1.0)


class _Parser(argparse.ArgumentParser):
    """
    Usage errors exit with 1, keeping 2 for failed verdicts.
    """

    @override
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    """
    >>> args = build_parser().parse_args(["velocity", "--tau", "2", "--mu", "0.5", "1.0"])
    >>> args.command, args.tau, args.mu
    ('velocity', 2.0, [0.5, 1.0])
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="scenario YAML file")
    common.add_argument("--output-dir", type=Path, help="directory for the emitted files")
    common.add_argument("--jobs", type=int, help="worker threads of the sweep")
    common.add_argument("--seed", type=int, help="seed of the stochastic subroutines")
    common.add_argument("--kappa", type=float, help="separability threshold")
    common.add_argument("--mu", type=float, nargs="+", help="decay rates mu")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")

    parser = _Parser(prog="entcone", description="Entanglement light-cone laboratory.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    velocity = sub.add_parser("velocity", parents=[common], help="c(mu) tables of dispersion laws")
    velocity.add_argument(
        "--law",
        choices=["tight-binding", "hypercubic", "relativistic", "multi-particle"],
        default="tight-binding",
        help="dispersion law when no scenario is given",
    )
    velocity.add_argument("--tau", type=float, default=1.0, help="hopping strength")
    velocity.add_argument("--dimension", type=int, default=1, help="lattice dimension of the hypercubic law")
    velocity.add_argument("--mass", type=float, nargs="+", default=[1.0], help="particle masses")

    sub.add_parser("evolve", parents=[common], help="run a scenario and write the sample table")
    sub.add_parser("cone", parents=[common], help="sweep, fit the light-cone envelopes and plot")
    sub.add_parser("verify", parents=[common], help="sweep, fit and run the entanglement protocols")
    report = sub.add_parser("report", parents=[common], help="re-emit outputs from saved run records")
    report.add_argument(
        "--record", type=Path, action="append", required=True, help="run record; repeat to merge partial runs"
    )
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _scenario(args: argparse.Namespace) -> ScenarioConfig:
    if args.config is None:
        raise EntconeError(f"{args.command} needs --config.")
    return with_overrides(
        load_config(args.config),
        seed=args.seed,
        kappa=args.kappa,
        mu=args.mu,
        jobs=args.jobs,
        output_dir=args.output_dir,
    )


def _laws(args: argparse.Namespace) -> list[DispersionLaw]:
    if args.config is not None:
        return [dispersion_for(load_config(args.config))]
    match args.law:
        case "hypercubic":
            return [DispersionLaws.hypercubic(args.tau, args.dimension)]
        case "relativistic":
            return [DispersionLaws.relativistic(m) for m in args.mass]
        case "multi-particle":
            return [DispersionLaws.multi_particle(args.mass)]
        case _:
            return [DispersionLaws.tight_binding(args.tau)]


def _velocity(args: argparse.Namespace) -> int:
    mus = args.mu or (load_config(args.config).mu if args.config else list(DEFAULT_MUS))
    table = velocity_table(_laws(args), mus)
    if args.output_dir is None:
        table.to_csv(sys.stdout, index=False, float_format="%.17g", lineterminator="\n")
    else:
        args.output_dir.mkdir(parents=True, exist_ok=True)
        table.to_csv(args.output_dir / "velocity.csv", index=False, float_format="%.17g", lineterminator="\n")
    return EXIT_OK


def _exit_code(record: RunRecord, names: Sequence[str] | None = None) -> int:
    selected = [v for k, v in record.verdicts.items() if names is None or any(k.startswith(n) for n in names)]
    failed = [v for v in selected if not v.get("passed", True)]
    return EXIT_VERDICT_FAILED if failed else EXIT_OK


def _run(args: argparse.Namespace) -> int:
    match args.command:
        case "velocity":
            return _velocity(args)
        case "evolve":
            record = run_scenario(_scenario(args))
            emit_outputs(record, [OutputFormat.CSV])
            return EXIT_OK
        case "cone":
            record = run_scenario(_scenario(args))
            emit_outputs(record, [OutputFormat.CSV, OutputFormat.SVG, OutputFormat.JSON])
            return _exit_code(record, ["envelope", "velocity"])
        case "verify":
            record = run_scenario(_scenario(args))
            emit_outputs(record)
            return _exit_code(record)
        case _:
            records = [load_record(p) for p in args.record]
            record = records[0] if len(records) == 1 else merge_records(records)
            emit_outputs(record, output_dir=args.output_dir)
            return _exit_code(record)


def main(argv: Sequence[str] | None = None) -> int:
    """
    Entry point of the ``entcone`` script.

    :return: the process exit code.
    """
    args = build_parser().parse_args(argv)
    _configure_logging(args)
    try:
        return _run(args)
    except (EntconeError, OSError) as err:
        notes = "; ".join(getattr(err, "__notes__", []))
        logger.error("%s%s", err, f" ({notes})" if notes else "")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
