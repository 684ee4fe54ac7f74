"""The ``corner-scattering`` command line.

	corner-scattering run E1 --config configs/e1_disk.json --out out/E1
	corner-scattering teig disk --V 1 --a 1 --kmax 8
	corner-scattering teig scan --config configs/teig_square.json
	corner-scattering scatter --config configs/scatter_square.json
	corner-scattering fit --config configs/fit_disk.json
	corner-scattering cone lt --config configs/cone_orthant.json

Exit status is 0 on PASS (or a finished utility), 2 when an experiment verdict fails and 1 on any
error. Every invocation leaves manifest.json and run_log.jsonl in its output directory.
"""

import argparse
import logging
import platform
import sys
import time
from pathlib import Path
from typing import List, Optional

import numpy as np
import scipy

from corner_scattering import __version__
from corner_scattering.controllers.run_log import get_run_log
from corner_scattering.exceptions import ConfigurationError, LabError
from corner_scattering.experiments import commands
from corner_scattering.experiments.config import ExperimentConfig, load_config
from corner_scattering.experiments.constants import (
	DEFAULT_OUTPUT_DIR,
	EXIT_ERROR,
	EXIT_FAIL,
	EXIT_PASS,
	MANIFEST_FILE,
)
from corner_scattering.experiments.utils import create_experiments_log
from corner_scattering.transmission_eig.constants import DEFAULT_SCAN_STEP
from corner_scattering.utils import get_hooks
from corner_scattering.utils.serialization import write_json

logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
	"""Usage errors raise instead of exiting with argparse's status 2, which means FAIL here."""

	def error(self, message):
		raise ConfigurationError(f"{self.prog}: {message}")


def _common_flags() -> ArgumentParser:
	common = ArgumentParser(add_help=False)
	common.add_argument("--config", help="JSON configuration document")
	common.add_argument("--out", help="output directory")
	common.add_argument("--seed", type=int, help="seed of every random draw")
	common.add_argument("--threads", type=int, help="worker threads")
	common.add_argument("-v", "--verbose", action="store_true", help="log at INFO level")
	return common


def build_parser() -> ArgumentParser:
	common = _common_flags()
	parser = ArgumentParser(
		prog="corner-scattering",
		description="Transmission eigenfunctions, Herglotz scattering and corner far-field bounds",
	)
	subparsers = parser.add_subparsers(dest="group", required=True)

	run = subparsers.add_parser("run", parents=[common], help="run an experiment")
	run.add_argument("experiment", choices=sorted(get_hooks("experiments")))
	run.set_defaults(func=_run, command="run")

	teig = subparsers.add_parser("teig", help="transmission eigenvalues")
	teig_commands = teig.add_subparsers(dest="action", required=True)
	disk = teig_commands.add_parser("disk", parents=[common], help="disk eigenvalues (m, k)")
	disk.add_argument("--V", type=float, required=True, help="constant contrast")
	disk.add_argument("--a", type=float, default=1.0, help="disk radius")
	disk.add_argument("--kmax", type=float, required=True)
	disk.add_argument("--kmin", type=float, default=0.1)
	disk.add_argument("--m-max", type=int, default=10, dest="m_max")
	disk.add_argument("--step", type=float, default=DEFAULT_SCAN_STEP)
	disk.set_defaults(func=_teig_disk, command="teig disk")
	scan = teig_commands.add_parser("scan", parents=[common], help="collocation scan")
	scan.set_defaults(func=_config_command(commands.teig_scan), command="teig scan")

	scatter = subparsers.add_parser("scatter", parents=[common], help="forward scattering")
	scatter.set_defaults(func=_config_command(commands.scatter), command="scatter")

	fit = subparsers.add_parser("fit", parents=[common], help="fit a Herglotz kernel")
	fit.set_defaults(func=_config_command(commands.fit), command="fit")

	cone = subparsers.add_parser("cone", help="cone Laplace transforms")
	cone_commands = cone.add_subparsers(dest="action", required=True)
	lt = cone_commands.add_parser("lt", parents=[common], help="transform of one polynomial")
	lt.set_defaults(func=_config_command(commands.cone_lt), command="cone lt")
	return parser


def _run(args, config, directory):
	return commands.run_experiment(config, directory)


def _teig_disk(args, config, directory):
	return commands.teig_disk(
		args.V, args.a, args.kmax, directory, k_min=args.kmin, m_max=args.m_max, step=args.step
	)


def _config_command(func):
	def handler(args, config, directory):
		return func(config, directory)

	return handler


def resolve_config(args) -> ExperimentConfig:
	config = load_config(args.config) if args.config else ExperimentConfig()
	experiment = getattr(args, "experiment", None)
	if args.threads is not None and args.threads < 1:
		raise ConfigurationError(f"--threads must be at least 1, got {args.threads}")
	if args.seed is not None and args.seed < 0:
		raise ConfigurationError(f"--seed must be non-negative, got {args.seed}")
	return config.with_overrides(
		experiment=experiment, seed=args.seed, threads=args.threads, output_dir=args.out
	)


def output_directory(args, config: ExperimentConfig) -> Path:
	if config.output_dir:
		return Path(config.output_dir)
	name = args.experiment if args.command == "run" else args.command.replace(" ", "_")
	return Path(DEFAULT_OUTPUT_DIR) / name


def versions() -> dict:
	return {
		"corner_scattering": __version__,
		"numpy": np.__version__,
		"scipy": scipy.__version__,
		"python": platform.python_version(),
	}


def main(argv: Optional[List[str]] = None) -> int:
	try:
		args = build_parser().parse_args(argv)
	except ConfigurationError as e:
		print(f"error: {e}", file=sys.stderr)
		return EXIT_ERROR

	logging.basicConfig(
		level=logging.INFO if args.verbose else logging.WARNING,
		format="%(asctime)s %(levelname)s %(name)s: %(message)s",
	)
	started = time.perf_counter()
	run_log = get_run_log()
	config, directory, result, status = None, None, None, "ERROR"
	try:
		config = resolve_config(args)
		directory = output_directory(args, config)
		run_log.attach(directory)
		log = create_experiments_log(
			status="Queued",
			method=f"corner_scattering.experiments.cli.{args.command.replace(' ', '_')}",
			request_data=config.as_dict(),
			message=f"{args.command} started",
		)
		try:
			result = args.func(args, config, directory)
		except Exception as e:
			create_experiments_log(status="Error", exception=e, log=log)
			raise

		status = "FAIL" if result.passed is False else ("PASS" if result.passed else "OK")
		create_experiments_log(
			status="Failure" if result.passed is False else "Success",
			message=f"{args.command} {status}",
			log=log,
		)
	except LabError as e:
		print(f"error: {e}", file=sys.stderr)
	except Exception:
		logger.exception("%s failed", args.command)
	finally:
		run_log.detach()
		if directory is not None:
			write_json(
				directory / MANIFEST_FILE,
				{
					"command": args.command,
					"argv": list(sys.argv[1:] if argv is None else argv),
					"config": None if config is None else config.as_dict(),
					"versions": versions(),
					"seed": None if config is None else config.seed,
					"wall_time": time.perf_counter() - started,
					"status": status,
					"files": [] if result is None else [p.name for p in result.files],
				},
			)

	if result is None:
		return EXIT_ERROR
	print(f"{result.name}: {status} ({directory})")
	return EXIT_FAIL if result.passed is False else EXIT_PASS


if __name__ == "__main__":
	sys.exit(main())
