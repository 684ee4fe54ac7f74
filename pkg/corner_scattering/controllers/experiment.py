from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple, Type

from corner_scattering.controllers.run_log import create_log, get_run_log
from corner_scattering.exceptions import ConfigurationError
from corner_scattering.utils import get_attr, get_hooks
from corner_scattering.utils.serialization import write_csv, write_json


@dataclass
class Table:
	header: Tuple[str, ...]
	rows: List[Tuple[Any, ...]] = field(default_factory=list)


@dataclass
class ExperimentReport:
	experiment: str
	verdicts: Dict[str, bool] = field(default_factory=dict)
	tables: Dict[str, Table] = field(default_factory=dict)
	metadata: Dict[str, Any] = field(default_factory=dict)
	warnings: List[str] = field(default_factory=list)

	@property
	def passed(self) -> bool:
		return bool(self.verdicts) and all(self.verdicts.values())

	def add_table(self, name: str, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> Table:
		table = Table(tuple(header), [tuple(r) for r in rows])
		self.tables[name] = table
		return table

	def as_dict(self) -> Dict[str, Any]:
		return {
			"experiment": self.experiment,
			"passed": self.passed,
			"verdicts": {k: bool(v) for k, v in self.verdicts.items()},
			"metadata": self.metadata,
			"warnings": list(self.warnings),
			"tables": sorted(self.tables),
		}

	def write(self, directory) -> List[Path]:
		directory = Path(directory)
		written = [
			write_csv(directory / f"{name}.csv", table.header, table.rows)
			for name, table in sorted(self.tables.items())
		]
		written.append(write_json(directory / "report.json", self.as_dict()))
		return written


class ExperimentController:
	"""An experiment reads a validated config, runs, and returns a report with verdicts."""

	experiment_id: str = ""
	module_def = "experiments"
	# keys accepted under options in the config document
	option_keys: Tuple[str, ...] = ()

	def __init__(self, config) -> None:
		self.config = config

	def validate(self) -> None:
		raise NotImplementedError()

	def execute(self) -> ExperimentReport:
		raise NotImplementedError()

	def run(self) -> ExperimentReport:
		method = f"{type(self).__module__}.{type(self).__name__}.run"
		get_run_log().begin()
		log = create_log(
			module_def=self.module_def,
			status="Queued",
			method=method,
			request_data=self.config.as_dict(),
			message=f"{self.experiment_id} started",
		)
		try:
			self.config.check_options(self.option_keys)
			self.validate()
			report = self.execute()
		except Exception as e:
			create_log(status="Error", exception=e, log=log)
			raise

		create_log(
			status="Success" if report.passed else "Failure",
			response_data={"verdicts": report.verdicts},
			message=f"{self.experiment_id} {'PASS' if report.passed else 'FAIL'}",
			log=log,
		)
		return report


def get_experiment_controller(experiment_id: str) -> Type[ExperimentController]:
	registry = get_hooks("experiments")
	if experiment_id not in registry:
		raise ConfigurationError(
			f"Unknown experiment {experiment_id!r}, expected one of {sorted(registry)}"
		)
	return get_attr(registry[experiment_id])
