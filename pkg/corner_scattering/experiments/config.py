"""JSON configuration of experiments and utility commands.

{
    "experiment": "E2",
    "potential": {"domain": {...}, "contrast": 1.0, "hoelder_alpha": 1.0},
    "wavenumber": 3.0,
    "k_range": [3.0, 12.0],
    "truncation": 20,
    "grid_h": 0.05,
    "seed": 0,
    "output_dir": "out/E2",
    "threads": 1,
    "options": {...}
}

Every key is optional at this level; experiments check what they need in ``validate``.
"""

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Tuple

from corner_scattering.exceptions import ConfigurationError, SchemaError
from corner_scattering.experiments.constants import (
	DEFAULT_GRID_H,
	DEFAULT_SEED,
	DEFAULT_TRUNCATION,
)
from corner_scattering.geometry.potential import (
	PotentialSpec,
	check_admissibility,
	load_potential_spec,
)
from corner_scattering.utils import get_attr, get_hooks

KEYS = (
	"experiment",
	"potential",
	"wavenumber",
	"k_range",
	"truncation",
	"grid_h",
	"seed",
	"output_dir",
	"threads",
	"options",
)

MAX_SEED = 2**64 - 1


def _is_number(value) -> bool:
	return isinstance(value, (int, float)) and not isinstance(value, bool)


def _positive(value, path) -> float:
	if not _is_number(value) or not value > 0:
		raise SchemaError(path, "expected a positive number")
	return float(value)


def _integer(value, path, minimum=0, maximum=None) -> int:
	if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
		raise SchemaError(path, f"expected an integer >= {minimum}")
	if maximum is not None and value > maximum:
		raise SchemaError(path, f"expected an integer <= {maximum}")
	return value


def _k_range(value, path) -> Tuple[float, float]:
	if not isinstance(value, (list, tuple)) or len(value) != 2:
		raise SchemaError(path, "expected [k_min, k_max]")
	lo = _positive(value[0], f"{path}[0]")
	hi = _positive(value[1], f"{path}[1]")
	if not hi > lo:
		raise SchemaError(path, "k_max must exceed k_min")
	return lo, hi


@dataclass(frozen=True)
class ExperimentConfig:
	experiment: Optional[str] = None
	potential: Optional[PotentialSpec] = None
	wavenumber: Optional[float] = None
	k_range: Optional[Tuple[float, float]] = None
	truncation: int = DEFAULT_TRUNCATION
	grid_h: float = DEFAULT_GRID_H
	seed: int = DEFAULT_SEED
	output_dir: Optional[str] = None
	threads: int = 1
	options: Dict[str, Any] = field(default_factory=dict)

	@classmethod
	def from_dict(cls, document: Any) -> "ExperimentConfig":
		if not isinstance(document, dict):
			raise SchemaError("<root>", "expected a JSON object")
		unknown = sorted(set(document) - set(KEYS))
		if unknown:
			raise SchemaError(unknown[0], "unknown key")

		values: Dict[str, Any] = {}
		if document.get("experiment") is not None:
			experiment = document["experiment"]
			registry = get_hooks("experiments")
			if experiment not in registry:
				raise SchemaError("experiment", f"expected one of {sorted(registry)}")
			values["experiment"] = experiment
		if document.get("potential") is not None:
			values["potential"] = load_potential_spec(document["potential"], "potential")
		if document.get("wavenumber") is not None:
			values["wavenumber"] = _positive(document["wavenumber"], "wavenumber")
		if document.get("k_range") is not None:
			values["k_range"] = _k_range(document["k_range"], "k_range")
		if "truncation" in document:
			values["truncation"] = _integer(document["truncation"], "truncation")
		if "grid_h" in document:
			values["grid_h"] = _positive(document["grid_h"], "grid_h")
		if "seed" in document:
			values["seed"] = _integer(document["seed"], "seed", maximum=MAX_SEED)
		if document.get("output_dir") is not None:
			if not isinstance(document["output_dir"], str):
				raise SchemaError("output_dir", "expected a path")
			values["output_dir"] = document["output_dir"]
		if "threads" in document:
			values["threads"] = _integer(document["threads"], "threads", minimum=1)
		if "options" in document:
			if not isinstance(document["options"], dict):
				raise SchemaError("options", "expected an object")
			values["options"] = dict(document["options"])
		config = cls(**values)
		if config.experiment is not None:
			controller = get_attr(get_hooks("experiments")[config.experiment])
			config.check_options(controller.option_keys)
		return config

	def with_overrides(self, **overrides) -> "ExperimentConfig":
		"""Command-line flags win over the document; ``None`` leaves a field alone."""
		return dataclasses.replace(self, **{k: v for k, v in overrides.items() if v is not None})

	def check_options(self, allowed: Iterable[str]) -> None:
		allowed = sorted(allowed)
		unknown = sorted(set(self.options) - set(allowed))
		if unknown:
			raise SchemaError(f"options.{unknown[0]}", f"unknown option, expected one of {allowed}")

	def option(self, name: str, default: Any = None) -> Any:
		return self.options.get(name, default)

	def number_option(self, name: str, default: float, positive: bool = True) -> float:
		value = self.options.get(name, default)
		if not _is_number(value):
			raise SchemaError(f"options.{name}", "expected a number")
		if positive and not value > 0:
			raise SchemaError(f"options.{name}", "expected a positive number")
		return float(value)

	def integer_option(self, name: str, default: int, minimum: int = 0) -> int:
		return _integer(self.options.get(name, default), f"options.{name}", minimum=minimum)

	def integer_list_option(self, name: str, default) -> Tuple[int, ...]:
		value = self.options.get(name, list(default))
		if not isinstance(value, (list, tuple)) or not value:
			raise SchemaError(f"options.{name}", "expected a non-empty list of integers")
		return tuple(_integer(v, f"options.{name}[{i}]") for i, v in enumerate(value))

	def require_potential(self) -> PotentialSpec:
		if self.potential is None:
			raise ConfigurationError(f"{self.experiment or 'This command'} needs a potential")
		return self.potential

	def require_admissible(self):
		"""The admissibility report of the potential; raises when any condition fails."""
		report = check_admissibility(self.require_potential())
		if not report.admissible:
			failed = "; ".join(f"({c.index}) {c.name}: {c.detail}" for c in report.failed())
			raise ConfigurationError(f"Potential is not admissible: {failed}")
		return report

	def as_dict(self) -> Dict[str, Any]:
		return {
			"experiment": self.experiment,
			"potential": None if self.potential is None else self.potential.as_dict(),
			"wavenumber": self.wavenumber,
			"k_range": None if self.k_range is None else list(self.k_range),
			"truncation": self.truncation,
			"grid_h": self.grid_h,
			"seed": self.seed,
			"output_dir": self.output_dir,
			"threads": self.threads,
			"options": dict(self.options),
		}


def load_config(path) -> ExperimentConfig:
	path = Path(path)
	try:
		text = path.read_text()
	except OSError as e:
		raise ConfigurationError(f"Cannot read config {path}: {e}") from e
	try:
		document = json.loads(text)
	except json.JSONDecodeError as e:
		raise SchemaError("<root>", f"invalid JSON at line {e.lineno}: {e.msg}") from e
	return ExperimentConfig.from_dict(document)
