"""Command implementations behind the ``corner-scattering`` entry point.

Every command takes the resolved configuration and an output directory, writes its CSV and JSON
files there and returns a ``CommandResult``. ``passed`` is only set by experiments.
"""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from corner_scattering.cone_cgo import (
	CgoCurve,
	MonomialPoly,
	Orthant,
	laplace_transform,
	make_zeta,
	rho_at,
)
from corner_scattering.controllers.experiment import get_experiment_controller
from corner_scattering.exceptions import ConfigurationError, SchemaError
from corner_scattering.experiments.config import ExperimentConfig
from corner_scattering.forward_scattering import (
	far_field,
	plane_wave,
	scatter_disk,
	solve_total_field,
)
from corner_scattering.forward_scattering.constants import DEFAULT_FAR_FIELD_DIRECTIONS
from corner_scattering.geometry import ConeAtVertex, build_grid
from corner_scattering.herglotz import (
	HerglotzKernel,
	HomHarmonicPoly,
	evaluate,
	fit_kernel,
	plane_wave_kernel,
)
from corner_scattering.transmission_eig import (
	SCAN_HEADER,
	RadialModeField,
	disk_eigenvalues,
	reconstruct_eigenfunction,
	refractive_index,
	scan_eigenvalues,
)
from corner_scattering.transmission_eig.constants import DEFAULT_N_CHARGE, DEFAULT_SCAN_STEP
from corner_scattering.utils.serialization import write_csv, write_json

EIGENVALUES_HEADER = ("m", "k")
FAR_FIELD_HEADER = ("theta", "re", "im")

TEIG_SCAN_OPTIONS = ("n_charge", "reconstruct", "scan_step")
SCATTER_OPTIONS = ("directions", "incident", "solver")
FIT_OPTIONS = ("lam", "noise", "target")
CONE_LT_OPTIONS = ("alpha_d", "polynomial", "region", "rho", "tau", "theta")


@dataclass
class CommandResult:
	name: str
	passed: Optional[bool] = None
	files: List[Path] = field(default_factory=list)
	summary: Dict[str, Any] = field(default_factory=dict)


def _complex(value, path) -> complex:
	if isinstance(value, (int, float)) and not isinstance(value, bool):
		return complex(value)
	if (
		isinstance(value, (list, tuple))
		and len(value) == 2
		and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
	):
		return complex(value[0], value[1])
	raise SchemaError(path, "expected a number or [re, im]")


def _object(value, path) -> Dict[str, Any]:
	if not isinstance(value, dict):
		raise SchemaError(path, "expected an object")
	return value


def _constant_contrast(config: ExperimentConfig) -> float:
	V = config.require_potential().constant_value
	if V is None or V.imag != 0:
		raise ConfigurationError(f"Transmission eigenvalues need a constant real contrast, got {V}")
	return V.real


def _require_wavenumber(config: ExperimentConfig) -> float:
	if config.wavenumber is None:
		raise ConfigurationError("This command needs a wavenumber")
	return config.wavenumber


def run_experiment(config: ExperimentConfig, directory: Path) -> CommandResult:
	if config.experiment is None:
		raise ConfigurationError("No experiment selected")
	report = get_experiment_controller(config.experiment)(config).run()
	files = report.write(directory)
	return CommandResult(config.experiment, report.passed, files, report.as_dict())


def teig_disk(
	V: float,
	a: float,
	k_max: float,
	directory: Path,
	k_min: float = 0.1,
	m_max: int = 10,
	step: float = DEFAULT_SCAN_STEP,
) -> CommandResult:
	roots = disk_eigenvalues(m_max, (k_min, k_max), a, refractive_index(V), step=step)
	path = write_csv(directory / "eigenvalues.csv", EIGENVALUES_HEADER, roots)
	summary = {"V": V, "a": a, "k_range": [k_min, k_max], "m_max": m_max, "count": len(roots)}
	return CommandResult("teig disk", None, [path], summary)


def teig_scan(config: ExperimentConfig, directory: Path) -> CommandResult:
	config.check_options(TEIG_SCAN_OPTIONS)
	domain = config.require_potential().domain
	V = _constant_contrast(config)
	if config.k_range is None:
		raise ConfigurationError("teig scan needs a k_range")
	n_charge = config.integer_option("n_charge", DEFAULT_N_CHARGE, minimum=3)
	scan = scan_eigenvalues(
		domain,
		V,
		config.k_range,
		config.number_option("scan_step", DEFAULT_SCAN_STEP),
		n_charge=n_charge,
		workers=config.threads,
	)
	files = [
		write_csv(directory / "scan.csv", SCAN_HEADER, scan.to_csv_rows()),
		write_json(directory / "scan.json", scan.as_dict()),
	]
	if config.option("reconstruct", False):
		for index, cluster in enumerate(scan.clusters):
			pair = reconstruct_eigenfunction(domain, V, cluster[0], n_charge=n_charge)
			files.append(write_json(directory / f"eigenpair_{index}.json", pair.to_json()))
	return CommandResult("teig scan", None, files, scan.as_dict())


def _incident_kernel(document, path: str) -> Optional[HerglotzKernel]:
	"""Kernel described by ``options.incident``; None for a plane wave sampled directly."""
	kind = document.get("kind", "plane_wave")
	if kind == "plane_wave":
		return None
	if kind == "kernel":
		return HerglotzKernel.from_dict(document.get("kernel"), f"{path}.kernel")
	raise SchemaError(f"{path}.kind", f"expected 'plane_wave' or 'kernel', got {kind!r}")


def scatter(config: ExperimentConfig, directory: Path) -> CommandResult:
	config.check_options(SCATTER_OPTIONS)
	spec = config.require_potential()
	k = _require_wavenumber(config)
	document = _object(config.option("incident", {}), "options.incident")
	direction = document.get("direction", 0.0)
	kernel = _incident_kernel(document, "options.incident")
	solver = config.option("solver", "volume")
	n_directions = config.integer_option("directions", DEFAULT_FAR_FIELD_DIRECTIONS, minimum=1)

	if solver == "modal":
		if kernel is None:
			kernel = plane_wave_kernel(float(direction), config.truncation)
		result = scatter_disk(spec, kernel, k)
		pattern = result.far_field(n_directions)
		summary = {"solver": "modal", "modes": int(len(result.orders))}
	elif solver == "volume":
		grid = build_grid(spec.domain, config.grid_h)
		if kernel is None:
			incident = plane_wave(direction, k)
		else:
			incident = evaluate(kernel, k, grid.nodes)
		solved = solve_total_field(spec, incident, k, grid)
		pattern = far_field(solved, n_directions)
		summary = {
			"solver": solved.method,
			"nodes": grid.size,
			"iterations": solved.iterations,
			"residual": solved.residual,
		}
	else:
		raise SchemaError("options.solver", "expected 'volume' or 'modal'")

	summary["far_field_norm"] = pattern.l2_norm
	files = [
		write_csv(directory / "far_field.csv", FAR_FIELD_HEADER, pattern.to_csv_rows()),
		write_json(directory / "scatter.json", {**summary, "far_field": pattern.to_json()}),
	]
	return CommandResult("scatter", None, files, summary)


def _fit_target(document, k: float, path: str):
	kind = document.get("kind", "plane_wave")
	if kind == "plane_wave":
		return plane_wave(document.get("direction", 0.0), k)
	if kind == "radial_mode":
		order = document.get("order", 0)
		if not isinstance(order, int) or isinstance(order, bool):
			raise SchemaError(f"{path}.order", "expected an integer")
		return RadialModeField(order, k)
	if kind == "kernel":
		kernel = HerglotzKernel.from_dict(document.get("kernel"), f"{path}.kernel")
		return lambda points: evaluate(kernel, k, points)
	raise SchemaError(f"{path}.kind", "expected 'plane_wave', 'radial_mode' or 'kernel'")


def fit(config: ExperimentConfig, directory: Path) -> CommandResult:
	config.check_options(FIT_OPTIONS)
	spec = config.require_potential()
	k = _require_wavenumber(config)
	document = _object(config.option("target", {}), "options.target")
	field_at = _fit_target(document, k, "options.target")
	grid = build_grid(spec.domain, config.grid_h)
	target = field_at(grid.nodes)

	eta = config.number_option("noise", 0.0, positive=False)
	if eta:
		rng = np.random.default_rng(config.seed)
		noise = rng.standard_normal(grid.size) + 1j * rng.standard_normal(grid.size)
		target = target + eta * noise / grid.l2_norm(noise)
	lam = config.option("lam")
	if lam is not None:
		lam = config.number_option("lam", 0.0, positive=False)

	result = fit_kernel(target, grid, k, config.truncation, lam=lam)
	summary = {
		"kernel": result.kernel.as_dict(),
		"residual": result.residual,
		"relative_residual": result.relative_residual,
		"lam": result.lam,
		"condition_number": result.condition_number,
		"warnings": result.warnings,
	}
	return CommandResult("fit", None, [write_json(directory / "kernel.json", summary)], summary)


def _polynomial(document, path):
	"""Either a harmonic polynomial {degree, a, b} or monomials [{exponents, coeff}, ...]."""
	if "monomials" in document:
		terms = {}
		for i, term in enumerate(document["monomials"]):
			term = _object(term, f"{path}.monomials[{i}]")
			exponents = term.get("exponents")
			if not isinstance(exponents, list) or not all(isinstance(e, int) for e in exponents):
				raise SchemaError(f"{path}.monomials[{i}].exponents", "expected a list of integers")
			terms[tuple(exponents)] = _complex(term.get("coeff", 1.0), f"{path}.monomials[{i}].coeff")
		dims = {len(g) for g in terms}
		if len(dims) != 1:
			raise SchemaError(f"{path}.monomials", "exponents must share one dimension")
		return MonomialPoly(terms, dim=dims.pop())
	degree = document.get("degree", 0)
	if not isinstance(degree, int) or isinstance(degree, bool) or degree < 0:
		raise SchemaError(f"{path}.degree", "expected a non-negative integer")
	a = _complex(document.get("a", 1.0), f"{path}.a")
	b = _complex(document.get("b", 0.0), f"{path}.b")
	return HomHarmonicPoly(degree, a, b)


def cone_lt(config: ExperimentConfig, directory: Path) -> CommandResult:
	"""Laplace transform of one polynomial over an orthant or a sector at one rho."""
	config.check_options(CONE_LT_OPTIONS)
	region_kind = config.option("region", "orthant")
	document = _object(config.option("polynomial", {}), "options.polynomial")
	P = _polynomial(document, "options.polynomial")
	quarter = ConeAtVertex.sector(0.0, math.pi / 2)

	if region_kind == "orthant":
		dim = P.dim if isinstance(P, MonomialPoly) else 2
		region = Orthant(dim)
	elif region_kind == "sector":
		theta = config.option("theta", [0.0, math.pi / 2])
		if not isinstance(theta, list) or len(theta) != 2:
			raise SchemaError("options.theta", "expected [theta1, theta2]")
		region = ConeAtVertex.sector(float(theta[0]), float(theta[1]))
	else:
		raise SchemaError("options.region", "expected 'orthant' or 'sector'")

	if config.option("rho") is not None:
		pairs = config.option("rho")
		if not isinstance(pairs, list):
			raise SchemaError("options.rho", "expected a list of [re, im] pairs")
		rho = np.array([_complex(v, f"options.rho[{i}]") for i, v in enumerate(pairs)])
	else:
		# a point on the CGO curve of the cone (the quarter plane for the orthant)
		cone = region if isinstance(region, ConeAtVertex) else quarter
		if isinstance(region, Orthant) and region.dim != 2:
			raise SchemaError("options.rho", "required for orthants beyond two dimensions")
		zeta = make_zeta(cone, config.number_option("alpha_d", math.pi / 8))
		curve = CgoCurve(zeta, config.wavenumber or 1.0)
		rho = rho_at(curve, config.number_option("tau", 1.0))

	value = laplace_transform(P, region, rho)
	summary = {"region": region_kind, "rho": rho, "value": value}
	if isinstance(region, Orthant) and region.dim == 2 and isinstance(P, HomHarmonicPoly):
		# the same quarter plane through the angular quadrature
		sector_value = laplace_transform(P, quarter, rho)
		summary["sector_value"] = sector_value
		summary["difference"] = abs(value - sector_value)
	return CommandResult("cone lt", None, [write_json(directory / "lt.json", summary)], summary)
