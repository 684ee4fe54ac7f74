"""A Herglotz wave of finite order at an admissible corner always scatters.

For each order N, an ensemble of normalized kernels vanishing to order exactly N at the chosen
vertex is scattered off the polygon; every far field must stay well above the level a
contrast-free medium produces with the same solver.
"""

import logging

import numpy as np

from corner_scattering.cone_cgo import bound_curve
from corner_scattering.controllers.experiment import ExperimentController, ExperimentReport
from corner_scattering.exceptions import ConfigurationError
from corner_scattering.experiments.constants import (
	E3_ABSOLUTE_FLOOR,
	E3_CONTROL_CONTRAST,
	E3_ENSEMBLE,
	E3_ENVELOPE_POINTS,
	E3_FLOOR_MARGIN,
	E3_ORDERS,
	E3_SOLVER_TOL,
)
from corner_scattering.forward_scattering import LippmannSchwingerOperator, far_field
from corner_scattering.geometry import Contrast, PolygonDomain, build_grid
from corner_scattering.herglotz import evaluate, leading_polynomial, sample_vanishing_kernels
from corner_scattering.utils.workers import ordered_map

logger = logging.getLogger(__name__)

DIMENSION = 2
# Hoelder exponent of the far-field stability estimate
BETA = 1.0

ENSEMBLE_HEADER = ("N", "index", "poly_norm", "far_field_norm", "scattered_norm", "residual")
SUMMARY_HEADER = ("N", "count", "minimum", "mean", "variation", "floor_ratio", "pass")
ENVELOPE_HEADER = ("N", "tau", "bound")


def floor_threshold(control: float, residual_scale: float) -> float:
	"""Level every ensemble far field must exceed.

	The absolute floor, and a margin above both the contrast-free control and the largest relative
	solver residual.
	"""
	return max(E3_ABSOLUTE_FLOOR, E3_FLOOR_MARGIN * control, E3_FLOOR_MARGIN * residual_scale)


class FarFieldFloorExperiment(ExperimentController):
	experiment_id = "E3"
	option_keys = ("ensemble", "orders", "vertex")

	def validate(self) -> None:
		config = self.config
		spec = config.require_potential()
		if not isinstance(spec.domain, PolygonDomain):
			raise ConfigurationError("E3 needs a polygon domain")
		self.admissibility = config.require_admissible()
		if config.wavenumber is None:
			raise ConfigurationError("E3 needs a wavenumber")

		self.vertex = config.integer_option("vertex", self.admissibility.witnesses[0])
		if self.vertex not in self.admissibility.witnesses:
			raise ConfigurationError(
				f"The contrast vanishes at vertex {self.vertex}, "
				f"pick one of {self.admissibility.witnesses}"
			)
		self.orders = config.integer_list_option("orders", E3_ORDERS)
		self.ensemble = config.integer_option("ensemble", E3_ENSEMBLE, minimum=1)

	def noise_floor(self, grid, kernel):
		"""Far field of the same wave scattered by a nearly contrast-free medium.

		The control contrast is tiny but nonzero, so the solve runs through the full operator.
		"""
		spec = self.config.potential.with_contrast(Contrast.constant(E3_CONTROL_CONTRAST))
		k = self.config.wavenumber
		operator = LippmannSchwingerOperator(spec, k, grid)
		return operator.solve(evaluate(kernel, k, grid.nodes), tol=E3_SOLVER_TOL)

	def execute(self) -> ExperimentReport:
		config = self.config
		spec = config.potential
		k, M = config.wavenumber, config.truncation
		x_c = spec.domain.points[self.vertex]
		report = ExperimentReport(self.experiment_id)

		grid = build_grid(spec.domain, config.grid_h)
		operator = LippmannSchwingerOperator(spec, k, grid)
		rng = np.random.default_rng(config.seed)

		ensembles = {}
		for N in self.orders:
			kernels = sample_vanishing_kernels(k, x_c, N, M, self.ensemble, rng)

			def scatter(kernel, N=N):
				result = operator.solve(evaluate(kernel, k, grid.nodes), tol=E3_SOLVER_TOL)
				poly = leading_polynomial(kernel, k, x_c, N)
				return (
					poly.norm,
					far_field(result).l2_norm,
					grid.l2_norm(result.scattered_field),
					result.residual,
				)

			ensembles[N] = (kernels, ordered_map(scatter, kernels, config.threads))
			logger.info("E3: order %s ensemble of %s scattered", N, len(kernels))

		control_result = self.noise_floor(grid, ensembles[self.orders[0]][0][0])
		control = far_field(control_result).l2_norm
		residuals = [r[3] for _, results in ensembles.values() for r in results]
		residual_scale = max(residuals + [control_result.residual])
		floor = floor_threshold(control, residual_scale)

		ensemble_rows, summary_rows, verdicts = [], [], {}
		for N, (_, results) in ensembles.items():
			norms = np.array([r[1] for r in results])
			for index, (poly_norm, ff_norm, scattered, residual) in enumerate(results):
				ensemble_rows.append((N, index, poly_norm, ff_norm, scattered, residual))
			passed = bool(norms.min() > floor)
			variation = float(norms.std() / norms.mean()) if norms.mean() > 0 else float("nan")
			summary_rows.append(
				(N, len(norms), norms.min(), norms.mean(), variation, norms.min() / floor, passed)
			)
			verdicts[f"floor_order_{N}"] = passed

		# envelope tau^-gamma + tau^(N + n + 3) / S with S the largest scattered field
		scattered_proxy = max(r[2] for _, results in ensembles.values() for r in results)
		gamma = min(1.0, spec.hoelder_alpha, BETA)
		envelope_rows, minimizers = [], {}
		for N in self.orders:
			tau_m, minimum = bound_curve(N, DIMENSION, gamma, scattered_proxy)
			minimizers[N] = {"tau": tau_m, "bound": minimum, "ell": 2 * (N + DIMENSION + 4)}
			p = N + DIMENSION + 3
			for tau in np.geomspace(tau_m / 10, tau_m * 10, E3_ENVELOPE_POINTS):
				envelope_rows.append((N, tau, tau**-gamma + tau**p / scattered_proxy))

		report.add_table("ensemble", ENSEMBLE_HEADER, ensemble_rows)
		report.add_table("summary", SUMMARY_HEADER, summary_rows)
		report.add_table("envelope", ENVELOPE_HEADER, envelope_rows)
		report.verdicts = verdicts
		report.metadata = {
			"vertex": self.vertex,
			"vertex_point": x_c.tolist(),
			"wavenumber": k,
			"truncation": M,
			"grid_nodes": grid.size,
			"control_far_field": control,
			"control_residual": control_result.residual,
			"control_method": control_result.method,
			"residual_scale": residual_scale,
			"floor": floor,
			"S": scattered_proxy,
			"gamma": gamma,
			"envelope_minimizers": minimizers,
		}
		return report


def run_e3_farfield_floor(config) -> ExperimentReport:
	return FarFieldFloorExperiment(config).run()
