"""Transmission eigenfunctions vanish near convex corners.

Scans a polygon for its first transmission eigenvalues, rebuilds v at each and follows the ball
average of |v| into every vertex. Edge midpoints, where nothing forces v to vanish, serve as the
control.
"""

import logging
from typing import List, Tuple

import numpy as np

from corner_scattering.controllers.experiment import ExperimentController, ExperimentReport
from corner_scattering.exceptions import (
	ConfigurationError,
	InvariantViolation,
	NotAnEigenvalueError,
)
from corner_scattering.experiments.constants import (
	E2_K_RANGE,
	E2_MAX_RADIUS_FRACTION,
	E2_MIN_RADIUS_FRACTION,
	E2_N_CHARGE,
	E2_N_EIGEN,
	E2_N_RADII,
)
from corner_scattering.geometry import PolygonDomain, min_vertex_edge_distance
from corner_scattering.transmission_eig import (
	SCAN_HEADER,
	corner_criterion,
	reconstruct_eigenfunction,
	scan_eigenvalues,
	vanishing_profile,
)
from corner_scattering.transmission_eig.constants import CORNER_RATIO, DEFAULT_SCAN_STEP
from corner_scattering.utils.workers import ordered_map

logger = logging.getLogger(__name__)

PROFILES_HEADER = ("eigen_index", "k", "location", "point_index", "r", "ball_average", "ratio")
CORNERS_HEADER = (
	"eigen_index",
	"k",
	"location",
	"point_index",
	"smallest_ratio",
	"decreasing",
	"pass",
)


def probe_points(domain: PolygonDomain) -> List[Tuple[str, int, np.ndarray]]:
	"""Every vertex, then every edge midpoint."""
	points = [("vertex", i, p) for i, p in enumerate(domain.points)]
	points += [("midpoint", i, 0.5 * (p + q)) for i, (p, q) in enumerate(domain.edges)]
	return points


class CornerVanishingExperiment(ExperimentController):
	experiment_id = "E2"
	option_keys = ("corner_ratio", "n_charge", "n_eigen", "n_radii", "scan_step")

	def validate(self) -> None:
		spec = self.config.require_potential()
		if not isinstance(spec.domain, PolygonDomain):
			raise ConfigurationError("E2 needs a polygon domain")
		V = spec.constant_value
		if V is None or V.imag != 0 or not V.real > -1 or V.real == 0:
			raise ConfigurationError(f"E2 needs a constant real contrast V > -1, V != 0, got {V}")
		self.admissibility = self.config.require_admissible()

		config = self.config
		self.scan_step = config.number_option("scan_step", DEFAULT_SCAN_STEP)
		self.n_charge = config.integer_option("n_charge", E2_N_CHARGE, minimum=3)
		self.n_eigen = config.integer_option("n_eigen", E2_N_EIGEN, minimum=1)
		self.n_radii = config.integer_option("n_radii", E2_N_RADII, minimum=3)
		self.ratio = config.number_option("corner_ratio", CORNER_RATIO)

	def radii(self, domain: PolygonDomain) -> np.ndarray:
		reach = min_vertex_edge_distance(domain)
		return np.geomspace(
			E2_MAX_RADIUS_FRACTION * reach, E2_MIN_RADIUS_FRACTION * reach, self.n_radii
		)

	def execute(self) -> ExperimentReport:
		config = self.config
		domain = config.potential.domain
		V = config.potential.constant_value.real
		report = ExperimentReport(self.experiment_id)

		k_range = config.k_range or E2_K_RANGE
		scan = scan_eigenvalues(
			domain, V, k_range, self.scan_step, n_charge=self.n_charge, workers=config.threads
		)
		report.add_table("scan", SCAN_HEADER, scan.to_csv_rows())
		report.warnings.extend(scan.warnings)
		eigenvalues = [cluster[0] for cluster in scan.clusters][: self.n_eigen]
		if not eigenvalues:
			raise ConfigurationError(f"No transmission eigenvalue found in {tuple(k_range)}")
		if len(eigenvalues) < self.n_eigen:
			report.warnings.append(
				f"found {len(eigenvalues)} of {self.n_eigen} requested eigenvalues in {tuple(k_range)}"
			)

		radii = self.radii(domain)
		points = probe_points(domain)
		profile_rows, corner_rows = [], []
		vertex_passes, control_passes, reconstructed = [], [], 0
		for index, k in enumerate(eigenvalues):
			try:
				pair = reconstruct_eigenfunction(domain, V, k, n_charge=self.n_charge)
			except (NotAnEigenvalueError, InvariantViolation) as e:
				logger.warning("E2: no eigenfunction at k = %.10g: %s", k, e)
				report.warnings.append(f"k = {k:.10g}: {e}")
				continue
			reconstructed += 1
			report.warnings.extend(pair.warnings)

			profiles = ordered_map(
				lambda item: vanishing_profile(pair, item[2], radii), points, config.threads
			)
			for (location, point_index, _), profile in zip(points, profiles):
				verdict = corner_criterion(profile, self.ratio)
				(vertex_passes if location == "vertex" else control_passes).append(verdict.passed)
				report.warnings.extend(profile.warnings)
				for r, average, q in profile.to_csv_rows():
					profile_rows.append((index, k, location, point_index, r, average, q))
				corner_rows.append(
					(
						index,
						k,
						location,
						point_index,
						verdict.smallest_ratio,
						verdict.decreasing,
						verdict.passed,
					)
				)

		report.add_table("profiles", PROFILES_HEADER, profile_rows)
		report.add_table("corners", CORNERS_HEADER, corner_rows)
		report.verdicts = {
			"eigenvalues_found": reconstructed >= self.n_eigen,
			"corner_decay": bool(vertex_passes) and all(vertex_passes),
			"control_fails": bool(control_passes) and not any(control_passes),
		}
		report.metadata = {
			"eigenvalues": eigenvalues,
			"clusters": scan.clusters,
			"threshold": scan.threshold,
			"witness_vertices": self.admissibility.witnesses,
			"radii": radii.tolist(),
			"corner_ratio": self.ratio,
			"n_charge": self.n_charge,
		}
		return report


def run_e2_corner_vanishing(config) -> ExperimentReport:
	return CornerVanishingExperiment(config).run()
