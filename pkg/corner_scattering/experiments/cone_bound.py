"""Lower bound of the cone Laplace transform along a CGO curve.

For every degree N the inf-sup constant c is computed on the sector, then seeded random unit
polynomials are checked along rho(tau) for tau in [tau0, 100 tau0], together with the mean-value
deviation bound and the upper bound of |L P(zeta)|.
"""

import logging
import math

import numpy as np

from corner_scattering.cone_cgo import (
	SWEEP_HEADER,
	CgoCurve,
	best_zeta,
	decay_upper_check,
	infsup_search,
	lower_bound_check,
	mean_value_check,
	tau0,
)
from corner_scattering.cone_cgo.constants import INFSUP_RESOLUTION
from corner_scattering.controllers.experiment import ExperimentController, ExperimentReport
from corner_scattering.exceptions import ConfigurationError, InvariantViolation
from corner_scattering.experiments.constants import (
	E4_DEGREES,
	E4_SAMPLES,
	E4_TAU0_FACTOR,
	E4_TAUS,
)
from corner_scattering.geometry import ConeAtVertex
from corner_scattering.herglotz import HomHarmonicPoly
from corner_scattering.utils.serialization import complex_columns
from corner_scattering.utils.workers import ordered_map

logger = logging.getLogger(__name__)

DIMENSION = 2

MEAN_VALUE_HEADER = ("N", "a_re", "a_im", "b_re", "b_im", "tau", "lhs", "rhs", "pass")
DECAY_HEADER = ("N", "a_re", "a_im", "b_re", "b_im", "lhs", "rhs", "pass")
INFSUP_HEADER = ("N", "constant", "tau0", "zeta_angle", "first_crossing")

# taus probed for the first crossing of the deviation bound below c / 4
CROSSING_POINTS = 41


def random_polynomials(N: int, count: int, rng: np.random.Generator):
	polynomials = []
	while len(polynomials) < count:
		a, b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
		P = HomHarmonicPoly(N, a, b)
		if P.norm > 0:
			polynomials.append(P.normalized())
	return polynomials


class ConeBoundExperiment(ExperimentController):
	experiment_id = "E4"
	option_keys = ("alpha_d", "degrees", "opening", "resolution", "samples", "taus", "theta1")

	def validate(self) -> None:
		config = self.config
		opening = config.number_option("opening", math.pi / 2)
		theta1 = config.number_option("theta1", 0.0, positive=False)
		try:
			self.cone = ConeAtVertex.sector(theta1, theta1 + opening)
		except InvariantViolation as e:
			raise ConfigurationError(f"Sector opening {opening} must lie in (0, pi)") from e
		alpha_d = config.number_option("alpha_d", math.pi / 8)
		if self.cone.half_angle + alpha_d >= math.pi / 2:
			raise ConfigurationError(
				f"alpha_m + alpha_d = {self.cone.half_angle + alpha_d:.6g} must stay below pi/2"
			)
		self.delta0 = math.cos(self.cone.half_angle + alpha_d)
		self.k = config.wavenumber or 1.0
		self.degrees = config.integer_list_option("degrees", E4_DEGREES)
		self.samples = config.integer_option("samples", E4_SAMPLES, minimum=1)
		self.n_taus = config.integer_option("taus", E4_TAUS, minimum=2)
		self.resolution = config.integer_option("resolution", INFSUP_RESOLUTION, minimum=2)

	def first_crossing(self, P: HomHarmonicPoly, zeta, c: float, start: float) -> float:
		"""First tau on a log grid around ``start`` where the deviation bound is at most c/4."""
		taus = np.geomspace(start / 16, 16 * start, CROSSING_POINTS)
		for tau in taus:
			check = mean_value_check(P, self.cone, zeta, self.k, float(tau), self.delta0)
			if check.rhs <= 0.25 * c * P.norm:
				return float(tau)
		return math.inf

	def check_polynomial(self, P: HomHarmonicPoly, c: float, taus):
		zeta, _ = best_zeta(P, self.cone, self.delta0)
		curve = CgoCurve(zeta, self.k)
		coefficients = complex_columns(P.a, P.b)
		sweep, mean_value = [], []
		for tau in taus:
			tau = float(tau)
			lower = lower_bound_check(P, self.cone, curve, c, tau)
			sweep.append((P.degree, *coefficients, zeta.angle, tau, lower.lhs, lower.rhs, lower.passed))
			mean = mean_value_check(P, self.cone, zeta, self.k, tau, self.delta0)
			mean_value.append((P.degree, *coefficients, tau, mean.lhs, mean.rhs, mean.passed))
		upper = decay_upper_check(P, self.cone, self.delta0, zeta)
		return sweep, mean_value, (P.degree, *coefficients, upper.lhs, upper.rhs, upper.passed)

	def execute(self) -> ExperimentReport:
		config = self.config
		report = ExperimentReport(self.experiment_id)
		rng = np.random.default_rng(config.seed)

		infsup_rows, sweep_rows, mean_rows, decay_rows = [], [], [], []
		consistent = []
		for N in self.degrees:
			found = infsup_search(N, self.cone, self.delta0, self.resolution)
			c = found.constant
			start = tau0(N, DIMENSION, self.delta0, self.k, c)
			crossing = self.first_crossing(found.polynomial, found.zeta, c, start)
			infsup_rows.append((N, c, start, found.zeta.angle, crossing))
			consistent.append(start / E4_TAU0_FACTOR <= crossing <= E4_TAU0_FACTOR * start)
			logger.info("E4: degree %s, c = %.6g, tau0 = %.6g", N, c, start)

			polynomials = [found.polynomial] + random_polynomials(N, self.samples - 1, rng)
			taus = np.geomspace(start, 100 * start, self.n_taus)
			results = ordered_map(
				lambda P: self.check_polynomial(P, c, taus), polynomials, config.threads
			)
			for sweep, mean_value, decay in results:
				sweep_rows.extend(sweep)
				mean_rows.extend(mean_value)
				decay_rows.append(decay)

		report.add_table("infsup", INFSUP_HEADER, infsup_rows)
		report.add_table("sweep", SWEEP_HEADER, sweep_rows)
		report.add_table("mean_value", MEAN_VALUE_HEADER, mean_rows)
		report.add_table("decay_upper", DECAY_HEADER, decay_rows)
		report.verdicts = {
			"infsup_positive": all(row[1] > 0 for row in infsup_rows),
			"lower_bound": all(row[-1] for row in sweep_rows),
			"mean_value": all(row[-1] for row in mean_rows),
			"decay_upper": all(row[-1] for row in decay_rows),
			"tau0_consistent": all(consistent),
		}
		report.metadata = {
			"theta_range": list(self.cone.theta_range),
			"delta0": self.delta0,
			"k": self.k,
			"degrees": list(self.degrees),
			"samples": self.samples,
			"taus": self.n_taus,
			"resolution": self.resolution,
		}
		return report


def run_e4_cone_bound(config) -> ExperimentReport:
	return ConeBoundExperiment(config).run()
