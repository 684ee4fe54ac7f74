"""Sup over admissible zeta, inf over unit polynomials, and the bound checks built on them.

All checks are for sectors (n = 2), where the homogeneous harmonic polynomials of degree N form the
two-dimensional family a Re z^N + b Im z^N.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from corner_scattering.cone_cgo.constants import BEST_ZETA_GRID, BOUND_SLACK, INFSUP_RESOLUTION
from corner_scattering.cone_cgo.laplace import laplace_transform, sector_transform_basis
from corner_scattering.cone_cgo.utils import create_cone_cgo_log
from corner_scattering.cone_cgo.zeta import (
	AdmissibleZeta,
	CgoCurve,
	admissible_arc,
	rho_at,
	zeta_from_angle,
)
from corner_scattering.exceptions import DegenerateInputError, DomainError, InvariantViolation
from corner_scattering.geometry.domain import ConeAtVertex
from corner_scattering.herglotz.constants import POLY_NORM_POINTS
from corner_scattering.herglotz.polynomial import HomHarmonicPoly
from corner_scattering.utils.serialization import complex_columns

logger = logging.getLogger(__name__)

DIMENSION = 2
MAX_INFSUP_DEGREE = 6

SWEEP_HEADER = ("N", "a_re", "a_im", "b_re", "b_im", "zeta_angle", "tau", "lhs", "rhs", "pass")


@dataclass
class BoundCheck:
	lhs: float
	rhs: float
	passed: bool

	def as_dict(self):
		return {"lhs": self.lhs, "rhs": self.rhs, "passed": self.passed}


@dataclass
class InfSupResult:
	constant: float
	polynomial: HomHarmonicPoly
	zeta: AdmissibleZeta


def _zeta_grid(cone: ConeAtVertex, delta0: float, grid_size: int):
	"""Angles, orientations and zeta vectors for both orientations of Im zeta."""
	lo, hi = admissible_arc(cone, delta0)
	psis = np.linspace(lo, hi, grid_size) if hi > lo else np.array([lo])
	re = np.stack([np.cos(psis), np.sin(psis)], 1)
	perp = np.stack([-re[:, 1], re[:, 0]], 1)
	orientations = np.repeat([1, -1], len(psis))
	zetas = np.vstack([re + 1j * perp, re - 1j * perp])
	return np.tile(psis, 2), orientations, zetas


def _refine_zeta(P: HomHarmonicPoly, cone, delta0, lo, hi, orientation) -> Tuple[float, float]:
	def objective(psi):
		return -abs(laplace_transform(P, cone, zeta_from_angle(cone, delta0, psi, orientation).zeta))

	found = minimize_scalar(objective, bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
	return float(found.x), float(-found.fun)


def best_zeta(
	P: HomHarmonicPoly, cone: ConeAtVertex, delta0: float, grid_size: int = BEST_ZETA_GRID
) -> Tuple[AdmissibleZeta, float]:
	"""Admissible zeta maximizing |L P(zeta)|: grid over the arc, then a bounded 1D refinement."""
	if P.is_zero:
		raise DegenerateInputError("The zero polynomial has no best zeta")
	psis, orientations, zetas = _zeta_grid(cone, delta0, grid_size)
	basis = sector_transform_basis(P.degree, cone, zetas)
	values = np.abs(basis @ np.array([P.a, P.b]))
	i = int(np.argmax(values))
	psi, orientation, value = float(psis[i]), int(orientations[i]), float(values[i])

	per_side = len(psis) // 2
	j = i % per_side
	if per_side > 1:
		lo = psis[max(j - 1, 0)]
		hi = psis[min(j + 1, per_side - 1)]
		refined_psi, refined_value = _refine_zeta(P, cone, delta0, lo, hi, orientation)
		if refined_value > value:
			psi, value = refined_psi, refined_value
	return zeta_from_angle(cone, delta0, psi, orientation), value


def _circle_norms(N: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
	theta = 2 * np.pi * np.arange(POLY_NORM_POINTS) / POLY_NORM_POINTS
	values = np.multiply.outer(a, np.cos(N * theta)) + np.multiply.outer(b, np.sin(N * theta))
	return np.abs(values).sum(axis=-1) * 2 * np.pi / POLY_NORM_POINTS


def _family(N: int, t: float, phi: float) -> HomHarmonicPoly:
	return HomHarmonicPoly.from_angles(N, t, phi).normalized()


def infsup_search(
	N: int, cone: ConeAtVertex, delta0: float, resolution: int = INFSUP_RESOLUTION
) -> InfSupResult:
	"""min over unit-norm P of degree N of max over admissible zeta of |L P(zeta)|.

	P runs over cos t Re z^N + e^{i phi} sin t Im z^N, which covers every degree-N polynomial up to
	a complex scalar. A (t, phi) sweep against a fine zeta grid seeds a Nelder-Mead search on the
	same grid; the constant is the refined best_zeta value at the minimizer.
	"""
	if int(N) != N or not 0 <= N <= MAX_INFSUP_DEGREE:
		raise DomainError(f"Degree must be an integer in [0, {MAX_INFSUP_DEGREE}], got {N}")
	if N == 0:
		P = _family(0, 0.0, 0.0)
		zeta, value = best_zeta(P, cone, delta0)
		return _checked(InfSupResult(value, P, zeta), N)

	_, _, zetas = _zeta_grid(cone, delta0, 4 * BEST_ZETA_GRID)
	basis = sector_transform_basis(N, cone, zetas)

	ts = np.linspace(0, np.pi / 2, resolution + 1)
	phis = 2 * np.pi * np.arange(2 * resolution) / (2 * resolution)
	T, Phi = np.meshgrid(ts, phis, indexing="ij")
	a = np.cos(T).ravel().astype(complex)
	b = (np.exp(1j * Phi) * np.sin(T)).ravel()
	sweep = np.abs(basis @ np.stack([a, b])).max(axis=0) / _circle_norms(N, a, b)
	start = np.unravel_index(int(np.argmin(sweep)), T.shape)

	def objective(x):
		pa, pb = np.cos(x[0]), np.exp(1j * x[1]) * np.sin(x[0])
		return float(np.abs(basis @ np.array([pa, pb])).max() / _circle_norms(N, pa, pb))

	found = minimize(
		objective,
		np.array([ts[start[0]], phis[start[1]]]),
		method="Nelder-Mead",
		options={"xatol": 1e-5, "fatol": 1e-10, "maxiter": 200},
	)
	P = _family(N, *found.x)
	zeta, value = best_zeta(P, cone, delta0)
	logger.info("inf-sup constant for degree %s: %.6g (%s evaluations)", N, value, found.nfev)
	return _checked(InfSupResult(value, P, zeta), N)


def _checked(result: InfSupResult, N: int) -> InfSupResult:
	if not result.constant > 0:
		create_cone_cgo_log(
			status="Error",
			method="corner_scattering.cone_cgo.bounds.infsup_search",
			message=f"inf-sup constant {result.constant} for degree {N} is not positive",
		)
		raise InvariantViolation(f"Inf-sup constant {result.constant} for degree {N} is not positive")
	return result


def infsup_constant(
	N: int, cone: ConeAtVertex, delta0: float, resolution: int = INFSUP_RESOLUTION
) -> float:
	return infsup_search(N, cone, delta0, resolution).constant


def tau0(N: int, n: int, delta0: float, k: float, c: float) -> float:
	"""4 (N+n)! delta0^{-N-n} k / c."""
	if not c > 0:
		raise DomainError(f"Inf-sup constant must be positive, got {c}")
	if not 0 < delta0 <= 1:
		raise DomainError(f"delta0 must lie in (0, 1], got {delta0}")
	return 4 * math.factorial(N + n) * delta0 ** (-N - n) * k / c


def decay_upper_check(
	P: HomHarmonicPoly, cone: ConeAtVertex, delta0: float, zeta: AdmissibleZeta
) -> BoundCheck:
	"""|L P(zeta)| <= (N+n-1)! delta0^{1-N-n} ||P||."""
	N, n = P.degree, DIMENSION
	rhs = math.factorial(N + n - 1) * delta0 ** (1 - N - n) * P.norm
	if P.is_zero:
		return BoundCheck(0.0, 0.0, True)
	lhs = abs(laplace_transform(P, cone, zeta.zeta))
	return BoundCheck(lhs, rhs, lhs <= rhs * (1 + BOUND_SLACK))


def mean_value_check(
	P: HomHarmonicPoly, cone: ConeAtVertex, zeta: AdmissibleZeta, k: float, tau: float, delta0: float
) -> BoundCheck:
	"""|L P(zeta) - tau^{N+n} L P(rho(tau))| <= (N+n)! delta0^{-(N+n)} k ||P|| / tau."""
	N, n = P.degree, DIMENSION
	rho = rho_at(CgoCurve(zeta, k), tau)
	at_zeta = laplace_transform(P, cone, zeta.zeta)
	lhs = abs(at_zeta - tau ** (N + n) * laplace_transform(P, cone, rho))
	rhs = math.factorial(N + n) * delta0 ** (-(N + n)) * k * P.norm / tau
	return BoundCheck(lhs, rhs, lhs <= rhs * (1 + BOUND_SLACK))


def lower_bound_check(
	P: HomHarmonicPoly, cone: ConeAtVertex, curve: CgoCurve, c: float, tau: float
) -> BoundCheck:
	"""|L P(rho(tau))| >= (c/4) ||P|| tau^{-(N+n)}."""
	N, n = P.degree, DIMENSION
	lhs = abs(laplace_transform(P, cone, rho_at(curve, tau)))
	rhs = 0.25 * c * P.norm * tau ** (-(N + n))
	return BoundCheck(lhs, rhs, lhs >= rhs * (1 - BOUND_SLACK))


def lower_bound_sweep(
	polynomials: Iterable[HomHarmonicPoly],
	cone: ConeAtVertex,
	delta0: float,
	k: float,
	c: float,
	taus: Optional[Sequence[float]] = None,
	points: int = 13,
) -> List[tuple]:
	"""Rows in ``SWEEP_HEADER`` order; taus default to a log grid on [tau0, 100 tau0]."""
	rows = []
	for P in polynomials:
		zeta, _ = best_zeta(P, cone, delta0)
		coefficients = complex_columns(P.a, P.b)
		curve = CgoCurve(zeta, k)
		grid = taus
		if grid is None:
			start = tau0(P.degree, DIMENSION, delta0, k, c)
			grid = np.geomspace(start, 100 * start, points)
		for tau in grid:
			check = lower_bound_check(P, cone, curve, c, float(tau))
			rows.append(
				(P.degree, *coefficients, zeta.angle, float(tau), check.lhs, check.rhs, check.passed)
			)
	return rows


def bound_curve(script_N: int, n: int, gamma: float, R_value: float) -> Tuple[float, float]:
	"""Minimizer and minimum of tau^{-gamma} + tau^{N+n+3} / R over tau > 0."""
	if not R_value > 0:
		raise DomainError(f"R must be positive, got {R_value}")
	if not 0 < gamma <= 1:
		raise DomainError(f"gamma must lie in (0, 1], got {gamma}")
	p = script_N + n + 3
	tau_m = (gamma * R_value / p) ** (1.0 / (p + gamma))
	return tau_m, tau_m ** (-gamma) + tau_m**p / R_value
