"""Laplace transforms L P(rho) = int_C e^{rho.x} P(x) dx of polynomials over cones.

Over a sector the radial integral is exact,

	L P(rho) = (N+1)! int_{theta1}^{theta2} P(omega) (-rho.omega)^{-(N+2)} dtheta,

and the angular integral is adaptive. Over the orthant R^n_+ each monomial integrates in
closed form, int e^{rho.x} x^gamma dx = prod_i gamma_i! / (-rho_i)^{gamma_i + 1}.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Tuple, Union

import numpy as np
from scipy.integrate import quad_vec

from corner_scattering.cone_cgo.constants import (
	GK_NODES,
	INTEGRABLE_TOL,
	QUAD_MAX_EVALS,
	QUAD_RTOL,
)
from corner_scattering.exceptions import DomainError
from corner_scattering.geometry.domain import ConeAtVertex
from corner_scattering.herglotz.polynomial import HomHarmonicPoly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Orthant:
	dim: int = 2

	def __post_init__(self):
		if int(self.dim) != self.dim or self.dim < 2:
			raise DomainError(f"Orthant dimension must be an integer >= 2, got {self.dim}")

	@property
	def edge_directions(self) -> np.ndarray:
		return np.eye(self.dim)


@dataclass(frozen=True, eq=False)
class MonomialPoly:
	"""sum_gamma c_gamma x^gamma in ``dim`` variables."""

	terms: Dict[Tuple[int, ...], complex] = field(default_factory=dict)
	dim: int = 2

	def __post_init__(self):
		clean = {}
		for gamma, coeff in self.terms.items():
			gamma = tuple(int(g) for g in gamma)
			if len(gamma) != self.dim or min(gamma) < 0:
				raise DomainError(f"Exponent {gamma} is not a multi-index in {self.dim} variables")
			if coeff != 0:
				clean[gamma] = clean.get(gamma, 0) + complex(coeff)
		object.__setattr__(self, "terms", clean)

	@classmethod
	def from_harmonic(cls, P: HomHarmonicPoly) -> "MonomialPoly":
		coeffs = P.monomial_coefficients()
		N = P.degree
		return cls({(N - j, j): c for j, c in enumerate(coeffs)}, dim=2)

	@property
	def degree(self) -> int:
		return max((sum(g) for g in self.terms), default=0)

	def __call__(self, points) -> np.ndarray:
		pts = np.atleast_2d(np.asarray(points, dtype=float))
		out = np.zeros(len(pts), dtype=complex)
		for gamma, coeff in self.terms.items():
			out += coeff * np.prod(pts ** np.array(gamma), axis=1)
		return out

	def orthant_transform(self, rho) -> complex:
		rho = np.asarray(rho, dtype=complex)
		if rho.shape != (self.dim,):
			raise DomainError(f"Expected a {self.dim}-vector, got shape {rho.shape}")
		if np.any(rho.real >= 0):
			raise DomainError("Orthant transform needs Re rho_i < 0 in every coordinate")
		total = 0j
		for gamma, coeff in self.terms.items():
			factor = 1 + 0j
			for g, r in zip(gamma, rho):
				factor *= math.factorial(g) / (-r) ** (g + 1)
			total += coeff * factor
		return complex(total)


def _check_integrable(cone: ConeAtVertex, rhos: np.ndarray):
	edges = np.stack(cone.edge_dirs)
	# a sinusoid negative at both ends of an arc shorter than pi is negative on it
	slack = INTEGRABLE_TOL * np.linalg.norm(rhos.real, axis=1)[:, None]
	# edge directions carry rounding, e.g. cos(pi/2) = 6.1e-17
	if np.any(rhos.real @ edges.T >= -slack):
		raise DomainError("Re rho . omega must be negative on the cone for the transform to exist")


def sector_transform_basis(N: int, cone: ConeAtVertex, rhos) -> np.ndarray:
	"""Transforms of Re z^N and Im z^N over ``cone`` for each rho.

	Returns an array of shape (len(rhos), 2).
	"""
	if int(N) != N or N < 0:
		raise DomainError(f"Degree must be a non-negative integer, got {N}")
	rhos = np.atleast_2d(np.asarray(rhos, dtype=complex))
	if rhos.shape[1] != 2:
		raise DomainError(f"Sector transforms need 2-vectors, got shape {rhos.shape}")
	_check_integrable(cone, rhos)
	lo, hi = cone.theta_range
	scale = math.factorial(N + 1)

	def integrand(theta):
		omega = np.array([np.cos(theta), np.sin(theta)])
		weight = scale * (-(rhos @ omega)) ** (-(N + 2))
		return np.stack([np.cos(N * theta) * weight, np.sin(N * theta) * weight], axis=1)

	values, _, info = quad_vec(
		integrand,
		lo,
		hi,
		epsabs=0.0,
		epsrel=QUAD_RTOL,
		norm="max",
		limit=QUAD_MAX_EVALS // GK_NODES,
		full_output=True,
	)
	if not info.success:
		logger.warning(
			"Sector quadrature stopped after %s evaluations without reaching rtol %.1e",
			info.neval,
			QUAD_RTOL,
		)
	return values


def laplace_transform(
	P: Union[HomHarmonicPoly, MonomialPoly], region: Union[ConeAtVertex, Orthant], rho
) -> complex:
	if isinstance(region, Orthant):
		poly = MonomialPoly.from_harmonic(P) if isinstance(P, HomHarmonicPoly) else P
		if poly.dim != region.dim:
			raise DomainError(f"Polynomial in {poly.dim} variables on a {region.dim}D orthant")
		return poly.orthant_transform(rho)
	if not isinstance(P, HomHarmonicPoly):
		raise DomainError("Sector transforms take homogeneous harmonic polynomials")
	basis = sector_transform_basis(P.degree, region, [rho])[0]
	return complex(P.a * basis[0] + P.b * basis[1])
