import math
from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np

from corner_scattering.exceptions import DomainError
from corner_scattering.geometry.domain import as_points
from corner_scattering.herglotz.constants import POLY_NORM_POINTS


def _harmonic_monomials(N: int) -> np.ndarray:
	"""(N+1, 2) real matrix: monomial coefficients of Re z^N and Im z^N, z = x + iy."""
	j = np.arange(N + 1)
	binom = np.array([math.comb(N, int(i)) for i in j], dtype=float)
	powers = 1j**j
	return np.stack([binom * powers.real, binom * powers.imag], axis=1)


@dataclass(frozen=True, eq=False)
class HomHarmonicPoly:
	"""P(x, y) = a Re (x + iy)^N + b Im (x + iy)^N."""

	degree: int
	a: complex = 1.0
	b: complex = 0.0

	def __post_init__(self):
		if int(self.degree) != self.degree or self.degree < 0:
			raise DomainError(f"Degree must be a non-negative integer, got {self.degree}")
		object.__setattr__(self, "degree", int(self.degree))
		object.__setattr__(self, "a", complex(self.a))
		# Im z^0 vanishes identically
		object.__setattr__(self, "b", complex(self.b) if self.degree else 0j)

	@classmethod
	def from_angles(cls, degree: int, t: float, phi: float) -> "HomHarmonicPoly":
		"""cos t Re z^N + e^{i phi} sin t Im z^N, the family swept by the inf-sup search."""
		return cls(degree, np.cos(t), np.exp(1j * phi) * np.sin(t))

	@classmethod
	def from_monomials(cls, degree: int, coeffs) -> Tuple["HomHarmonicPoly", float]:
		"""Least-squares projection of monomial coefficients onto the harmonic basis.

		Returns the polynomial and the relative projection residual.
		"""
		coeffs = np.asarray(coeffs, dtype=complex)
		if coeffs.shape != (degree + 1,):
			raise DomainError(f"Expected {degree + 1} coefficients, got {coeffs.shape}")
		basis = _harmonic_monomials(degree)
		solution, *_ = np.linalg.lstsq(basis.astype(complex), coeffs, rcond=None)
		scale = np.linalg.norm(coeffs)
		residual = np.linalg.norm(basis @ solution - coeffs) / scale if scale > 0 else 0.0
		return cls(degree, solution[0], solution[1]), float(residual)

	def __call__(self, points) -> np.ndarray:
		pts = as_points(points)
		zN = (pts[:, 0] + 1j * pts[:, 1]) ** self.degree
		return self.a * zN.real + self.b * zN.imag

	def on_circle(self, theta) -> np.ndarray:
		theta = np.asarray(theta, dtype=float)
		return self.a * np.cos(self.degree * theta) + self.b * np.sin(self.degree * theta)

	@property
	def norm(self) -> float:
		"""int_{S^1} |P| dsigma by the periodic trapezoid rule."""
		theta = 2 * np.pi * np.arange(POLY_NORM_POINTS) / POLY_NORM_POINTS
		return float(np.sum(np.abs(self.on_circle(theta))) * 2 * np.pi / POLY_NORM_POINTS)

	@property
	def is_zero(self) -> bool:
		return self.a == 0 and self.b == 0

	def monomial_coefficients(self) -> np.ndarray:
		return _harmonic_monomials(self.degree) @ np.array([self.a, self.b])

	def scaled(self, factor: complex) -> "HomHarmonicPoly":
		return HomHarmonicPoly(self.degree, self.a * factor, self.b * factor)

	def normalized(self) -> "HomHarmonicPoly":
		norm = self.norm
		if norm == 0:
			raise DomainError("Cannot normalize the zero polynomial")
		return self.scaled(1.0 / norm)

	def as_dict(self) -> Dict[str, Any]:
		return {
			"degree": self.degree,
			"a": [self.a.real, self.a.imag],
			"b": [self.b.real, self.b.imag],
		}
