"""Far-field pattern and exterior evaluation of the scattered field.

The pattern is normalized so that

	u^s(x) = e^{ik|x|} / sqrt(|x|) u^s_inf(x/|x|) + O(|x|^{-3/2}),

which with the H_0^(1) asymptotics gives

	u^s_inf(t) = e^{i pi/4} / sqrt(8 pi k) k^2 int e^{-ik t.y} V u dy.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np
from scipy.spatial.distance import cdist

from corner_scattering.exceptions import DomainError
from corner_scattering.forward_scattering.constants import (
	DEFAULT_FAR_FIELD_DIRECTIONS,
	MIN_FAR_FIELD_DIRECTIONS,
)
from corner_scattering.forward_scattering.green import cell_self_integral, green_of_distance
from corner_scattering.forward_scattering.solver import ScatterResult
from corner_scattering.geometry.domain import as_points
from corner_scattering.utils.serialization import complex_pairs


def far_field_constant(k: float) -> complex:
	return np.exp(0.25j * np.pi) / np.sqrt(8 * np.pi * k)


def equispaced_angles(n: int) -> np.ndarray:
	return 2 * np.pi * np.arange(n) / n


@dataclass
class FarFieldPattern:
	angles: np.ndarray
	values: np.ndarray

	def __post_init__(self):
		self.angles = np.asarray(self.angles, dtype=float)
		self.values = np.asarray(self.values, dtype=complex)
		if self.angles.shape != self.values.shape or self.angles.ndim != 1:
			raise DomainError("Far-field angles and values must be matching 1D arrays")
		if len(self.angles) < MIN_FAR_FIELD_DIRECTIONS:
			raise DomainError(
				f"Far field needs at least {MIN_FAR_FIELD_DIRECTIONS} directions, got {len(self.angles)}"
			)

	@property
	def directions(self) -> np.ndarray:
		return np.stack([np.cos(self.angles), np.sin(self.angles)], 1)

	@property
	def l2_norm(self) -> float:
		"""Periodic trapezoid rule on equispaced angles."""
		return float(np.sqrt(2 * np.pi / len(self.values) * np.sum(np.abs(self.values) ** 2)))

	def to_csv_rows(self) -> List[Tuple[float, float, float]]:
		return [(float(a), float(v.real), float(v.imag)) for a, v in zip(self.angles, self.values)]

	def to_json(self) -> Dict[str, Any]:
		return {
			"angles": self.angles.tolist(),
			"values": complex_pairs(self.values),
			"l2_norm": self.l2_norm,
		}


def far_field(
	result: ScatterResult, n_directions: int = DEFAULT_FAR_FIELD_DIRECTIONS
) -> FarFieldPattern:
	if n_directions < MIN_FAR_FIELD_DIRECTIONS:
		raise DomainError(f"Far field needs at least {MIN_FAR_FIELD_DIRECTIONS} directions")
	angles = equispaced_angles(n_directions)
	grid, k = result.grid, result.k
	density = grid.weights * result.potential * result.total_field
	directions = np.stack([np.cos(angles), np.sin(angles)], 1)
	phases = np.exp(-1j * k * directions @ grid.nodes.T)
	return FarFieldPattern(angles, far_field_constant(k) * k**2 * (phases @ density))


def scattered_field_at(result: ScatterResult, points) -> Tuple[np.ndarray, np.ndarray]:
	"""u^s = k^2 int Phi_k(x - y) V(y) u(y) dy at arbitrary points.

	Returns the values and a flag per point marking those inside the closed domain, where the
	representation is still valid but the plain quadrature loses accuracy. Points that coincide
	with grid nodes use the cell self-integral.
	"""
	pts = as_points(points)
	grid, k = result.grid, result.k
	density = result.potential * result.total_field
	inside = result.spec.domain.contains(pts)

	distances = cdist(pts, grid.nodes)
	coincident = distances == 0
	distances[coincident] = 1.0
	kernel = green_of_distance(k, distances) * grid.weights[None, :]
	if np.any(coincident):
		rows, cols = np.nonzero(coincident)
		kernel[rows, cols] = cell_self_integral(k, grid.weights[cols])
	return k**2 * (kernel @ density), inside
