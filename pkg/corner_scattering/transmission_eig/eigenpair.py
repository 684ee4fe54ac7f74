import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

import numpy as np

from corner_scattering.exceptions import InvariantViolation
from corner_scattering.geometry.domain import Domain
from corner_scattering.transmission_eig.constants import MULTIPLICITY_GAP, NORMALIZATION_TOL
from corner_scattering.transmission_eig.fields import RadialModeField, SourceField
from corner_scattering.utils.serialization import complex_pairs

logger = logging.getLogger(__name__)

Field = Union[RadialModeField, SourceField]

SCAN_HEADER = ("k", "sigma_min")


@dataclass(eq=False)
class TransmissionEigenpair:
	"""(v, w) with (Delta + k^2) v = 0, (Delta + k^2 n^2) w = 0 and equal Cauchy data on the boundary.

	``residuals`` holds the sup of |w - v| and of |d_nu (w - v)| / k on the boundary, both relative
	to sup |v|; ``normalization`` is ||v||_{L^2(Omega)}.
	"""

	k: float
	v: Field
	w: Field
	domain: Domain
	method: str
	residuals: Dict[str, float]
	normalization: float
	residual_tol: float
	mode: Optional[int] = None
	sigma_min: Optional[float] = None
	warnings: List[str] = field(default_factory=list)

	def __post_init__(self):
		if abs(self.normalization - 1) > NORMALIZATION_TOL:
			raise InvariantViolation(f"||v|| = {self.normalization:.12g}, expected 1")
		worst = max(self.residuals.values())
		if worst > self.residual_tol:
			raise InvariantViolation(
				f"Boundary residual {worst:.3g} at k = {self.k:.10g} exceeds {self.residual_tol:.1g}"
			)

	@property
	def coefficients(self) -> Optional[np.ndarray]:
		if isinstance(self.v, SourceField):
			return np.concatenate([self.v.coeffs, self.w.coeffs])
		return None

	def to_json(self) -> Dict:
		coefficients = self.coefficients
		return {
			"k": self.k,
			"method": self.method,
			"mode": self.mode,
			"domain": self.domain.as_dict(),
			"coefficients": None if coefficients is None else complex_pairs(coefficients),
			"v": self.v.as_dict(),
			"w": self.w.as_dict(),
			"residuals": dict(self.residuals),
			"residual_tol": self.residual_tol,
			"normalization": self.normalization,
			"sigma_min": self.sigma_min,
		}


@dataclass
class SingularValueScan:
	k_grid: np.ndarray
	sigma_min: np.ndarray
	detected_minima: List[float] = field(default_factory=list)
	minimum_values: List[float] = field(default_factory=list)
	threshold: float = 0.0
	warnings: List[str] = field(default_factory=list)

	def __post_init__(self):
		self.k_grid = np.asarray(self.k_grid, dtype=float)
		self.sigma_min = np.asarray(self.sigma_min, dtype=float)
		if self.k_grid.shape != self.sigma_min.shape:
			raise InvariantViolation("k grid and sigma_min differ in length")
		if np.any(np.diff(self.k_grid) <= 0):
			raise InvariantViolation("k grid must be strictly increasing")
		if np.any(self.sigma_min < 0):
			raise InvariantViolation("Singular values cannot be negative")

	@property
	def clusters(self) -> List[List[float]]:
		"""Detected minima grouped when closer than MULTIPLICITY_GAP; multiplicity is not resolved."""
		groups: List[List[float]] = []
		for k in self.detected_minima:
			if groups and k - groups[-1][-1] <= MULTIPLICITY_GAP:
				groups[-1].append(k)
			else:
				groups.append([k])
		return groups

	def to_csv_rows(self) -> List[tuple]:
		return [(float(k), float(s)) for k, s in zip(self.k_grid, self.sigma_min)]

	def as_dict(self) -> Dict:
		return {
			"detected_minima": list(self.detected_minima),
			"minimum_values": list(self.minimum_values),
			"threshold": self.threshold,
			"clusters": self.clusters,
			"warnings": list(self.warnings),
		}
