from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Union

import numpy as np

from corner_scattering.exceptions import DomainError
from corner_scattering.geometry.domain import (
	DiskDomain,
	Domain,
	PolygonDomain,
	min_vertex_edge_distance,
)
from corner_scattering.geometry.quadrature import ball_average, build_grid
from corner_scattering.transmission_eig.constants import CORNER_RATIO, NORM_GRID_FRACTION
from corner_scattering.transmission_eig.eigenpair import TransmissionEigenpair

PROFILE_HEADER = ("r", "ball_average", "ratio")


@dataclass
class VanishingProfile:
	vertex: np.ndarray
	radii: List[float]
	averages: List[float]
	domain_average: float
	warnings: List[str] = field(default_factory=list)

	@property
	def ratios(self) -> List[float]:
		return [a / self.domain_average for a in self.averages]

	def to_csv_rows(self) -> List[tuple]:
		return [(r, a, q) for r, a, q in zip(self.radii, self.averages, self.ratios)]


@dataclass
class CornerVerdict:
	passed: bool
	smallest_ratio: float
	decreasing: bool


def vanishing_profile(
	pair: Union[TransmissionEigenpair, Callable],
	vertex,
	radii: Sequence[float],
	domain: Optional[Domain] = None,
) -> VanishingProfile:
	"""Ball averages of |v| about ``vertex`` at decreasing radii, with the domain average of |v|."""
	if isinstance(pair, TransmissionEigenpair):
		field_v, domain = pair.v, pair.domain
	else:
		field_v = pair
	if domain is None:
		raise DomainError("A bare field needs its domain")

	radii = [float(r) for r in radii]
	if not radii or any(not r > 0 for r in radii):
		raise DomainError(f"Radii must be positive, got {radii}")
	if any(b >= a for a, b in zip(radii, radii[1:])):
		raise DomainError("Radii must be strictly decreasing")
	if isinstance(domain, PolygonDomain):
		reach = min_vertex_edge_distance(domain)
	elif isinstance(domain, DiskDomain):
		reach = domain.radius
	if radii[0] > reach:
		raise DomainError(f"Radius {radii[0]:.6g} exceeds the local reach {reach:.6g}")

	vertex = np.asarray(vertex, dtype=float)
	averages, notes = [], []
	for r in radii:
		result = ball_average(field_v, vertex, r, domain)
		averages.append(result.value)
		notes.extend(result.warnings)

	grid = build_grid(domain, NORM_GRID_FRACTION * domain.diameter)
	domain_average = float(np.real(grid.integrate(np.abs(field_v(grid.nodes))))) / grid.area
	return VanishingProfile(vertex, radii, averages, domain_average, notes)


def corner_criterion(profile: VanishingProfile, ratio: float = CORNER_RATIO) -> CornerVerdict:
	"""Smallest-radius ratio at most ``ratio`` and averages decreasing over the last three radii."""
	smallest = profile.ratios[-1]
	tail = profile.averages[-3:]
	decreasing = len(tail) == 3 and all(b < a for a, b in zip(tail, tail[1:]))
	return CornerVerdict(bool(smallest <= ratio and decreasing), float(smallest), decreasing)
