from typing import Callable

import numpy as np

from corner_scattering.exceptions import DomainError
from corner_scattering.geometry.domain import as_points
from corner_scattering.herglotz import incident_from_kernel

FieldSampler = Callable[[np.ndarray], np.ndarray]

__all__ = ["FieldSampler", "incident_from_kernel", "plane_wave", "unit_direction"]


def unit_direction(direction) -> np.ndarray:
	"""Angle in radians or a non-zero 2-vector, returned as a unit vector."""
	arr = np.asarray(direction, dtype=float)
	if arr.ndim == 0:
		return np.array([np.cos(arr), np.sin(arr)])
	if arr.shape != (2,) or not np.all(np.isfinite(arr)):
		raise DomainError(f"Direction must be an angle or a 2-vector, got {direction}")
	norm = np.hypot(*arr)
	if norm == 0:
		raise DomainError("Direction must be non-zero")
	return arr / norm


def plane_wave(direction, k: float) -> FieldSampler:
	"""Sampler for e^{ik d.x}."""
	if not (np.isfinite(k) and k > 0):
		raise DomainError(f"Wavenumber must be positive, got {k}")
	d = unit_direction(direction)
	return lambda points: np.exp(1j * k * (as_points(points) @ d))
