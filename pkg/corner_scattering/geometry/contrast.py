"""Contrast expressions that configuration documents can reference by name (see hooks.py)."""

import numpy as np

from corner_scattering.geometry.domain import as_points


def distance_to_point(points, point=(0.0, 0.0)) -> np.ndarray:
	return np.linalg.norm(as_points(points) - np.asarray(point, dtype=float), axis=1)


def gaussian_bump(points, center=(0.0, 0.0), width=1.0, amplitude=1.0) -> np.ndarray:
	r2 = np.sum((as_points(points) - np.asarray(center, dtype=float)) ** 2, axis=1)
	return amplitude * np.exp(-r2 / (2.0 * width**2))


def linear_ramp(points, gradient=(1.0, 0.0), offset=0.0) -> np.ndarray:
	return offset + as_points(points) @ np.asarray(gradient, dtype=float)
