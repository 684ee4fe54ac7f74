"""Outgoing fundamental solution of the 2D Helmholtz operator, Phi_k(x) = (i/4) H_0^(1)(k|x|)."""

import numpy as np

from corner_scattering.exceptions import DomainError, SingularityError
from corner_scattering.specfun import hankel1


def _check_wavenumber(k: float):
	if not (np.isfinite(k) and k > 0):
		raise DomainError(f"Wavenumber must be positive, got {k}")


def _points(x):
	arr = np.asarray(x, dtype=float)
	single = arr.ndim == 1
	arr = np.atleast_2d(arr)
	if arr.shape[-1] != 2:
		raise DomainError(f"Expected 2D points, got shape {np.shape(x)}")
	return arr, single


def green_of_distance(k: float, r) -> np.ndarray:
	return 0.25j * hankel1(0, k * np.asarray(r, dtype=float))


def fundamental_solution(k: float, x):
	_check_wavenumber(k)
	pts, single = _points(x)
	r = np.hypot(pts[:, 0], pts[:, 1])
	if np.any(r == 0):
		raise SingularityError("Phi_k is singular at the origin")
	values = green_of_distance(k, r)
	return complex(values[0]) if single else values


def fundamental_solution_gradient(k: float, x):
	"""grad Phi_k(x) = -(i/4) k H_1^(1)(k|x|) x / |x|."""
	_check_wavenumber(k)
	pts, single = _points(x)
	r = np.hypot(pts[:, 0], pts[:, 1])
	if np.any(r == 0):
		raise SingularityError("Phi_k is singular at the origin")
	values = (-0.25j * k * hankel1(1, k * r) / r)[:, None] * pts
	return values[0] if single else values


def cell_self_integral(k: float, weights) -> np.ndarray:
	"""Integral of Phi_k over a disk with the area of each cell, centred on its node.

	With a = sqrt(w / pi): (i pi a / (2k)) H_1^(1)(ka) - 1 / k^2.
	"""
	a = np.sqrt(np.asarray(weights, dtype=float) / np.pi)
	return 1j * np.pi * a * hankel1(1, k * a) / (2 * k) - 1.0 / k**2
