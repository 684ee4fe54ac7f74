"""Transmission eigenvalues of a disk with constant contrast, mode by mode.

With v = A J_m(kr) e^{im theta} and w = B J_m(k n r) e^{im theta}, matching w - v and its radial
derivative on r = a has a non-trivial (A, B) exactly when

	det [[J_m(ka), -J_m(kna)], [k J_m'(ka), -k n J_m'(kna)]] = 0.
"""

import logging
import math
import warnings
from typing import List, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.optimize import brentq

from corner_scattering.exceptions import (
	DegenerateInputError,
	DegenerateMediumWarning,
	DomainError,
	PreconditionError,
)
from corner_scattering.geometry.domain import DiskDomain
from corner_scattering.specfun import bessel_j, bessel_j_prime
from corner_scattering.transmission_eig.constants import (
	DEFAULT_SCAN_STEP,
	DISK_RESIDUAL_TOL,
	EIGENFUNCTION_DET_TOL,
	RADIAL_QUAD_NODES,
	ROOT_XTOL,
	SUP_SAMPLES,
)
from corner_scattering.transmission_eig.eigenpair import TransmissionEigenpair
from corner_scattering.transmission_eig.fields import RadialModeField
from corner_scattering.transmission_eig.utils import create_transmission_eig_log

logger = logging.getLogger(__name__)


def _check_mode(m):
	if int(m) != m or m < 0:
		raise DomainError(f"Mode must be a non-negative integer, got {m}")
	return int(m)


def _check_medium(a: float, n_ref: float):
	if not (np.isfinite(a) and a > 0):
		raise DomainError(f"Radius must be positive, got {a}")
	if not (np.isfinite(n_ref) and n_ref > 0):
		raise DomainError(f"Refractive index must be positive, got {n_ref}")


def refractive_index(V: float) -> float:
	if not V > -1:
		raise DomainError(f"Contrast must exceed -1, got {V}")
	return math.sqrt(1 + V)


def disk_determinant(m: int, k, a: float, n_ref: float):
	"""k (J_m(kna) J_m'(ka) - n J_m(ka) J_m'(kna)); real for real k, vectorized over k."""
	m = _check_mode(m)
	_check_medium(a, n_ref)
	ks = np.asarray(k, dtype=float)
	if not np.all(np.isfinite(ks)) or np.any(ks <= 0):
		raise DomainError(f"Wavenumber must be positive, got {k}")
	if n_ref == 1:
		warnings.warn(
			"n = 1: the determinant vanishes for every k", DegenerateMediumWarning, stacklevel=2
		)
	x, xn = ks * a, ks * n_ref * a
	det = ks * (
		bessel_j(m, xn) * bessel_j_prime(m, x) - n_ref * bessel_j(m, x) * bessel_j_prime(m, xn)
	)
	return float(det) if np.ndim(det) == 0 else det


def scan_grid(k_interval, step: float) -> np.ndarray:
	lo, hi = (float(v) for v in k_interval)
	if not (0 < lo < hi and np.isfinite(hi)):
		raise DomainError(f"Need 0 < k_min < k_max, got {k_interval}")
	if not step > 0:
		raise DomainError(f"Scan step must be positive, got {step}")
	return np.linspace(lo, hi, int(math.ceil((hi - lo) / step)) + 1)


def _mode_roots(m: int, grid: np.ndarray, a: float, n_ref: float) -> Tuple[List[float], List[str]]:
	def det(k):
		return disk_determinant(m, k, a, n_ref)

	values = det(grid)
	roots, notes = [], []
	for i in range(len(grid) - 1):
		left, right = values[i], values[i + 1]
		if left == 0:
			roots.append(float(grid[i]))
		elif left * right < 0:
			roots.append(brentq(det, grid[i], grid[i + 1], xtol=ROOT_XTOL))
	if values[-1] == 0:
		roots.append(float(grid[-1]))

	step = grid[1] - grid[0]
	for left, right in zip(roots, roots[1:]):
		if right - left < 2 * step:
			notes.append(f"mode {m}: roots {left:.8g} and {right:.8g} closer than two scan steps")

	# a local minimum of |det| without a sign change may hide a pair of roots
	magnitude = np.abs(values)
	scale = magnitude.max()
	for i in range(1, len(grid) - 1):
		if (
			magnitude[i] < magnitude[i - 1]
			and magnitude[i] < magnitude[i + 1]
			and values[i - 1] * values[i + 1] > 0
			and magnitude[i] < 1e-3 * scale
		):
			notes.append(f"mode {m}: |det| touches {magnitude[i]:.3g} near k = {grid[i]:.8g}")
	return roots, notes


def disk_eigenvalues(
	m_max: int, k_interval, a: float, n_ref: float, step: float = DEFAULT_SCAN_STEP
) -> List[Tuple[int, float]]:
	"""Sign-change roots of the mode determinants for m = 0..m_max, sorted by k."""
	m_max = _check_mode(m_max)
	_check_medium(a, n_ref)
	if n_ref == 1:
		raise DegenerateInputError("n = 1: every k is a transmission eigenvalue")
	grid = scan_grid(k_interval, step)

	found, notes = [], []
	for m in range(m_max + 1):
		roots, mode_notes = _mode_roots(m, grid, a, n_ref)
		found.extend((m, float(k)) for k in roots)
		notes.extend(mode_notes)

	if notes:
		for note in notes:
			logger.warning("refinement: %s", note)
		create_transmission_eig_log(
			status="Failure",
			method="corner_scattering.transmission_eig.disk.disk_eigenvalues",
			request_data={
				"m_max": m_max,
				"k_interval": list(k_interval),
				"a": a,
				"n": n_ref,
				"step": step,
			},
			message="; ".join(notes),
		)
	return sorted(found, key=lambda pair: (pair[1], pair[0]))


def _radial_norm_squared(m: int, k: float, a: float) -> float:
	"""2 pi int_0^a J_m(kr)^2 r dr."""
	x, w = leggauss(RADIAL_QUAD_NODES)
	r = 0.5 * a * (x + 1)
	return float(2 * np.pi * np.sum(0.5 * a * w * bessel_j(m, k * r) ** 2 * r))


def disk_eigenfunction(
	m: int,
	k: float,
	a: float,
	n_ref: float,
	center=(0.0, 0.0),
	residual_tol: float = DISK_RESIDUAL_TOL,
) -> TransmissionEigenpair:
	m = _check_mode(m)
	det = disk_determinant(m, k, a, n_ref)
	if abs(det) > EIGENFUNCTION_DET_TOL:
		raise PreconditionError(
			f"|det| = {abs(det):.3g} at k = {k:.12g} (mode {m}) is not at an eigenvalue"
		)
	x, xn = k * a, k * n_ref * a
	J, Jp = bessel_j(m, x), bessel_j_prime(m, x)
	Jn, Jnp = bessel_j(m, xn), bessel_j_prime(m, xn)

	# null vector of the 2x2 system from whichever row is better scaled
	from_value, from_slope = np.array([Jn, J]), np.array([n_ref * Jnp, Jp])
	A, B = from_value if np.linalg.norm(from_value) >= np.linalg.norm(from_slope) else from_slope
	scale = 1.0 / (abs(A) * math.sqrt(_radial_norm_squared(m, k, a)))
	A, B = A * scale, B * scale
	normalization = abs(A) * math.sqrt(_radial_norm_squared(m, k, a))

	radii = np.linspace(0, a, SUP_SAMPLES)
	sup_v = abs(A) * float(np.max(np.abs(bessel_j(m, k * radii))))
	residuals = {
		"dirichlet": abs(B * Jn - A * J) / sup_v,
		"neumann": abs(B * n_ref * Jnp - A * Jp) / sup_v,
	}
	return TransmissionEigenpair(
		k=float(k),
		v=RadialModeField(m, k, A, center),
		w=RadialModeField(m, k * n_ref, B, center),
		domain=DiskDomain(tuple(center), a),
		method="disk_modes",
		residuals={key: float(value) for key, value in residuals.items()},
		normalization=float(normalization),
		residual_tol=residual_tol,
		mode=m,
	)
