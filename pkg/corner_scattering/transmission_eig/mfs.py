"""Boundary collocation with fundamental solutions for the interior transmission problem.

v and w are sums of Phi_k and Phi_{kn} sources on a curve around the domain, and the rows ask
w - v and d_nu (w - v) to vanish at boundary collocation points. Eigenvalues are detected as dips
of the smallest singular value of the boundary rows, taken on an orthonormal basis of the
source span sampled inside the domain so that near-dependent columns cannot fake a dip.
"""

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import qr, solve_triangular, svd
from scipy.optimize import minimize_scalar

from corner_scattering.exceptions import (
	DegenerateMediumWarning,
	DomainError,
	GeometryError,
	NotAnEigenvalueError,
)
from corner_scattering.forward_scattering.green import green_of_distance
from corner_scattering.geometry.domain import DiskDomain, Domain, PolygonDomain
from corner_scattering.geometry.quadrature import build_grid
from corner_scattering.specfun import hankel1
from corner_scattering.transmission_eig.constants import (
	CHARGE_OFFSET,
	DEFAULT_N_CHARGE,
	DEFAULT_SCAN_STEP,
	GOLDEN_XTOL,
	MFS_RESIDUAL_TOL,
	NORM_GRID_FRACTION,
	RANK_TOL,
	RECONSTRUCT_SIGMA_TOL,
	THRESHOLD_RATIO,
)
from corner_scattering.transmission_eig.disk import refractive_index, scan_grid
from corner_scattering.transmission_eig.eigenpair import SingularValueScan, TransmissionEigenpair
from corner_scattering.transmission_eig.fields import SourceField
from corner_scattering.utils.workers import ordered_map

logger = logging.getLogger(__name__)


def _polygon_charge_curve(domain: PolygonDomain, n: int, offset: float) -> np.ndarray:
	"""Boundary of the polygon dilated by ``offset``: shifted edges joined by arcs at the vertices."""
	pts, normals = domain.points, domain.outward_normals
	count = len(pts)
	pieces = []
	for i in range(count):
		start, end = pts[i], pts[(i + 1) % count]
		length = float(np.linalg.norm(end - start))
		pieces.append(("edge", length, start + offset * normals[i], end - start))
		n1, n2 = normals[i], normals[(i + 1) % count]
		sweep = math.atan2(n1[0] * n2[1] - n1[1] * n2[0], float(n1 @ n2))
		pieces.append(("arc", offset * sweep, end, (math.atan2(n1[1], n1[0]), sweep)))

	lengths = np.array([piece[1] for piece in pieces])
	offsets = np.concatenate([[0.0], np.cumsum(lengths)])
	s = (np.arange(n) + 0.5) * offsets[-1] / n
	index = np.clip(np.searchsorted(offsets, s, side="right") - 1, 0, len(pieces) - 1)

	out = np.empty((n, 2))
	for j, (p, arclength) in enumerate(zip(index, s)):
		kind, length, anchor, shape = pieces[p]
		t = (arclength - offsets[p]) / length if length > 0 else 0.0
		if kind == "edge":
			out[j] = anchor + t * shape
		else:
			angle = shape[0] + t * shape[1]
			out[j] = anchor + offset * np.array([math.cos(angle), math.sin(angle)])
	return out


def charge_curve(
	domain: Domain, n_charge: int, charge_offset: float = CHARGE_OFFSET
) -> np.ndarray:
	"""``n_charge`` sources equispaced on the boundary dilated by charge_offset * diameter."""
	if int(n_charge) != n_charge or n_charge < 3:
		raise DomainError(f"Need at least 3 charges, got {n_charge}")
	offset = charge_offset * domain.diameter
	if not offset > 0:
		raise GeometryError(f"Charge offset {charge_offset} puts the sources on or inside the domain")
	if isinstance(domain, DiskDomain):
		theta = 2 * np.pi * np.arange(n_charge) / n_charge
		radius = domain.radius + offset
		charges = domain.center_point + radius * np.stack([np.cos(theta), np.sin(theta)], 1)
	else:
		charges = _polygon_charge_curve(domain, int(n_charge), offset)
	if np.any(domain.contains(charges)):
		raise GeometryError("Charge curve intersects the domain")
	return charges


def _interior_probes(domain: Domain, n: int) -> np.ndarray:
	points, _ = domain.boundary_points(n)
	return domain.centroid + 0.5 * (points - domain.centroid)


def _normal_derivative(k: float, diff: np.ndarray, r: np.ndarray, normals: np.ndarray):
	"""d_nu(x) Phi_k(x - y) for every collocation point x and source y."""
	return -0.25j * k * hankel1(1, k * r) / r * np.einsum("csd,cd->cs", diff, normals)


@dataclass(eq=False)
class CollocationProblem:
	"""Geometry of one collocation discretization; every k-dependent matrix is built from it."""

	domain: Domain
	n_ref: float
	charges: np.ndarray
	colloc: np.ndarray
	normals: np.ndarray
	interior: np.ndarray

	def __post_init__(self):
		self._diff = self.colloc[:, None, :] - self.charges[None, :, :]
		self._r = np.hypot(self._diff[..., 0], self._diff[..., 1])
		probe = self.interior[:, None, :] - self.charges[None, :, :]
		self._r_interior = np.hypot(probe[..., 0], probe[..., 1])

	@property
	def n_charge(self) -> int:
		return len(self.charges)

	def boundary_matrix(self, k: float) -> np.ndarray:
		kn = k * self.n_ref
		values = np.hstack([-green_of_distance(k, self._r), green_of_distance(kn, self._r)])
		slopes = np.hstack(
			[
				-_normal_derivative(k, self._diff, self._r, self.normals),
				_normal_derivative(kn, self._diff, self._r, self.normals),
			]
		)
		return np.vstack([values, slopes])

	def interior_matrix(self, k: float) -> np.ndarray:
		zeros = np.zeros_like(self._r_interior, dtype=complex)
		return np.block(
			[
				[green_of_distance(k, self._r_interior), zeros],
				[zeros, green_of_distance(k * self.n_ref, self._r_interior)],
			]
		)

	def solve(self, k: float) -> Tuple[float, np.ndarray]:
		"""Smallest boundary singular value on the orthonormalized span, and its source coefficients."""
		boundary = self.boundary_matrix(k)
		stacked = np.vstack([boundary, self.interior_matrix(k)])
		scales = np.linalg.norm(stacked, axis=0)
		Q, R, perm = qr(stacked / scales, mode="economic", pivoting=True)
		diag = np.abs(np.diag(R))
		rank = int(np.count_nonzero(diag > RANK_TOL * diag[0]))
		_, s, vh = svd(Q[: len(boundary), :rank], full_matrices=False)
		z = solve_triangular(R[:rank, :rank], vh[-1].conj())
		coeffs = np.zeros(stacked.shape[1], dtype=complex)
		coeffs[perm[:rank]] = z
		return float(s[-1]), coeffs / scales

	def sigma(self, k: float) -> float:
		return self.solve(k)[0]


def _check_problem(domain: Domain, k_values, V: float, n_charge: int, n_colloc: int) -> float:
	if not isinstance(domain, (PolygonDomain, DiskDomain)):
		raise DomainError(f"Collocation needs a polygon or disk domain, got {type(domain).__name__}")
	if isinstance(domain, PolygonDomain):
		domain.validate()
	ks = np.atleast_1d(np.asarray(k_values, dtype=float))
	if not np.all(np.isfinite(ks)) or np.any(ks <= 0):
		raise DomainError(f"Wavenumber must be positive, got {k_values}")
	if isinstance(V, complex) or not np.isscalar(V):
		raise DomainError(f"Collocation needs a constant real contrast, got {V}")
	n_ref = refractive_index(V)
	if V == 0:
		warnings.warn(
			"V = 0: v = w solves the problem for every k", DegenerateMediumWarning, stacklevel=3
		)
	if int(n_colloc) != n_colloc or n_colloc < n_charge:
		raise DomainError(f"Need n_colloc >= n_charge, got {n_colloc} < {n_charge}")
	return n_ref


def collocation_problem(
	domain: Domain,
	V: float,
	n_charge: int = DEFAULT_N_CHARGE,
	n_colloc: Optional[int] = None,
	charge_offset: float = CHARGE_OFFSET,
	k_values=1.0,
) -> CollocationProblem:
	n_colloc = 2 * n_charge if n_colloc is None else n_colloc
	n_ref = _check_problem(domain, k_values, V, n_charge, n_colloc)
	charges = charge_curve(domain, n_charge, charge_offset)
	colloc, normals = domain.boundary_points(int(n_colloc))
	return CollocationProblem(
		domain, n_ref, charges, colloc, normals, _interior_probes(domain, int(n_colloc) // 2)
	)


def mfs_matrix(
	domain: Domain,
	k: float,
	V: float,
	n_charge: int = DEFAULT_N_CHARGE,
	n_colloc: Optional[int] = None,
	charge_offset: float = CHARGE_OFFSET,
) -> np.ndarray:
	"""(2 n_colloc) x (2 n_charge) boundary matrix with unit-norm columns."""
	problem = collocation_problem(domain, V, n_charge, n_colloc, charge_offset, k)
	matrix = problem.boundary_matrix(k)
	return matrix / np.linalg.norm(matrix, axis=0)


def _refine_minimum(problem: CollocationProblem, left: float, mid: float, right: float):
	found = minimize_scalar(
		problem.sigma,
		bracket=(left, mid, right),
		method="golden",
		options={"xtol": GOLDEN_XTOL / mid},
	)
	k = min(max(float(found.x), left), right)
	return k, problem.sigma(k)


def scan_eigenvalues(
	domain: Domain,
	V: float,
	k_range,
	scan_step: float = DEFAULT_SCAN_STEP,
	n_charge: int = DEFAULT_N_CHARGE,
	n_colloc: Optional[int] = None,
	charge_offset: float = CHARGE_OFFSET,
	workers: int = 1,
) -> SingularValueScan:
	"""sigma_min over a k grid; minima below the median are refined, kept if below median / 50."""
	grid = scan_grid(k_range, scan_step)
	problem = collocation_problem(domain, V, n_charge, n_colloc, charge_offset, grid)
	sigma = np.array(ordered_map(problem.sigma, grid, workers))
	median = float(np.median(sigma))
	threshold = median / THRESHOLD_RATIO

	scan_warnings = []
	if scan_step > 0.005 * grid[-1]:
		scan_warnings.append(
			f"scan step {scan_step} may not resolve eigenvalue spacing near k = {grid[-1]}"
		)

	detected, values = [], []
	for i in range(1, len(grid) - 1):
		if sigma[i] < sigma[i - 1] and sigma[i] < sigma[i + 1] and sigma[i] < median:
			k, value = _refine_minimum(problem, grid[i - 1], grid[i], grid[i + 1])
			if value < threshold:
				detected.append(k)
				values.append(value)

	for note in scan_warnings:
		logger.warning(note)
	logger.info(
		"scanned %s wavenumbers in [%.6g, %.6g], %s dips below %.3g",
		len(grid),
		grid[0],
		grid[-1],
		len(detected),
		threshold,
	)
	order = np.argsort(detected)
	return SingularValueScan(
		k_grid=grid,
		sigma_min=sigma,
		detected_minima=[detected[i] for i in order],
		minimum_values=[values[i] for i in order],
		threshold=threshold,
		warnings=scan_warnings,
	)


def reconstruct_eigenfunction(
	domain: Domain,
	V: float,
	k: float,
	n_charge: int = DEFAULT_N_CHARGE,
	n_colloc: Optional[int] = None,
	charge_offset: float = CHARGE_OFFSET,
	sigma_tol: float = RECONSTRUCT_SIGMA_TOL,
	residual_tol: float = MFS_RESIDUAL_TOL,
) -> TransmissionEigenpair:
	problem = collocation_problem(domain, V, n_charge, n_colloc, charge_offset, k)
	sigma, coeffs = problem.solve(k)
	if sigma > sigma_tol:
		raise NotAnEigenvalueError(
			f"sigma_min = {sigma:.3g} at k = {k:.10g} is above {sigma_tol:.1g}: "
			"not an eigenvalue at tolerance"
		)
	n = problem.n_charge
	v = SourceField(k, problem.charges, coeffs[:n])
	w = SourceField(k * problem.n_ref, problem.charges, coeffs[n:])

	grid = build_grid(domain, NORM_GRID_FRACTION * domain.diameter)
	samples = v(grid.nodes)
	# unit L2 norm, largest sample real and positive
	peak = samples[np.argmax(np.abs(samples))]
	factor = abs(peak) / (peak * grid.l2_norm(samples))
	v, w = v.scaled(factor), w.scaled(factor)

	check, normals = domain.boundary_points(3 * len(problem.colloc) + 1)
	samples_v = v(grid.nodes)
	sup_v = max(float(np.max(np.abs(samples_v))), float(np.max(np.abs(v(check)))))
	jump = w(check) - v(check)
	slope = np.einsum("pd,pd->p", w.gradient(check) - v.gradient(check), normals)
	residuals = {
		"dirichlet": float(np.max(np.abs(jump)) / sup_v),
		"neumann": float(np.max(np.abs(slope)) / (k * sup_v)),
	}
	return TransmissionEigenpair(
		k=float(k),
		v=v,
		w=w,
		domain=domain,
		method="mfs",
		residuals=residuals,
		normalization=grid.l2_norm(samples_v),
		residual_tol=residual_tol,
		sigma_min=sigma,
	)
