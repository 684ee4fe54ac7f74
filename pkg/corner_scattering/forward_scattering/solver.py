"""Lippmann-Schwinger volume integral equation on a quadrature grid.

u(x) - k^2 int_Omega Phi_k(x - y) V(y) u(y) dy = u^i(x) is collocated at the grid nodes. Off
the diagonal the integral uses the grid weights; each diagonal entry integrates Phi_k exactly
over a disk of the cell's area.
"""

import logging
import threading
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Union

import numpy as np
import scipy.linalg
from scipy.sparse.linalg import LinearOperator, gmres
from scipy.spatial.distance import cdist

from corner_scattering.exceptions import DomainError, InvariantViolation, ResourceError
from corner_scattering.forward_scattering.constants import (
	BLOCK_ROWS,
	DEFAULT_TOL,
	GMRES_MAXITER,
	GMRES_RESTART,
	MAX_DENSE_NODES,
)
from corner_scattering.forward_scattering.green import cell_self_integral, green_of_distance
from corner_scattering.forward_scattering.utils import create_forward_scattering_log
from corner_scattering.geometry.potential import PotentialSpec
from corner_scattering.geometry.quadrature import QuadratureGrid
from corner_scattering.utils.serialization import complex_pairs

logger = logging.getLogger(__name__)

METHODS = ("auto", "gmres", "lu")


@dataclass
class ScatterResult:
	spec: PotentialSpec
	grid: QuadratureGrid
	k: float
	potential: np.ndarray
	total_field: np.ndarray
	incident_field: np.ndarray
	iterations: int
	residual: float
	method: str

	@property
	def scattered_field(self) -> np.ndarray:
		return self.total_field - self.incident_field

	def to_json(self) -> Dict[str, Any]:
		return {
			"k": self.k,
			"method": self.method,
			"iterations": self.iterations,
			"residual": self.residual,
			"potential": self.spec.as_dict(),
			"grid": self.grid.as_dict(),
			"total_field": complex_pairs(self.total_field),
			"incident_field": complex_pairs(self.incident_field),
		}


class LippmannSchwingerOperator:
	"""A = I - k^2 G diag(V) for one (V, k, grid), reused across incident fields."""

	def __init__(
		self,
		spec: PotentialSpec,
		k: float,
		grid: QuadratureGrid,
		max_dense_nodes: int = MAX_DENSE_NODES,
	):
		if not (np.isfinite(k) and k > 0):
			raise DomainError(f"Wavenumber must be positive, got {k}")
		self.spec = spec
		self.k = float(k)
		self.grid = grid
		self.max_dense_nodes = max_dense_nodes
		self.potential = spec.potential(grid.nodes)
		if not np.all(np.isfinite(self.potential)):
			raise DomainError("Potential must be finite on the grid")
		self.self_terms = cell_self_integral(self.k, grid.weights)

		self._green = self._assemble() if grid.size <= max_dense_nodes else None
		self._lu = None
		self._lock = threading.Lock()

	@property
	def size(self) -> int:
		return self.grid.size

	@property
	def is_trivial(self) -> bool:
		return not np.any(self.potential)

	def _green_rows(self, start: int, stop: int) -> np.ndarray:
		nodes, weights = self.grid.nodes, self.grid.weights
		distances = cdist(nodes[start:stop], nodes)
		rows = np.arange(stop - start)
		distances[rows, start + rows] = 1.0
		block = green_of_distance(self.k, distances) * weights[None, :]
		block[rows, start + rows] = self.self_terms[start:stop]
		return block

	def _assemble(self) -> np.ndarray:
		return self._green_rows(0, self.size)

	def volume_potential(self, density: np.ndarray) -> np.ndarray:
		"""k^2 int Phi_k(x_j - y) density(y) dy at every node."""
		if self._green is not None:
			return self.k**2 * (self._green @ density)
		out = np.empty(self.size, dtype=complex)
		for start in range(0, self.size, BLOCK_ROWS):
			stop = min(start + BLOCK_ROWS, self.size)
			out[start:stop] = self._green_rows(start, stop) @ density
		return self.k**2 * out

	def apply(self, u) -> np.ndarray:
		u = np.asarray(u, dtype=complex)
		return u - self.volume_potential(self.potential * u)

	def dense_matrix(self) -> np.ndarray:
		if self._green is None:
			raise ResourceError(
				f"Dense solve of {self.size} unknowns exceeds the cap {self.max_dense_nodes}"
			)
		return np.eye(self.size) - self.k**2 * self._green * self.potential[None, :]

	def _relative_residual(self, u: np.ndarray, rhs: np.ndarray) -> float:
		scale = np.linalg.norm(rhs)
		return float(np.linalg.norm(self.apply(u) - rhs) / scale) if scale > 0 else 0.0

	def _solve_lu(self, rhs: np.ndarray) -> np.ndarray:
		with self._lock:
			if self._lu is None:
				self._lu = scipy.linalg.lu_factor(self.dense_matrix())
		return scipy.linalg.lu_solve(self._lu, rhs)

	def _solve_gmres(self, rhs: np.ndarray, tol: float):
		counter = {"iterations": 0}

		def count(_):
			counter["iterations"] += 1

		operator = LinearOperator((self.size, self.size), matvec=self.apply, dtype=complex)
		u, info = gmres(
			operator,
			rhs,
			rtol=tol,
			atol=0.0,
			restart=min(GMRES_RESTART, self.size),
			maxiter=GMRES_MAXITER,
			callback=count,
			callback_type="pr_norm",
		)
		return u, info, counter["iterations"]

	def solve(self, incident, tol: float = DEFAULT_TOL, method: str = "auto") -> ScatterResult:
		if method not in METHODS:
			raise DomainError(f"Unknown method {method!r}, expected one of {METHODS}")
		if not 0 < tol < 1:
			raise DomainError(f"Tolerance must lie in (0, 1), got {tol}")
		rhs = np.asarray(incident, dtype=complex)
		if rhs.shape != (self.size,):
			raise DomainError(f"Expected {self.size} incident samples, got shape {rhs.shape}")

		if self.is_trivial or not np.any(rhs):
			return self._result(rhs.copy(), rhs, 0, 0.0, "trivial")

		if method == "lu":
			u = self._solve_lu(rhs)
			return self._result(u, rhs, 0, self._relative_residual(u, rhs), "lu")

		u, info, iterations = self._solve_gmres(rhs, tol)
		residual = self._relative_residual(u, rhs)
		if info == 0 and residual <= tol:
			logger.debug("GMRES converged in %s iterations (residual %.3g)", iterations, residual)
			return self._result(u, rhs, iterations, residual, "gmres")

		message = f"GMRES stopped at residual {residual:.3g} after {iterations} iterations (info={info})"
		if method == "gmres":
			raise InvariantViolation(message)
		logger.warning("%s, falling back to LU", message)
		create_forward_scattering_log(
			status="Failure",
			method="corner_scattering.forward_scattering.solver.LippmannSchwingerOperator.solve",
			message=message,
			request_data={"k": self.k, "nodes": self.size, "tol": tol},
		)
		u = self._solve_lu(rhs)
		return self._result(u, rhs, iterations, self._relative_residual(u, rhs), "lu")

	def _result(self, u, rhs, iterations, residual, method) -> ScatterResult:
		return ScatterResult(
			spec=self.spec,
			grid=self.grid,
			k=self.k,
			potential=self.potential,
			total_field=u,
			incident_field=rhs,
			iterations=int(iterations),
			residual=float(residual),
			method=method,
		)


def solve_total_field(
	spec: PotentialSpec,
	incident: Union[Callable[[np.ndarray], np.ndarray], np.ndarray],
	k: float,
	grid: QuadratureGrid,
	tol: float = DEFAULT_TOL,
	method: str = "auto",
	operator: Optional[LippmannSchwingerOperator] = None,
) -> ScatterResult:
	"""Total field on ``grid`` for the incident field ``incident`` (a sampler or node values)."""
	if operator is None:
		operator = LippmannSchwingerOperator(spec, k, grid)
	samples = incident(grid.nodes) if callable(incident) else incident
	return operator.solve(samples, tol=tol, method=method)
