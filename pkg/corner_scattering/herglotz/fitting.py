import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Optional

import numpy as np
import scipy.linalg

from corner_scattering.exceptions import DomainError
from corner_scattering.geometry.quadrature import QuadratureGrid
from corner_scattering.herglotz.constants import CONDITION_WARNING, DEFAULT_LAMBDA_SCALE
from corner_scattering.herglotz.kernel import HerglotzKernel, herglotz_basis
from corner_scattering.herglotz.utils import create_herglotz_log

logger = logging.getLogger(__name__)


@dataclass
class KernelFit:
	kernel: HerglotzKernel
	residual: float
	relative_residual: float
	lam: float
	condition_number: float
	warnings: List[str] = field(default_factory=list)

	def __iter__(self) -> Iterator:
		yield self.kernel
		yield self.residual


def fit_kernel(
	target, grid: QuadratureGrid, k: float, M: int, lam: Optional[float] = None
) -> KernelFit:
	"""Tikhonov fit of a Herglotz kernel to field samples on ``grid``.

	Minimizes ||u_g - target||^2_{L2(Omega)} + lam ||g||^2_{L2(S^1)} through the normal equations
	(A^H W A + 2 pi lam I) c = A^H W target. ``lam=None`` picks 1e-10 times the largest diagonal
	entry of A^H W A.
	"""
	target = np.asarray(target, dtype=complex)
	if target.shape != (grid.size,):
		raise DomainError(f"Expected {grid.size} target samples, got shape {target.shape}")
	if not np.all(np.isfinite(target)):
		raise DomainError("Target samples must be finite")
	if lam is not None and lam < 0:
		raise DomainError(f"Regularization must be non-negative, got {lam}")

	sqrt_w = np.sqrt(grid.weights)
	design = herglotz_basis(k, grid.nodes, M) * sqrt_w[:, None]
	rhs = target * sqrt_w

	gram = design.conj().T @ design
	if lam is None:
		lam = DEFAULT_LAMBDA_SCALE * float(np.max(gram.diagonal().real)) / (2 * np.pi)
	system = gram + 2 * np.pi * lam * np.eye(gram.shape[0])

	warnings = []
	condition = float(np.linalg.cond(system))
	if condition > CONDITION_WARNING:
		warnings.append(f"normal equations ill-conditioned (cond = {condition:.3g}, lam = {lam:.3g})")
		logger.warning(warnings[-1])
		create_herglotz_log(
			status="Failure",
			method="corner_scattering.herglotz.fitting.fit_kernel",
			message=warnings[-1],
			request_data={"k": k, "M": M, "lam": lam, "nodes": grid.size},
		)

	try:
		coeffs = scipy.linalg.solve(system, design.conj().T @ rhs, assume_a="her")
	except (scipy.linalg.LinAlgError, ValueError):
		coeffs, *_ = scipy.linalg.lstsq(design, rhs)

	residual = float(np.linalg.norm(design @ coeffs - rhs))
	scale = float(np.linalg.norm(rhs))
	return KernelFit(
		kernel=HerglotzKernel(coeffs),
		residual=residual,
		relative_residual=residual / scale if scale > 0 else 0.0,
		lam=float(lam),
		condition_number=condition,
		warnings=warnings,
	)
