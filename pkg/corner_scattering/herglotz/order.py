"""Vanishing order of Herglotz waves at a point, and kernels with prescribed order.

In coordinates centred at x_c the wave is 2 pi sum_m c'_m i^m J_m(k r) e^{i m phi} with c' the
translated coefficients. J_m(kr) e^{i m phi} starts at degree |m|, so all derivatives of order < N
vanish exactly when c'_m = 0 for |m| < N, and then

	P_N = A [(c'_N + c'_{-N}) Re z^N + i (c'_N - c'_{-N}) Im z^N],  A = 2 pi (k/2)^N i^N / N!.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterator, List, Optional

import numpy as np
import scipy.linalg

from corner_scattering.exceptions import DegenerateInputError, DimensionError, OrderNotFoundError
from corner_scattering.herglotz.constants import MAX_TRUNCATION, ORDER_MAX, ORDER_TOL
from corner_scattering.herglotz.kernel import (
	HerglotzKernel,
	normalize,
	taylor_coefficients,
	translated,
	translation_matrix,
)
from corner_scattering.herglotz.polynomial import HomHarmonicPoly

logger = logging.getLogger(__name__)


@dataclass
class VanishingOrder:
	order: int
	polynomial: HomHarmonicPoly
	projection_residual: float
	taylor_coefficients: np.ndarray

	def __iter__(self) -> Iterator:
		yield self.order
		yield self.polynomial


def vanishing_order(
	g: HerglotzKernel, k: float, x_c, tol: float = ORDER_TOL, N_max: int = ORDER_MAX
) -> VanishingOrder:
	norm = g.l2_norm
	if norm == 0:
		raise DegenerateInputError("The zero kernel has no finite vanishing order")
	threshold = tol * norm
	for N in range(N_max + 1):
		coeffs = taylor_coefficients(g, k, x_c, N)
		if np.max(np.abs(coeffs)) > threshold:
			polynomial, residual = HomHarmonicPoly.from_monomials(N, coeffs)
			if residual >= tol:
				logger.warning("Degree-%s Taylor polynomial is not harmonic (residual %.3g)", N, residual)
			return VanishingOrder(N, polynomial, residual, coeffs)
	raise OrderNotFoundError(f"All Taylor coefficients up to order {N_max} are below {threshold:.3g}")


def _lead_factor(k: float, N: int) -> complex:
	return 2 * np.pi * (k / 2) ** N * (1j**N) / math.factorial(N)


def leading_polynomial(g: HerglotzKernel, k: float, x_c, N: int) -> HomHarmonicPoly:
	"""Degree-N Taylor polynomial at x_c, assuming all lower orders vanish."""
	shifted = translated(g, k, x_c)
	plus, minus = shifted.coefficient(N), shifted.coefficient(-N)
	A = _lead_factor(k, N)
	if N == 0:
		return HomHarmonicPoly(0, A * plus)
	return HomHarmonicPoly(N, A * (plus + minus), A * 1j * (plus - minus))


def _default_truncation(k: float, x_c, N: int) -> int:
	return min(MAX_TRUNCATION, N + int(math.ceil(k * float(np.linalg.norm(x_c)))) + 10)


def _order_spaces(k: float, x_c, N: int, M: int):
	if N < 0:
		raise DimensionError(f"Order must be non-negative, got {N}")
	if N * (N + 1) // 2 >= 2 * M + 1 or N > M:
		raise DimensionError(
			f"Order {N} needs {N * (N + 1) // 2} constraints, only {2 * M + 1} basis functions"
		)
	T = translation_matrix(k, x_c, N, M)
	lower = T[1:-1] if N > 0 else T[:0]
	lead = T[[0, -1]] if N > 0 else T
	if N == 0:
		null = np.eye(2 * M + 1, dtype=complex)
	else:
		null = scipy.linalg.null_space(lower)
	if null.shape[1] == 0:
		raise DimensionError(f"No kernel of order {N} with truncation {M}")
	return null, lead


def _fix_phase(coeffs: np.ndarray) -> np.ndarray:
	pivot = coeffs[np.argmax(np.abs(coeffs))]
	return coeffs * (abs(pivot) / pivot)


def synthesize_vanishing_kernel(k: float, x_c, N: int, M: Optional[int] = None) -> HerglotzKernel:
	"""Normalized kernel whose wave vanishes to order N at x_c, with the largest leading term.

	Among the null space of the lower-order constraints, picks the direction maximizing
	|c'_N|^2 + |c'_{-N}|^2. That is the squared L2 norm of P_N on the unit circle up to a constant,
	so it only stands in for ``HomHarmonicPoly.norm``, which integrates |P_N|.
	"""
	M = _default_truncation(k, x_c, N) if M is None else M
	null, lead = _order_spaces(k, x_c, N, M)
	_, _, vh = np.linalg.svd(lead @ null)
	coeffs = null @ vh[0].conj()
	return normalize(HerglotzKernel(_fix_phase(coeffs)))


def sample_vanishing_kernels(
	k: float, x_c, N: int, M: int, count: int, rng: np.random.Generator
) -> List[HerglotzKernel]:
	"""Extremal kernel of order N followed by random normalized members of the same family."""
	kernels = [synthesize_vanishing_kernel(k, x_c, N, M)]
	null, lead = _order_spaces(k, x_c, N, M)
	while len(kernels) < count:
		y = rng.standard_normal(null.shape[1]) + 1j * rng.standard_normal(null.shape[1])
		coeffs = null @ y
		if np.linalg.norm(lead @ coeffs) <= 1e-6 * np.linalg.norm(coeffs):
			continue
		kernels.append(normalize(HerglotzKernel(coeffs)))
	return kernels
