"""Herglotz kernels g(theta) = sum_m c_m e^{i m theta} and the waves they generate.

u(x) = int_{S^1} e^{ik theta.x} g(theta) dsigma is evaluated in closed form through the
Jacobi-Anger expansion, u(x) = 2 pi sum_m c_m i^m J_m(k|x|) e^{i m phi_x}.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence

import numpy as np

from corner_scattering.exceptions import DegenerateInputError, DomainError, SchemaError
from corner_scattering.geometry.domain import as_points
from corner_scattering.herglotz.constants import (
	MAX_DERIVATIVE_ORDER,
	MAX_TRUNCATION,
	TRANSLATION_PADDING,
)
from corner_scattering.specfun import bessel_j
from corner_scattering.specfun.constants import MAX_ORDER
from corner_scattering.utils.serialization import complex_pairs


@dataclass(frozen=True, eq=False)
class HerglotzKernel:
	coeffs: np.ndarray

	def __post_init__(self):
		arr = np.array(self.coeffs, dtype=complex).ravel()
		if arr.size % 2 != 1:
			raise DomainError("Kernel needs 2M + 1 coefficients for m = -M..M")
		if (arr.size - 1) // 2 > MAX_TRUNCATION:
			raise DomainError(f"Truncation above the cap M <= {MAX_TRUNCATION}")
		if not np.all(np.isfinite(arr)):
			raise DomainError("Kernel coefficients must be finite")
		arr.setflags(write=False)
		object.__setattr__(self, "coeffs", arr)

	@classmethod
	def zeros(cls, M: int) -> "HerglotzKernel":
		return cls(np.zeros(2 * M + 1, dtype=complex))

	@classmethod
	def from_modes(cls, modes: Dict[int, complex], M: Optional[int] = None) -> "HerglotzKernel":
		M = max((abs(m) for m in modes), default=0) if M is None else M
		coeffs = np.zeros(2 * M + 1, dtype=complex)
		for m, c in modes.items():
			if abs(m) > M:
				raise DomainError(f"Mode {m} outside truncation {M}")
			coeffs[m + M] = c
		return cls(coeffs)

	@classmethod
	def from_dict(cls, document: Any, path: str = "kernel") -> "HerglotzKernel":
		if not isinstance(document, dict):
			raise SchemaError(path, "expected an object with M and coeffs")
		M, pairs = document.get("M"), document.get("coeffs")
		if not isinstance(M, int) or M < 0:
			raise SchemaError(f"{path}.M", "expected a non-negative integer")
		if not isinstance(pairs, list) or len(pairs) != 2 * M + 1:
			raise SchemaError(f"{path}.coeffs", f"expected {2 * M + 1} [re, im] pairs")
		values = []
		for i, pair in enumerate(pairs):
			if not isinstance(pair, (list, tuple)) or len(pair) != 2:
				raise SchemaError(f"{path}.coeffs[{i}]", "expected [re, im]")
			values.append(complex(float(pair[0]), float(pair[1])))
		return cls(np.array(values))

	@property
	def M(self) -> int:
		return (self.coeffs.size - 1) // 2

	@property
	def orders(self) -> np.ndarray:
		return np.arange(-self.M, self.M + 1)

	@property
	def l2_norm(self) -> float:
		return float(np.sqrt(2 * np.pi * np.sum(np.abs(self.coeffs) ** 2)))

	def coefficient(self, m: int) -> complex:
		return complex(self.coeffs[m + self.M]) if abs(m) <= self.M else 0j

	def padded(self, M: int) -> "HerglotzKernel":
		if M < self.M:
			raise DomainError(f"Cannot pad truncation {self.M} down to {M}")
		coeffs = np.zeros(2 * M + 1, dtype=complex)
		coeffs[M - self.M : M + self.M + 1] = self.coeffs
		return HerglotzKernel(coeffs)

	def samples(self, theta) -> np.ndarray:
		theta = np.asarray(theta, dtype=float)
		return np.exp(1j * np.multiply.outer(theta, self.orders)) @ self.coeffs

	def scaled(self, factor: complex) -> "HerglotzKernel":
		return HerglotzKernel(self.coeffs * factor)

	def __add__(self, other: "HerglotzKernel") -> "HerglotzKernel":
		M = max(self.M, other.M)
		return HerglotzKernel(self.padded(M).coeffs + other.padded(M).coeffs)

	def as_dict(self) -> Dict[str, Any]:
		return {"M": self.M, "coeffs": complex_pairs(self.coeffs)}


def _polar(points) -> Sequence[np.ndarray]:
	pts = as_points(points)
	return np.hypot(pts[:, 0], pts[:, 1]), np.arctan2(pts[:, 1], pts[:, 0])


def _check_wavenumber(k: float):
	if not (np.isfinite(k) and k > 0):
		raise DomainError(f"Wavenumber must be positive, got {k}")


def herglotz_basis(k: float, points, M: int) -> np.ndarray:
	"""Columns 2 pi i^m J_m(k|x|) e^{i m phi_x}, m = -M..M, so that u = basis @ coeffs."""
	_check_wavenumber(k)
	r, phi = _polar(points)
	orders = np.arange(-M, M + 1)
	return (
		2
		* np.pi
		* (1j**orders)[None, :]
		* bessel_j(orders[None, :], k * r[:, None])
		* np.exp(1j * phi[:, None] * orders[None, :])
	)


def evaluate(g: HerglotzKernel, k: float, points) -> np.ndarray:
	return herglotz_basis(k, points, g.M) @ g.coeffs


def incident_from_kernel(g: HerglotzKernel, k: float):
	"""Sampler ``points -> u^i(points)`` for the Herglotz wave of ``g``."""
	return lambda points: evaluate(g, k, points)


def plane_wave_kernel(direction_angle: float, M: int) -> HerglotzKernel:
	"""Truncated kernel of e^{ik d.x}, d = (cos a, sin a): c_m = e^{-i m a} / (2 pi)."""
	orders = np.arange(-M, M + 1)
	return HerglotzKernel(np.exp(-1j * orders * direction_angle) / (2 * np.pi))


def normalize(g: HerglotzKernel) -> HerglotzKernel:
	norm = g.l2_norm
	if norm == 0:
		raise DegenerateInputError("Cannot normalize the zero kernel")
	if abs(norm - 1.0) <= 4 * np.finfo(float).eps:
		return g
	return g.scaled(1.0 / norm)


def _quadrature_size(g: HerglotzKernel, k: float, x_c, order: int) -> int:
	reach = int(math.ceil(k * float(np.linalg.norm(x_c))))
	return 2 * (g.M + order + reach + 40)


def _derivative_integrals(g: HerglotzKernel, k: float, x_c, gammas) -> np.ndarray:
	"""Trapezoid rule for int (ik theta)^gamma e^{ik theta.x_c} g(theta) dsigma."""
	x_c = np.asarray(x_c, dtype=float)
	order = max(sum(gamma) for gamma in gammas)
	L = _quadrature_size(g, k, x_c, order)
	theta = 2 * np.pi * np.arange(L) / L
	c, s = np.cos(theta), np.sin(theta)
	weight = np.exp(1j * k * (c * x_c[0] + s * x_c[1])) * g.samples(theta) * (2 * np.pi / L)
	values = []
	for a, b in gammas:
		values.append((1j * k) ** (a + b) * np.sum(c**a * s**b * weight))
	return np.array(values)


def derivative_at(g: HerglotzKernel, k: float, x_c, gamma) -> complex:
	_check_wavenumber(k)
	a, b = (int(v) for v in gamma)
	if a < 0 or b < 0:
		raise DomainError(f"Multi-index must be non-negative, got {gamma}")
	if a + b > MAX_DERIVATIVE_ORDER:
		raise DomainError(f"|gamma| = {a + b} exceeds the cap {MAX_DERIVATIVE_ORDER}")
	return complex(_derivative_integrals(g, k, x_c, [(a, b)])[0])


def taylor_coefficients(g: HerglotzKernel, k: float, x_c, N: int) -> np.ndarray:
	"""Degree-N Taylor coefficients of u^i at x_c.

	Entry j belongs to (x - x_c)^{N-j} (y - y_c)^j.
	"""
	_check_wavenumber(k)
	if N > MAX_DERIVATIVE_ORDER:
		raise DomainError(f"Order {N} exceeds the cap {MAX_DERIVATIVE_ORDER}")
	gammas = [(N - j, j) for j in range(N + 1)]
	factorials = np.array([math.factorial(a) * math.factorial(b) for a, b in gammas], dtype=float)
	return _derivative_integrals(g, k, x_c, gammas) / factorials


def translation_matrix(k: float, x_c, M_out: int, M_in: int) -> np.ndarray:
	"""T with (T c)_m' the coefficients of the same wave expanded about x_c.

	T[m', n] = i^{m'-n} J_{m'-n}(k|x_c|) e^{-i(m'-n) phi_c} (Graf addition theorem).
	"""
	x_c = np.asarray(x_c, dtype=float)
	rho = float(np.linalg.norm(x_c))
	phi = float(np.arctan2(x_c[1], x_c[0]))
	d = np.subtract.outer(np.arange(-M_out, M_out + 1), np.arange(-M_in, M_in + 1))
	within = np.abs(d) <= MAX_ORDER
	bessel = np.zeros(d.shape)
	bessel[within] = bessel_j(d[within], k * rho)
	return np.where(within, (1j**d) * bessel * np.exp(-1j * d * phi), 0.0)


def translated(g: HerglotzKernel, k: float, x_c, M_out: Optional[int] = None) -> HerglotzKernel:
	"""Kernel g'(theta) = e^{ik theta.x_c} g(theta) with u_g'(y) = u_g(x_c + y)."""
	_check_wavenumber(k)
	if M_out is None:
		reach = int(math.ceil(k * float(np.linalg.norm(x_c))))
		M_out = min(MAX_TRUNCATION, g.M + reach + TRANSLATION_PADDING)
	return HerglotzKernel(translation_matrix(k, x_c, M_out, g.M) @ g.coeffs)


def taylor_remainder_bound(g: HerglotzKernel, k: float, N: int) -> float:
	"""C with |u(x) - T_N(x)| <= C |x - x_c|^{N+1}, T_N the degree-N Taylor polynomial at any x_c."""
	inverse_factorials = sum(
		1.0 / (math.factorial(j) * math.factorial(N + 1 - j)) for j in range(N + 2)
	)
	return inverse_factorials * k ** (N + 1) * math.sqrt(2 * math.pi) * g.l2_norm
