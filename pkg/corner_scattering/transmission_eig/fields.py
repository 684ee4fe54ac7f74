"""Evaluable field representations for transmission eigenfunctions."""

import math
from dataclasses import dataclass
from typing import Dict

import numpy as np

from corner_scattering.exceptions import DomainError
from corner_scattering.forward_scattering.green import green_of_distance
from corner_scattering.geometry.domain import as_points
from corner_scattering.herglotz import HerglotzKernel
from corner_scattering.specfun import bessel_j, bessel_j_prime, hankel1
from corner_scattering.utils.serialization import complex_pairs


@dataclass(frozen=True, eq=False)
class RadialModeField:
	"""A J_m(k |x - c|) e^{i m theta}."""

	order: int
	k: float
	amplitude: complex = 1.0
	center: tuple = (0.0, 0.0)

	def __post_init__(self):
		if int(self.order) != self.order:
			raise DomainError(f"Mode order must be an integer, got {self.order}")
		if not (np.isfinite(self.k) and self.k > 0):
			raise DomainError(f"Wavenumber must be positive, got {self.k}")
		object.__setattr__(self, "order", int(self.order))
		object.__setattr__(self, "amplitude", complex(self.amplitude))
		object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))

	def _polar(self, points):
		rel = as_points(points) - np.asarray(self.center)
		return np.hypot(rel[:, 0], rel[:, 1]), np.arctan2(rel[:, 1], rel[:, 0])

	def __call__(self, points) -> np.ndarray:
		r, theta = self._polar(points)
		m = self.order
		return self.amplitude * bessel_j(m, self.k * r) * np.exp(1j * m * theta)

	def gradient(self, points) -> np.ndarray:
		r, theta = self._polar(points)
		m, k = self.order, self.k
		phase = self.amplitude * np.exp(1j * m * theta)
		radial = k * bessel_j_prime(m, k * r) * phase
		# i m J_m(kr) / r, finite at r = 0
		angular = np.zeros_like(phase)
		if m:
			angular = 0.5j * k * (bessel_j(m - 1, k * r) + bessel_j(m + 1, k * r)) * phase
		r_hat = np.stack([np.cos(theta), np.sin(theta)], 1)
		t_hat = np.stack([-np.sin(theta), np.cos(theta)], 1)
		return radial[:, None] * r_hat + angular[:, None] * t_hat

	def herglotz_kernel(self, M: int = None) -> HerglotzKernel:
		"""The single-mode kernel whose Herglotz wave is this field; needs a centre at the origin."""
		if self.center != (0.0, 0.0):
			raise DomainError("Only modes centred at the origin have a single-mode Herglotz kernel")
		m = self.order
		M = abs(m) if M is None else M
		return HerglotzKernel.from_modes({m: self.amplitude / (2 * math.pi * 1j**m)}, M)

	def as_dict(self) -> Dict:
		return {
			"kind": "radial_mode",
			"order": self.order,
			"k": self.k,
			"amplitude": [self.amplitude.real, self.amplitude.imag],
			"center": list(self.center),
		}


@dataclass(frozen=True, eq=False)
class SourceField:
	"""sum_j c_j Phi_k(x - y_j) over sources y_j off the domain."""

	k: float
	sources: np.ndarray
	coeffs: np.ndarray

	def __post_init__(self):
		if not (np.isfinite(self.k) and self.k > 0):
			raise DomainError(f"Wavenumber must be positive, got {self.k}")
		sources = as_points(self.sources)
		coeffs = np.asarray(self.coeffs, dtype=complex).ravel()
		if len(coeffs) != len(sources):
			raise DomainError(f"{len(coeffs)} coefficients for {len(sources)} sources")
		object.__setattr__(self, "sources", sources)
		object.__setattr__(self, "coeffs", coeffs)

	def _offsets(self, points):
		diff = as_points(points)[:, None, :] - self.sources[None, :, :]
		return diff, np.hypot(diff[..., 0], diff[..., 1])

	def __call__(self, points) -> np.ndarray:
		_, r = self._offsets(points)
		return green_of_distance(self.k, r) @ self.coeffs

	def gradient(self, points) -> np.ndarray:
		diff, r = self._offsets(points)
		scale = (-0.25j * self.k * hankel1(1, self.k * r) / r) * self.coeffs[None, :]
		return np.einsum("ps,psd->pd", scale, diff)

	def scaled(self, factor: complex) -> "SourceField":
		return SourceField(self.k, self.sources, self.coeffs * factor)

	def as_dict(self) -> Dict:
		return {
			"kind": "sources",
			"k": self.k,
			"sources": self.sources.tolist(),
			"coeffs": complex_pairs(self.coeffs),
		}
