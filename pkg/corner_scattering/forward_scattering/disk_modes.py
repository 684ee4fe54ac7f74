"""Separated-variables scattering by a disk with constant real contrast.

About the disk centre the incident Herglotz wave is sum alpha_n J_n(kr) e^{in phi}, with
alpha_n = 2 pi i^n c'_n for the translated kernel c'. Inside the field is sum beta_n J_n(k n_r r)
e^{in phi}, n_r = sqrt(1 + V), outside the scattered field is sum gamma_n H_n(kr) e^{in phi}, and
continuity of u and d_r u at r = a fixes beta_n and gamma_n mode by mode.
"""

import math
from dataclasses import dataclass

import numpy as np

from corner_scattering.exceptions import DomainError
from corner_scattering.forward_scattering.constants import DEFAULT_FAR_FIELD_DIRECTIONS
from corner_scattering.forward_scattering.far_field import FarFieldPattern, equispaced_angles
from corner_scattering.geometry.domain import DiskDomain, as_points
from corner_scattering.geometry.potential import PotentialSpec
from corner_scattering.herglotz import HerglotzKernel, translated
from corner_scattering.specfun import bessel_j, bessel_j_prime, hankel1, hankel1_prime

# modes kept beyond k * max(1, n_r) * a; the coupling decays super-exponentially past that
MODE_MARGIN = 30


@dataclass
class DiskScattering:
	spec: PotentialSpec
	k: float
	refractive_index: float
	orders: np.ndarray
	incident: np.ndarray
	interior: np.ndarray
	scattered: np.ndarray

	@property
	def center(self) -> np.ndarray:
		return self.spec.domain.center_point

	@property
	def radius(self) -> float:
		return self.spec.domain.radius

	def _local(self, points):
		rel = as_points(points) - self.center
		return np.hypot(rel[:, 0], rel[:, 1]), np.arctan2(rel[:, 1], rel[:, 0])

	def _series(self, radial, phi, coeffs) -> np.ndarray:
		return (radial * coeffs[None, :] * np.exp(1j * np.multiply.outer(phi, self.orders))).sum(1)

	def incident_at(self, points) -> np.ndarray:
		"""Truncated at the modes kept for the disk, so only accurate within a few wavelengths of it."""
		r, phi = self._local(points)
		radial = bessel_j(self.orders[None, :], self.k * r[:, None])
		return self._series(radial, phi, self.incident)

	def total_field_at(self, points) -> np.ndarray:
		r, phi = self._local(points)
		inside = r <= self.radius
		out = np.empty(len(r), dtype=complex)
		if np.any(inside):
			radial = bessel_j(self.orders[None, :], self.k * self.refractive_index * r[inside, None])
			out[inside] = self._series(radial, phi[inside], self.interior)
		if np.any(~inside):
			pts = as_points(points)[~inside]
			out[~inside] = self.incident_at(pts) + self.scattered_field_at(pts)
		return out

	def scattered_field_at(self, points) -> np.ndarray:
		"""u^s outside the closed disk."""
		r, phi = self._local(points)
		if np.any(r <= self.radius):
			raise DomainError("The scattered-field series only converges outside the disk")
		radial = hankel1(self.orders[None, :], self.k * r[:, None])
		return self._series(radial, phi, self.scattered)

	def far_field(self, n_directions: int = DEFAULT_FAR_FIELD_DIRECTIONS) -> FarFieldPattern:
		"""u^s_inf(t) = e^{-ik t.c} sum gamma_n sqrt(2 / (pi k)) (-i)^n e^{-i pi/4} e^{in theta}."""
		angles = equispaced_angles(n_directions)
		cx, cy = self.center
		shift = np.exp(-1j * self.k * (np.cos(angles) * cx + np.sin(angles) * cy))
		modal = (
			self.scattered
			* math.sqrt(2 / (math.pi * self.k))
			* (-1j) ** self.orders
			* np.exp(-0.25j * math.pi)
		)
		values = shift * (np.exp(1j * np.multiply.outer(angles, self.orders)) @ modal)
		return FarFieldPattern(angles, values)


def scatter_disk(spec: PotentialSpec, kernel: HerglotzKernel, k: float) -> DiskScattering:
	domain = spec.domain
	if not isinstance(domain, DiskDomain):
		raise DomainError("Modal scattering needs a disk domain")
	V = spec.constant_value
	if V is None or V.imag != 0 or V.real <= -1:
		raise DomainError(f"Modal scattering needs a constant real contrast V > -1, got {V}")
	if not (np.isfinite(k) and k > 0):
		raise DomainError(f"Wavenumber must be positive, got {k}")

	n_r = math.sqrt(1 + V.real)
	a = domain.radius
	shifted = translated(kernel, k, domain.center_point)
	n_max = min(shifted.M, int(math.ceil(k * max(1.0, n_r) * a)) + MODE_MARGIN)
	orders = np.arange(-n_max, n_max + 1)
	alpha = 2 * np.pi * (1j**orders) * shifted.coeffs[shifted.M - n_max : shifted.M + n_max + 1]

	J, Jp = bessel_j(orders, k * a), bessel_j_prime(orders, k * a)
	H, Hp = hankel1(orders, k * a), hankel1_prime(orders, k * a)
	Jn, Jnp = bessel_j(orders, k * n_r * a), bessel_j_prime(orders, k * n_r * a)

	gamma = alpha * (n_r * J * Jnp - Jp * Jn) / (Hp * Jn - n_r * H * Jnp)
	# match the better conditioned of the two interface conditions
	use_value = np.abs(Jn) >= n_r * np.abs(Jnp)
	beta = np.where(
		use_value,
		(alpha * J + gamma * H) / np.where(use_value, Jn, 1.0),
		(alpha * Jp + gamma * Hp) / np.where(use_value, 1.0, n_r * Jnp),
	)
	return DiskScattering(spec, float(k), n_r, orders, alpha, beta, gamma)
