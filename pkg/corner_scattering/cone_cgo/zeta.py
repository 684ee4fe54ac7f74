"""Admissible complex phase vectors and the CGO curve rho(tau).

In 2D, zeta . zeta = 0 with |Re zeta| = 1 forces Im zeta to be a unit vector perpendicular to
Re zeta, so an admissible zeta is fixed by the angle psi of Re zeta and the orientation of Im zeta.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from corner_scattering.cone_cgo.constants import ZETA_TOL
from corner_scattering.exceptions import DomainError, InvariantViolation
from corner_scattering.geometry.domain import ConeAtVertex


def _angle(v: np.ndarray) -> float:
	return float(np.arctan2(v[1], v[0]))


@dataclass(frozen=True, eq=False)
class AdmissibleZeta:
	zeta: np.ndarray
	delta0: float
	cone: ConeAtVertex

	def __post_init__(self):
		object.__setattr__(self, "zeta", np.asarray(self.zeta, dtype=complex))
		self.validate()

	def validate(self):
		if not 0 < self.delta0 <= 1:
			raise InvariantViolation(f"delta0 must lie in (0, 1], got {self.delta0}")
		z = self.zeta
		if abs(z @ z) > ZETA_TOL:
			raise InvariantViolation(f"zeta . zeta = {z @ z:.3g}, expected 0")
		if abs(np.linalg.norm(z.real) - 1) > ZETA_TOL:
			raise InvariantViolation("|Re zeta| must be 1")
		# linear in omega, so the edges bound the whole cone
		worst = max(float(z.real @ e) for e in self.cone.edge_dirs)
		if worst > -self.delta0 + ZETA_TOL:
			raise InvariantViolation(
				f"Re zeta . omega = {worst:.6g} on a cone edge exceeds -delta0 = {-self.delta0:.6g}"
			)

	@property
	def real(self) -> np.ndarray:
		return self.zeta.real

	@property
	def imag(self) -> np.ndarray:
		return self.zeta.imag

	@property
	def angle(self) -> float:
		return _angle(self.zeta.real)

	@property
	def orientation(self) -> int:
		re, im = self.zeta.real, self.zeta.imag
		return 1 if re[0] * im[1] - re[1] * im[0] > 0 else -1

	def as_dict(self):
		return {
			"zeta": [[float(v.real), float(v.imag)] for v in self.zeta],
			"delta0": self.delta0,
			"angle": self.angle,
			"orientation": self.orientation,
		}


def admissible_arc(cone: ConeAtVertex, delta0: float) -> Tuple[float, float]:
	"""Range of the angle psi of Re zeta with Re zeta . omega <= -delta0 on the cone.

	-Re zeta must lie within arccos(delta0) of every cone direction, so within
	arccos(delta0) - alpha_m of the axis.
	"""
	if not 0 < delta0 <= 1:
		raise DomainError(f"delta0 must lie in (0, 1], got {delta0}")
	width = math.acos(delta0) - cone.half_angle
	if width < 0:
		raise DomainError(
			f"No admissible zeta: half-angle {cone.half_angle:.6g} exceeds arccos(delta0) = "
			f"{math.acos(delta0):.6g}"
		)
	center = _angle(-cone.axis)
	return center - width, center + width


def zeta_from_angle(
	cone: ConeAtVertex, delta0: float, psi: float, orientation: int = 1
) -> AdmissibleZeta:
	lo, hi = admissible_arc(cone, delta0)
	if not lo - ZETA_TOL <= psi <= hi + ZETA_TOL:
		raise DomainError(f"Angle {psi:.6g} outside the admissible arc [{lo:.6g}, {hi:.6g}]")
	if orientation not in (1, -1):
		raise DomainError(f"Orientation must be +1 or -1, got {orientation}")
	re = np.array([math.cos(psi), math.sin(psi)])
	im = orientation * np.array([-re[1], re[0]])
	return AdmissibleZeta(re + 1j * im, delta0, cone)


def make_zeta(cone: ConeAtVertex, alpha_d: float) -> AdmissibleZeta:
	"""Re zeta = -axis, delta0 = cos(alpha_m + alpha_d)."""
	if not alpha_d > 0:
		raise DomainError(f"alpha_d must be positive, got {alpha_d}")
	if cone.half_angle + alpha_d >= math.pi / 2:
		raise DomainError(
			f"alpha_m + alpha_d = {cone.half_angle + alpha_d:.6g} must stay below pi/2"
		)
	delta0 = math.cos(cone.half_angle + alpha_d)
	return zeta_from_angle(cone, delta0, _angle(-cone.axis))


@dataclass(frozen=True, eq=False)
class CgoCurve:
	zeta: AdmissibleZeta
	k: float

	def __post_init__(self):
		if not (np.isfinite(self.k) and self.k > 0):
			raise DomainError(f"Wavenumber must be positive, got {self.k}")

	def rho(self, tau: float) -> np.ndarray:
		return rho_at(self, tau)


def rho_at(curve: CgoCurve, tau: float) -> np.ndarray:
	"""rho(tau) = tau Re zeta + i sqrt(tau^2 + k^2) Im zeta, so rho . rho + k^2 = 0."""
	if not (np.isfinite(tau) and tau > 0):
		raise DomainError(f"tau must be positive, got {tau}")
	z = curve.zeta.zeta
	return tau * z.real + 1j * math.hypot(tau, curve.k) * z.imag
