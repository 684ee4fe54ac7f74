"""Cylinder functions of integer order on the real axis.

Values come from ``scipy.special`` (AMOS/Cephes: power series near the origin, recurrence in the
transition region, Hankel asymptotics for large arguments). This module fixes the argument checks
and builds H^{(1)} as J + iY so that identity holds to the last bit.
"""

from typing import Union

import numpy as np
from scipy import special

from corner_scattering.exceptions import DomainError
from corner_scattering.specfun.constants import MAX_ORDER

Real = Union[float, np.ndarray]


def _check_order(m) -> np.ndarray:
	orders = np.asarray(m)
	if not np.issubdtype(orders.dtype, np.integer):
		if not np.all(np.equal(np.mod(orders, 1), 0)):
			raise DomainError(f"Cylinder order must be an integer, got {m}")
	if np.any(np.abs(orders) > MAX_ORDER):
		raise DomainError(f"Cylinder order {m} outside supported range |m| <= {MAX_ORDER}")
	return orders


def _check_argument(x, positive: bool = False) -> np.ndarray:
	args = np.asarray(x, dtype=float)
	if not np.all(np.isfinite(args)):
		raise DomainError("Bessel argument must be finite")
	if positive and np.any(args <= 0):
		raise DomainError("Y and H^(1) need x > 0 (logarithmic singularity at the origin)")
	if np.any(args < 0):
		raise DomainError("Negative arguments are not supported")
	return args


def bessel_j(m, x) -> Real:
	orders, args = _check_order(m), _check_argument(x)
	return special.jv(orders, args)


def bessel_y(m, x) -> Real:
	orders, args = _check_order(m), _check_argument(x, positive=True)
	return special.yv(orders, args)


def hankel1(m, x):
	return bessel_j(m, x) + 1j * bessel_y(m, x)


def bessel_j_prime(m, x) -> Real:
	"""J_m' = (J_{m-1} - J_{m+1}) / 2."""
	orders, args = _check_order(m), _check_argument(x)
	return special.jvp(orders, args)


def bessel_y_prime(m, x) -> Real:
	orders, args = _check_order(m), _check_argument(x, positive=True)
	return special.yvp(orders, args)


def hankel1_prime(m, x):
	return bessel_j_prime(m, x) + 1j * bessel_y_prime(m, x)


def plane_wave_partial_sum(kr, theta, M: int):
	"""Jacobi-Anger partial sum sum_{|m|<=M} i^m J_m(kr) e^{im theta} of e^{ikr cos theta}."""
	kr = np.asarray(kr, dtype=float)
	theta = np.asarray(theta, dtype=float)
	orders = np.arange(-M, M + 1)
	shape = np.broadcast(kr, theta).shape
	kr_b, theta_b = (np.broadcast_to(a, shape).ravel() for a in (kr, theta))
	terms = (
		(1j ** orders)[:, None]
		* bessel_j(orders[:, None], kr_b[None, :])
		* np.exp(1j * orders[:, None] * theta_b[None, :])
	)
	return terms.sum(axis=0).reshape(shape)
