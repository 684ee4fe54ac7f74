import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List

import numpy as np
from numpy.polynomial.legendre import leggauss

from corner_scattering.exceptions import DomainError, ResourceError
from corner_scattering.geometry.constants import (
	BALL_ANGULAR_NODES,
	BALL_ANGULAR_PANELS,
	BALL_RADIAL_NODES,
	DEFAULT_MAX_NODES,
)
from corner_scattering.geometry.domain import DiskDomain, Domain, PolygonDomain

logger = logging.getLogger(__name__)

FieldSampler = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class QuadratureGrid:
	nodes: np.ndarray
	weights: np.ndarray
	h: float

	@property
	def size(self) -> int:
		return len(self.weights)

	@property
	def area(self) -> float:
		return float(np.sum(self.weights))

	def integrate(self, values) -> complex:
		return np.sum(self.weights * np.asarray(values))

	def l2_norm(self, values) -> float:
		return float(np.sqrt(np.sum(self.weights * np.abs(np.asarray(values)) ** 2)))

	def as_dict(self) -> Dict:
		return {"h": self.h, "nodes": self.nodes.tolist(), "weights": self.weights.tolist()}


def _clip(polygon: List[np.ndarray], p: np.ndarray, normal: np.ndarray) -> List[np.ndarray]:
	"""Sutherland-Hodgman step: keep the part of ``polygon`` with (x - p).normal <= 0."""
	kept = []
	n = len(polygon)
	for i in range(n):
		cur, nxt = polygon[i], polygon[(i + 1) % n]
		d_cur, d_nxt = (cur - p) @ normal, (nxt - p) @ normal
		if d_cur <= 0:
			kept.append(cur)
		if (d_cur < 0 < d_nxt) or (d_nxt < 0 < d_cur):
			kept.append(cur + (d_cur / (d_cur - d_nxt)) * (nxt - cur))
	return kept


def _area_and_centroid(polygon: List[np.ndarray]):
	pts = np.array(polygon)
	x, y = pts[:, 0], pts[:, 1]
	xn, yn = np.roll(x, -1), np.roll(y, -1)
	cross = x * yn - xn * y
	area = 0.5 * np.sum(cross)
	if area <= 0:
		return 0.0, None
	cx = np.sum((x + xn) * cross) / (6 * area)
	cy = np.sum((y + yn) * cross) / (6 * area)
	return float(area), np.array([cx, cy])


def _polygon_grid(domain: PolygonDomain, target_h: float, max_nodes: int) -> QuadratureGrid:
	lo, hi = domain.points.min(axis=0), domain.points.max(axis=0)
	span = hi - lo
	nx, ny = (max(1, int(np.ceil(s / target_h - 1e-12))) for s in span)
	if nx * ny > max_nodes:
		raise ResourceError(f"Grid of {nx}x{ny} cells exceeds the node cap {max_nodes}")
	dx, dy = span[0] / nx, span[1] / ny

	x0 = lo[0] + dx * np.arange(nx)
	y0 = lo[1] + dy * np.arange(ny)
	X, Y = np.meshgrid(x0, y0, indexing="ij")
	X, Y = X.ravel(), Y.ravel()
	corners = np.stack(
		[
			np.stack([X, Y], 1),
			np.stack([X + dx, Y], 1),
			np.stack([X + dx, Y + dy], 1),
			np.stack([X, Y + dy], 1),
		],
		axis=1,
	)
	inside = domain.contains(corners.reshape(-1, 2), tol=0.0).reshape(-1, 4)
	full = inside.all(axis=1)
	outside = np.zeros(len(full), dtype=bool)
	for p, normal in zip(domain.points, domain.outward_normals):
		outside |= np.all((corners - p) @ normal >= 0, axis=1)

	nodes = [np.stack([X[full] + dx / 2, Y[full] + dy / 2], 1)]
	weights = [np.full(int(full.sum()), dx * dy)]

	cut_nodes, cut_weights = [], []
	edges = list(zip(domain.points, domain.outward_normals))
	for cell in np.flatnonzero(~full & ~outside):
		piece = list(corners[cell])
		for p, normal in edges:
			piece = _clip(piece, p, normal)
			if len(piece) < 3:
				break
		if len(piece) < 3:
			continue
		area, centroid = _area_and_centroid(piece)
		if area > 1e-14 * dx * dy:
			cut_nodes.append(centroid)
			cut_weights.append(area)

	if cut_nodes:
		nodes.append(np.array(cut_nodes))
		weights.append(np.array(cut_weights))
	return QuadratureGrid(np.vstack(nodes), np.concatenate(weights), float(max(dx, dy)))


def _disk_grid(domain: DiskDomain, target_h: float, max_nodes: int) -> QuadratureGrid:
	n_rings = max(1, int(np.ceil(domain.radius / target_h - 1e-12)))
	dr = domain.radius / n_rings
	radii = (np.arange(n_rings) + 0.5) * dr
	counts = np.maximum(4, np.ceil(2 * np.pi * radii / dr - 1e-12).astype(int))
	if counts.sum() > max_nodes:
		raise ResourceError(f"Grid of {counts.sum()} nodes exceeds the node cap {max_nodes}")

	nodes, weights = [], []
	for r, count in zip(radii, counts):
		theta = 2 * np.pi * (np.arange(count) + 0.5) / count
		nodes.append(domain.center_point + r * np.stack([np.cos(theta), np.sin(theta)], 1))
		weights.append(np.full(count, r * dr * 2 * np.pi / count))
	return QuadratureGrid(np.vstack(nodes), np.concatenate(weights), float(dr))


def build_grid(
	domain: Domain, target_h: float, max_nodes: int = DEFAULT_MAX_NODES
) -> QuadratureGrid:
	"""Composite midpoint rule: clipped Cartesian cells on polygons, annular sectors on disks.

	Cut cells contribute their exact area at their centroid, so the weights sum to the area.
	"""
	if not (np.isfinite(target_h) and 0 < target_h < domain.diameter):
		raise DomainError(f"target_h must lie in (0, diameter={domain.diameter}), got {target_h}")
	if isinstance(domain, DiskDomain):
		return _disk_grid(domain, target_h, max_nodes)
	domain.validate()
	return _polygon_grid(domain, target_h, max_nodes)


@dataclass
class BallAverage:
	value: float
	radius: float
	exceeds_local_reach: bool = False
	warnings: List[str] = field(default_factory=list)


def _composite_gauss(lo: float, hi: float, panels: int, per_panel: int):
	x, w = leggauss(per_panel)
	edges = np.linspace(lo, hi, panels + 1)
	half = 0.5 * np.diff(edges)
	mid = 0.5 * (edges[:-1] + edges[1:])
	nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
	weights = (half[:, None] * w[None, :]).ravel()
	return nodes, weights


def ball_average(
	field: FieldSampler,
	center,
	radius: float,
	domain: Domain,
	n_radial: int = BALL_RADIAL_NODES,
	n_angular: int = BALL_ANGULAR_NODES,
	panels: int = BALL_ANGULAR_PANELS,
) -> BallAverage:
	"""(1 / |B(center, r)|) * integral of |field| over B(center, r), field extended by zero off Omega.

	Polar Gauss-Legendre rule restricted to the tangent cone at ``center``; each ray stops where it
	leaves the domain.
	"""
	if not (np.isfinite(radius) and radius > 0):
		raise DomainError(f"Ball radius must be positive, got {radius}")
	center = np.asarray(center, dtype=float)
	lo, hi = domain.tangent_interval(center)

	theta, w_theta = _composite_gauss(lo, hi, panels, n_angular)
	dirs = np.stack([np.cos(theta), np.sin(theta)], 1)
	exits = domain.exit_distance(center, dirs)
	reach = np.minimum(exits, radius)

	x, w = leggauss(n_radial)
	s = 0.5 * reach[:, None] * (x[None, :] + 1)
	w_s = 0.5 * reach[:, None] * w[None, :]
	points = center + s[..., None] * dirs[:, None, :]
	values = np.abs(np.asarray(field(points.reshape(-1, 2)))).reshape(s.shape)

	integral = float(np.sum(w_theta[:, None] * w_s * s * values))
	result = BallAverage(integral / (np.pi * radius**2), float(radius))
	if np.any(exits < radius * (1 - 1e-12)):
		result.exceeds_local_reach = True
		result.warnings.append(
			f"radius {radius:.6g} exceeds the distance {float(exits.min()):.6g} to the far boundary"
		)
		logger.warning(result.warnings[-1])
	return result
