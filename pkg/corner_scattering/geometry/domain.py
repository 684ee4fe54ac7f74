from dataclasses import dataclass
from typing import ClassVar, Dict, List, Tuple, Union

import numpy as np

from corner_scattering.exceptions import DomainError, GeometryError, InvariantViolation
from corner_scattering.geometry.constants import (
	BOUNDARY_TOL,
	CONVEXITY_TOL,
	DOMAIN_OF_INTEREST_RADIUS,
)

Point = Tuple[float, float]


def as_points(points) -> np.ndarray:
	arr = np.asarray(points, dtype=float)
	if arr.ndim == 1:
		arr = arr.reshape(1, 2)
	if arr.ndim != 2 or arr.shape[1] != 2:
		raise DomainError(f"Expected 2D points, got array of shape {arr.shape}")
	return arr


def _cross(u: np.ndarray, v: np.ndarray) -> np.ndarray:
	return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def _angle(v: np.ndarray) -> float:
	return float(np.arctan2(v[1], v[0]))


@dataclass(frozen=True, eq=False)
class PolygonDomain:
	"""Convex polygon, vertices listed counter-clockwise.

	Construction only checks the vertex list; ``validate`` enforces convexity, orientation and
	containment in B_R so that ill-formed input can still be diagnosed.
	"""

	vertices: Tuple[Point, ...]
	kind: ClassVar[str] = "polygon"

	def __post_init__(self):
		verts = tuple((float(x), float(y)) for x, y in self.vertices)
		if len(verts) < 3:
			raise GeometryError("A polygon needs at least 3 vertices")
		if not np.all(np.isfinite(verts)):
			raise GeometryError("Polygon vertices must be finite")
		object.__setattr__(self, "vertices", verts)

	@property
	def points(self) -> np.ndarray:
		return np.array(self.vertices, dtype=float)

	@property
	def n_vertices(self) -> int:
		return len(self.vertices)

	@property
	def edges(self) -> List[Tuple[np.ndarray, np.ndarray]]:
		pts = self.points
		return [(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))]

	@property
	def area(self) -> float:
		x, y = self.points.T
		return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

	@property
	def perimeter(self) -> float:
		return float(sum(np.linalg.norm(q - p) for p, q in self.edges))

	@property
	def diameter(self) -> float:
		pts = self.points
		diffs = pts[:, None, :] - pts[None, :, :]
		return float(np.max(np.linalg.norm(diffs, axis=-1)))

	@property
	def centroid(self) -> np.ndarray:
		return self.points.mean(axis=0)

	@property
	def outward_normals(self) -> np.ndarray:
		pts = self.points
		edges = np.roll(pts, -1, axis=0) - pts
		normals = np.stack([edges[:, 1], -edges[:, 0]], axis=1)
		return normals / np.linalg.norm(normals, axis=1, keepdims=True)

	def turn_cross_products(self) -> np.ndarray:
		pts = self.points
		edges = np.roll(pts, -1, axis=0) - pts
		return _cross(edges, np.roll(edges, -1, axis=0))

	def is_strictly_convex(self) -> bool:
		scale = self.diameter**2
		return bool(np.all(self.turn_cross_products() > CONVEXITY_TOL * scale))

	def validate(self, radius: float = DOMAIN_OF_INTEREST_RADIUS) -> None:
		crosses = self.turn_cross_products()
		scale = self.diameter**2
		if np.all(crosses < -CONVEXITY_TOL * scale):
			raise GeometryError("Polygon vertices are clockwise, expected counter-clockwise order")
		if not np.all(crosses > CONVEXITY_TOL * scale):
			raise GeometryError("Polygon is not strictly convex")
		if radius <= 1:
			raise GeometryError(f"Domain-of-interest radius must exceed 1, got {radius}")
		if np.max(np.linalg.norm(self.points, axis=1)) >= radius:
			raise GeometryError(f"Polygon is not contained in the ball of radius {radius}")

	def contains(self, points, tol: float = BOUNDARY_TOL) -> np.ndarray:
		"""Closed-polygon membership; ``tol`` is relative to the diameter."""
		pts = as_points(points)
		slack = tol * self.diameter
		inside = np.ones(len(pts), dtype=bool)
		for p, normal in zip(self.points, self.outward_normals):
			inside &= (pts - p) @ normal <= slack
		return inside

	def exit_distance(self, x0, directions) -> np.ndarray:
		"""Distance from ``x0`` along each unit direction to the boundary."""
		x0 = np.asarray(x0, dtype=float)
		dirs = as_points(directions)
		distances = np.full(len(dirs), np.inf)
		for p, normal in zip(self.points, self.outward_normals):
			gap = max(-float((x0 - p) @ normal), 0.0)
			speed = dirs @ normal
			with np.errstate(divide="ignore"):
				candidate = np.where(speed > 0, gap / np.where(speed > 0, speed, 1.0), np.inf)
			distances = np.minimum(distances, candidate)
		return distances

	def vertex_index(self, x0, tol: float = BOUNDARY_TOL):
		x0 = np.asarray(x0, dtype=float)
		dist = np.linalg.norm(self.points - x0, axis=1)
		i = int(np.argmin(dist))
		return i if dist[i] <= tol * self.diameter else None

	def tangent_interval(self, x0, tol: float = BOUNDARY_TOL) -> Tuple[float, float]:
		"""Angular interval [lo, hi] of directions pointing from ``x0`` into the polygon."""
		x0 = np.asarray(x0, dtype=float)
		pts = self.points
		n = len(pts)
		i = self.vertex_index(x0, tol)
		if i is not None:
			e1 = pts[(i + 1) % n] - pts[i]
			e2 = pts[(i - 1) % n] - pts[i]
			opening = float(np.arctan2(_cross(e1, e2), e1 @ e2))
			if opening <= 0:
				raise InvariantViolation(f"Reflex or straight angle at vertex {i}")
			lo = _angle(e1)
			return lo, lo + opening

		slack = tol * self.diameter
		for p, q in self.edges:
			edge = q - p
			length = np.linalg.norm(edge)
			t = float((x0 - p) @ edge) / length**2
			if abs(float(_cross(edge, x0 - p))) / length <= slack and 0 <= t <= 1:
				lo = _angle(edge)
				return lo, lo + np.pi

		if self.contains(x0[None, :])[0]:
			return 0.0, 2 * np.pi
		raise GeometryError(f"Point {tuple(x0)} lies outside the polygon")

	def boundary_points(self, n: int) -> Tuple[np.ndarray, np.ndarray]:
		"""``n`` points equispaced in arclength (cell midpoints, never a vertex) and outward normals."""
		pts = self.points
		lengths = np.array([np.linalg.norm(q - p) for p, q in self.edges])
		offsets = np.concatenate([[0.0], np.cumsum(lengths)])
		s = (np.arange(n) + 0.5) * offsets[-1] / n
		edge_idx = np.searchsorted(offsets, s, side="right") - 1
		edge_idx = np.clip(edge_idx, 0, len(pts) - 1)
		t = (s - offsets[edge_idx]) / lengths[edge_idx]
		starts = pts[edge_idx]
		ends = np.roll(pts, -1, axis=0)[edge_idx]
		points = starts + t[:, None] * (ends - starts)
		return points, self.outward_normals[edge_idx]

	def scaled(self, factor: float) -> "PolygonDomain":
		return PolygonDomain(tuple(map(tuple, self.points * factor)))

	def as_dict(self) -> Dict:
		return {"kind": self.kind, "vertices": [list(v) for v in self.vertices]}


@dataclass(frozen=True, eq=False)
class DiskDomain:
	center: Point = (0.0, 0.0)
	radius: float = 1.0
	kind: ClassVar[str] = "disk"

	def __post_init__(self):
		object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))
		object.__setattr__(self, "radius", float(self.radius))
		if not (np.isfinite(self.radius) and self.radius > 0):
			raise GeometryError(f"Disk radius must be positive, got {self.radius}")

	@property
	def center_point(self) -> np.ndarray:
		return np.array(self.center, dtype=float)

	@property
	def area(self) -> float:
		return float(np.pi * self.radius**2)

	@property
	def perimeter(self) -> float:
		return float(2 * np.pi * self.radius)

	@property
	def diameter(self) -> float:
		return 2 * self.radius

	@property
	def centroid(self) -> np.ndarray:
		return self.center_point

	def validate(self, radius: float = DOMAIN_OF_INTEREST_RADIUS) -> None:
		if np.linalg.norm(self.center_point) + self.radius >= radius:
			raise GeometryError(f"Disk is not contained in the ball of radius {radius}")

	def contains(self, points, tol: float = BOUNDARY_TOL) -> np.ndarray:
		pts = as_points(points)
		return np.linalg.norm(pts - self.center_point, axis=1) <= self.radius * (1 + 2 * tol)

	def exit_distance(self, x0, directions) -> np.ndarray:
		w = np.asarray(x0, dtype=float) - self.center_point
		dirs = as_points(directions)
		b = dirs @ w
		c = float(w @ w) - self.radius**2
		return -b + np.sqrt(np.maximum(b * b - c, 0.0))

	def tangent_interval(self, x0, tol: float = BOUNDARY_TOL) -> Tuple[float, float]:
		w = np.asarray(x0, dtype=float) - self.center_point
		dist = float(np.linalg.norm(w))
		if abs(dist - self.radius) <= tol * self.diameter:
			inward = _angle(-w)
			return inward - np.pi / 2, inward + np.pi / 2
		if dist < self.radius:
			return 0.0, 2 * np.pi
		raise GeometryError(f"Point {tuple(x0)} lies outside the disk")

	def boundary_points(self, n: int) -> Tuple[np.ndarray, np.ndarray]:
		theta = 2 * np.pi * np.arange(n) / n
		normals = np.stack([np.cos(theta), np.sin(theta)], axis=1)
		return self.center_point + self.radius * normals, normals

	def scaled(self, factor: float) -> "DiskDomain":
		return DiskDomain(tuple(self.center_point * factor), self.radius * factor)

	def as_dict(self) -> Dict:
		return {"kind": self.kind, "center": list(self.center), "radius": self.radius}


Domain = Union[PolygonDomain, DiskDomain]


@dataclass(frozen=True, eq=False)
class ConeAtVertex:
	"""Open sector {apex + s(cos t, sin t): s > 0, t in (theta1, theta1 + 2 half_angle)}."""

	apex: np.ndarray
	edge_dirs: Tuple[np.ndarray, np.ndarray]
	half_angle: float
	axis: np.ndarray

	def __post_init__(self):
		if not 0 < 2 * self.half_angle < np.pi:
			raise InvariantViolation(
				f"Cone opening {2 * self.half_angle} must lie strictly between 0 and pi"
			)

	@classmethod
	def from_edges(cls, apex, first, second) -> "ConeAtVertex":
		"""Cone swept counter-clockwise from ``first`` to ``second``."""
		e1 = np.asarray(first, dtype=float)
		e2 = np.asarray(second, dtype=float)
		e1, e2 = e1 / np.linalg.norm(e1), e2 / np.linalg.norm(e2)
		opening = float(np.arctan2(_cross(e1, e2), e1 @ e2))
		if opening <= 0:
			raise InvariantViolation("Reflex or straight angle, not a convex corner")
		bisector = e1 + e2
		return cls(
			apex=np.asarray(apex, dtype=float),
			edge_dirs=(e1, e2),
			half_angle=opening / 2,
			axis=bisector / np.linalg.norm(bisector),
		)

	@classmethod
	def sector(cls, theta1: float, theta2: float, apex=(0.0, 0.0)) -> "ConeAtVertex":
		if not 0 < theta2 - theta1 < np.pi:
			raise InvariantViolation(f"Sector ({theta1}, {theta2}) must open by less than pi")
		mid = 0.5 * (theta1 + theta2)
		return cls(
			apex=np.asarray(apex, dtype=float),
			edge_dirs=(
				np.array([np.cos(theta1), np.sin(theta1)]),
				np.array([np.cos(theta2), np.sin(theta2)]),
			),
			half_angle=0.5 * (theta2 - theta1),
			axis=np.array([np.cos(mid), np.sin(mid)]),
		)

	@property
	def opening(self) -> float:
		return 2 * self.half_angle

	@property
	def theta_range(self) -> Tuple[float, float]:
		lo = _angle(self.edge_dirs[0])
		return lo, lo + self.opening

	def contains_direction(self, omega, tol: float = 1e-12) -> np.ndarray:
		dirs = as_points(omega)
		dirs = dirs / np.linalg.norm(dirs, axis=1, keepdims=True)
		return dirs @ self.axis >= np.cos(self.half_angle) - tol

	def rotated(self, angle: float) -> "ConeAtVertex":
		"""Rotate the cone (apex included) about the origin."""
		c, s = np.cos(angle), np.sin(angle)
		rot = np.array([[c, -s], [s, c]])
		return ConeAtVertex(
			apex=rot @ self.apex,
			edge_dirs=(rot @ self.edge_dirs[0], rot @ self.edge_dirs[1]),
			half_angle=self.half_angle,
			axis=rot @ self.axis,
		)

	def at_origin(self) -> "ConeAtVertex":
		return ConeAtVertex(np.zeros(2), self.edge_dirs, self.half_angle, self.axis)


def cone_at_vertex(domain: PolygonDomain, vertex_index: int) -> ConeAtVertex:
	n = domain.n_vertices
	if not -n <= vertex_index < n:
		raise DomainError(f"Vertex index {vertex_index} out of range for {n} vertices")
	pts = domain.points
	i = vertex_index % n
	return ConeAtVertex.from_edges(pts[i], pts[(i + 1) % n] - pts[i], pts[(i - 1) % n] - pts[i])


def point_segment_distance(x, p, q) -> float:
	x, p, q = (np.asarray(a, dtype=float) for a in (x, p, q))
	edge = q - p
	t = np.clip(float((x - p) @ edge) / float(edge @ edge), 0.0, 1.0)
	return float(np.linalg.norm(x - (p + t * edge)))


def min_vertex_edge_distance(domain: PolygonDomain) -> float:
	"""h(Omega): smallest distance from a vertex to an edge not incident to it."""
	pts = domain.points
	n = len(pts)
	best = np.inf
	for i in range(n):
		for j in range(n):
			if j == i or (j + 1) % n == i:
				continue
			best = min(best, point_segment_distance(pts[i], pts[j], pts[(j + 1) % n]))
	return float(best)
