# Copyright (c) 2024, Corner Scattering contributors
# See LICENSE

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from corner_scattering.exceptions import DomainError, GeometryError, InvariantViolation
from corner_scattering.geometry.domain import (
	ConeAtVertex,
	PolygonDomain,
	cone_at_vertex,
	min_vertex_edge_distance,
	point_segment_distance,
)

from .utils import TestCase


def _random_convex_polygon(seed, n):
	rng = np.random.default_rng(seed)
	angles = np.sort(rng.uniform(0, 2 * np.pi, n))
	radii = rng.uniform(0.5, 1.0)
	return PolygonDomain(tuple(map(tuple, radii * np.stack([np.cos(angles), np.sin(angles)], 1))))


class TestPolygonDomain(TestCase):
	def test_square_properties(self):
		square = self.domain("unit_square")
		square.validate()
		self.assertAlmostEqual(square.area, 1.0)
		self.assertAlmostEqual(square.diameter, np.sqrt(2))
		self.assertTrue(square.contains([[0.5, 0.5], [1.0, 1.0]]).all())
		self.assertFalse(square.contains([[1.1, 0.5]])[0])

	def test_validate_rejects_bad_polygons(self):
		with self.assertRaises(GeometryError):
			self.domain("nonconvex").validate()
		with self.assertRaises(GeometryError):
			self.domain("clockwise_square").validate()
		with self.assertRaises(GeometryError):
			self.domain("unit_square").scaled(3.0).validate()
		with self.assertRaises(GeometryError):
			PolygonDomain(((0, 0), (1, 0)))

	def test_exit_distance(self):
		square = self.domain("unit_square")
		dirs = np.array([[1, 0], [0, 1], [np.sqrt(0.5), np.sqrt(0.5)], [-1, 0]])
		self.assertAllClose(square.exit_distance([0, 0], dirs)[:3], [1, 1, np.sqrt(2)])
		self.assertEqual(square.exit_distance([0, 0], dirs)[3], 0.0)

	def test_tangent_interval(self):
		square = self.domain("unit_square")
		self.assertAllClose(square.tangent_interval([0, 0]), [0, np.pi / 2], atol=1e-15)
		lo, hi = square.tangent_interval([0.5, 0])
		self.assertAlmostEqual(hi - lo, np.pi)
		self.assertAllClose(square.tangent_interval([0.5, 0.5]), [0, 2 * np.pi])

	def test_boundary_points_lie_on_boundary(self):
		square = self.domain("unit_square")
		points, normals = square.boundary_points(40)
		on_edge = np.isclose(points, 0) | np.isclose(points, 1)
		self.assertTrue(on_edge.any(axis=1).all())
		self.assertAllClose(np.linalg.norm(normals, axis=1), 1.0)


class TestCones(TestCase):
	def test_square_vertices(self):
		"""requirement: right angles give half angle pi/4 and the inward diagonal as axis"""
		square = self.domain("unit_square")
		expected_axes = [[1, 1], [-1, 1], [-1, -1], [1, -1]]
		for i, axis in enumerate(expected_axes):
			cone = cone_at_vertex(square, i)
			self.assertAlmostEqual(cone.half_angle, np.pi / 4)
			self.assertAllClose(cone.axis, np.array(axis) / np.sqrt(2), atol=1e-15)

	def test_equilateral_triangle(self):
		triangle = self.domain("equilateral_triangle")
		for i in range(3):
			self.assertAlmostEqual(cone_at_vertex(triangle, i).half_angle, np.pi / 6)

	def test_irregular_quadrilateral(self):
		quad = self.domain("quadrilateral")
		pts = quad.points
		for i in range(4):
			e1 = pts[(i + 1) % 4] - pts[i]
			e2 = pts[i - 1] - pts[i]
			angle = np.arccos(e1 @ e2 / np.linalg.norm(e1) / np.linalg.norm(e2))
			self.assertAlmostEqual(2 * cone_at_vertex(quad, i).half_angle, angle, places=12)

	def test_cone_contains_nearby_polygon_points(self):
		quad = self.domain("quadrilateral")
		for i in range(4):
			cone = cone_at_vertex(quad, i)
			toward = quad.centroid - cone.apex
			self.assertTrue(cone.contains_direction(toward)[0])
			self.assertGreaterEqual(
				toward @ cone.axis, np.linalg.norm(toward) * np.cos(cone.half_angle) - 1e-12
			)

	def test_reflex_vertex(self):
		with self.assertRaises(InvariantViolation):
			cone_at_vertex(self.domain("nonconvex"), 2)
		with self.assertRaises(DomainError):
			cone_at_vertex(self.domain("unit_square"), 7)

	def test_sector(self):
		cone = ConeAtVertex.sector(0.0, np.pi / 2)
		self.assertAlmostEqual(cone.half_angle, np.pi / 4)
		self.assertAllClose(cone.theta_range, [0, np.pi / 2], atol=1e-15)
		with self.assertRaises(InvariantViolation):
			ConeAtVertex.sector(0.0, np.pi)

	@settings(max_examples=25, deadline=None)
	@given(seed=st.integers(0, 10_000), n=st.integers(3, 9))
	def test_interior_angles_sum(self, seed, n):
		polygon = _random_convex_polygon(seed, n)
		if not polygon.is_strictly_convex():
			return
		total = sum(2 * cone_at_vertex(polygon, i).half_angle for i in range(n))
		self.assertAlmostEqual(total, (n - 2) * np.pi, delta=1e-10)


class TestMinVertexEdgeDistance(TestCase):
	def test_square(self):
		self.assertAlmostEqual(min_vertex_edge_distance(self.domain("unit_square")), 1.0)

	def test_equilateral_triangle(self):
		value = min_vertex_edge_distance(self.domain("equilateral_triangle"))
		self.assertAlmostEqual(value, np.sqrt(3) / 2, delta=1e-12)

	@settings(max_examples=25, deadline=None)
	@given(seed=st.integers(0, 10_000), n=st.integers(4, 8))
	def test_matches_brute_force(self, seed, n):
		polygon = _random_convex_polygon(seed, n)
		pts = polygon.points
		brute = min(
			point_segment_distance(pts[i], pts[j], pts[(j + 1) % n])
			for i in range(n)
			for j in range(n)
			if i not in (j, (j + 1) % n)
		)
		self.assertAlmostEqual(min_vertex_edge_distance(polygon), brute, delta=1e-14)
		self.assertGreater(brute, 0)
