# Copyright (c) 2024, Corner Scattering contributors
# See LICENSE

import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from corner_scattering.exceptions import DimensionError, DomainError, OrderNotFoundError
from corner_scattering.herglotz import (
	HerglotzKernel,
	HomHarmonicPoly,
	derivative_at,
	leading_polynomial,
	sample_vanishing_kernels,
	synthesize_vanishing_kernel,
	vanishing_order,
)
from corner_scattering.utils.testing import TestCase


class TestHomHarmonicPoly(TestCase):
	def test_evaluation_on_circle(self):
		P = HomHarmonicPoly(3, 1 - 2j, 0.5)
		theta = np.linspace(0, 2 * np.pi, 17)
		points = np.stack([np.cos(theta), np.sin(theta)], 1)
		self.assertAllClose(P(points), P.on_circle(theta), atol=1e-14)

	def test_norm(self):
		self.assertAlmostEqual(HomHarmonicPoly(0, 1.0).norm, 2 * np.pi, delta=1e-12)
		self.assertAlmostEqual(HomHarmonicPoly(2, 1.0).norm, 4.0, delta=1e-3)
		P = HomHarmonicPoly(4, 0.3, 2j)
		theta = 2 * np.pi * np.arange(512) / 512
		self.assertAlmostEqual(P.norm, np.abs(P.on_circle(theta)).sum() * 2 * np.pi / 512, delta=1e-10)
		self.assertAlmostEqual(P.normalized().norm, 1.0, delta=1e-12)

	def test_harmonic(self):
		P = HomHarmonicPoly(5, 0.7, -1.1j)
		h = 1e-3
		x = np.array([[0.3, 0.4]])
		lap = sum(P(x + h * np.array(s)) for s in ((1, 0), (-1, 0), (0, 1), (0, -1))) - 4 * P(x)
		self.assertLess(abs(lap[0]) / h**2, 1e-4)

	def test_monomial_round_trip(self):
		P = HomHarmonicPoly(3, 2 + 1j, -0.5j)
		again, residual = HomHarmonicPoly.from_monomials(3, P.monomial_coefficients())
		self.assertAlmostEqual(again.a, P.a, delta=1e-13)
		self.assertAlmostEqual(again.b, P.b, delta=1e-13)
		self.assertLess(residual, 1e-14)

	def test_non_harmonic_residual(self):
		# x^2 + y^2
		_, residual = HomHarmonicPoly.from_monomials(2, [1.0, 0.0, 1.0])
		self.assertGreater(residual, 0.5)

	def test_degree_zero_drops_b(self):
		self.assertEqual(HomHarmonicPoly(0, 1.0, 5.0).b, 0)
		with self.assertRaises(DomainError):
			HomHarmonicPoly(-1)


class TestVanishingOrder(TestCase):
	def test_constant_mode(self):
		c0 = 0.3 - 0.1j
		result = vanishing_order(HerglotzKernel.from_modes({0: c0}), 2.0, [0, 0])
		self.assertEqual(result.order, 0)
		self.assertAlmostEqual(result.polynomial.a, 2 * np.pi * c0, delta=1e-13)

	def test_first_mode(self):
		"""requirement: c_1 alone vanishes to first order with P_1 proportional to x + iy"""
		k = 1.3
		N, P = vanishing_order(HerglotzKernel.from_modes({1: 1.0}), k, [0, 0])
		self.assertEqual(N, 1)
		self.assertAlmostEqual(P.a, np.pi * 1j * k, delta=1e-12)
		self.assertAlmostEqual(P.b, -np.pi * k, delta=1e-12)

	def test_order_not_found(self):
		with self.assertRaises(OrderNotFoundError):
			vanishing_order(HerglotzKernel.from_modes({5: 1.0}), 2.0, [0, 0], N_max=3)


class TestSynthesis(TestCase):
	def test_order_zero_at_origin(self):
		g = synthesize_vanishing_kernel(2.0, [0, 0], 0, M=4)
		self.assertAlmostEqual(abs(g.coefficient(0)), 1 / math.sqrt(2 * math.pi), delta=1e-13)
		self.assertAlmostEqual(np.linalg.norm(np.delete(g.coeffs, g.M)), 0, delta=1e-13)

	def test_order_one_at_origin(self):
		g = synthesize_vanishing_kernel(2.0, [0, 0], 1, M=4)
		self.assertAlmostEqual(abs(g.coefficient(0)), 0, delta=1e-13)
		self.assertGreaterEqual(vanishing_order(g, 2.0, [0, 0]).order, 1)

	def test_order_three_at_vertex(self):
		"""requirement: derivatives of order at most 2 vanish at the corner"""
		k, x_c = 3.0, np.array([1.0, 0.0])
		g = synthesize_vanishing_kernel(k, x_c, 3)
		self.assertAlmostEqual(g.l2_norm, 1.0, delta=1e-12)
		for a in range(3):
			for b in range(3 - a):
				self.assertLess(abs(derivative_at(g, k, x_c, (a, b))), 1e-10, msg=str((a, b)))
		self.assertEqual(vanishing_order(g, k, x_c).order, 3)

	def test_leading_polynomial_matches_taylor(self):
		k, x_c = 2.5, np.array([0.5, 0.5])
		g = synthesize_vanishing_kernel(k, x_c, 2)
		result = vanishing_order(g, k, x_c)
		P = leading_polynomial(g, k, x_c, 2)
		self.assertEqual(result.order, 2)
		self.assertAlmostEqual(result.polynomial.a, P.a, delta=1e-9)
		self.assertAlmostEqual(result.polynomial.b, P.b, delta=1e-9)

	def test_too_few_basis_functions(self):
		with self.assertRaises(DimensionError):
			synthesize_vanishing_kernel(2.0, [0, 0], 3, M=2)

	def test_ensembles(self):
		k, x_c = 3.0, np.array([0.0, 1.0])
		first = sample_vanishing_kernels(k, x_c, 2, 12, 5, np.random.default_rng(7))
		second = sample_vanishing_kernels(k, x_c, 2, 12, 5, np.random.default_rng(7))
		self.assertEqual(len(first), 5)
		for a, b in zip(first, second):
			np.testing.assert_array_equal(a.coeffs, b.coeffs)
			self.assertAlmostEqual(a.l2_norm, 1.0, delta=1e-12)
			self.assertEqual(vanishing_order(a, k, x_c).order, 2)

	def test_extremal_kernel_maximizes_circle_l2_norm(self):
		k, x_c = 3.0, np.array([0.0, 1.0])
		kernels = sample_vanishing_kernels(k, x_c, 2, 12, 8, np.random.default_rng(3))
		squares = []
		for g in kernels:
			P = leading_polynomial(g, k, x_c, 2)
			squares.append(abs(P.a) ** 2 + abs(P.b) ** 2)
		self.assertTrue(all(s <= squares[0] * (1 + 1e-9) for s in squares[1:]))

	@settings(max_examples=10, deadline=None)
	@given(
		N=st.integers(0, 4),
		k=st.floats(0.5, 5.0),
		x=st.floats(-1.0, 1.0),
		y=st.floats(-1.0, 1.0),
	)
	def test_synthesized_order_at_least_requested(self, N, k, x, y):
		g = synthesize_vanishing_kernel(k, [x, y], N)
		self.assertGreaterEqual(vanishing_order(g, k, [x, y]).order, N)
