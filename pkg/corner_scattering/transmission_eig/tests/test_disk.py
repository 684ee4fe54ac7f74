# Copyright (c) 2024, Corner Scattering contributors
# See LICENSE

import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from corner_scattering.exceptions import (
	DegenerateInputError,
	DegenerateMediumWarning,
	DomainError,
	PreconditionError,
)
from corner_scattering.geometry import DiskDomain, build_grid
from corner_scattering.herglotz import evaluate, fit_kernel
from corner_scattering.specfun import bessel_j, bessel_j_prime
from corner_scattering.transmission_eig import (
	RadialModeField,
	disk_determinant,
	disk_eigenfunction,
	disk_eigenvalues,
	refractive_index,
)
from corner_scattering.utils.testing import TestCase

N_REF = math.sqrt(2.0)


def laplacian(field, x, h=1e-3):
	shifts = [h * np.array(s) for s in ((1, 0), (-1, 0), (0, 1), (0, -1))]
	return (sum(field(x + s) for s in shifts) - 4 * field(x)) / h**2


class TestDeterminant(TestCase):
	@settings(max_examples=25, deadline=None)
	@given(
		m=st.integers(0, 8),
		k=st.floats(0.2, 15.0),
		a=st.floats(0.3, 2.0),
		n_ref=st.floats(0.5, 3.0),
	)
	def test_matches_matrix_determinant(self, m, k, a, n_ref):
		matrix = np.array(
			[
				[bessel_j(m, k * a), -bessel_j(m, k * n_ref * a)],
				[k * bessel_j_prime(m, k * a), -k * n_ref * bessel_j_prime(m, k * n_ref * a)],
			]
		)
		expected = np.linalg.det(matrix)
		self.assertAlmostEqual(disk_determinant(m, k, a, n_ref), expected, delta=1e-12 * (1 + k))

	def test_vectorized(self):
		ks = np.linspace(0.5, 9.5, 10)
		values = disk_determinant(2, ks, 1.0, N_REF)
		self.assertEqual(values.shape, (10,))
		single = [disk_determinant(2, k, 1.0, N_REF) for k in ks]
		self.assertAllClose(values, single, rtol=1e-14, atol=1e-15)

	def test_degenerate_medium(self):
		with self.assertWarns(DegenerateMediumWarning):
			values = disk_determinant(1, np.linspace(1, 5, 9), 1.0, 1.0)
		np.testing.assert_allclose(values, 0, atol=1e-15)
		with self.assertRaises(DegenerateInputError):
			disk_eigenvalues(3, (1, 5), 1.0, 1.0)

	def test_invalid(self):
		bad = ((-1, 2.0, 1.0, N_REF), (0, 0.0, 1.0, N_REF), (0, 2.0, -1.0, N_REF), (0, 2.0, 1.0, 0.0))
		for args in bad:
			with self.assertRaises(DomainError):
				disk_determinant(*args)
		with self.assertRaises(DomainError):
			refractive_index(-1.0)
		self.assertAlmostEqual(refractive_index(1.0), N_REF, delta=1e-15)


class TestDiskEigenvalues(TestCase):
	@classmethod
	def setUpClass(cls):
		cls.roots = disk_eigenvalues(12, (1.0, 11.0), 1.0, N_REF)

	def test_roots_are_zeros(self):
		self.assertTrue(self.roots)
		for m, k in self.roots:
			self.assertLessEqual(abs(disk_determinant(m, k, 1.0, N_REF)), 1e-10, msg=f"mode {m}, k={k}")
		ks = [k for _, k in self.roots]
		self.assertEqual(ks, sorted(ks))

	def test_first_radial_eigenvalue(self):
		radial = [k for m, k in self.roots if m == 0]
		self.assertGreater(radial[0], 7.0)
		self.assertLess(radial[0], 8.0)

	def test_step_halving_is_stable(self):
		fine = disk_eigenvalues(12, (1.0, 11.0), 1.0, N_REF, step=0.005)
		self.assertEqual(len(fine), len(self.roots))
		for (m1, k1), (m2, k2) in zip(fine, self.roots):
			self.assertEqual(m1, m2)
			self.assertAlmostEqual(k1, k2, delta=1e-9)

	def test_scale_covariance(self):
		"""requirement: scaling the disk by s maps every eigenvalue k to k / s"""
		base = disk_eigenvalues(4, (1.0, 8.0), 1.0, N_REF, step=0.01)
		for s in (0.5, 2.0):
			scaled = disk_eigenvalues(4, (1.0 / s, 8.0 / s), s, N_REF, step=0.01 / s)
			self.assertEqual([m for m, _ in scaled], [m for m, _ in base])
			for (_, k), (_, k_s) in zip(base, scaled):
				self.assertAlmostEqual(k_s, k / s, delta=1e-8 * k)

	def test_invalid_interval(self):
		for interval in ((0.0, 5.0), (5.0, 1.0)):
			with self.assertRaises(DomainError):
				disk_eigenvalues(2, interval, 1.0, N_REF)
		with self.assertRaises(DomainError):
			disk_eigenvalues(2, (1.0, 5.0), 1.0, N_REF, step=0.0)


class TestDiskEigenfunction(TestCase):
	@classmethod
	def setUpClass(cls):
		roots = disk_eigenvalues(2, (1.0, 20.0), 1.0, N_REF)
		cls.m, cls.k = next((m, k) for m, k in roots if m == 2)
		cls.pair = disk_eigenfunction(cls.m, cls.k, 1.0, N_REF)

	def test_certificate(self):
		pair = self.pair
		self.assertEqual(pair.mode, self.m)
		self.assertEqual(pair.method, "disk_modes")
		self.assertLessEqual(max(pair.residuals.values()), 1e-9)
		self.assertAlmostEqual(pair.normalization, 1.0, delta=1e-8)
		certificate = pair.to_json()
		self.assertEqual(certificate["residual_tol"], 1e-9)
		self.assertEqual(certificate["residuals"], pair.residuals)

	def test_closed_form_norm(self):
		m, k = self.m, self.k
		x = k * 1.0
		radial = 0.5 * (bessel_j_prime(m, x) ** 2 + (1 - m**2 / x**2) * bessel_j(m, x) ** 2)
		norm = abs(self.pair.v.amplitude) * math.sqrt(2 * math.pi * radial)
		self.assertAlmostEqual(norm, 1.0, delta=1e-10)

	def test_cauchy_data_match(self):
		theta = np.linspace(0, 2 * np.pi, 13)[:-1]
		rim = np.stack([np.cos(theta), np.sin(theta)], 1)
		v, w = self.pair.v, self.pair.w
		scale = np.max(np.abs(v(0.5 * rim)))
		self.assertLess(np.max(np.abs(w(rim) - v(rim))), 1e-9 * scale)
		slope = np.einsum("pd,pd->p", w.gradient(rim) - v.gradient(rim), rim)
		self.assertLess(np.max(np.abs(slope)), 1e-9 * self.k * scale)

	def test_helmholtz(self):
		x = np.array([[0.3, -0.2]])
		v, w = self.pair.v, self.pair.w
		k, n2 = self.k, N_REF**2
		samples = build_grid(DiskDomain((0, 0), 1.0), 0.1).nodes
		for field, wavenumber2 in ((v, k**2), (w, k**2 * n2)):
			scale = np.max(np.abs(field(samples)))
			residual = laplacian(field, x)[0] + wavenumber2 * field(x)[0]
			self.assertLess(abs(residual), 1e-3 * wavenumber2 * scale)

	def test_herglotz_kernel(self):
		v = self.pair.v
		kernel = v.herglotz_kernel(M=self.m + 3)
		points = np.random.default_rng(1).uniform(-0.7, 0.7, (20, 2))
		self.assertAllClose(evaluate(kernel, self.k, points), v(points), atol=1e-12)

		grid = build_grid(DiskDomain((0, 0), 1.0), 0.05)
		fit = fit_kernel(v(grid.nodes), grid, self.k, self.m + 3, lam=0.0)
		self.assertLess(fit.relative_residual, 1e-7)
		self.assertAllClose(fit.kernel.coeffs, kernel.coeffs, atol=1e-6)

	def test_precondition(self):
		with self.assertRaises(PreconditionError):
			disk_eigenfunction(self.m, self.k + 0.1, 1.0, N_REF)


class TestRadialModeField(TestCase):
	def test_gradient(self):
		h = 1e-6
		for m in (0, 1, -2, 3):
			field = RadialModeField(m, 2.5, 0.7 - 0.2j, center=(0.1, -0.3))
			x = np.array([[0.5, 0.2], [-0.4, 0.6]])
			fd = np.stack(
				[
					(field(x + [h, 0]) - field(x - [h, 0])) / (2 * h),
					(field(x + [0, h]) - field(x - [0, h])) / (2 * h),
				],
				1,
			)
			self.assertAllClose(field.gradient(x), fd, atol=1e-7, msg=f"m={m}")

	def test_gradient_at_centre(self):
		field = RadialModeField(1, 2.0)
		self.assertAllClose(field.gradient([[0.0, 0.0]])[0], [1.0, 1.0j], atol=1e-15)
		np.testing.assert_allclose(RadialModeField(2, 2.0).gradient([[0.0, 0.0]]), 0, atol=1e-15)

	def test_kernel_needs_origin(self):
		with self.assertRaises(DomainError):
			RadialModeField(1, 2.0, center=(0.5, 0.0)).herglotz_kernel()
