# Copyright (c) 2024, Corner Scattering contributors
# See LICENSE

import math

import numpy as np

from corner_scattering.exceptions import (
	DegenerateMediumWarning,
	DomainError,
	GeometryError,
	InvariantViolation,
	NotAnEigenvalueError,
)
from corner_scattering.geometry import DiskDomain, PolygonDomain, build_grid
from corner_scattering.transmission_eig import (
	SingularValueScan,
	charge_curve,
	collocation_problem,
	disk_eigenfunction,
	disk_eigenvalues,
	mfs_matrix,
	reconstruct_eigenfunction,
	scan_eigenvalues,
)
from corner_scattering.utils.testing import TestCase

UNIT_DISK = DiskDomain((0.0, 0.0), 1.0)
SQUARE = PolygonDomain([(0, 0), (1, 0), (1, 1), (0, 1)])
N_REF = math.sqrt(2.0)


def distinct(values, gap=1e-4):
	out = []
	for v in sorted(values):
		if not out or v - out[-1] > gap:
			out.append(v)
	return out


class TestChargeCurve(TestCase):
	def test_square(self):
		charges = charge_curve(SQUARE, 40, 0.35)
		self.assertEqual(charges.shape, (40, 2))
		offset = 0.35 * SQUARE.diameter
		# distance to the unit square
		outside = np.maximum(np.maximum(charges - 1, -charges), 0)
		np.testing.assert_allclose(np.hypot(outside[:, 0], outside[:, 1]), offset, atol=1e-12)
		self.assertFalse(np.any(SQUARE.contains(charges)))

	def test_disk(self):
		charges = charge_curve(UNIT_DISK, 16, 0.35)
		np.testing.assert_allclose(np.hypot(charges[:, 0], charges[:, 1]), 1.7, atol=1e-14)

	def test_invalid(self):
		with self.assertRaises(GeometryError):
			charge_curve(SQUARE, 40, 0.0)
		with self.assertRaises(DomainError):
			charge_curve(SQUARE, 2)


class TestMatrix(TestCase):
	def test_shape_and_scaling(self):
		matrix = mfs_matrix(SQUARE, 4.0, 1.0, n_charge=30, n_colloc=50)
		self.assertEqual(matrix.shape, (100, 60))
		self.assertTrue(np.all(np.isfinite(matrix)))
		np.testing.assert_allclose(np.linalg.norm(matrix, axis=0), 1.0, atol=1e-12)

	def test_finite_over_scan_range(self):
		for k in (0.5, 5.0, 15.0):
			self.assertTrue(np.all(np.isfinite(mfs_matrix(UNIT_DISK, k, 1.0, n_charge=20))))

	def test_invalid(self):
		with self.assertRaises(DomainError):
			mfs_matrix(SQUARE, 4.0, 1.0, n_charge=30, n_colloc=20)
		with self.assertRaises(DomainError):
			mfs_matrix(SQUARE, -1.0, 1.0)
		with self.assertRaises(DomainError):
			mfs_matrix(SQUARE, 4.0, -2.0)
		with self.assertWarns(DegenerateMediumWarning):
			mfs_matrix(SQUARE, 4.0, 0.0, n_charge=10)

	def test_more_charges_deepen_dip(self):
		k = next(k for m, k in disk_eigenvalues(0, (1.0, 11.0), 1.0, N_REF))
		coarse = collocation_problem(UNIT_DISK, 1.0, n_charge=16).sigma(k)
		fine = collocation_problem(UNIT_DISK, 1.0, n_charge=32).sigma(k)
		self.assertGreaterEqual(coarse / fine, 2.0)


class TestDiskScan(TestCase):
	@classmethod
	def setUpClass(cls):
		cls.scan = scan_eigenvalues(UNIT_DISK, 1.0, (1.0, 11.0), 0.01, n_charge=60, workers=2)
		cls.exact = distinct(k for _, k in disk_eigenvalues(20, (1.0, 11.0), 1.0, N_REF))

	def test_scan_artifact(self):
		scan = self.scan
		self.assertIsInstance(scan, SingularValueScan)
		self.assertTrue(np.all(np.diff(scan.k_grid) > 0))
		self.assertTrue(np.all(scan.sigma_min >= 0))
		self.assertEqual(len(scan.to_csv_rows()), len(scan.k_grid))
		self.assertEqual(scan.threshold, float(np.median(scan.sigma_min)) / 50)

	def test_matches_determinant_roots(self):
		"""requirement: collocation dips and determinant roots agree to 1e-3 relative"""
		found = np.array(self.scan.detected_minima)
		self.assertGreaterEqual(len(self.exact), 5)
		for k in self.exact[:5]:
			self.assertLess(np.min(np.abs(found - k)) / k, 1e-3, msg=f"eigenvalue {k} missed")
		exact = np.array(self.exact)
		for k in found:
			self.assertLess(np.min(np.abs(exact - k)) / k, 1e-3, msg=f"spurious dip at {k}")

	def test_nothing_below_first_eigenvalue(self):
		self.assertFalse(disk_eigenvalues(20, (0.5, 1.5), 1.0, N_REF))
		scan = scan_eigenvalues(UNIT_DISK, 1.0, (0.5, 1.5), 0.01, n_charge=60)
		self.assertEqual(scan.detected_minima, [])

	def test_reconstruction(self):
		k = next(k for m, k in disk_eigenvalues(0, (1.0, 11.0), 1.0, N_REF))
		pair = reconstruct_eigenfunction(UNIT_DISK, 1.0, k, n_charge=60)
		self.assertEqual(pair.method, "mfs")
		self.assertLessEqual(max(pair.residuals.values()), 1e-4)
		self.assertAlmostEqual(pair.normalization, 1.0, delta=1e-8)
		self.assertEqual(len(pair.coefficients), 120)

		exact = disk_eigenfunction(0, k, 1.0, N_REF).v
		grid = build_grid(UNIT_DISK, 0.03)
		a, b = pair.v(grid.nodes), exact(grid.nodes)
		overlap = abs(grid.integrate(a * b.conj())) / (grid.l2_norm(a) * grid.l2_norm(b))
		self.assertGreaterEqual(overlap, 0.999)

	def test_reconstruction_solves_helmholtz(self):
		k = next(k for m, k in disk_eigenvalues(0, (1.0, 11.0), 1.0, N_REF))
		pair = reconstruct_eigenfunction(UNIT_DISK, 1.0, k, n_charge=60)
		h = 1e-3
		shifts = [h * np.array(s) for s in ((1, 0), (-1, 0), (0, 1), (0, -1))]
		probes = np.array([[0.2, 0.1], [-0.4, 0.3], [0.0, -0.6]])
		scale = np.max(np.abs(pair.v(build_grid(UNIT_DISK, 0.1).nodes)))
		for field, wavenumber in ((pair.v, k), (pair.w, k * N_REF)):
			laplacian = (sum(field(probes + s) for s in shifts) - 4 * field(probes)) / h**2
			residual = np.abs(laplacian + wavenumber**2 * field(probes))
			self.assertLess(np.max(residual), 1e-4 * wavenumber**2 * scale)

	def test_not_an_eigenvalue(self):
		exact = np.array(self.exact)
		k = 0.5 * (exact[0] + exact[1])
		with self.assertRaises(NotAnEigenvalueError):
			reconstruct_eigenfunction(UNIT_DISK, 1.0, k, n_charge=60)


class TestSquareScan(TestCase):
	def test_reconstructed_pairs_are_certified(self):
		scan = scan_eigenvalues(SQUARE, 1.0, (3.0, 12.0), 0.01, n_charge=120, workers=2)
		self.assertTrue(scan.detected_minima)
		for k in scan.detected_minima:
			try:
				pair = reconstruct_eigenfunction(SQUARE, 1.0, k, n_charge=120)
			except InvariantViolation as e:
				self.fail(f"k = {k}: {e}")
			self.assertLessEqual(max(pair.residuals.values()), 1e-4)
			self.assertAlmostEqual(pair.normalization, 1.0, delta=1e-8)
			self.assertIn("coefficients", pair.to_json())
			self.assertEqual(pair.to_json()["residual_tol"], 1e-4)
