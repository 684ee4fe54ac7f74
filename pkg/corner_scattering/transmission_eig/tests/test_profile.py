# Copyright (c) 2024, Corner Scattering contributors
# See LICENSE

import math

import numpy as np

from corner_scattering.exceptions import DomainError
from corner_scattering.geometry import PolygonDomain
from corner_scattering.transmission_eig import (
	corner_criterion,
	disk_eigenfunction,
	disk_eigenvalues,
	vanishing_profile,
)
from corner_scattering.utils.testing import TestCase

SQUARE = PolygonDomain([(0, 0), (1, 0), (1, 1), (0, 1)])


def constant(value):
	return lambda points: np.full(len(np.atleast_2d(points)), value, dtype=complex)


class TestVanishingProfile(TestCase):
	def test_constant_field_is_flat(self):
		profile = vanishing_profile(constant(2.0 - 1.0j), (0.0, 0.0), [0.4, 0.2, 0.1], domain=SQUARE)
		# the quarter-plane corner sees a quarter of every ball
		expected = abs(2.0 - 1.0j) / 4
		self.assertAllClose(profile.averages, [expected] * 3, rtol=1e-10)
		self.assertAlmostEqual(profile.domain_average, abs(2.0 - 1.0j), delta=1e-10)
		verdict = corner_criterion(profile)
		self.assertFalse(verdict.passed)
		self.assertFalse(verdict.decreasing)
		self.assertAlmostEqual(verdict.smallest_ratio, 0.25, delta=1e-10)

	def test_mode_two_decays_quadratically(self):
		k = next(k for m, k in disk_eigenvalues(2, (1.0, 20.0), 1.0, math.sqrt(2.0)) if m == 2)
		pair = disk_eigenfunction(2, k, 1.0, math.sqrt(2.0))
		radii = list(np.geomspace(0.5, 0.005, 7))
		profile = vanishing_profile(pair, (0.0, 0.0), radii)
		slope = math.log(profile.averages[-1] / profile.averages[-3]) / math.log(radii[-1] / radii[-3])
		self.assertGreaterEqual(slope, 1.5)
		self.assertTrue(corner_criterion(profile).passed)
		self.assertEqual(len(profile.to_csv_rows()), 7)

	def test_invalid_radii(self):
		field = constant(1.0)
		with self.assertRaises(DomainError):
			vanishing_profile(field, (0.0, 0.0), [0.1, 0.2], domain=SQUARE)
		with self.assertRaises(DomainError):
			vanishing_profile(field, (0.0, 0.0), [0.1, -0.1], domain=SQUARE)
		with self.assertRaises(DomainError):
			vanishing_profile(field, (0.0, 0.0), [1.5, 0.1], domain=SQUARE)
		with self.assertRaises(DomainError):
			vanishing_profile(field, (0.0, 0.0), [0.1])
