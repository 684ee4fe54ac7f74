# Copyright (c) 2024, Corner Scattering contributors
# See LICENSE

import math

import numpy as np
from scipy.integrate import dblquad

from corner_scattering.cone_cgo import (
	CgoCurve,
	MonomialPoly,
	Orthant,
	laplace_transform,
	make_zeta,
	rho_at,
	sector_transform_basis,
)
from corner_scattering.exceptions import DomainError
from corner_scattering.geometry import ConeAtVertex
from corner_scattering.herglotz import HomHarmonicPoly
from corner_scattering.utils.testing import TestCase

QUARTER = ConeAtVertex.sector(0.0, math.pi / 2)


class TestOrthant(TestCase):
	def test_constant(self):
		value = laplace_transform(HomHarmonicPoly(0, 1.0), Orthant(2), [-1.0, -1.0])
		self.assertAlmostEqual(value, 1.0, delta=1e-15)

	def test_three_dimensional_monomial(self):
		poly = MonomialPoly({(1, 1, 2): 1.0}, dim=3)
		value = laplace_transform(poly, Orthant(3), [-1.0, -2.0, -3.0])
		self.assertAlmostEqual(value, 1.0 * 0.25 * 2 / 27, delta=1e-15)

	def test_rejects_growing_exponential(self):
		with self.assertRaises(DomainError):
			laplace_transform(HomHarmonicPoly(1, 1.0), Orthant(2), [0.5, -1.0])
		with self.assertRaises(DomainError):
			laplace_transform(MonomialPoly({(1, 0, 0): 1.0}, dim=3), Orthant(2), [-1.0, -1.0])

	def test_monomial_validation(self):
		with self.assertRaises(DomainError):
			MonomialPoly({(1, -1): 1.0})
		self.assertEqual(MonomialPoly({(2, 1): 1.0, (0, 0): 0.0}).terms, {(2, 1): 1.0})
		self.assertEqual(MonomialPoly({(2, 1): 1.0}).degree, 3)


class TestSectorTransform(TestCase):
	def test_quarter_plane_matches_orthant(self):
		"""requirement: the sector quadrature reproduces the closed-form orthant transform"""
		rhos = [np.array([-1.0, -2.0]), np.array([-1.5 + 2j, -0.5 - 1j]), np.array([-3.0 + 0.1j, -0.2])]
		polys = [HomHarmonicPoly(0, 1.0), HomHarmonicPoly(2, 1.0, -0.5j), HomHarmonicPoly(3, 0.2, 1.0)]
		for P in polys:
			for rho in rhos:
				sector = laplace_transform(P, QUARTER, rho)
				orthant = laplace_transform(P, Orthant(2), rho)
				self.assertLess(abs(sector - orthant), 1e-8 * max(1.0, abs(orthant)), msg=f"{P}, {rho}")

	def test_against_polar_quadrature(self):
		cone = ConeAtVertex.sector(-math.pi / 4, math.pi / 4)
		rho = rho_at(CgoCurve(make_zeta(cone, math.pi / 8), 1.0), 2.0)
		P = HomHarmonicPoly(2, 1.0)

		def part(fn):
			def integrand(r, theta):
				omega = np.array([math.cos(theta), math.sin(theta)])
				return fn(np.exp(r * (rho @ omega)) * r**2 * math.cos(2 * theta) * r)

			return dblquad(
				integrand, -math.pi / 4, math.pi / 4, 0.0, 30.0, epsabs=1e-13, epsrel=1e-10
			)[0]

		reference = part(np.real) + 1j * part(np.imag)
		self.assertLess(abs(laplace_transform(P, cone, rho) - reference), 1e-6)

	def test_homogeneity(self):
		cone = ConeAtVertex.sector(0.3, 1.9)
		rho = np.array([-math.cos(1.1) + 0.4j, -math.sin(1.1) - 0.7j])
		P = HomHarmonicPoly(3, 0.5, 1j)
		for s in (0.5, 2.0, 7.0):
			self.assertAllClose(
				laplace_transform(P, cone, s * rho), s ** (-5) * laplace_transform(P, cone, rho), rtol=1e-9
			)

	def test_vectorized_basis(self):
		cone = ConeAtVertex.sector(-0.4, 0.9)
		axis = -cone.axis
		rhos = np.array([axis + 1j * np.array([t, -t]) for t in (0.0, 0.5, 1.5)])
		basis = sector_transform_basis(2, cone, rhos)
		self.assertEqual(basis.shape, (3, 2))
		for row, rho in zip(basis, rhos):
			self.assertAllClose(row, sector_transform_basis(2, cone, [rho])[0], rtol=1e-9)
			P = HomHarmonicPoly(2, 1.0, 2.0)
			self.assertAllClose(P.a * row[0] + P.b * row[1], laplace_transform(P, cone, rho), rtol=1e-9)

	def test_rejects_non_integrable(self):
		with self.assertRaises(DomainError):
			laplace_transform(HomHarmonicPoly(1, 1.0), QUARTER, [1.0, -1.0])
		with self.assertRaises(DomainError):
			laplace_transform(HomHarmonicPoly(1, 1.0), QUARTER, [-1.0, 0.0])
		with self.assertRaises(DomainError):
			sector_transform_basis(-1, QUARTER, [[-1.0, -1.0]])
		with self.assertRaises(DomainError):
			laplace_transform(MonomialPoly({(1, 0): 1.0}), QUARTER, [-1.0, -1.0])

	def test_rounded_edge_direction_is_not_integrable(self):
		"""requirement: rounding in a computed edge direction cannot admit Re rho . e = 0"""
		self.assertGreater(QUARTER.edge_dirs[1][0], 0.0)
		for rho in ([-1.0, 0.0], [-2.5, 1e-14], [0.0, -3.0]):
			with self.assertRaises(DomainError):
				sector_transform_basis(1, QUARTER, [rho])
		basis = sector_transform_basis(1, QUARTER, [[-1.0, -0.1]])
		self.assertTrue(np.all(np.isfinite(basis)))
