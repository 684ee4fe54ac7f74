# Copyright (c) 2024, Corner Scattering contributors
# See LICENSE

import numpy as np

from corner_scattering.exceptions import DomainError
from corner_scattering.forward_scattering import (
	far_field,
	incident_from_kernel,
	scatter_disk,
	solve_total_field,
)
from corner_scattering.geometry import (
	Contrast,
	DiskDomain,
	PolygonDomain,
	PotentialSpec,
	build_grid,
)
from corner_scattering.herglotz import HerglotzKernel, evaluate, plane_wave_kernel
from corner_scattering.utils.testing import TestCase

DISK = DiskDomain((0.2, -0.1), 1.0)


def disk_potential(value, domain=DISK):
	return PotentialSpec(domain, Contrast.constant(value))


class TestDiskModes(TestCase):
	def test_zero_contrast(self):
		kernel = HerglotzKernel.from_modes({0: 1.0, 1: 0.5})
		solution = scatter_disk(disk_potential(0.0), kernel, 2.0)
		np.testing.assert_allclose(solution.scattered, 0, atol=1e-15)
		self.assertLess(solution.far_field().l2_norm, 1e-14)

	def test_incident_expansion(self):
		kernel = HerglotzKernel.from_modes({0: 0.4, -2: 0.3j, 3: 0.1}, M=5)
		solution = scatter_disk(disk_potential(0.5), kernel, 2.0)
		points = np.random.default_rng(0).uniform(-1.5, 1.5, (10, 2))
		self.assertAllClose(solution.incident_at(points), evaluate(kernel, 2.0, points), atol=1e-11)

	def test_interface_continuity(self):
		k = 2.5
		solution = scatter_disk(disk_potential(0.8), plane_wave_kernel(0.7, 40), k)
		angles = np.linspace(0, 2 * np.pi, 9)[:-1]
		rim = np.stack([np.cos(angles), np.sin(angles)], 1)
		inner = solution.center + (1 - 1e-9) * rim
		outer = solution.center + (1 + 1e-9) * rim
		self.assertAllClose(solution.total_field_at(inner), solution.total_field_at(outer), atol=1e-7)

		h = 1e-5
		inner_slope = (solution.total_field_at(inner) - solution.total_field_at(inner - h * rim)) / h
		outer_slope = (solution.total_field_at(outer + h * rim) - solution.total_field_at(outer)) / h
		self.assertAllClose(inner_slope, outer_slope, atol=1e-3)

	def test_interior_helmholtz(self):
		k, V, h = 2.0, 0.8, 1e-3
		solution = scatter_disk(disk_potential(V), plane_wave_kernel(0.0, 40), k)
		x = solution.center + np.array([[0.3, 0.2]])
		shifts = [h * np.array(s) for s in ((1, 0), (-1, 0), (0, 1), (0, -1))]
		center = solution.total_field_at(x)
		laplacian = sum(solution.total_field_at(x + s) for s in shifts) - 4 * center
		self.assertLess(abs(laplacian[0] / h**2 + k**2 * (1 + V) * center[0]), 1e-4)

	def test_far_field_consistency(self):
		k = 2.0
		solution = scatter_disk(disk_potential(0.5), plane_wave_kernel(0.3, 40), k)
		pattern = solution.far_field(64)
		radius = 200 / k
		near = solution.scattered_field_at(radius * pattern.directions[::8])
		rescaled = np.sqrt(radius) * np.exp(-1j * k * radius) * near
		deviation = np.max(np.abs(rescaled - pattern.values[::8]))
		self.assertLess(deviation, 0.02 * np.max(np.abs(pattern.values)))

	def test_agrees_with_volume_solver(self):
		k = 2.0
		spec = disk_potential(0.5)
		kernel = plane_wave_kernel(0.3, 40)
		modal = scatter_disk(spec, kernel, k).far_field(64)
		grid = build_grid(DISK, 0.05)
		volume = far_field(solve_total_field(spec, incident_from_kernel(kernel, k), k, grid), 64)
		error = np.linalg.norm(volume.values - modal.values) / np.linalg.norm(modal.values)
		self.assertLess(error, 0.05)

	def test_rejects_unsupported_media(self):
		kernel = HerglotzKernel.from_modes({0: 1.0})
		square = PolygonDomain([(0, 0), (1, 0), (1, 1), (0, 1)])
		for spec in (
			PotentialSpec(square, Contrast.constant(1.0)),
			disk_potential(-1.0),
			disk_potential(0.5 + 0.1j),
			PotentialSpec(DISK, Contrast.expression("linear_ramp", gradient=[1.0, 0.0], offset=0.0)),
		):
			with self.assertRaises(DomainError):
				scatter_disk(spec, kernel, 2.0)

	def test_scattered_field_inside(self):
		solution = scatter_disk(disk_potential(0.5), HerglotzKernel.from_modes({0: 1.0}), 2.0)
		with self.assertRaises(DomainError):
			solution.scattered_field_at(solution.center[None, :])
