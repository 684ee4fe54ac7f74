# Copyright (c) 2024, Corner Scattering contributors
# See LICENSE

import csv
import json
import math
import tempfile
from pathlib import Path

from corner_scattering.exceptions import ConfigurationError, SchemaError
from corner_scattering.experiments import (
	ExperimentConfig,
	cone_lt,
	fit,
	scatter,
	teig_disk,
)
from corner_scattering.transmission_eig import disk_determinant, refractive_index
from corner_scattering.utils.testing import TestCase

SQUARE = {
	"domain": {"kind": "polygon", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]},
	"contrast": 1.0,
}
DISK = {"domain": {"kind": "disk", "radius": 1.0}, "contrast": 1.0}


def read_csv(path):
	with open(path, newline="") as f:
		return list(csv.reader(f))


class CommandTestCase(TestCase):
	def setUp(self):
		self._tmp = tempfile.TemporaryDirectory()
		self.directory = Path(self._tmp.name)

	def tearDown(self):
		self._tmp.cleanup()


class TestTeigDisk(CommandTestCase):
	def test_roots_of_the_determinant(self):
		result = teig_disk(1.0, 1.0, 6.0, self.directory, m_max=4)
		rows = read_csv(self.directory / "eigenvalues.csv")
		self.assertEqual(rows[0], ["m", "k"])
		self.assertEqual(len(rows) - 1, result.summary["count"])
		self.assertGreater(result.summary["count"], 0)
		n_ref = refractive_index(1.0)
		for m, k in rows[1:]:
			self.assertAlmostEqual(disk_determinant(int(m), float(k), 1.0, n_ref), 0.0, delta=1e-8)
		self.assertIsNone(result.passed)


class TestScatter(CommandTestCase):
	def test_zero_contrast_has_no_far_field(self):
		"""requirement: V = 0 scatters nothing"""
		config = ExperimentConfig.from_dict(
			{
				"potential": {**SQUARE, "contrast": 0.0},
				"wavenumber": 2.0,
				"grid_h": 0.1,
				"options": {"directions": 16},
			}
		)
		result = scatter(config, self.directory)
		rows = read_csv(self.directory / "far_field.csv")
		self.assertEqual(rows[0], ["theta", "re", "im"])
		self.assertEqual(len(rows), 17)
		self.assertTrue(all(float(re) == 0.0 and float(im) == 0.0 for _, re, im in rows[1:]))
		self.assertEqual(result.summary["far_field_norm"], 0.0)

	def test_modal_and_volume_agree_on_a_disk(self):
		document = {"potential": DISK, "wavenumber": 2.0, "grid_h": 0.05, "truncation": 15}
		modal = scatter(
			ExperimentConfig.from_dict({**document, "options": {"solver": "modal"}}),
			self.directory / "modal",
		)
		volume = scatter(ExperimentConfig.from_dict(document), self.directory / "volume")
		self.assertAlmostEqual(
			volume.summary["far_field_norm"] / modal.summary["far_field_norm"], 1.0, delta=0.1
		)

	def test_requires_wavenumber(self):
		with self.assertRaises(ConfigurationError):
			scatter(ExperimentConfig.from_dict({"potential": SQUARE}), self.directory)

	def test_unknown_solver(self):
		config = ExperimentConfig.from_dict(
			{"potential": SQUARE, "wavenumber": 1.0, "options": {"solver": "fmm"}}
		)
		with self.assertRaises(SchemaError) as ctx:
			scatter(config, self.directory)
		self.assertEqual(ctx.exception.path, "options.solver")

	def test_unknown_option(self):
		config = ExperimentConfig.from_dict(
			{"potential": SQUARE, "wavenumber": 1.0, "options": {"direction": 0.5}}
		)
		with self.assertRaises(SchemaError) as ctx:
			scatter(config, self.directory)
		self.assertEqual(ctx.exception.path, "options.direction")


class TestFit(CommandTestCase):
	def test_plane_wave_is_fitted(self):
		config = ExperimentConfig.from_dict(
			{
				"potential": DISK,
				"wavenumber": 2.0,
				"truncation": 14,
				"grid_h": 0.1,
				"options": {"target": {"kind": "plane_wave", "direction": 0.3}},
			}
		)
		result = fit(config, self.directory)
		document = json.loads((self.directory / "kernel.json").read_text())
		self.assertLess(result.summary["relative_residual"], 1e-4)
		self.assertIn("kernel", document)

	def test_unknown_target(self):
		config = ExperimentConfig.from_dict(
			{"potential": DISK, "wavenumber": 2.0, "options": {"target": {"kind": "spline"}}}
		)
		with self.assertRaises(SchemaError) as ctx:
			fit(config, self.directory)
		self.assertEqual(ctx.exception.path, "options.target.kind")


class TestConeLt(CommandTestCase):
	def test_orthant_matches_quarter_sector(self):
		"""requirement: the closed-form orthant transform equals the sector quadrature"""
		config = ExperimentConfig.from_dict(
			{
				"wavenumber": 1.0,
				"options": {"polynomial": {"degree": 2, "a": 1.0, "b": 0.5}, "tau": 2.0},
			}
		)
		result = cone_lt(config, self.directory)
		value = result.summary["value"]
		self.assertLess(result.summary["difference"], 1e-8 * max(1.0, abs(value)))
		self.assertTrue((self.directory / "lt.json").exists())

	def test_monomials_on_an_orthant(self):
		config = ExperimentConfig.from_dict(
			{
				"options": {
					"polynomial": {"monomials": [{"exponents": [1, 0, 2], "coeff": 1.0}]},
					"rho": [-1.0, -2.0, -1.0],
				}
			}
		)
		# 1! 0! 2! / (1^2 * 2^1 * 1^3)
		self.assertAlmostEqual(cone_lt(config, self.directory).summary["value"], 1.0, delta=1e-12)

	def test_sector_region(self):
		config = ExperimentConfig.from_dict(
			{
				"options": {
					"region": "sector",
					"theta": [0.0, math.pi / 2],
					"polynomial": {"degree": 0},
					"rho": [-1.0, -1.0],
				}
			}
		)
		self.assertAlmostEqual(cone_lt(config, self.directory).summary["value"], 1.0, delta=1e-8)

	def test_bad_region(self):
		config = ExperimentConfig.from_dict({"options": {"region": "ball"}})
		with self.assertRaises(SchemaError):
			cone_lt(config, self.directory)
