# Copyright (c) 2024, Corner Scattering contributors
# See LICENSE

import json
import tempfile
from pathlib import Path

import numpy as np

from corner_scattering.utils.serialization import (
	complex_columns,
	dumps,
	format_value,
	pairs_to_complex,
	write_csv,
	write_json,
)
from corner_scattering.utils.testing import TestCase


class TestFormatValue(TestCase):
	def test_booleans_become_verdicts(self):
		self.assertEqual(format_value(True), "PASS")
		self.assertEqual(format_value(np.bool_(False)), "FAIL")

	def test_float_keeps_every_digit(self):
		self.assertEqual(float(format_value(0.1)), 0.1)
		self.assertEqual(format_value(np.float64(1.0)), "1.0000000000000000e+00")

	def test_integers_and_strings(self):
		self.assertEqual(format_value(np.int64(7)), "7")
		self.assertEqual(format_value("vertex"), "vertex")

	def test_complex_values_split_into_parts(self):
		columns = complex_columns(1 + 2j, -0.5)
		self.assertEqual(columns, (1.0, 2.0, -0.5, 0.0))
		self.assertEqual(format_value(columns[1]), "2.0000000000000000e+00")


class TestJson(TestCase):
	def test_complex_and_arrays(self):
		data = json.loads(dumps({"z": 1 + 2j, "v": np.array([1.0, 2.0]), "w": np.array([1j])}))
		self.assertEqual(data["z"], [1.0, 2.0])
		self.assertEqual(data["v"], [1.0, 2.0])
		self.assertEqual(data["w"], [[0.0, 1.0]])
		self.assertAllClose(pairs_to_complex(data["w"]), [1j])

	def test_objects_with_as_dict(self):
		class Thing:
			def as_dict(self):
				return {"a": 1}

		self.assertEqual(json.loads(dumps({"t": Thing()})), {"t": {"a": 1}})

	def test_unknown_object_rejected(self):
		with self.assertRaises(TypeError):
			dumps({"x": object()})

	def test_written_twice_identical(self):
		with tempfile.TemporaryDirectory() as tmp:
			first = write_json(Path(tmp) / "a" / "x.json", {"b": 0.3, "a": [1, 2]}).read_bytes()
			second = write_json(Path(tmp) / "a" / "x.json", {"a": [1, 2], "b": 0.3}).read_bytes()
		self.assertEqual(first, second)


class TestCsv(TestCase):
	def test_header_and_rows(self):
		with tempfile.TemporaryDirectory() as tmp:
			path = write_csv(Path(tmp) / "t.csv", ("k", "pass"), [(1.5, True), (2, False)])
			lines = path.read_text().splitlines()
		self.assertEqual(lines[0], "k,pass")
		self.assertEqual(lines[1], "1.5000000000000000e+00,PASS")
		self.assertEqual(lines[2], "2,FAIL")

	def test_ragged_row_rejected(self):
		with tempfile.TemporaryDirectory() as tmp:
			with self.assertRaises(ValueError):
				write_csv(Path(tmp) / "t.csv", ("a", "b"), [(1,)])
