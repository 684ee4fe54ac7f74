import json
import os
import sys
import unittest

import numpy as np


class TestCase(unittest.TestCase):
	"""Base class for module tests; fixtures live next to the test module in ``fixtures/``."""

	def load_fixture(self, name):
		test_file = sys.modules[type(self).__module__].__file__
		path = os.path.join(os.path.dirname(os.path.abspath(test_file)), "fixtures", f"{name}.json")
		with open(path, "rb") as f:
			data = f.read()
		return json.loads(data)

	def assertAllClose(self, actual, expected, rtol=1e-7, atol=0.0, msg=None):
		np.testing.assert_allclose(
			np.asarray(actual), np.asarray(expected), rtol=rtol, atol=atol, err_msg=msg or ""
		)
