from corner_scattering.geometry.potential import load_domain, load_potential_spec
from corner_scattering.utils.testing import TestCase as BaseTestCase


class TestCase(BaseTestCase):
	def domain(self, name):
		return load_domain(self.load_fixture("domains")[name], name)

	def potential(self, name):
		return load_potential_spec(self.load_fixture("potentials")[name], name)
