from corner_scattering.controllers.run_log import create_log
from corner_scattering.forward_scattering.constants import MODULE_NAME


def create_forward_scattering_log(**kwargs):
	return create_log(module_def=MODULE_NAME, **kwargs)
