from corner_scattering.controllers.run_log import create_log
from corner_scattering.herglotz.constants import MODULE_NAME


def create_herglotz_log(**kwargs):
	return create_log(module_def=MODULE_NAME, **kwargs)
