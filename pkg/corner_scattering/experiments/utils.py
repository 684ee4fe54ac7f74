from corner_scattering.controllers.run_log import create_log
from corner_scattering.experiments.constants import MODULE_NAME


def create_experiments_log(**kwargs):
	return create_log(module_def=MODULE_NAME, **kwargs)
