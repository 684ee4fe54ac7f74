from corner_scattering.controllers.run_log import create_log
from corner_scattering.cone_cgo.constants import MODULE_NAME


def create_cone_cgo_log(**kwargs):
	return create_log(module_def=MODULE_NAME, **kwargs)
