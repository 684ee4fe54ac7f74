from corner_scattering.forward_scattering.disk_modes import DiskScattering, scatter_disk
from corner_scattering.forward_scattering.far_field import (
	FarFieldPattern,
	equispaced_angles,
	far_field,
	far_field_constant,
	scattered_field_at,
)
from corner_scattering.forward_scattering.green import (
	cell_self_integral,
	fundamental_solution,
	fundamental_solution_gradient,
)
from corner_scattering.forward_scattering.incident import (
	incident_from_kernel,
	plane_wave,
	unit_direction,
)
from corner_scattering.forward_scattering.solver import (
	LippmannSchwingerOperator,
	ScatterResult,
	solve_total_field,
)
