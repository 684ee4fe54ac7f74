from corner_scattering.cone_cgo.bounds import (
	SWEEP_HEADER,
	BoundCheck,
	InfSupResult,
	best_zeta,
	bound_curve,
	decay_upper_check,
	infsup_constant,
	infsup_search,
	lower_bound_check,
	lower_bound_sweep,
	mean_value_check,
	tau0,
)
from corner_scattering.cone_cgo.laplace import (
	MonomialPoly,
	Orthant,
	laplace_transform,
	sector_transform_basis,
)
from corner_scattering.cone_cgo.zeta import (
	AdmissibleZeta,
	CgoCurve,
	admissible_arc,
	make_zeta,
	rho_at,
	zeta_from_angle,
)
