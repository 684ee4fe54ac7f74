from corner_scattering.geometry.domain import (
	ConeAtVertex,
	DiskDomain,
	Domain,
	PolygonDomain,
	cone_at_vertex,
	min_vertex_edge_distance,
)
from corner_scattering.geometry.potential import (
	AdmissibilityReport,
	Contrast,
	PotentialSpec,
	check_admissibility,
	load_potential_spec,
)
from corner_scattering.geometry.quadrature import (
	BallAverage,
	QuadratureGrid,
	ball_average,
	build_grid,
)
