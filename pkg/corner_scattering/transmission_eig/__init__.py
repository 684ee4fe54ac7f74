from corner_scattering.transmission_eig.disk import (
	disk_determinant,
	disk_eigenfunction,
	disk_eigenvalues,
	refractive_index,
	scan_grid,
)
from corner_scattering.transmission_eig.eigenpair import (
	SCAN_HEADER,
	SingularValueScan,
	TransmissionEigenpair,
)
from corner_scattering.transmission_eig.fields import RadialModeField, SourceField
from corner_scattering.transmission_eig.mfs import (
	CollocationProblem,
	charge_curve,
	collocation_problem,
	mfs_matrix,
	reconstruct_eigenfunction,
	scan_eigenvalues,
)
from corner_scattering.transmission_eig.profile import (
	PROFILE_HEADER,
	CornerVerdict,
	VanishingProfile,
	corner_criterion,
	vanishing_profile,
)
