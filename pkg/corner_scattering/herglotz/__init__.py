from corner_scattering.herglotz.fitting import KernelFit, fit_kernel
from corner_scattering.herglotz.kernel import (
	HerglotzKernel,
	derivative_at,
	evaluate,
	herglotz_basis,
	incident_from_kernel,
	normalize,
	plane_wave_kernel,
	taylor_coefficients,
	taylor_remainder_bound,
	translated,
	translation_matrix,
)
from corner_scattering.herglotz.order import (
	VanishingOrder,
	leading_polynomial,
	sample_vanishing_kernels,
	synthesize_vanishing_kernel,
	vanishing_order,
)
from corner_scattering.herglotz.polynomial import HomHarmonicPoly
