from corner_scattering.specfun.bessel import (
	bessel_j,
	bessel_j_prime,
	bessel_y,
	bessel_y_prime,
	hankel1,
	hankel1_prime,
	plane_wave_partial_sum,
)
