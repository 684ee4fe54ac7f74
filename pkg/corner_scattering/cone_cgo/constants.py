MODULE_NAME = "cone_cgo"

# angular quadrature of sector transforms
QUAD_RTOL = 1e-10
QUAD_MAX_EVALS = 1_000_000
# nodes per Gauss-Kronrod interval in scipy's quad_vec
GK_NODES = 21

BEST_ZETA_GRID = 64
INFSUP_RESOLUTION = 32

# relative slack on the upper and lower bound comparisons
BOUND_SLACK = 1e-8

# tolerance of the admissible-zeta invariants
ZETA_TOL = 1e-12

# Re rho . e must fall below -INTEGRABLE_TOL * |Re rho| on every edge direction e
INTEGRABLE_TOL = 1e-12
