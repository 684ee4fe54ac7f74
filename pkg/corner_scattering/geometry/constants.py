MODULE_NAME = "geometry"

# radius R of the domain of interest B_R
DOMAIN_OF_INTEREST_RADIUS = 2.0

# build_grid node cap
DEFAULT_MAX_NODES = 200_000

# relative to the domain diameter
CONVEXITY_TOL = 1e-12
BOUNDARY_TOL = 1e-10

# ball_average quadrature
BALL_RADIAL_NODES = 24
BALL_ANGULAR_PANELS = 8
BALL_ANGULAR_NODES = 16

# boundedness probe for contrast functions
CONTRAST_PROBE_H = 0.05
