MODULE_NAME = "forward_scattering"

DEFAULT_TOL = 1e-8

# grids above this size are applied block by block and cannot use the LU fallback
MAX_DENSE_NODES = 4096
BLOCK_ROWS = 512

GMRES_RESTART = 60
# outer restart cycles
GMRES_MAXITER = 50

DEFAULT_FAR_FIELD_DIRECTIONS = 128
MIN_FAR_FIELD_DIRECTIONS = 64
