MODULE_NAME = "experiments"

DEFAULT_OUTPUT_DIR = "out"
DEFAULT_TRUNCATION = 20
DEFAULT_GRID_H = 0.05
DEFAULT_SEED = 0

MANIFEST_FILE = "manifest.json"

# exit codes of the command line
EXIT_PASS = 0
EXIT_ERROR = 1
EXIT_FAIL = 2

# non-scattering at a disk eigenvalue
E1_K_RANGE = (1.0, 11.0)
E1_M_MAX = 6
E1_DETUNE = 0.05
E1_CONTRAST_RATIO = 1e-3
E1_NOISE_LEVELS = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
E1_SLOPE_RANGE = (0.8, 1.2)
# kernel norms along the sequence stay within this factor of the exact kernel
E1_KERNEL_GROWTH = 10.0

# corner vanishing on polygons
E2_K_RANGE = (3.0, 12.0)
E2_N_EIGEN = 2
E2_N_CHARGE = 120
E2_N_RADII = 8
# radii run from this fraction of the vertex-edge distance down to 1e-3 of it
E2_MAX_RADIUS_FRACTION = 0.5
E2_MIN_RADIUS_FRACTION = 1e-3

# far-field floor
E3_ORDERS = (0, 1, 2)
E3_ENSEMBLE = 16
E3_FLOOR_MARGIN = 1e3
E3_ABSOLUTE_FLOOR = 1e-12
# contrast of the control run, small enough to sit at solver noise but not short-circuited
E3_CONTROL_CONTRAST = 1e-12
E3_SOLVER_TOL = 1e-10
E3_ENVELOPE_POINTS = 41

# cone bound
E4_DEGREES = (0, 1, 2, 3, 4)
E4_SAMPLES = 64
E4_TAUS = 20
E4_TAU0_FACTOR = 4.0
