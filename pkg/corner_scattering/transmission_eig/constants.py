MODULE_NAME = "transmission_eig"

# disk determinant
ROOT_XTOL = 1e-13
DETERMINANT_TOL = 1e-10
EIGENFUNCTION_DET_TOL = 1e-8
DEFAULT_SCAN_STEP = 0.01
RADIAL_QUAD_NODES = 64
# sup |v| over the disk, sampled on this many radii
SUP_SAMPLES = 256

# certificates
NORMALIZATION_TOL = 1e-8
DISK_RESIDUAL_TOL = 1e-9
MFS_RESIDUAL_TOL = 1e-4

# collocation
CHARGE_OFFSET = 0.35
DEFAULT_N_CHARGE = 60
# column-pivoted QR drops columns below this fraction of the leading diagonal entry
RANK_TOL = 1e-13

# detection
THRESHOLD_RATIO = 50
GOLDEN_XTOL = 1e-6
MULTIPLICITY_GAP = 1e-4
RECONSTRUCT_SIGMA_TOL = 1e-3

# normalization grid spacing, relative to the diameter
NORM_GRID_FRACTION = 0.02

# corner criterion
CORNER_RATIO = 0.1
