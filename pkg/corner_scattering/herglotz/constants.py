MODULE_NAME = "herglotz"

# largest Fourier truncation M of a kernel
MAX_TRUNCATION = 200

# |gamma| cap for derivative_at
MAX_DERIVATIVE_ORDER = 12

# points on S^1 for the norm of homogeneous harmonic polynomials
POLY_NORM_POINTS = 512

# order detection threshold, relative to ||g||
ORDER_TOL = 1e-8
ORDER_MAX = 12

# fit_kernel default regularization, relative to the largest normal-matrix diagonal
DEFAULT_LAMBDA_SCALE = 1e-10
# condition number above which an unregularized fit is flagged
CONDITION_WARNING = 1e12

# extra modes used when translating kernels between expansion centers
TRANSLATION_PADDING = 30
