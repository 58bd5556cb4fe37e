TOOL_NAME = "crossover"
TOOL_VERSION = "0.3.0"

DEFAULT_K0_PER_ANGSTROM = 1.41
# default sweep density, in units of k0^3
DEFAULT_DENSITY = 2e-2

TOL_GAP = 1e-10
TOL_NUMBER = 1e-8
GAP_RESOLUTION = 1e-12
ITERATION_BUDGET = 500

FOCK_MAX_MODES = 12
# bounds of <eta>, pairs per collective mode
ETA_MEAN_RANGE = (0.0, 2.0)
BOUNDARY_RTOL = 1e-9

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_NOT_CONVERGED = 2
EXIT_BAD_CONFIG = 3

FLOAT_FORMAT = ".17g"
