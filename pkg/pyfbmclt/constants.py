__author__ = 'pyfbmclt developers'

#
# Lab Constants
#
NAME = "fBm additive functional CLT laboratory (pyfbmclt)"
VERSION = "0.3.0"
REPORT_SCHEMA = "pyfbmclt.report/1"

#
# Environment switches
#
ENV_DEBUG = "DEBUG"
ENV_DEBUG_VERBOSE = "DEBUG_VERBOSE"
ENV_OUTPUT_DIR = "PYFBMCLT_OUTPUT_DIR"
ENV_FULL_TESTS = "PYFBMCLT_FULL"

#
# Generator
#
# eigenvalues above -EIGEN_CLIP_RATIO * max(eig) are clipped to zero
EIGEN_CLIP_RATIO = 1e-12
MAX_EMBEDDING_DOUBLINGS = 8

#
# Quadrature
#
QUAD_EPSABS = 1e-10
QUAD_EPSREL = 1e-12
QUAD_MAX_EVALUATIONS = 100000
# QUADPACK evaluates a 21 point Kronrod rule per subinterval
QUAD_LIMIT = QUAD_MAX_EVALUATIONS // 21
ZERO_INTEGRAL_TOL = 1e-9
NORM_AGREEMENT_TOL = 1e-6
PHASE_FACTOR_TOL = 1e-6
# |f| < SUPPORT_TAIL beyond the effective support radius
SUPPORT_TAIL = 1e-15
MAX_SIMPLEX_DIMENSION = 3
MAX_DET_PROBE_TIMES = 4

#
# Monte Carlo
#
GRID_FACTOR = 16            # M >= GRID_FACTOR * n
KERNEL_WIDTH_FACTOR = 4.0   # default epsilon = KERNEL_WIDTH_FACTOR * delta^H
ODD_MOMENT_SE = 4.0
# relative finite-n allowance of the even moment check
EVEN_MOMENT_BAND = 0.15
VARIANCE_RATIO_BAND = (0.85, 1.15)
KS_MIN_PVALUE = 0.01
SLOPE_SLACK = 0.15
SCALING_WIDTHS = (0.125, 0.25, 0.5, 1.0)
# the n-doubling diagnostic passes on a strict majority of repetitions
DOUBLING_REPETITIONS = 10

#
# Sample set tags
#
TAG_FUNCTIONAL = 'functional'
TAG_FUNCTIONAL_DIRECT = 'functional_direct'
TAG_FIRST_ORDER = 'first_order'
TAG_LOCAL_TIME = 'local_time'
TAG_LIMIT_LAW = 'limit_law'
SAMPLE_TAGS = (
    TAG_FUNCTIONAL,
    TAG_FUNCTIONAL_DIRECT,
    TAG_FIRST_ORDER,
    TAG_LOCAL_TIME,
    TAG_LIMIT_LAW,
)

#
# Subcommands
#
CONSTANTS = "ConstantsCommand"
NORM = "NormCommand"
MOMENTS = "MomentsCommand"
SIMULATE = "SimulateCommand"
CLT_TEST = "CltTestCommand"
VERIFY = "VerifyCommand"

SUBCOMMANDS = {
    'constants': CONSTANTS,
    'norm': NORM,
    'moments': MOMENTS,
    'simulate': SIMULATE,
    'clt-test': CLT_TEST,
    'verify': VERIFY,
}

NORM_METHOD_DIRECT = 'direct'
NORM_METHOD_FOURIER = 'fourier'
NORM_METHOD_BOTH = 'both'
NORM_METHODS = (
    NORM_METHOD_DIRECT,
    NORM_METHOD_FOURIER,
    NORM_METHOD_BOTH,
)

TIER_QUICK = 'quick'
TIER_FULL = 'full'
TIERS = (
    TIER_QUICK,
    TIER_FULL,
)

# Monte Carlo budgets of the verify tiers
VERIFY_BUDGETS = {
    TIER_QUICK: {
        'generator_paths': 2000,
        'search_samples': 1000,
        'local_time_paths': 0,
        'clt_paths': 0,
    },
    TIER_FULL: {
        'generator_paths': 10000,
        'search_samples': 10000,
        'local_time_paths': 10000,
        'clt_paths': 2000,
    },
}

#
# Exit status
#
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

#
# Run defaults, every RunConfig field starts here
#
DEFAULTS = {
    'H': 0.6,
    'd': 1,
    'f': 'gaussian-diff:1,2',
    'beta': None,            # None means 1/H - d
    'method': NORM_METHOD_BOTH,
    'intervals': '0,1',
    'm': '2',
    'n': 256,
    't': 1.0,
    'paths': 2000,
    'grid': 2 ** 14,
    'epsilon': None,         # None means KERNEL_WIDTH_FACTOR * delta^H
    'tol': 1e-8,
    'seed': 20140101,
    'out': None,
    'csv': None,
    'workers': 1,
    'conjecture': False,
    'tier': TIER_QUICK,
}
