__author__ = 'pyfbmclt developers'

from .lab import FbmLab
from .exceptions import *
from .types import *
from .constants import *
from .fbm import covariance, fgn_increments, generate_path, generate_paths
from .limit_constant import c_closed, c_integral, verify_constant
from .functions import c_beta_d, from_spec, gaussian_diff, norm_direct, \
    norm_fourier, odd_gaussian
from .gaussian_analysis import cov_matrix, det_bound_probe, first_order_mean, \
    functional_variance, interval_moment, lnd_ratio, moment_growth_check, \
    phase_factorisation_probe
from .clt_lab import clt_acceptance, even_moment_check, functional_sample, \
    first_order_sample, ks_two_sample, local_time_estimate, limit_law_sample, \
    odd_moment_check, increment_moment_scaling
