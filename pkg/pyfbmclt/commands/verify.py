__author__ = 'pyfbmclt developers'

import math

from .base import BaseCommand
from ..clt_lab import clt_acceptance, even_moment_check, local_time_study, \
    n_doubling_diagnostic, odd_moment_check
from ..constants import NORM_AGREEMENT_TOL, TIER_FULL, TIERS, VERIFY_BUDGETS
from ..exceptions import PyFbmCltException, PyFbmCltUsageException
from ..fbm import exactness_check, stationarity_check
from ..functions import c_beta_d, gaussian_diff, norm_direct, norm_fourier, \
    norm_gap, odd_gaussian
from ..gaussian_analysis import det_bound_search, phase_factorisation_probe, \
    lnd_search, interval_moment
from ..limit_constant import c_closed, c_integral, constant_grid, hurst_grid
from ..types import HurstModel, TimeConfig
from ..utils import derive_seed

CONSTANT_D = (1, 2, 3)
NORM_BETAS = (0.25, 0.5, 2.0 / 3.0, 0.9)
MOMENT_GRID = {1: (0.55, 0.7, 0.9), 2: (0.35, 0.4, 0.45)}
MOMENT_TIMES = (1.0, 2.0)
PHASE_MODELS = ((0.6, 1), (0.4, 2))
PHASE_N = (1, 2, 4, 8)
PHASE_Y = (0.5, 1.0, 2.0)
GENERATOR_H = (0.55, 0.6, 0.75, 0.9)
LOCAL_TIME_GRID = 2 ** 16
LOCAL_TIME_EPSILON = 0.02
CLT_N = 256
CLT_GRID = 2 ** 14
DOUBLING_N = (128, 512)


#
# Invariant suite
#
class VerifyCommand(BaseCommand):

    def _suites(self):
        suites = [
            ('constants', self._constants),
            ('norms', self._norms),
            ('moments', self._moments),
            ('phase_factorisation', self._phase),
            ('nondeterminism', self._nondeterminism),
            ('generator', self._generator),
        ]
        if self._tier == TIER_FULL:
            suites += [
                ('local_time', self._local_time),
                ('clt', self._clt),
            ]
        return suites

    def _execute(self):
        self._tier = self._config.tier
        if self._tier not in TIERS:
            raise PyFbmCltUsageException(
                "tier must be one of %s, got %r"
                % ('|'.join(TIERS), self._tier), [])
        self._budget = VERIFY_BUDGETS[self._tier]
        self._seed = int(self._config.seed)
        self._result('tier', self._tier)
        for index, (name, suite) in enumerate(self._suites()):
            try:
                suite(derive_seed(self._seed, index))
            except PyFbmCltException as e:
                self._result(name + '_error', str(e))
                self._check(name, False)

    def _constants(self, seed):
        rows = constant_grid(hurst_grid(), CONSTANT_D, tol=self._config.tol)
        anchor = c_integral(HurstModel(0.5, 1)).value
        self._result('constant_grid', rows)
        self._result('c_half_one', anchor)
        self._check('constant_identity', all(row['passed'] for row in rows))
        self._check('constant_anchor', abs(anchor - 2.0) < 1e-10)

    def _norms(self, seed):
        rows = []
        cases = [(gaussian_diff(1.0, 2.0), beta) for beta in NORM_BETAS] + \
            [(odd_gaussian(), beta) for beta in NORM_BETAS]
        if self._tier == TIER_FULL:
            cases.append((gaussian_diff(1.0, 2.0, 2), 0.5))
        for f, beta in cases:
            gap = norm_gap(norm_direct(f, beta), norm_fourier(f, beta))
            rows.append({'f': f.label, 'd': f.dim, 'beta': beta,
                         'relative_gap': gap})
        anchor = c_beta_d(1.0, 1).value
        self._result('norm_identity', rows)
        self._result('c_one_one', anchor)
        self._check('norm_identity', all(row['relative_gap']
                                         < NORM_AGREEMENT_TOL
                                         for row in rows))
        self._check('c_beta_anchor', abs(anchor - math.pi) < 1e-8)

    def _moments(self, seed):
        rows = []
        closed_ok = True
        for d, values in sorted(MOMENT_GRID.items()):
            for H in values:
                model = HurstModel(H, d)
                for t in MOMENT_TIMES:
                    value = interval_moment(
                        TimeConfig([(0.0, t)], [2], model)).value
                    closed = (2.0 * math.pi) ** (-d / 2.0) \
                        * t ** (1.0 - model.hd) / (1.0 - model.hd)
                    gap = abs(value - closed)
                    closed_ok = closed_ok and gap < 1e-8 * max(1.0, closed)
                    rows.append({'H': H, 'd': d, 't': t, 'moment': value,
                                 'closed_form': closed})
        odd = interval_moment(TimeConfig([(0.0, 1.0), (1.0, 2.0)], [3, 2],
                                        HurstModel(0.6, 1))).value
        self._result('moment_closed_form', rows)
        self._check('moment_closed_form', closed_ok)
        self._check('moment_odd_zero', odd == 0.0)

    def _phase(self, seed):
        rows = []
        n_values = PHASE_N if self._tier == TIER_FULL else PHASE_N[::3]
        y_values = PHASE_Y if self._tier == TIER_FULL else PHASE_Y[::2]
        for H, d in PHASE_MODELS:
            model = HurstModel(H, d)
            for n in n_values:
                for y in y_values:
                    direct, factorized = phase_factorisation_probe(model, n, y)
                    rows.append({'H': H, 'd': d, 'n': n, 'y': y,
                                 'direct': direct.value,
                                 'factorized': factorized.value})
        self._result('phase_factorisation', rows)
        self._check('phase_factorisation', True)

    def _nondeterminism(self, seed):
        samples = self._budget['search_samples']
        model = HurstModel(0.6, 1)
        lnd = lnd_search(model, samples, 6, seed)
        det = det_bound_search(model, samples, 4, derive_seed(seed, 1))
        self._result('lnd_search', lnd)
        self._result('det_bound_search', det)
        self._check('lnd_positive', lnd['min_ratio'] > 0.0)
        self._check('det_bound', det['max'] < 1e3)

    def _generator(self, seed):
        paths = self._budget['generator_paths']
        exact = [exactness_check(HurstModel(H, 1), 16, paths,
                                 derive_seed(seed, i))
                 for i, H in enumerate(GENERATOR_H)]
        stationary = stationarity_check(HurstModel(0.75, 1), 64, paths,
                                        derive_seed(seed, len(GENERATOR_H)))
        self._result('generator_exactness', exact)
        self._result('generator_stationarity', stationary)
        self._check('generator_exactness', all(r['passed'] for r in exact))
        self._check('generator_stationarity', stationary['passed'])

    def _local_time(self, seed):
        study = local_time_study(HurstModel(0.6, 1), 1.0, LOCAL_TIME_GRID,
                                 self._budget['local_time_paths'], seed,
                                 epsilon=LOCAL_TIME_EPSILON, halvings=2,
                                 workers=int(self._config.workers))
        study.pop('sample')
        self._result('local_time', study)
        self._check('local_time_bias_shrinks', study['bias_shrinks'])
        self._check('local_time_mean', abs(study['mean_z']) < 3.0)
        self._check('local_time_second_moment',
                    abs(study['second_moment_z']) < 3.0)

    def _clt(self, seed):
        model = HurstModel(0.6, 1)
        f = gaussian_diff(1.0, 2.0)
        paths = self._budget['clt_paths']
        workers = int(self._config.workers)
        report, _ = clt_acceptance(f, model, 1.0, CLT_N, CLT_GRID, paths,
                                   seed, workers=workers)
        odd = odd_moment_check(f, model, CLT_N, 1.0, CLT_GRID, paths,
                               derive_seed(seed, 1), workers=workers)
        even = even_moment_check(f, model, CLT_N, 1.0, CLT_GRID, paths,
                                 derive_seed(seed, 2), workers=workers)
        low, high = DOUBLING_N
        doubling = n_doubling_diagnostic(f, model, 1.0, low, high, CLT_GRID,
                                         paths, derive_seed(seed, 3),
                                         workers=workers)
        self._result('clt', report)
        self._result('clt_odd_moments', odd)
        self._result('clt_even_moments', even)
        self._result('n_doubling', doubling)
        self._result('c_closed', c_closed(model))
        self._check('clt_variance_ratio', report['checks']['variance_ratio'])
        self._check('clt_finite_n_variance',
                    report['checks']['finite_n_variance'])
        self._check('clt_odd_moments', odd['passed'])
        self._check('clt_n_doubling', doubling['passed'])
        # KS and even moments at this n carry the finite-n bias, see
        # results.clt.finite_n
        self._result('clt_ks_passed', report['checks']['ks'])
