import unittest

import numpy as np
import pytest

from rmcorr.diagnostics import batch_estimate, moment_estimates, run_replicates
from rmcorr.distributions import DistributionSpec
from rmcorr.exceptions import InvalidParameter
from rmcorr.population import build_banded_toeplitz, build_from_sparse_root, build_identity


class GaussianMomentTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls.n = 64
        cls.report = moment_estimates(build_identity(40), DistributionSpec.gaussian(), cls.n, 30, 123)

    def test_fourth_moment(self):
        est = self.report.n_E_Y4
        self.assertTrue(est.within(3 / (self.n + 2)))
        self.assertTrue(0 <= est.mean <= 1)

    def test_cross_moment(self):
        self.assertTrue(self.report.n_E_Y1Y2.within(0.0))

    def test_mixed_second_sum(self):
        # sum_k Y_k1^2 has mean p/n = 0.625 under the identity model
        self.assertGreater(self.report.mixed_second_sum.mean, 0.625**2)
        self.assertLess(self.report.mixed_second_sum.mean, 1.0)

    def test_serialization(self):
        d = self.report.to_dict()
        self.assertEqual(d["replicates"], 30)
        self.assertIn("stderr", d["n_E_Y4"])


def test_deterministic_given_seed():
    a = moment_estimates(build_identity(5), DistributionSpec.student_t(5), 30, 4, 9)
    b = moment_estimates(build_identity(5), DistributionSpec.student_t(5), 30, 4, 9, threads=2)
    assert a.to_dict() == b.to_dict()


def test_needs_two_replicates():
    with pytest.raises(InvalidParameter):
        moment_estimates(build_identity(5), DistributionSpec.gaussian(), 30, 1, 0)


def test_batch_estimate():
    est = batch_estimate(np.arange(20, dtype=float), batches=4)
    assert est.mean == pytest.approx(9.5)
    assert est.stderr > 0
    assert est.replicates == 20
    assert isinstance(batch_estimate([1j, 2j]).mean, complex)


def test_replicates_keep_order():
    assert run_replicates(lambda i: i * i, 6, threads=3) == [0, 1, 4, 9, 16, 25]


@pytest.mark.slow
def test_dependent_first_moment_and_fourth_moment_trend():
    model_small = build_from_sparse_root(4, (0.5,))
    spec = DistributionSpec.gaussian()
    r64 = moment_estimates(model_small, spec, 64, 200, 31)
    r256 = moment_estimates(model_small, spec, 256, 200, 32)
    assert r64.n_max_first_moment.mean <= 3 * r64.n_max_first_moment.stderr
    assert r256.n_E_Y4.mean < r64.n_E_Y4.mean


@pytest.mark.slow
@pytest.mark.parametrize("alpha, limit", [(1.0, 0.5), (1.5, 0.25)])
def test_heavy_tail_fourth_moment_limit(alpha, limit):
    report = moment_estimates(build_identity(50), DistributionSpec.pareto(alpha), 4096, 40, 2)
    assert abs(report.n_E_Y4.mean - limit) <= 0.05


def test_mixed_second_sum_for_banded_model():
    report = moment_estimates(build_banded_toeplitz(50, (0.5, 0.25)), DistributionSpec.gaussian(), 100, 20, 41)
    assert 0 < report.mixed_second_sum.mean <= 5
