import time
import unittest
import warnings

import pytest

from rmcorr.diagnostics import laplace_cross_moment, laplace_fourth_moment, moment_estimates
from rmcorr.distributions import DistributionSpec, LaplaceMode, LaplaceProfile, laplace_profile
from rmcorr.exceptions import DegradedPrecisionWarning
from rmcorr.population import build_identity


class GaussianOracleTests(unittest.TestCase):
    def test_fourth_moment(self):
        spec = DistributionSpec.gaussian()
        for n in (4, 50, 256):
            value, err = laplace_fourth_moment(spec, n, full_output=True)
            self.assertAlmostEqual(value, 3 / (n * (n + 2)), delta=1e-10)
            self.assertLessEqual(err, 1e-10)
        self.assertAlmostEqual(laplace_fourth_moment(spec, 4), 0.125, delta=1e-10)

    def test_cross_moment_vanishes(self):
        self.assertEqual(laplace_cross_moment(DistributionSpec.gaussian(), 10), 0.0)
        self.assertEqual(laplace_cross_moment(DistributionSpec.student_t(3), 10), 0.0)


def test_fourth_moment_bounds():
    for spec in [DistributionSpec.student_t(5), DistributionSpec.centered_exponential()]:
        for n in (8, 32):
            value = laplace_fourth_moment(spec, n)
            assert 0 < value <= 1 / n


def test_cross_moment_for_skewed_law():
    spec = DistributionSpec.centered_exponential()
    v100 = laplace_cross_moment(spec, 100)
    v400 = laplace_cross_moment(spec, 400)
    assert v100 > 0
    assert 400 * v400 < 100 * v100


def test_monte_carlo_profile_warns():
    spec = DistributionSpec.gaussian()
    profile = laplace_profile(spec, LaplaceMode.MONTE_CARLO, draws=20_000, seed=1)
    with pytest.warns(DegradedPrecisionWarning) as record:
        value = laplace_fourth_moment(spec, 10, profile=profile)
    assert record[0].message.stderr > 0
    assert value == pytest.approx(3 / 120, rel=0.1)


def test_quadrature_profile_does_not_warn():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        laplace_fourth_moment(DistributionSpec.gaussian(), 20)


@pytest.mark.slow
@pytest.mark.parametrize("spec", [DistributionSpec.gaussian(), DistributionSpec.student_t(3)], ids=lambda s: s.label)
@pytest.mark.parametrize("n", [64, 256])
def test_quadrature_agrees_with_simulation(spec, n):
    report = moment_estimates(build_identity(50), spec, n, 40, 77)
    assert report.n_E_Y4.within(n * laplace_fourth_moment(spec, n))


@pytest.mark.parametrize("alpha", [1.0, 1.5, 3.0])
def test_pareto_fourth_moment_is_fast_and_accurate(alpha):
    spec = DistributionSpec.pareto(alpha)
    start = time.perf_counter()
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        values = {n: laplace_fourth_moment(spec, n, full_output=True) for n in (64, 1024)}
    assert time.perf_counter() - start < 10.0
    for n, (value, err) in values.items():
        assert err <= 1e-10
        assert 0 < value <= 1 / n
    if alpha > 2:
        assert 1024 * values[1024][0] < 64 * values[64][0]


def test_pareto_fourth_moment_limit():
    # n E[Y^4] -> 1 - alpha / 2 for alpha < 2
    assert abs(1024 * laplace_fourth_moment(DistributionSpec.pareto(1.0), 1024) - 0.5) <= 0.05


def test_inconsistent_profile_is_reported_not_clamped():
    spec = DistributionSpec.gaussian()
    exact = laplace_profile(spec)
    broken = LaplaceProfile(
        spec, exact.phi, exact.phi_d1, lambda t: 10 * exact.phi_d2(t), exact.psi, LaplaceMode.CLOSED_FORM
    )
    with pytest.warns(DegradedPrecisionWarning):
        value = laplace_fourth_moment(spec, 4, profile=broken)
    assert value == pytest.approx(1.25, abs=1e-9)
