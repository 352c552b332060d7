import unittest

import numpy as np
import pytest

from rmcorr.distributions import DistributionSpec
from rmcorr.ensemble import generate
from rmcorr.exceptions import ContractError, DomainError, InvalidParameter
from rmcorr.limit_laws import MPLaw
from rmcorr.population import build_identity
from rmcorr.spectra import (
    DiscreteMeasure,
    EmpiricalSpectrum,
    esd_cdf,
    esd_quantile,
    ks_distance,
    quantile_table,
    stieltjes_empirical,
    symmetric_eigenvalues,
)

from common import gaussian_identity, z_grid


def _spectrum(values):
    return symmetric_eigenvalues(np.diag(values))


class EsdTests(unittest.TestCase):
    def setUp(self) -> None:
        self.spectrum = _spectrum([3.0, 1.0, 2.0, 2.0])

    def test_sorted_descending(self):
        np.testing.assert_array_equal(self.spectrum.eigenvalues, [3.0, 2.0, 2.0, 1.0])
        self.assertEqual(self.spectrum.largest, 3.0)
        self.assertEqual(self.spectrum.smallest, 1.0)
        self.assertEqual(self.spectrum.mean, 2.0)

    def test_cdf(self):
        self.assertEqual(esd_cdf(self.spectrum, 0.5), 0.0)
        self.assertEqual(esd_cdf(self.spectrum, 2.0), 0.75)
        self.assertEqual(esd_cdf(self.spectrum, 10.0), 1.0)

    def test_quantile(self):
        self.assertEqual(esd_quantile(self.spectrum, 0.25), 1.0)
        self.assertEqual(esd_quantile(self.spectrum, 0.5), 2.0)
        self.assertEqual(esd_quantile(self.spectrum, 0.9), 3.0)
        with self.assertRaises(InvalidParameter):
            esd_quantile(self.spectrum, 1.0)

    def test_quantile_just_above_a_level(self):
        spectrum = _spectrum(np.arange(1.0, 11.0))
        self.assertEqual(esd_quantile(spectrum, 0.3), 3.0)
        self.assertEqual(esd_quantile(spectrum, 0.1 * 3), 3.0)
        self.assertEqual(esd_quantile(spectrum, 0.3 + 5e-11), 4.0)
        self.assertEqual(esd_quantile(spectrum, 0.999), 10.0)

    def test_quantile_table(self):
        df = quantile_table(self.spectrum, [0.25, 0.5])
        self.assertListEqual(list(df.columns), ["q", "value"])
        self.assertListEqual(df["value"].tolist(), [1.0, 2.0])

    def test_stieltjes(self):
        z = 1j
        expected = np.mean(1 / (np.array([3.0, 2.0, 2.0, 1.0]) - z))
        self.assertAlmostEqual(stieltjes_empirical(self.spectrum, z), expected)
        with self.assertRaises(DomainError):
            stieltjes_empirical(self.spectrum, 1.0)

    def test_frame(self):
        df = self.spectrum.to_frame()
        self.assertListEqual(list(df.columns), ["index", "eigenvalue"])
        self.assertListEqual(df["eigenvalue"].tolist(), [3.0, 2.0, 2.0, 1.0])

    def test_ks_against_own_measure(self):
        measure = DiscreteMeasure.from_values([3.0, 1.0, 2.0, 2.0])
        self.assertEqual(ks_distance(self.spectrum, measure.cdf), 0.0)


def test_asymmetric_input():
    with pytest.raises(ContractError):
        symmetric_eigenvalues(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_verified_eigenvalues():
    ens = gaussian_identity(30, 60)
    spec = ens.spectrum(verify=True)
    assert isinstance(spec, EmpiricalSpectrum)
    assert spec.source_dim == 30
    assert abs(spec.mean - 1.0) < 1e-10


def test_measure_merging():
    m = DiscreteMeasure.from_values([1.0, 1.0 + 1e-12, 2.0])
    assert len(m) == 2
    np.testing.assert_allclose(m.weights, [2 / 3, 1 / 3])
    assert m.has_atom_at(2.0)
    assert not m.has_atom_at(0.0)
    assert m.cdf(1.5) == pytest.approx(2 / 3)


def test_invalid_measure():
    with pytest.raises(InvalidParameter):
        DiscreteMeasure(np.array([1.0, 2.0]), np.array([0.5, 0.6]))


@pytest.mark.slow
@pytest.mark.parametrize("spec_name", ["gaussian", "t3"])
def test_ks_to_marchenko_pastur(spec_name):
    spec = DistributionSpec.gaussian() if spec_name == "gaussian" else DistributionSpec.student_t(3)
    ens = generate(build_identity(1000), spec, 2000, 2024)
    assert ks_distance(ens.spectrum(), MPLaw(0.5).cdf) <= 0.05


def test_stieltjes_bounds():
    spectrum = gaussian_identity(40, 80, 11).spectrum()
    for z in z_grid():
        s = stieltjes_empirical(spectrum, z)
        assert s.imag > 0
        assert abs(s) <= 1 / z.imag + 1e-12


def test_eigen_residuals_on_random_matrices():
    rng = np.random.default_rng(314)
    for size in rng.integers(1, 301, size=100):
        g = rng.standard_normal((size, size))
        a = (g + g.T) / 2
        spectrum = symmetric_eigenvalues(a, verify=True)
        np.testing.assert_allclose(spectrum.ascending, np.linalg.eigvalsh(a), atol=1e-8 * max(1.0, np.abs(a).sum()))
