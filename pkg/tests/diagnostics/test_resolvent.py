import unittest

import numpy as np
import pytest

from rmcorr.diagnostics import average_w, batch_estimate, compute_w, resolvent_D
from rmcorr.distributions import DistributionSpec
from rmcorr.ensemble import generate
from rmcorr.exceptions import DomainError
from rmcorr.population import build_identity

from common import gaussian_banded, gaussian_identity


class SingleRowTests(unittest.TestCase):
    def setUp(self) -> None:
        self.ens = gaussian_identity(1, 12, 4)

    def test_resolvent_is_scaled_identity(self):
        d = resolvent_D(self.ens, 1j)
        np.testing.assert_allclose(d, 1j * np.eye(12), atol=1e-14)

    def test_w_vanishes(self):
        diag = compute_w(self.ens, 1j)
        self.assertAlmostEqual(diag.W_n, 0.0, delta=1e-12)
        self.assertAlmostEqual(diag.trace_D_over_n, 1j, delta=1e-12)


class ResolventContractTests(unittest.TestCase):
    def setUp(self) -> None:
        self.ens = gaussian_banded(30, 40, 8)

    def test_inverse(self):
        z = 0.7 + 0.5j
        d = resolvent_D(self.ens, z)
        rest = self.ens.Y[1:]
        a = rest.T @ rest - z * np.eye(self.ens.n)
        np.testing.assert_allclose(d @ a, np.eye(self.ens.n), atol=1e-8)

    def test_norm_bound(self):
        for im in (0.5, 1.0, 2.0):
            d = resolvent_D(self.ens, complex(1.0, im))
            self.assertLessEqual(np.linalg.norm(d, 2), 1 / im + 1e-8)

    def test_domain(self):
        with self.assertRaises(DomainError):
            resolvent_D(self.ens, 1.0)


@pytest.mark.parametrize("p, n", [(20, 40), (50, 40)])
@pytest.mark.parametrize("im", [0.5, 1.0, 2.0])
def test_w_decomposition_and_bound(p, n, im):
    for seed in range(5):
        ens = gaussian_identity(p, n, seed)
        z = complex(0.5, im)
        diag = compute_w(ens, z)
        assert abs(diag.W_n - (diag.W_n1 + diag.W_n2)) <= 1e-10
        assert abs(diag.W_n) <= 2 / im + 1e-10
        assert diag.bound_check


def test_average_over_rows():
    ens = gaussian_identity(8, 20, 3)
    rows = [1, 2, 3]
    avg = average_w(ens, 1j, rows)
    expected = np.mean([compute_w(ens, 1j, k).W_n for k in rows])
    assert abs(avg.W_n - expected) <= 1e-12
    assert avg.bound_check


def test_report_serializes():
    d = compute_w(gaussian_identity(5, 10), 1j).to_dict()
    assert d["z"] == [0.0, 1.0]
    assert isinstance(d["bound_check"], bool)


@pytest.mark.slow
def test_bound_on_many_ensembles():
    for p, n in [(100, 200), (250, 200)]:
        for seed in range(50):
            diag = compute_w(gaussian_identity(p, n, seed), 1j)
            assert abs(diag.W_n) <= 2
            assert abs(diag.W_n - diag.W_n1 - diag.W_n2) <= 1e-10


@pytest.mark.parametrize("spec", [DistributionSpec.gaussian(), DistributionSpec.student_t(3)], ids=lambda s: s.label)
def test_first_part_is_centered_for_symmetric_laws(spec):
    model = build_identity(100)
    values = [compute_w(generate(model, spec, 200, 17, 0, r), 1j).W_n1 for r in range(40)]
    est = batch_estimate(values)
    assert est.within(0.0, 3)


@pytest.mark.slow
def test_w_shrinks_with_size():
    def mean_abs_w(p, n):
        return np.mean([abs(compute_w(gaussian_identity(p, n, 21, r), 1j).W_n) for r in range(20)])

    assert mean_abs_w(400, 800) < mean_abs_w(100, 200)
