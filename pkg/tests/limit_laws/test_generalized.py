import unittest

import numpy as np
import pytest
from scipy import integrate

from rmcorr.exceptions import DomainError, InvalidParameter, NonConvergence
from rmcorr.limit_laws import (
    IterationForm,
    MPLaw,
    default_grid,
    lsd_density_on_grid,
    lsd_quantiles,
    lsd_support_bound,
    mp_density,
    mp_quantile,
    mp_stieltjes,
    solve_lsd,
)
from rmcorr.population import build_banded_toeplitz, esd_of_T
from rmcorr.spectra import DiscreteMeasure

from common import BANDED_COEFFS, gaussian_banded, z_grid

DELTA_ONE = DiscreteMeasure.point_mass(1.0)


class SolverTests(unittest.TestCase):
    def test_point_mass_reduces_to_mp(self):
        for gamma in [0.25, 0.5, 1.0, 2.0]:
            for z in z_grid():
                res = solve_lsd(gamma, DELTA_ONE, z, tol=1e-12)
                self.assertGreater(res.s.imag, 0)
                self.assertAlmostEqual(complex(res), mp_stieltjes(gamma, z), delta=1e-8)

    def test_examples(self):
        self.assertAlmostEqual(complex(solve_lsd(0.5, DELTA_ONE, 1j)), mp_stieltjes(0.5, 1j), delta=1e-8)
        z = 0.5 + 0.5j
        self.assertAlmostEqual(complex(solve_lsd(1.0, DELTA_ONE, z)), mp_stieltjes(1.0, z), delta=1e-8)

    def test_banded_population(self):
        h = esd_of_T(build_banded_toeplitz(400, BANDED_COEFFS))
        res = solve_lsd(0.5, h, 1j)
        g = np.sum(h.weights / (h.atoms * (1 - 0.5 - 0.5 * 1j * res.s) - 1j))
        self.assertGreater(res.s.imag, 0)
        self.assertLessEqual(abs(res.s - g), 1e-10)
        self.assertLessEqual(res.residual, 1e-10)

    def test_iteration_forms_agree(self):
        h = esd_of_T(build_banded_toeplitz(50, BANDED_COEFFS))
        for z in [0.3 + 0.2j, 1.0 + 1.0j, 4.0 + 0.5j]:
            a = solve_lsd(0.5, h, z, tol=1e-12, form=IterationForm.DIRECT)
            b = solve_lsd(0.5, h, z, tol=1e-12, form=IterationForm.COMPANION)
            self.assertAlmostEqual(a.s, b.s, delta=1e-9)
        with self.assertRaises(InvalidParameter):
            solve_lsd(0.5, h, 1j, form="newton")

    def test_iteration_form_values(self):
        self.assertEqual(IterationForm.all, ["direct", "companion", "auto"])
        res = solve_lsd(0.5, DELTA_ONE, 1j, tol=1e-12, form="direct")
        self.assertAlmostEqual(complex(res), mp_stieltjes(0.5, 1j), delta=1e-8)

    def test_non_convergence(self):
        with self.assertRaises(NonConvergence) as ctx:
            solve_lsd(0.5, DELTA_ONE, 1.0 + 0.01j, max_iter=2)
        self.assertEqual(ctx.exception.iterations, 2)
        self.assertGreater(ctx.exception.last_residual, 0)

    def test_bad_arguments(self):
        with self.assertRaises(DomainError):
            solve_lsd(0.5, DELTA_ONE, 1.0)
        with self.assertRaises(InvalidParameter):
            solve_lsd(0.5, DELTA_ONE, 1j, damping=0.0)


class DensityInversionTests(unittest.TestCase):
    def setUp(self) -> None:
        self.grid = np.linspace(0.05, 3.2, 300)
        self.solution = lsd_density_on_grid(0.5, DELTA_ONE, self.grid, 1e-3)

    def test_matches_mp_density(self):
        law = MPLaw(0.5)
        x = self.grid
        # the O(epsilon) smoothing is largest at the square-root edges
        away = (np.abs(x - law.a) > 0.05) & (np.abs(x - law.b) > 0.05)
        err = np.abs(self.solution.density - mp_density(0.5, x))[away]
        self.assertLessEqual(err.max(), 0.01)

    def test_invariants(self):
        self.assertTrue(np.all(self.solution.s_values.imag > 0))
        self.assertTrue(np.all(self.solution.density >= 0))
        self.assertTrue(np.all(self.solution.residuals <= 1e-10))
        self.assertEqual(self.solution.zero_mass, 0.0)
        self.assertFalse(self.solution.zero_mass_flagged)

    def test_normalization(self):
        total = integrate.trapezoid(self.solution.density, self.grid)
        self.assertAlmostEqual(total, 1.0, delta=0.02)

    def test_cdf(self):
        self.assertEqual(self.solution.cdf(-1.0), 0.0)
        self.assertAlmostEqual(self.solution.cdf(3.2), 1.0, places=10)
        self.assertTrue(np.all(np.diff(self.solution.cdf_values) >= 0))

    def test_frame(self):
        df = self.solution.to_frame()
        self.assertEqual(len(df), 300)
        self.assertIn("density", df.columns)


def test_zero_mass_for_wide_matrices():
    grid = np.linspace(0.05, 6.0, 400)
    sol = lsd_density_on_grid(2.0, DELTA_ONE, grid)
    assert sol.zero_mass == pytest.approx(0.5)
    assert integrate.trapezoid(sol.density, grid) == pytest.approx(0.5, abs=0.02)
    assert lsd_quantiles(sol, [0.25]) == [0.0]


def test_atom_at_zero_is_flagged():
    h = DiscreteMeasure(np.array([0.0, 1.0]), np.array([0.5, 0.5]))
    sol = lsd_density_on_grid(0.5, h, np.linspace(0.1, 2.0, 20))
    assert sol.zero_mass_flagged


def test_grid_index_reported():
    with pytest.raises(NonConvergence) as e:
        lsd_density_on_grid(0.5, DELTA_ONE, np.linspace(0.5, 1.0, 5), max_iter=1)
    assert e.value.grid_index == 0


def test_quantiles_match_mp():
    sol = lsd_density_on_grid(0.5, DELTA_ONE, default_grid(0.5, DELTA_ONE, 400))
    q_list = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]
    quantiles = lsd_quantiles(sol, q_list)
    assert np.all(np.diff(quantiles) > 0)
    np.testing.assert_allclose(quantiles, mp_quantile(0.5, q_list), atol=0.02)
    with pytest.raises(InvalidParameter):
        lsd_quantiles(sol, [1.5])


def test_banded_density_vanishes_beyond_support():
    h = esd_of_T(build_banded_toeplitz(200, BANDED_COEFFS))
    bound = lsd_support_bound(0.5, h)
    grid = np.linspace(0.01, 1.3 * bound, 300)
    sol = lsd_density_on_grid(0.5, h, grid)
    assert np.all(sol.density[grid > bound] <= 0.01)
    assert integrate.trapezoid(sol.density, grid) == pytest.approx(1.0, abs=0.02)


@pytest.mark.slow
def test_banded_esd_matches_generalized_law():
    ens = gaussian_banded(400, 800, 99)
    h = esd_of_T(build_banded_toeplitz(400, BANDED_COEFFS))
    sol = lsd_density_on_grid(0.5, h, default_grid(0.5, h, 400))
    assert ens.spectrum().ks_distance(sol.cdf) <= 0.07
