import os
import pathlib


def _get_platform_home():
    """Home location for each platform"""
    return pathlib.Path.home() / "RMCORR"


class Settings:
    """General purpose tolerances and defaults shared by all rmcorr modules"""

    # Population models
    zero_threshold = 1e-12
    psd_clamp = -1e-10
    unit_diagonal_tol = 1e-12
    sqrt_tol = 1e-8
    atom_merge_tol = 1e-10

    # Ensembles and spectra
    degenerate_row_norm = 1e-300
    symmetry_tol = 1e-8
    eigen_residual_tol = 1e-8

    # Limit law solver
    lsd_damping = 0.5
    lsd_tol = 1e-10
    lsd_max_iter = 10_000
    lsd_epsilon = 1e-3
    quantile_tol = 1e-8

    # Monte Carlo
    batches = 10
    replicates = 50
    laplace_mc_draws = 1_000_000
    quad_abs_tol = 1e-10

    # Harness
    grid_points = 400
    q_list = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95]

    debug = os.getenv("RMCORR_debug", "false").lower() == "true"
    _home = _get_platform_home()
    output_dir = pathlib.Path(os.getenv("RMCORR_output_dir", f"{_home}/experiments"))
    log_dir = pathlib.Path(os.getenv("RMCORR_log_dir", f"{_home}/logs"))
    test_dir = pathlib.Path(os.getenv("RMCORR_test_dir", f"{_home}/tests"))
