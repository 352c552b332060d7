from __future__ import annotations

import logging
from typing import Sequence

import numpy as np
import scipy.linalg
from pydantic import PositiveInt, validate_call

from rmcorr.config import Settings
from rmcorr.exceptions import InvalidParameter, ModelConstructionError
from rmcorr.spectra import DiscreteMeasure

from .concept import AssumptionReport, PopulationMode, PopulationModel
from .utils import banded_toeplitz, check_symmetric, hermitian_sqrt, index_sets, smallest_eigenvalue


@validate_call
def build_identity(p: PositiveInt) -> PopulationModel:
    eye = np.eye(p)
    return PopulationModel(p, eye, eye.copy(), tuple(frozenset([i]) for i in range(p)), PopulationMode.IDENTITY)


@validate_call
def build_banded_toeplitz(p: PositiveInt, coeffs: Sequence[float] = ()) -> PopulationModel:
    """T with unit diagonal and c_d on the d-th sub- and superdiagonal. U is its (dense) Hermitian root"""
    coeffs = tuple(float(c) for c in coeffs)
    if len(coeffs) >= p:
        raise InvalidParameter(f"Number of coefficients ({len(coeffs)}) must be smaller than p={p}")
    if len(coeffs) == 0:
        return build_identity(p)

    t = banded_toeplitz(p, coeffs)
    u = hermitian_sqrt(t)
    sets = index_sets(u)
    logging.debug(f"Banded model p={p} coeffs={coeffs}: max |I(i)| = {max(len(s) for s in sets)}")
    return PopulationModel(p, t, u, sets, PopulationMode.GIVEN_T, coeffs)


@validate_call
def build_from_sparse_root(p: PositiveInt, root_coeffs: Sequence[float] = ()) -> PopulationModel:
    """U banded symmetric Toeplitz with unit diagonal, T = U U^T. Every index set has at most 2b + 1 members"""
    root_coeffs = tuple(float(c) for c in root_coeffs)
    if len(root_coeffs) >= p:
        raise InvalidParameter(f"Bandwidth ({len(root_coeffs)}) must be smaller than p={p}")
    if len(root_coeffs) == 0:
        return build_identity(p)

    u = banded_toeplitz(p, root_coeffs)
    t = u @ u.T
    t = (t + t.T) / 2
    lam_min = smallest_eigenvalue(t)
    if lam_min <= Settings.atom_merge_tol:
        raise ModelConstructionError(f"T = U U^T is degenerate (smallest eigenvalue {lam_min:.3e})")
    return PopulationModel(p, t, u, index_sets(u), PopulationMode.GIVEN_U, root_coeffs)


def from_correlation(t: np.ndarray) -> PopulationModel:
    """Model from a user supplied correlation matrix (unit diagonal, psd)"""
    t = check_symmetric(t)
    diag_err = np.max(np.abs(np.diag(t) - 1.0))
    if diag_err > Settings.unit_diagonal_tol:
        raise InvalidParameter(f"T must have unit diagonal (max deviation {diag_err:.3e})")
    u = hermitian_sqrt(t)
    return PopulationModel(t.shape[0], t, u, index_sets(u), PopulationMode.GIVEN_T)


def build_model(mode: str, p: int, coeffs: Sequence[float] = ()) -> PopulationModel:
    """Dispatch on the config names of the construction modes"""
    builders = {
        "identity": lambda: build_identity(p),
        "banded_toeplitz": lambda: build_banded_toeplitz(p, coeffs),
        "sparse_root": lambda: build_from_sparse_root(p, coeffs),
    }
    if mode not in builders:
        raise InvalidParameter(f'Unknown population model "{mode}". Use one of {list(builders)}')
    return builders[mode]()


def esd_of_T(model: PopulationModel) -> DiscreteMeasure:
    """Spectral measure of T_hat; equal eigenvalues are merged into one atom"""
    if model.is_identity:
        return DiscreteMeasure.point_mass(1.0)
    w = scipy.linalg.eigh(model.T_hat, eigvals_only=True)
    return DiscreteMeasure.from_values(w)


def validate_assumptions(model: PopulationModel, gamma: float) -> AssumptionReport:
    """Report the finite-p checks of the population assumptions without touching the model"""
    t_hat = model.T_hat
    w = np.sort(scipy.linalg.eigh(t_hat, eigvals_only=True))
    unit_diag = bool(np.max(np.abs(np.diag(model.T) - 1.0)) <= Settings.unit_diagonal_tol)
    psd = bool(w[0] >= Settings.psd_clamp)
    if not unit_diag:
        logging.info(f"{model} has non-unit diagonal; eigenvalues refer to the rescaled correlation matrix")

    return AssumptionReport(
        p=model.p,
        gamma=float(gamma),
        lambda_min_T=float(w[0]),
        esd_T_summary=w,
        max_index_set_size=model.max_index_set_size,
        unit_diagonal_ok=unit_diag,
        psd_ok=psd,
    )
