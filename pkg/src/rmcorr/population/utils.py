from typing import Tuple

import numpy as np
import scipy.linalg

from rmcorr.config import Settings
from rmcorr.exceptions import InvalidParameter, NotPositiveSemiDefinite


def check_symmetric(a: np.ndarray, name: str = "T", tol: float = 1e-12) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidParameter(f"{name} must be a square matrix, got shape {a.shape}")
    asym = np.max(np.abs(a - a.T))
    if asym > tol:
        raise InvalidParameter(f"{name} is not symmetric (max |{name} - {name}^T| = {asym:.3e})")
    return (a + a.T) / 2


def smallest_eigenvalue(a: np.ndarray) -> float:
    return float(scipy.linalg.eigh(a, eigvals_only=True, subset_by_index=[0, 0])[0])


def hermitian_sqrt(t: np.ndarray) -> np.ndarray:
    """Hermitian square root U of a symmetric positive semidefinite matrix, U U = T.

    Eigenvalues in [psd_clamp, 0) are clamped to zero; anything below raises NotPositiveSemiDefinite.
    """
    t = check_symmetric(t)
    w, v = scipy.linalg.eigh(t)
    if w[0] < Settings.psd_clamp:
        raise NotPositiveSemiDefinite(float(w[0]))
    w = np.clip(w, 0.0, None)
    u = (v * np.sqrt(w)) @ v.T
    u = (u + u.T) / 2

    err = np.max(np.abs(u @ u - t))
    if err > Settings.sqrt_tol:
        raise NotPositiveSemiDefinite(float(w[0]), name=f"T (square root error {err:.3e})")
    return u


def index_sets(u: np.ndarray, threshold: float = None) -> Tuple[frozenset, ...]:
    """I(i) = {k : |U_ik| > threshold or |U_ki| > threshold}"""
    threshold = Settings.zero_threshold if threshold is None else threshold
    mask = (np.abs(u) > threshold) | (np.abs(u.T) > threshold)
    return tuple(frozenset(np.flatnonzero(row).tolist()) for row in mask)


def banded_toeplitz(p: int, coeffs) -> np.ndarray:
    """Symmetric Toeplitz matrix with unit diagonal and coeffs on the first len(coeffs) off-diagonals"""
    first = np.zeros(p)
    first[0] = 1.0
    first[1 : len(coeffs) + 1] = coeffs
    return scipy.linalg.toeplitz(first)
