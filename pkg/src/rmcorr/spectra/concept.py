from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np
import pandas as pd
import scipy.linalg

from rmcorr.config import Settings
from rmcorr.exceptions import ContractError, DomainError, InvalidParameter


@dataclass(frozen=True)
class EmpiricalSpectrum:
    """Eigenvalues of a symmetric p x p matrix, sorted descending"""

    eigenvalues: np.ndarray
    source_dim: int

    def __post_init__(self):
        if len(self.eigenvalues) != self.source_dim:
            raise ContractError(f"Expected {self.source_dim} eigenvalues, got {len(self.eigenvalues)}")
        if np.any(np.diff(self.eigenvalues) > 0):
            raise ContractError("Eigenvalues must be sorted descending")

    @property
    def ascending(self) -> np.ndarray:
        return self.eigenvalues[::-1]

    @property
    def mean(self) -> float:
        return float(self.eigenvalues.mean())

    @property
    def smallest(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def largest(self) -> float:
        return float(self.eigenvalues[0])

    def cdf(self, x):
        return esd_cdf(self, x)

    def quantile(self, q):
        return esd_quantile(self, q)

    def stieltjes(self, z: complex) -> complex:
        return stieltjes_empirical(self, z)

    def ks_distance(self, cdf: Callable) -> float:
        return ks_distance(self, cdf)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(dict(index=np.arange(self.eigenvalues.shape[0]), eigenvalue=self.eigenvalues))


def symmetric_eigenvalues(a: np.ndarray, verify: bool = False) -> EmpiricalSpectrum:
    """Eigenvalues of a real symmetric matrix.

    Uses the LAPACK tridiagonal reduction path of scipy.linalg.eigh. With verify=True the eigenvectors are computed as
    well and each pair is checked against ||Av - lv|| <= tol * max(1, ||A||).
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ContractError(f"Expected a square matrix, got shape {a.shape}")
    asym = np.max(np.abs(a - a.T)) if a.size > 0 else 0.0
    if asym > Settings.symmetry_tol:
        raise ContractError(f"Matrix is not symmetric (max |A - A^T| = {asym:.3e})")

    if verify:
        w, v = scipy.linalg.eigh(a)
        norm_a = max(1.0, np.linalg.norm(a, 2))
        residuals = np.linalg.norm(a @ v - v * w, axis=0)
        worst = residuals.max() if residuals.size > 0 else 0.0
        if worst > Settings.eigen_residual_tol * norm_a:
            raise ContractError(f"Eigenpair residual {worst:.3e} exceeds tolerance")
        logging.debug(f"Largest eigenpair residual {worst:.3e}")
    else:
        w = scipy.linalg.eigh(a, eigvals_only=True)

    return EmpiricalSpectrum(np.ascontiguousarray(w[::-1]), a.shape[0])


def esd_cdf(spectrum: EmpiricalSpectrum, x):
    """F(x) = fraction of eigenvalues <= x"""
    counts = np.searchsorted(spectrum.ascending, np.asarray(x, dtype=float), side="right")
    out = counts / spectrum.source_dim
    return float(out) if np.ndim(out) == 0 else out


def esd_quantile(spectrum: EmpiricalSpectrum, q):
    """Left-continuous generalized inverse: smallest eigenvalue l with F(l) >= q"""
    q_arr = np.asarray(q, dtype=float)
    if np.any(q_arr <= 0) or np.any(q_arr >= 1):
        raise InvalidParameter(f"Quantile levels must lie in (0, 1), got {q}")
    p = spectrum.source_dim
    levels = np.arange(1, p + 1) / p
    # F(l_(k)) = k / p; the slack only absorbs rounding of q itself
    k = np.searchsorted(levels, q_arr * (1 - 4 * np.finfo(float).eps), side="left")
    out = spectrum.ascending[np.minimum(k, p - 1)]
    return float(out) if np.ndim(out) == 0 else out


def quantile_table(spectrum: EmpiricalSpectrum, q_list: Iterable[float]) -> pd.DataFrame:
    q = np.asarray(list(q_list), dtype=float)
    return pd.DataFrame(dict(q=q, value=esd_quantile(spectrum, q)))


def ks_distance(spectrum: EmpiricalSpectrum, cdf: Callable) -> float:
    """Kolmogorov-Smirnov distance between the ESD and cdf.

    Evaluated at both one-sided limits of every atom, which is exact when cdf is continuous.
    """
    atoms = np.unique(spectrum.ascending)
    p = spectrum.source_dim
    f_right = np.searchsorted(spectrum.ascending, atoms, side="right") / p
    f_left = np.searchsorted(spectrum.ascending, atoms, side="left") / p

    cdf_vec = np.vectorize(cdf, otypes=[float])
    g_right = cdf_vec(atoms)
    g_left = cdf_vec(np.nextafter(atoms, -np.inf))

    return float(max(np.max(np.abs(f_right - g_right)), np.max(np.abs(f_left - g_left))))


def stieltjes_empirical(spectrum: EmpiricalSpectrum, z: complex) -> complex:
    """s(z) = (1/p) sum_i 1 / (l_i - z) for z in the upper half-plane"""
    z = complex(z)
    if z.imag <= 0:
        raise DomainError(f"Stieltjes transform needs Im z > 0, got z={z}")
    return complex(np.mean(1.0 / (spectrum.eigenvalues - z)))
