from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
import scipy.linalg

from rmcorr.config import Settings
from rmcorr.distributions import DistributionSpec, make_rng
from rmcorr.exceptions import DegenerateSample, InvalidParameter
from rmcorr.population import PopulationModel
from rmcorr.spectra import EmpiricalSpectrum, symmetric_eigenvalues


@dataclass(frozen=True)
class SampleEnsemble:
    """One realization of the data model: X = U Xtilde, S = X X^T / n, R = M S M and Y = n^-1/2 M X"""

    p: int
    n: int
    Xtilde: np.ndarray = field(repr=False)
    X: np.ndarray = field(repr=False)
    S: np.ndarray = field(repr=False)
    R: np.ndarray = field(repr=False)
    Y: np.ndarray = field(repr=False)
    seed: int
    keys: Tuple[int, ...] = ()

    def __post_init__(self):
        for arr in (self.Xtilde, self.X, self.S, self.R, self.Y):
            arr.setflags(write=False)

    @property
    def gamma(self) -> float:
        return self.p / self.n

    def spectrum(self, verify: bool = False) -> EmpiricalSpectrum:
        """Spectrum of R. When p > n the rank-deficient directions come out as exact zeros"""
        return _gram_spectrum(self.R, verify)

    def companion_spectrum(self) -> EmpiricalSpectrum:
        """Spectrum of the n x n companion matrix Y^T Y"""
        c = self.Y.T @ self.Y
        return _gram_spectrum((c + c.T) / 2)

    def row_norms(self) -> np.ndarray:
        return np.linalg.norm(self.Y, axis=1)

    def row_fourth_sums(self) -> np.ndarray:
        """sum_j Y_kj^4 for every row k"""
        return np.sum(self.Y**4, axis=1)

    def offdiag_square_products(self) -> np.ndarray:
        """sum_{i != j} Y_ki^2 Y_kj^2 for every row k, as (sum_i Y_ki^2)^2 - sum_i Y_ki^4"""
        sq = self.Y**2
        return np.sum(sq, axis=1) ** 2 - np.sum(sq * sq, axis=1)

    def __repr__(self):
        return f"SampleEnsemble(p={self.p}, n={self.n}, seed={self.seed}, keys={self.keys})"


def _gram_spectrum(a: np.ndarray, verify: bool = False) -> EmpiricalSpectrum:
    """Spectrum of a Gram matrix; eigenvalues within |psd_clamp| of zero are set to 0"""
    spectrum = symmetric_eigenvalues(a, verify=verify)
    eig = spectrum.eigenvalues.copy()
    eig[np.abs(eig) <= abs(Settings.psd_clamp)] = 0.0
    return EmpiricalSpectrum(eig, spectrum.source_dim)


def self_normalize(x: np.ndarray) -> np.ndarray:
    """Divide every row of X by its Euclidean norm"""
    norms = np.linalg.norm(x, axis=1)
    bad = np.flatnonzero(norms < Settings.degenerate_row_norm)
    if bad.size > 0:
        raise DegenerateSample(bad.tolist())
    return x / norms[:, None]


def generate(model: PopulationModel, spec: DistributionSpec, n: int, seed: int, *keys: int) -> SampleEnsemble:
    """Draw one ensemble. Xtilde is filled column-major from the stream (seed, *keys)"""
    if n < 2:
        raise InvalidParameter(f"Sample size n must be at least 2, got {n}")
    p = model.p
    rng = make_rng(seed, *keys)
    xtilde = spec.sample(p * n, rng).reshape((p, n), order="F")
    x = xtilde.copy() if model.is_identity else model.U @ xtilde

    y = self_normalize(x)
    s = x @ x.T / n
    s = (s + s.T) / 2
    m = 1.0 / np.sqrt(np.diag(s))
    r = s * m[:, None] * m[None, :]
    r = (r + r.T) / 2
    np.fill_diagonal(r, 1.0)

    return SampleEnsemble(p, n, xtilde, x, s, r, y, seed, tuple(keys))


def companion_eigen_check(ensemble: SampleEnsemble) -> float:
    """Max gap between the matched (sorted) nonzero eigenvalues of R = Y Y^T and Y^T Y"""
    k = min(ensemble.p, ensemble.n)
    eig_r = ensemble.spectrum().eigenvalues[:k]
    eig_c = ensemble.companion_spectrum().eigenvalues[:k]
    return float(np.max(np.abs(eig_r - eig_c)))


def remove_row_view(ensemble: SampleEnsemble, k: int) -> Tuple[np.ndarray, np.ndarray]:
    """Row k (1-based) of Y as a 1 x n array and the (p-1) x n remainder, both read-only"""
    if not 1 <= k <= ensemble.p:
        raise InvalidParameter(f"Row index k={k} outside 1..{ensemble.p}")
    row = ensemble.Y[k - 1 : k, :]
    if k == 1:
        rest = ensemble.Y[1:, :]
    else:
        rest = np.delete(ensemble.Y, k - 1, axis=0)
        rest.setflags(write=False)
    return row, rest


def smallest_sample_eigenvalue(ensemble: SampleEnsemble) -> float:
    """Smallest eigenvalue of Xtilde Xtilde^T / n"""
    c = ensemble.Xtilde @ ensemble.Xtilde.T / ensemble.n
    return float(scipy.linalg.eigh((c + c.T) / 2, eigvals_only=True, subset_by_index=[0, 0])[0])
