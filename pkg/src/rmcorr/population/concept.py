from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from rmcorr.config import Settings


class PopulationMode:
    IDENTITY = "identity"
    GIVEN_T = "given_T"
    GIVEN_U = "given_U"

    all = [IDENTITY, GIVEN_T, GIVEN_U]


@dataclass(frozen=True)
class PopulationModel:
    """Population correlation structure T = U U^T of dimension p.

    In mode given_U the diagonal of T need not be one. The sample correlation matrix is invariant under row scaling of
    X, so the population law used downstream is that of T_hat = D T D with D = diag(T)^-1/2.
    """

    p: int
    T: np.ndarray = field(repr=False)
    U: np.ndarray = field(repr=False)
    index_sets: Tuple[frozenset, ...] = field(repr=False)
    mode: str
    coeffs: Tuple[float, ...] = ()

    def __post_init__(self):
        for arr in (self.T, self.U):
            arr.setflags(write=False)

    @property
    def T_hat(self) -> np.ndarray:
        if self.mode != PopulationMode.GIVEN_U:
            return self.T
        d = 1.0 / np.sqrt(np.diag(self.T))
        t_hat = self.T * d[:, None] * d[None, :]
        return (t_hat + t_hat.T) / 2

    @property
    def is_identity(self) -> bool:
        return self.mode == PopulationMode.IDENTITY

    @property
    def max_index_set_size(self) -> int:
        return max(len(s) for s in self.index_sets)

    def to_dict(self) -> dict:
        return dict(mode=self.mode, p=self.p, coeffs=list(self.coeffs))

    def __repr__(self):
        return f"PopulationModel(p={self.p}, mode={self.mode}, coeffs={list(self.coeffs)})"


@dataclass
class AssumptionReport:
    """Finite-p surrogates of the population assumptions.

    lambda_min_T and esd_T_summary refer to T_hat (T itself unless the model was given by its root).
    """

    p: int
    gamma: float
    lambda_min_T: float
    esd_T_summary: np.ndarray = field(repr=False)
    max_index_set_size: int
    unit_diagonal_ok: bool
    psd_ok: bool

    @property
    def lambda_min_positive(self) -> bool:
        return self.lambda_min_T > Settings.atom_merge_tol

    def to_dict(self) -> dict:
        return dict(
            p=self.p,
            gamma=self.gamma,
            lambda_min_T=self.lambda_min_T,
            lambda_max_T=float(self.esd_T_summary[-1]),
            esd_T_summary=self.esd_T_summary.tolist(),
            max_index_set_size=self.max_index_set_size,
            unit_diagonal_ok=self.unit_diagonal_ok,
            psd_ok=self.psd_ok,
            lambda_min_positive=self.lambda_min_positive,
        )
