from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import gammaln

from rmcorr.exceptions import InvalidParameter


class DistKind:
    GAUSSIAN = "gaussian"
    STUDENT_T = "student_t"
    PARETO = "symmetrized_pareto"
    CENTERED_EXPONENTIAL = "centered_exponential"

    all = [GAUSSIAN, STUDENT_T, PARETO, CENTERED_EXPONENTIAL]


@dataclass(frozen=True)
class DistributionSpec:
    """The generic entry law xi of the data model.

    Gaussian, StudentT and CenteredExponential are standardized to mean 0 and variance 1. SymmetrizedPareto has
    |xi| Pareto distributed with survival x^-alpha on [1, inf) and a random sign. It is only variance-standardized when
    alpha > 2, since self-normalization makes the scale irrelevant.
    """

    kind: str
    dof: float = None
    alpha: float = None

    def __post_init__(self):
        if self.kind not in DistKind.all:
            raise InvalidParameter(f'Unsupported distribution kind "{self.kind}". Use one of {DistKind.all}')
        if self.kind == DistKind.STUDENT_T:
            if self.dof is None or self.dof <= 2:
                raise InvalidParameter(f"StudentT needs dof > 2 to be standardized, got dof={self.dof}")
        if self.kind == DistKind.PARETO:
            if self.alpha is None or self.alpha <= 0:
                raise InvalidParameter(f"SymmetrizedPareto needs alpha > 0, got alpha={self.alpha}")

    @classmethod
    def gaussian(cls) -> DistributionSpec:
        return cls(DistKind.GAUSSIAN)

    @classmethod
    def student_t(cls, dof: float) -> DistributionSpec:
        return cls(DistKind.STUDENT_T, dof=float(dof))

    @classmethod
    def pareto(cls, alpha: float) -> DistributionSpec:
        return cls(DistKind.PARETO, alpha=float(alpha))

    @classmethod
    def centered_exponential(cls) -> DistributionSpec:
        return cls(DistKind.CENTERED_EXPONENTIAL)

    @property
    def is_symmetric(self) -> bool:
        return self.kind in (DistKind.GAUSSIAN, DistKind.STUDENT_T, DistKind.PARETO)

    @property
    def has_finite_variance(self) -> bool:
        if self.kind == DistKind.PARETO:
            return self.alpha > 2
        return True

    @property
    def tail_index(self) -> Union[float, None]:
        """Index of regular variation of |xi|. None for light-tailed laws"""
        if self.kind == DistKind.STUDENT_T:
            return self.dof
        if self.kind == DistKind.PARETO:
            return self.alpha
        return None

    @property
    def scale(self) -> float:
        """Factor applied to the raw law so that the variance becomes 1"""
        if self.kind == DistKind.STUDENT_T:
            return float(np.sqrt((self.dof - 2) / self.dof))
        if self.kind == DistKind.PARETO and self.alpha > 2:
            return float(np.sqrt((self.alpha - 2) / self.alpha))
        return 1.0

    @property
    def label(self) -> str:
        """Short file-name safe label"""
        if self.kind == DistKind.STUDENT_T:
            return f"t{self.dof:g}"
        if self.kind == DistKind.PARETO:
            return f"pareto{self.alpha:g}"
        if self.kind == DistKind.CENTERED_EXPONENTIAL:
            return "cexp"
        return "gaussian"

    @property
    def support_start(self) -> float:
        """Left end of the support of |xi| (xi itself for CenteredExponential)"""
        if self.kind == DistKind.PARETO:
            return self.scale
        if self.kind == DistKind.CENTERED_EXPONENTIAL:
            return -1.0
        return 0.0

    def pdf(self, x):
        """Density of xi"""
        x = np.asarray(x, dtype=float)
        if self.kind == DistKind.GAUSSIAN:
            return np.exp(-0.5 * x * x) / np.sqrt(2 * np.pi)
        if self.kind == DistKind.STUDENT_T:
            nu, c = self.dof, self.scale
            log_norm = gammaln((nu + 1) / 2) - gammaln(nu / 2) - 0.5 * np.log(nu * np.pi) - np.log(c)
            return np.exp(log_norm - (nu + 1) / 2 * np.log1p((x / c) ** 2 / nu))
        if self.kind == DistKind.PARETO:
            a, c = self.alpha, self.scale
            ax = np.abs(x)
            return 0.5 * a * c**a * np.where(ax >= c, ax, np.inf) ** (-a - 1)
        return np.where(x >= -1.0, np.exp(-(x + 1.0)), 0.0)

    def sample(self, count: int, rng: np.random.Generator) -> np.ndarray:
        """Draw count i.i.d. values from the given generator"""
        if count < 1:
            raise InvalidParameter(f"count must be positive, got {count}")
        if self.kind == DistKind.GAUSSIAN:
            return rng.standard_normal(count)
        if self.kind == DistKind.STUDENT_T:
            return rng.standard_t(self.dof, count) * self.scale
        if self.kind == DistKind.PARETO:
            magnitude = (rng.pareto(self.alpha, count) + 1.0) * self.scale
            sign = np.where(rng.random(count) < 0.5, -1.0, 1.0)
            return sign * magnitude
        return rng.standard_exponential(count) - 1.0

    def to_dict(self) -> dict:
        d = dict(kind=self.kind)
        if self.dof is not None:
            d["dof"] = self.dof
        if self.alpha is not None:
            d["alpha"] = self.alpha
        return d

    @classmethod
    def from_dict(cls, d: dict) -> DistributionSpec:
        dof = d.get("dof", None)
        alpha = d.get("alpha", None)
        return cls(d["kind"], dof=None if dof is None else float(dof), alpha=None if alpha is None else float(alpha))

    def __repr__(self):
        return f"DistributionSpec({self.label})"
