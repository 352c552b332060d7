from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy import integrate, optimize

from rmcorr.config import Settings
from rmcorr.exceptions import BranchSelectionError, DomainError, InvalidParameter


@dataclass(frozen=True)
class MPLaw:
    """Marcenko-Pastur law with ratio gamma = p/n.

    Density sqrt((b - x)(x - a)) / (2 pi gamma x) on [a, b] with a = (1 - sqrt(gamma))^2 and
    b = (1 + sqrt(gamma))^2, plus an atom of mass 1 - 1/gamma at zero when gamma > 1.
    """

    gamma: float

    def __post_init__(self):
        if not self.gamma > 0:
            raise InvalidParameter(f"gamma must be positive, got {self.gamma}")

    @property
    def a(self) -> float:
        return (1 - np.sqrt(self.gamma)) ** 2

    @property
    def b(self) -> float:
        return (1 + np.sqrt(self.gamma)) ** 2

    @property
    def zero_mass(self) -> float:
        return max(0.0, 1 - 1 / self.gamma)

    def density(self, x):
        x = np.asarray(x, dtype=float)
        a, b = self.a, self.b
        inside = (x > a) & (x < b) & (x > 0)
        xs = np.where(inside, x, 1.0)
        out = np.where(inside, np.sqrt(np.clip((b - xs) * (xs - a), 0, None)) / (2 * np.pi * self.gamma * xs), 0.0)
        return float(out) if out.ndim == 0 else out

    def _continuous_mass(self, x: float) -> float:
        """Integral of the density over [a, x] using algebraic endpoint weights"""
        a, b, g = self.a, self.b, self.gamma
        if x <= a:
            return 0.0
        x = min(x, b)
        if a > 0:
            # (t - a)^(1/2) is the weight, the remaining factor is smooth on [a, x]
            val, _ = integrate.quad(
                lambda t: np.sqrt(b - t) / (2 * np.pi * g * t), a, x, weight="alg", wvar=(0.5, 0.0), epsabs=1e-13
            )
        else:
            val, _ = integrate.quad(
                lambda t: np.sqrt(b - t) / (2 * np.pi * g), 0.0, x, weight="alg", wvar=(-0.5, 0.0), epsabs=1e-13
            )
        return val

    def cdf(self, x):
        def scalar(xv):
            if xv < 0:
                return 0.0
            return min(1.0, self.zero_mass + self._continuous_mass(xv))

        out = np.vectorize(scalar, otypes=[float])(np.asarray(x, dtype=float))
        return float(out) if out.ndim == 0 else out

    def quantile(self, q):
        def scalar(qv):
            if not 0 < qv < 1:
                raise InvalidParameter(f"Quantile level must lie in (0, 1), got {qv}")
            if qv <= self.zero_mass:
                return 0.0
            return optimize.bisect(lambda x: self.cdf(x) - qv, self.a, self.b, xtol=1e-14, maxiter=200)

        out = np.vectorize(scalar, otypes=[float])(np.asarray(q, dtype=float))
        return float(out) if out.ndim == 0 else out

    def stieltjes(self, z: complex) -> complex:
        """Root of gamma z S^2 + (z + gamma - 1) S + 1 = 0 in the upper half-plane"""
        z = complex(z)
        if z.imag <= 0:
            raise DomainError(f"Stieltjes transform needs Im z > 0, got z={z}")
        g = self.gamma
        roots = _quadratic_roots(g * z, z + g - 1, 1.0)
        upper = [r for r in roots if r.imag > 0]
        if len(upper) != 1:
            raise BranchSelectionError(f"Expected exactly one root in the upper half-plane at z={z}, got {roots}")
        s = upper[0]
        # one Newton step polishes the quadratic residual
        f = g * z * s * s + (z + g - 1) * s + 1
        df = 2 * g * z * s + (z + g - 1)
        if df != 0:
            s = s - f / df
        return s

    def quadratic_residual(self, z: complex, s: complex) -> float:
        g = self.gamma
        return abs(g * z * s * s + (z + g - 1) * s + 1)

    def self_consistent_residual(self, z: complex, s: complex) -> float:
        """| -z S - 1 / (1 + gamma S - (1 - gamma) / z) |"""
        g = self.gamma
        return abs(-z * s - 1 / (1 + g * s - (1 - g) / z))


def _quadratic_roots(a: complex, b: complex, c: complex):
    disc = np.sqrt(complex(b * b - 4 * a * c))
    # numerically stable pair
    q = -0.5 * (b + disc) if (b.conjugate() * disc).real >= 0 else -0.5 * (b - disc)
    if q == 0:
        return [complex(-b / (2 * a))] * 2
    return [q / a, c / q]


def mp_density(gamma: float, x):
    return MPLaw(gamma).density(x)


def mp_cdf(gamma: float, x):
    return MPLaw(gamma).cdf(x)


def mp_quantile(gamma: float, q):
    return MPLaw(gamma).quantile(q)


def mp_stieltjes(gamma: float, z: complex) -> complex:
    return MPLaw(gamma).stieltjes(z)


def mp_tables(gamma: float, points: int = None, q_list=None):
    """Density, CDF and quantile tables of the MP law on an even grid over its support"""
    law = MPLaw(gamma)
    points = Settings.grid_points if points is None else points
    q_list = Settings.q_list if q_list is None else q_list
    lo = 0.0 if law.zero_mass > 0 else law.a
    x = np.linspace(lo, law.b, points)
    density = pd.DataFrame(dict(x=x, density=law.density(x)))
    cdf = pd.DataFrame(dict(x=x, cdf=law.cdf(x)))
    quantile = pd.DataFrame(dict(q=list(q_list), quantile=law.quantile(list(q_list))))
    return density, cdf, quantile
