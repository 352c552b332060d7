from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, List

import numpy as np
import pandas as pd
from scipy import integrate

from rmcorr.config import Settings
from rmcorr.exceptions import DomainError, InvalidParameter, IterationInstability, NonConvergence
from rmcorr.spectra import DiscreteMeasure

from .marchenko_pastur import MPLaw


@dataclass(frozen=True)
class FixedPointResult:
    s: complex
    iterations: int
    residual: float

    def __complex__(self):
        return complex(self.s)


@dataclass
class LsdSolution:
    """Stieltjes transform of the generalized MP law on a grid x + i epsilon, with the inverted density"""

    gamma: float
    H: DiscreteMeasure = field(repr=False)
    grid: np.ndarray = field(repr=False)
    epsilon: float
    s_values: np.ndarray = field(repr=False)
    density: np.ndarray = field(repr=False)
    zero_mass: float
    iterations: np.ndarray = field(repr=False)
    residuals: np.ndarray = field(repr=False)
    zero_mass_flagged: bool = False

    @property
    def continuous_density(self) -> np.ndarray:
        """Density with the Lorentzian of the atom at zero removed"""
        x, eps = self.grid, self.epsilon
        spike = self.zero_mass * eps / (np.pi * (x * x + eps * eps))
        return np.clip(self.density - spike, 0.0, None)

    @property
    def cdf_values(self) -> np.ndarray:
        """CDF on the grid: atom at zero plus the integrated continuous part, normalized to total mass one"""
        cont = integrate.cumulative_trapezoid(self.continuous_density, self.grid, initial=0.0)
        total = cont[-1]
        if total > 0:
            cont = cont * (1 - self.zero_mass) / total
        return np.clip(self.zero_mass + cont, 0.0, 1.0)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        out = np.interp(x, self.grid, self.cdf_values, left=self.zero_mass, right=1.0)
        out = np.where(x < 0, 0.0, out)
        return float(out) if out.ndim == 0 else out

    def quantiles(self, q_list: Iterable[float]) -> List[float]:
        return lsd_quantiles(self, q_list)

    @property
    def max_iterations(self) -> int:
        return int(self.iterations.max())

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            dict(
                x=self.grid,
                density=self.density,
                cdf=self.cdf_values,
                s_real=self.s_values.real,
                s_imag=self.s_values.imag,
                iterations=self.iterations,
                residual=self.residuals,
            )
        )


def _check_inputs(gamma: float, damping: float):
    if not gamma > 0:
        raise InvalidParameter(f"gamma must be positive, got {gamma}")
    if not 0 < damping <= 1:
        raise InvalidParameter(f"damping must lie in (0, 1], got {damping}")


class IterationForm:
    DIRECT = "direct"
    COMPANION = "companion"
    AUTO = "auto"

    all = [DIRECT, COMPANION, AUTO]


def _direct_map(gamma: float, H: DiscreteMeasure, z: complex):
    atoms, weights = H.atoms, H.weights

    def g(s):
        return complex(np.sum(weights / (atoms * (1 - gamma - gamma * z * s) - z)))

    return g


def _companion_map(gamma: float, H: DiscreteMeasure, z: complex):
    """u = -1 / (z - gamma int l dH(l) / (1 + l u)) for the companion transform u = -(1 - gamma)/z + gamma s"""
    atoms, weights = H.atoms, H.weights

    def g(u):
        return -1 / (z - gamma * complex(np.sum(weights * atoms / (1 + atoms * u))))

    return g


def solve_lsd(
    gamma: float,
    H: DiscreteMeasure,
    z: complex,
    damping: float = None,
    tol: float = None,
    max_iter: int = None,
    s0: complex = None,
    form: str = IterationForm.AUTO,
) -> FixedPointResult:
    """Solve s = int dH(l) / (l (1 - gamma - gamma z s) - z) by damped fixed-point iteration.

    The direct form iterates s <- (1 - damping) s + damping G(s) with G the right-hand side. For gamma >= 1 the solution
    can be a repelling fixed point of G (near the atom at zero, or the hard edge at gamma = 1), so the auto form
    iterates the companion transform u = -(1 - gamma)/z + gamma s of the n x n matrix instead. Its fixed point is
    attracting on the whole upper half-plane. Both forms start from s0 = -1/z and stop on |s - G(s)| <= tol.

    :param gamma: Ratio p/n
    :param H: Population spectral measure
    :param z: Point in the upper half-plane
    :param damping: Weight of the new iterate
    :param tol: Residual tolerance
    :param max_iter: Iteration limit
    :param s0: Warm start. Defaults to -1/z, the Stieltjes transform of a point mass at zero
    :param form: "direct", "companion" or "auto" (direct for gamma < 1, companion otherwise)
    """
    damping = Settings.lsd_damping if damping is None else damping
    tol = Settings.lsd_tol if tol is None else tol
    max_iter = Settings.lsd_max_iter if max_iter is None else max_iter
    _check_inputs(gamma, damping)
    if form not in IterationForm.all:
        raise InvalidParameter(f'Unknown iteration form "{form}". Use one of {IterationForm.all}')
    z = complex(z)
    if z.imag <= 0:
        raise DomainError(f"Stieltjes transform needs Im z > 0, got z={z}")
    if form == IterationForm.AUTO:
        form = IterationForm.DIRECT if gamma < 1 else IterationForm.COMPANION

    g_s = _direct_map(gamma, H, z)
    s = -1 / z if s0 is None or complex(s0).imag <= 0 else complex(s0)
    residual = np.inf

    if form == IterationForm.DIRECT:
        for it in range(max_iter + 1):
            g = g_s(s)
            residual = abs(s - g)
            if residual <= tol:
                return FixedPointResult(s, it, residual)
            if it == max_iter:
                break
            s = (1 - damping) * s + damping * g
            if s.imag <= 0:
                raise IterationInstability(it + 1, damping)
    else:
        g_u = _companion_map(gamma, H, z)
        u = -(1 - gamma) / z + gamma * s
        if u.imag <= 0:
            u = -1 / z
        for it in range(max_iter + 1):
            s = (u + (1 - gamma) / z) / gamma
            residual = abs(s - g_s(s))
            if residual <= tol:
                return FixedPointResult(s, it, residual)
            if it == max_iter:
                break
            u = (1 - damping) * u + damping * g_u(u)
            if u.imag <= 0:
                raise IterationInstability(it + 1, damping)

    raise NonConvergence(residual, max_iter)


def lsd_support_bound(gamma: float, H: DiscreteMeasure) -> float:
    """Heuristic right edge lambda_max(T) * b_gamma of the limit law"""
    return float(H.atoms.max() * MPLaw(gamma).b)


def default_grid(gamma: float, H: DiscreteMeasure, points: int = None) -> np.ndarray:
    points = Settings.grid_points if points is None else points
    bound = lsd_support_bound(gamma, H)
    return np.linspace(bound * 1e-3, 1.1 * bound, points)


def lsd_density_on_grid(
    gamma: float,
    H: DiscreteMeasure,
    x_grid=None,
    epsilon: float = None,
    damping: float = None,
    tol: float = None,
    max_iter: int = None,
    form: str = IterationForm.AUTO,
) -> LsdSolution:
    """Stieltjes inversion density(x) = Im s(x + i epsilon) / pi, warm-starting each point from its left neighbour.

    The density carries an O(epsilon) smoothing bias, largest near the edges of the support.
    """
    epsilon = Settings.lsd_epsilon if epsilon is None else epsilon
    if not epsilon > 0:
        raise InvalidParameter(f"epsilon must be positive, got {epsilon}")
    x_grid = default_grid(gamma, H) if x_grid is None else np.asarray(x_grid, dtype=float)
    if np.any(np.diff(x_grid) < 0):
        raise InvalidParameter("x_grid must be sorted ascending")

    s_values = np.empty(x_grid.size, dtype=complex)
    iterations = np.empty(x_grid.size, dtype=int)
    residuals = np.empty(x_grid.size)
    s_prev = None
    for i, x in enumerate(x_grid):
        try:
            res = solve_lsd(gamma, H, complex(x, epsilon), damping, tol, max_iter, s0=s_prev, form=form)
        except NonConvergence as e:
            raise NonConvergence(e.last_residual, e.iterations, grid_index=i) from e
        except IterationInstability as e:
            raise IterationInstability(e.iteration, e.damping, grid_index=i) from e
        s_values[i], iterations[i], residuals[i] = res.s, res.iterations, res.residual
        s_prev = res.s

    flagged = H.has_atom_at(0.0)
    zero_mass = max(0.0, 1 - 1 / gamma)
    if flagged:
        logging.warning("Population measure has an atom at zero; the reported zero mass needs review")
    logging.debug(f"LSD grid of {x_grid.size} points solved, max iterations {iterations.max()}")

    return LsdSolution(
        gamma=gamma,
        H=H,
        grid=x_grid,
        epsilon=epsilon,
        s_values=s_values,
        density=s_values.imag / np.pi,
        zero_mass=zero_mass,
        iterations=iterations,
        residuals=residuals,
        zero_mass_flagged=flagged,
    )


def lsd_quantiles(solution: LsdSolution, q_list: Iterable[float]) -> List[float]:
    """Generalized inverse of the integrated CDF; levels at or below the zero mass map to 0"""
    grid, cdf = solution.grid, solution.cdf_values
    out = []
    for q in q_list:
        if not 0 < q < 1:
            raise InvalidParameter(f"Quantile level must lie in (0, 1), got {q}")
        if q <= solution.zero_mass:
            out.append(0.0)
            continue
        idx = int(np.searchsorted(cdf, q, side="left"))
        if idx == 0:
            out.append(float(grid[0]))
        elif idx >= grid.size:
            out.append(float(grid[-1]))
        else:
            lo, hi = cdf[idx - 1], cdf[idx]
            frac = 0.0 if hi == lo else (q - lo) / (hi - lo)
            out.append(float(grid[idx - 1] + frac * (grid[idx] - grid[idx - 1])))
    return out
