from __future__ import annotations

import logging
import warnings
from typing import Callable, Tuple, Union

import numpy as np
from scipy import integrate

from rmcorr.config import Settings
from rmcorr.distributions import DistributionSpec, LaplaceMode, LaplaceProfile, laplace_profile
from rmcorr.exceptions import DegradedPrecisionWarning, InvalidParameter

# Geometric breakpoints t = 10^k for the adaptive pieces in u = t / (1 + t)
_T_BREAKS = 10.0 ** np.arange(-12, 5)
_U_BREAKS = np.concatenate([[0.0], _T_BREAKS / (1 + _T_BREAKS), [1.0]])


def _half_line_integral(f: Callable[[float], float]) -> Tuple[float, float]:
    """int_0^inf f(t) dt after substituting t = u / (1 - u)"""

    def g(u):
        if u >= 1.0:
            return 0.0
        t = u / (1 - u)
        return f(t) / (1 - u) ** 2

    total, err = 0.0, 0.0
    epsabs = Settings.quad_abs_tol * 1e-2
    for lo, hi in zip(_U_BREAKS[:-1], _U_BREAKS[1:]):
        val, e = integrate.quad(g, lo, hi, epsabs=epsabs, epsrel=1e-12, limit=200)
        total += val
        err += e
    return total, err


def _power(base: float, exponent: int) -> float:
    if base <= 0:
        return 0.0
    return float(np.exp(exponent * np.log(base)))


def _check_n(n: int, minimum: int):
    if n < minimum:
        raise InvalidParameter(f"n must be at least {minimum}, got {n}")


def _warn_if_monte_carlo(profile: LaplaceProfile, name: str, stderr_integrand: Callable[[float], float]):
    if profile.mode != LaplaceMode.MONTE_CARLO:
        return
    stderr, _ = _half_line_integral(stderr_integrand)
    msg = f"{name} from a Monte Carlo Laplace profile of {profile.spec}; standard error about {stderr:.2e}"
    logging.warning(msg)
    warnings.warn(DegradedPrecisionWarning(msg, stderr))


def _check_range(name: str, spec: DistributionSpec, value: float, err: float, lo: float, hi: float = np.inf):
    if lo - err <= value <= hi + err:
        return
    msg = f"{name} of {spec} is {value:.6e}, outside [{lo:.6e}, {hi:.6e}] by more than its error estimate {err:.2e}"
    logging.warning(msg)
    warnings.warn(DegradedPrecisionWarning(msg, err))


def laplace_fourth_moment(
    spec: DistributionSpec, n: int, profile: LaplaceProfile = None, full_output: bool = False
) -> Union[float, Tuple[float, float]]:
    """E[Y_11^4] = int_0^inf t phi(t)^(n-1) phi''(t) dt in the i.i.d. model.

    :param spec: Entry law
    :param n: Row length
    :param profile: Laplace profile of spec. Defaults to the best available one
    :param full_output: Also return the absolute quadrature error estimate
    """
    _check_n(n, 1)
    profile = laplace_profile(spec) if profile is None else profile

    def f(t):
        if t <= 0:
            return 0.0
        return t * _power(profile.phi(t), n - 1) * profile.phi_d2(t)

    value, err = _half_line_integral(f)

    def f_stderr(t):
        return t * _power(profile.phi(t), n - 1) * profile.stderr("phi_d2", t)

    _warn_if_monte_carlo(profile, "E[Y^4]", f_stderr)
    _check_range("E[Y^4]", spec, value, err, 0.0, 1.0 / n)
    return (value, err) if full_output else value


def laplace_cross_moment(
    spec: DistributionSpec, n: int, profile: LaplaceProfile = None, full_output: bool = False
) -> Union[float, Tuple[float, float]]:
    """E[Y_11 Y_12] = int_0^inf psi(s)^2 phi(s)^(n-2) ds in the i.i.d. model. Exactly 0 for symmetric laws"""
    _check_n(n, 2)
    if spec.is_symmetric:
        return (0.0, 0.0) if full_output else 0.0
    profile = laplace_profile(spec) if profile is None else profile

    def f(s):
        return profile.psi(s) ** 2 * _power(profile.phi(s), n - 2)

    value, err = _half_line_integral(f)

    def f_stderr(s):
        return 2 * abs(profile.psi(s)) * profile.stderr("psi", s) * _power(profile.phi(s), n - 2)

    _warn_if_monte_carlo(profile, "E[Y_11 Y_12]", f_stderr)
    _check_range("E[Y_11 Y_12]", spec, value, err, 0.0)
    return (value, err) if full_output else value
