from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate, special

from rmcorr.config import Settings
from rmcorr.exceptions import DomainError, InvalidParameter

from .concept import DistKind, DistributionSpec
from .utils import sample


class LaplaceMode:
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"
    MONTE_CARLO = "monte_carlo"

    all = [CLOSED_FORM, QUADRATURE, MONTE_CARLO]


# Integrand factors g(x) for phi, -phi', phi'' and psi
_MOMENT_POWERS = dict(phi=0, phi_d1=2, phi_d2=4, psi=1)
_SIGNS = dict(phi=1.0, phi_d1=-1.0, phi_d2=1.0, psi=1.0)


@dataclass
class LaplaceProfile:
    """Laplace transform data of xi^2 consumed by the self-normalized moment integrals.

    phi(s) = E[exp(-s xi^2)], phi_d1(s) = -E[xi^2 exp(-s xi^2)], phi_d2(s) = E[xi^4 exp(-s xi^2)] and
    psi(s) = E[xi exp(-s xi^2)].
    """

    spec: DistributionSpec
    phi: Callable
    phi_d1: Callable
    phi_d2: Callable
    psi: Callable
    mode: str
    _stderr: Callable = field(default=None, repr=False)

    def stderr(self, quantity: str, s: float) -> float:
        """Absolute error estimate of one evaluation (quadrature error or Monte Carlo standard error)"""
        if quantity not in _MOMENT_POWERS:
            raise InvalidParameter(f'Unknown Laplace quantity "{quantity}"')
        if self._stderr is None:
            return 0.0
        return float(self._stderr(quantity, s))


def _check_s(s, allow_zero=False):
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr < 0) or (not allow_zero and np.any(s_arr == 0)):
        raise DomainError(f"Laplace transform evaluated outside its domain (s={s})")
    return s_arr


def _gaussian_profile(spec: DistributionSpec) -> LaplaceProfile:
    def phi(s):
        s = _check_s(s, allow_zero=True)
        return (1 + 2 * s) ** -0.5

    def phi_d1(s):
        s = _check_s(s, allow_zero=True)
        return -((1 + 2 * s) ** -1.5)

    def phi_d2(s):
        s = _check_s(s, allow_zero=True)
        return 3 * (1 + 2 * s) ** -2.5

    def psi(s):
        s = _check_s(s, allow_zero=True)
        out = np.zeros_like(s)
        return float(out) if out.ndim == 0 else out

    return LaplaceProfile(spec, phi, phi_d1, phi_d2, psi, LaplaceMode.CLOSED_FORM)


def _upper_gamma(a: float, x):
    """Upper incomplete gamma function Gamma(a, x) for x > 0 and any real a"""
    if a > 0:
        return special.gamma(a) * special.gammaincc(a, x)
    if a == 0:
        return special.exp1(x)
    # Gamma(a, x) = (Gamma(a + 1, x) - x^a e^-x) / a
    return (_upper_gamma(a + 1, x) - np.exp(a * np.log(x) - x)) / a


def _pareto_profile(spec: DistributionSpec) -> LaplaceProfile:
    """With xi^2 = c^2 P^2 and P Pareto(alpha) on [1, inf):

    E[P^2k exp(-sigma P^2)] = alpha / 2 sigma^(alpha/2 - k) Gamma(k - alpha/2, sigma), sigma = s c^2.
    """
    alpha, c2 = spec.alpha, spec.scale**2

    def moment(k: int, s):
        sigma = s * c2
        if k == 0:
            # alpha/2 sigma^(alpha/2) Gamma(-alpha/2, sigma) with one recursion step folded in, so phi -> 1 stays exact
            return np.exp(-sigma) - np.power(sigma, alpha / 2) * _upper_gamma(1 - alpha / 2, sigma)
        return c2**k * alpha / 2 * np.power(sigma, alpha / 2 - k) * _upper_gamma(k - alpha / 2, sigma)

    def phi(s):
        s = _check_s(s, allow_zero=True)
        out = np.where(s > 0, moment(0, np.where(s > 0, s, 1.0)), 1.0)
        return float(out) if out.ndim == 0 else out

    def phi_d1(s):
        s = _check_s(s)
        out = -moment(1, s)
        return float(out) if np.ndim(out) == 0 else out

    def phi_d2(s):
        s = _check_s(s)
        out = moment(2, s)
        return float(out) if np.ndim(out) == 0 else out

    def psi(s):
        s = _check_s(s, allow_zero=True)
        out = np.zeros_like(s)
        return float(out) if out.ndim == 0 else out

    return LaplaceProfile(spec, phi, phi_d1, phi_d2, psi, LaplaceMode.CLOSED_FORM)


def _quad_expectation(spec: DistributionSpec, power: int, s: float):
    """E[xi^power exp(-s xi^2)] by adaptive quadrature against the density of xi"""
    eps = dict(epsabs=Settings.quad_abs_tol * 1e-2, epsrel=1e-12, limit=200)

    def integrand(x):
        return x**power * np.exp(-s * x * x) * spec.pdf(x)

    # split at the decay scale of exp(-s x^2)
    start = spec.support_start
    split = max(start, 0.0) + (1 / np.sqrt(s) if s > 0 else 1.0)
    head, head_err = integrate.quad(integrand, start, split, **eps)
    tail, tail_err = integrate.quad(integrand, split, np.inf, **eps)
    val, err = head + tail, head_err + tail_err
    if spec.is_symmetric:
        # even integrands only; odd ones are never integrated for symmetric laws
        return 2 * val, 2 * err
    return val, err


def _quadrature_profile(spec: DistributionSpec) -> LaplaceProfile:
    def make(quantity):
        power = _MOMENT_POWERS[quantity]
        sign = _SIGNS[quantity]

        def scalar(s):
            if s == 0 and quantity == "phi":
                return 1.0
            if spec.is_symmetric and power % 2 == 1:
                return 0.0
            return sign * _quad_expectation(spec, power, s)[0]

        vec = np.vectorize(scalar, otypes=[float])

        def evaluator(s):
            s = _check_s(s, allow_zero=quantity == "phi")
            out = vec(s)
            return float(out) if out.ndim == 0 else out

        return evaluator

    def stderr(quantity, s):
        power = _MOMENT_POWERS[quantity]
        s = float(_check_s(s, allow_zero=quantity == "phi"))
        if (s == 0 and quantity == "phi") or (spec.is_symmetric and power % 2 == 1):
            return 0.0
        return _quad_expectation(spec, power, s)[1]

    return LaplaceProfile(
        spec, make("phi"), make("phi_d1"), make("phi_d2"), make("psi"), LaplaceMode.QUADRATURE, _stderr=stderr
    )


def _monte_carlo_profile(spec: DistributionSpec, draws: int, seed: int) -> LaplaceProfile:
    x = sample(spec, draws, seed)
    x2 = x * x
    factors = dict(phi=np.ones_like(x), phi_d1=-x2, phi_d2=x2 * x2, psi=x)

    def terms(quantity, s):
        return factors[quantity] * np.exp(-s * x2)

    def make(quantity):
        def scalar(s):
            return terms(quantity, s).mean()

        vec = np.vectorize(scalar, otypes=[float])

        def evaluator(s):
            s = _check_s(s, allow_zero=quantity == "phi")
            out = vec(s)
            return float(out) if out.ndim == 0 else out

        return evaluator

    def stderr(quantity, s):
        s = float(_check_s(s, allow_zero=quantity == "phi"))
        return terms(quantity, s).std(ddof=1) / np.sqrt(draws)

    return LaplaceProfile(
        spec, make("phi"), make("phi_d1"), make("phi_d2"), make("psi"), LaplaceMode.MONTE_CARLO, _stderr=stderr
    )


def laplace_profile(spec: DistributionSpec, mode: str = None, draws: int = None, seed: int = 0) -> LaplaceProfile:
    """Laplace transform quantities of xi^2.

    Gaussian and SymmetrizedPareto laws get closed forms; the others get adaptive quadrature evaluators. Monte Carlo
    evaluators are used when explicitly requested with mode="monte_carlo".

    :param spec: The entry law
    :param mode: None (best available), "closed_form", "quadrature" or "monte_carlo"
    :param draws: Number of Monte Carlo draws. Defaults to Settings.laplace_mc_draws
    :param seed: Seed of the Monte Carlo draws
    """
    closed_forms = {DistKind.GAUSSIAN: _gaussian_profile, DistKind.PARETO: _pareto_profile}
    if mode is None:
        mode = LaplaceMode.CLOSED_FORM if spec.kind in closed_forms else LaplaceMode.QUADRATURE

    if mode == LaplaceMode.CLOSED_FORM:
        if spec.kind not in closed_forms:
            raise InvalidParameter(f"No closed form Laplace profile for {spec}")
        return closed_forms[spec.kind](spec)
    elif mode == LaplaceMode.QUADRATURE:
        return _quadrature_profile(spec)
    elif mode == LaplaceMode.MONTE_CARLO:
        draws = Settings.laplace_mc_draws if draws is None else int(draws)
        return _monte_carlo_profile(spec, draws, seed)
    else:
        raise InvalidParameter(f'Unknown Laplace mode "{mode}". Use one of {LaplaceMode.all}')
