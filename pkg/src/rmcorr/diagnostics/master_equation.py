from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from rmcorr.distributions import DistributionSpec
from rmcorr.ensemble import generate
from rmcorr.exceptions import InvalidParameter, UnsupportedModel
from rmcorr.limit_laws import mp_stieltjes
from rmcorr.population import PopulationModel
from rmcorr.spectra import stieltjes_empirical

from .replicates import BatchEstimate, batch_apply, batch_estimate, run_replicates
from .resolvent import _check_z, _w_parts


class ResidualReference:
    EMPIRICAL = "empirical"
    MP = "mp"

    all = [EMPIRICAL, MP]


@dataclass(frozen=True)
class MasterEquationResidual:
    """-z E[s_n] - E[1 / (1 + W_n + gamma s - (1 - gamma)/z)] with replicate means in place of expectations"""

    z: complex
    p: int
    n: int
    residual: complex
    stderr: float
    mean_stieltjes: complex
    mean_w: complex
    replicates: int
    reference: str

    def to_dict(self) -> dict:
        def c(v):
            return [v.real, v.imag]

        return dict(
            z=c(self.z),
            p=self.p,
            n=self.n,
            residual=c(self.residual),
            abs_residual=abs(self.residual),
            stderr=self.stderr,
            mean_stieltjes=c(self.mean_stieltjes),
            mean_w=c(self.mean_w),
            replicates=self.replicates,
            reference=self.reference,
        )


def _require_identity(model: PopulationModel):
    if not model.is_identity:
        raise UnsupportedModel(f"The master equation is stated for the i.i.d. case only, got {model}")


def master_equation_residual(
    model: PopulationModel,
    spec: DistributionSpec,
    n: int,
    z: complex,
    replicates: int,
    seed: int,
    reference: str = ResidualReference.EMPIRICAL,
    experiment_index: int = 0,
    threads: int = None,
    batches: int = None,
) -> MasterEquationResidual:
    """Residual of the master Stieltjes equation of the sample correlation matrix.

    With reference="empirical" the Stieltjes transform s is the replicate mean of s_n(z); with reference="mp" it is
    the Marchenko-Pastur transform at gamma = p/n, which checks the limiting form of the equation.
    Replicate r draws from the stream (seed, experiment_index, r).
    """
    _require_identity(model)
    z = _check_z(z)
    if reference not in ResidualReference.all:
        raise InvalidParameter(f'Unknown residual reference "{reference}". Use one of {ResidualReference.all}')
    if replicates < 2:
        raise InvalidParameter(f"At least 2 replicates are needed, got {replicates}")

    def one(r):
        ens = generate(model, spec, n, seed, experiment_index, r)
        s_n = stieltjes_empirical(ens.spectrum(), z)
        w = _w_parts(ens, z, 1)[0].W_n
        return s_n, w

    pairs = np.array(run_replicates(one, replicates, threads), dtype=complex)
    return residual_from_replicates(model.p, n, z, pairs[:, 0], pairs[:, 1], reference, batches)


def residual_from_replicates(
    p: int, n: int, z: complex, s_values, w_values, reference: str = ResidualReference.EMPIRICAL, batches: int = None
) -> MasterEquationResidual:
    """Master equation residual from per-replicate s_n(z) and W_n(z) (row 1) that were already computed"""
    z = _check_z(z)
    if reference not in ResidualReference.all:
        raise InvalidParameter(f'Unknown residual reference "{reference}". Use one of {ResidualReference.all}')
    pairs = np.column_stack([np.asarray(s_values, dtype=complex), np.asarray(w_values, dtype=complex)])
    if pairs.shape[0] < 2:
        raise InvalidParameter(f"At least 2 replicates are needed, got {pairs.shape[0]}")
    gamma = p / n
    mp_s = mp_stieltjes(gamma, z) if reference == ResidualReference.MP else None

    def statistic(block):
        s = block[:, 0].mean() if mp_s is None else mp_s
        rhs = np.mean(1 / (1 + block[:, 1] + gamma * s - (1 - gamma) / z))
        return -z * s - rhs

    residual, stderr = batch_apply(pairs, statistic, batches)
    logging.debug(f"Master equation residual p={p} n={n} z={z}: {abs(residual):.3e} +- {stderr:.3e}")
    return MasterEquationResidual(
        z=z,
        p=p,
        n=n,
        residual=complex(residual),
        stderr=float(stderr),
        mean_stieltjes=complex(pairs[:, 0].mean()),
        mean_w=complex(pairs[:, 1].mean()),
        replicates=pairs.shape[0],
        reference=reference,
    )


@dataclass(frozen=True)
class WVarianceReport:
    """Second moments of the W_n split against the fourth-moment prediction for the diagonal part"""

    z: complex
    abs_W1_sq: BatchEstimate
    predicted_W1_sq: BatchEstimate
    abs_W2_sq: BatchEstimate
    n_E_Y4: BatchEstimate

    def to_dict(self) -> dict:
        return dict(
            z=[self.z.real, self.z.imag],
            abs_W1_sq=self.abs_W1_sq.to_dict(),
            predicted_W1_sq=self.predicted_W1_sq.to_dict(),
            abs_W2_sq=self.abs_W2_sq.to_dict(),
            n_E_Y4=self.n_E_Y4.to_dict(),
        )


def w_variance_check(
    model: PopulationModel,
    spec: DistributionSpec,
    n: int,
    z: complex,
    replicates: int,
    seed: int,
    experiment_index: int = 0,
    threads: int = None,
) -> WVarianceReport:
    """Compare E|W_n1|^2 with n E[Y^4] (E[mean_j |D_jj|^2] - E[|tr D/n|^2]) and estimate E|W_n2|^2"""
    _require_identity(model)
    z = _check_z(z)
    if replicates < 2:
        raise InvalidParameter(f"At least 2 replicates are needed, got {replicates}")

    def one(r):
        ens = generate(model, spec, n, seed, experiment_index, r)
        diag, d_diag = _w_parts(ens, z, 1)
        m4 = float(np.sum(ens.Y[0] ** 4))
        return abs(diag.W_n1) ** 2, abs(diag.W_n2) ** 2, m4, np.mean(np.abs(d_diag) ** 2), abs(diag.trace_D_over_n) ** 2

    rows = np.array(run_replicates(one, replicates, threads))
    n_e_y4 = batch_estimate(rows[:, 2])
    predicted = rows[:, 2].mean() * (rows[:, 3] - rows[:, 4])
    return WVarianceReport(
        z=z,
        abs_W1_sq=batch_estimate(rows[:, 0]),
        predicted_W1_sq=batch_estimate(predicted),
        abs_W2_sq=batch_estimate(rows[:, 1]),
        n_E_Y4=n_e_y4,
    )
