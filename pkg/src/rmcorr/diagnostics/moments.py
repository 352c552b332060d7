from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from rmcorr.distributions import DistributionSpec
from rmcorr.ensemble import generate
from rmcorr.exceptions import InvalidParameter
from rmcorr.population import PopulationModel

from .replicates import BatchEstimate, batch_apply, batch_estimate, run_replicates


@dataclass(frozen=True)
class MomentReport:
    """Monte Carlo estimates of the self-normalized moments of Y. Row statistics are pooled over all p rows"""

    p: int
    n: int
    n_E_Y4: BatchEstimate
    n_E_Y1Y2: BatchEstimate
    n_max_first_moment: BatchEstimate
    n_max_fourth_moment: BatchEstimate
    mixed_second_sum: BatchEstimate
    replicates: int

    def to_dict(self) -> dict:
        d = dict(p=self.p, n=self.n, replicates=self.replicates)
        for key in ("n_E_Y4", "n_E_Y1Y2", "n_max_first_moment", "n_max_fourth_moment", "mixed_second_sum"):
            d[key] = getattr(self, key).to_dict()
        return d


def _row_statistics(y: np.ndarray) -> np.ndarray:
    """Per row k: sum_j Y^4, n sum_{i != j} Y_i Y_j / (n (n - 1)), n * mean_j Y"""
    n = y.shape[1]
    fourth = np.sum(y**4, axis=1)
    cross = (np.sum(y, axis=1) ** 2 - 1.0) / (n - 1)
    first = n * y.mean(axis=1)
    return np.stack([fourth, cross, first])


def moment_estimates(
    model: PopulationModel,
    spec: DistributionSpec,
    n: int,
    replicates: int,
    seed: int,
    experiment_index: int = 0,
    threads: int = None,
    batches: int = None,
) -> MomentReport:
    """Estimate n E[Y_11^4], n E[Y_11 Y_12], max_k n |E[Y_k1]|, max_k n E[Y_k1^4] and sum_{i,k} E[Y_k1^2 Y_i1^2].

    Columns of Y are exchangeable, so every entry of a row serves as a draw of Y_k1. Replicate r draws from the
    stream (seed, experiment_index, r).
    """
    if replicates < 2:
        raise InvalidParameter(f"At least 2 replicates are needed, got {replicates}")

    def one(r):
        ens = generate(model, spec, n, seed, experiment_index, r)
        stats = _row_statistics(ens.Y)
        mixed = float(np.mean(np.sum(ens.Y**2, axis=0) ** 2))
        return stats, mixed

    results = run_replicates(one, replicates, threads)
    rows = np.stack([r[0] for r in results])  # replicates x 3 x p
    mixed = np.array([r[1] for r in results])

    def row_max(index, absolute):
        def statistic(block):
            m = block[:, index, :].mean(axis=0)
            return np.max(np.abs(m)) if absolute else np.max(m)

        value, _ = batch_apply(rows, statistic, batches)
        # standard error of the maximizing row mean, bounded by the largest per-row error
        _, per_row = batch_apply(rows, lambda block: block[:, index, :].mean(axis=0), batches)
        return BatchEstimate(float(value), float(np.max(per_row)), replicates)

    return MomentReport(
        p=model.p,
        n=n,
        n_E_Y4=batch_estimate(rows[:, 0, :].mean(axis=1), batches),
        n_E_Y1Y2=batch_estimate(rows[:, 1, :].mean(axis=1), batches),
        n_max_first_moment=row_max(2, True),
        n_max_fourth_moment=row_max(0, False),
        mixed_second_sum=batch_estimate(mixed, batches),
        replicates=replicates,
    )
