from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
import pandas as pd

from rmcorr.diagnostics import run_replicates
from rmcorr.diagnostics.replicates import batch_apply
from rmcorr.distributions import DistributionSpec
from rmcorr.ensemble import generate
from rmcorr.limit_laws import default_grid, lsd_density_on_grid
from rmcorr.population import PopulationModel, build_model, esd_of_T
from rmcorr.spectra import esd_quantile

from .config import ExperimentConfig


@dataclass
class QQTable:
    """Mean simulated ESD quantiles of R under two entry laws at one (p, n)"""

    p: int
    n: int
    q_list: List[float]
    labels: Tuple[str, str]
    means: np.ndarray = field(repr=False)  # 2 x len(q_list)
    stderrs: np.ndarray = field(repr=False)
    lsd_reference: np.ndarray = field(repr=False)
    replicates: int = 0

    @property
    def gaps(self) -> np.ndarray:
        return np.abs(self.means[0] - self.means[1])

    @property
    def joint_stderrs(self) -> np.ndarray:
        return np.sqrt(self.stderrs[0] ** 2 + self.stderrs[1] ** 2)

    def max_gap(self, q_max: float = 0.9) -> float:
        mask = np.asarray(self.q_list) <= q_max + 1e-12
        return float(np.max(self.gaps[mask]))

    def gap_at(self, q: float) -> float:
        idx = int(np.argmin(np.abs(np.asarray(self.q_list) - q)))
        return float(self.gaps[idx])

    def to_frame(self) -> pd.DataFrame:
        a, b = self.labels
        if a == b:
            a, b = f"{a}_a", f"{b}_b"
        return pd.DataFrame(
            {
                "q": self.q_list,
                f"{a}_mean": self.means[0],
                f"{a}_stderr": self.stderrs[0],
                f"{b}_mean": self.means[1],
                f"{b}_stderr": self.stderrs[1],
                "gap": self.gaps,
                "lsd_quantile": self.lsd_reference,
            }
        )


@dataclass
class QQReport:
    tables: List[QQTable]

    def table(self, p: int, n: int) -> QQTable:
        for t in self.tables:
            if (t.p, t.n) == (p, n):
                return t
        raise KeyError(f"No QQ table for p={p}, n={n}")

    def to_dict(self) -> dict:
        return dict(
            sizes=[
                dict(p=t.p, n=t.n, labels=list(t.labels), max_gap=t.max_gap(), replicates=t.replicates)
                for t in self.tables
            ]
        )


def _mean_quantiles(
    model: PopulationModel, spec: DistributionSpec, n: int, config: ExperimentConfig, stream: int
) -> Tuple[np.ndarray, np.ndarray]:
    def one(r):
        spectrum = generate(model, spec, n, config.seed, stream, r).spectrum()
        return np.array([esd_quantile(spectrum, q) for q in config.q_list])

    values = np.array(run_replicates(one, config.replicates, config.threads))
    return batch_apply(values, lambda block: block.mean(axis=0), config.tolerances.batches)


def qq_experiment(config: ExperimentConfig) -> QQReport:
    """Quantile comparison of two entry laws sharing one population model.

    Replicate r of size i and law j draws from the stream (seed, 2 i + j, r). The quantiles of the
    generalized MP law with H = ESD(T) are added as reference.
    """
    spec_a, spec_b = config.specs
    tables = []
    for i, (p, n) in enumerate(config.size_list):
        model = build_model(config.model.mode, p, config.model.coeffs)
        mean_a, se_a = _mean_quantiles(model, spec_a, n, config, 2 * i)
        mean_b, se_b = _mean_quantiles(model, spec_b, n, config, 2 * i + 1)

        tol = config.tolerances
        h = esd_of_T(model)
        gamma = p / n
        solution = lsd_density_on_grid(
            gamma, h, default_grid(gamma, h, config.grid_points), tol.lsd_epsilon, **tol.solver_kwargs()
        )
        table = QQTable(
            p=p,
            n=n,
            q_list=list(config.q_list),
            labels=(spec_a.label, spec_b.label),
            means=np.vstack([mean_a, mean_b]),
            stderrs=np.vstack([se_a, se_b]),
            lsd_reference=np.array(solution.quantiles(config.q_list)),
            replicates=config.replicates,
        )
        logging.info(f"QQ p={p} n={n}: max gap {table.max_gap():.4f}")
        tables.append(table)
    return QQReport(tables)
