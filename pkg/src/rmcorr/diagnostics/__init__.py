from .laplace_integrals import laplace_cross_moment, laplace_fourth_moment
from .master_equation import (
    MasterEquationResidual,
    ResidualReference,
    WVarianceReport,
    master_equation_residual,
    residual_from_replicates,
    w_variance_check,
)
from .moments import MomentReport, moment_estimates
from .replicates import BatchEstimate, batch_estimate, run_replicates
from .resolvent import ResolventDiagnostics, average_w, compute_w, resolvent_D

__all__ = [
    "BatchEstimate",
    "MasterEquationResidual",
    "MomentReport",
    "ResidualReference",
    "ResolventDiagnostics",
    "WVarianceReport",
    "average_w",
    "batch_estimate",
    "compute_w",
    "laplace_cross_moment",
    "laplace_fourth_moment",
    "master_equation_residual",
    "moment_estimates",
    "residual_from_replicates",
    "resolvent_D",
    "run_replicates",
    "w_variance_check",
]
