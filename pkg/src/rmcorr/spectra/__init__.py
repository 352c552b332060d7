from .concept import (
    EmpiricalSpectrum,
    esd_cdf,
    esd_quantile,
    ks_distance,
    quantile_table,
    stieltjes_empirical,
    symmetric_eigenvalues,
)
from .measures import DiscreteMeasure

__all__ = [
    "DiscreteMeasure",
    "EmpiricalSpectrum",
    "esd_cdf",
    "esd_quantile",
    "ks_distance",
    "quantile_table",
    "stieltjes_empirical",
    "symmetric_eigenvalues",
]
