from .generalized import (
    FixedPointResult,
    IterationForm,
    LsdSolution,
    default_grid,
    lsd_density_on_grid,
    lsd_quantiles,
    lsd_support_bound,
    solve_lsd,
)
from .marchenko_pastur import MPLaw, mp_cdf, mp_density, mp_quantile, mp_stieltjes, mp_tables

__all__ = [
    "FixedPointResult",
    "IterationForm",
    "LsdSolution",
    "MPLaw",
    "default_grid",
    "lsd_density_on_grid",
    "lsd_quantiles",
    "lsd_support_bound",
    "mp_cdf",
    "mp_density",
    "mp_quantile",
    "mp_stieltjes",
    "mp_tables",
    "solve_lsd",
]
