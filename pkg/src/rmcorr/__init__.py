from rmcorr.config import Settings
from rmcorr.distributions import DistributionSpec, laplace_profile
from rmcorr.ensemble import SampleEnsemble, generate
from rmcorr.limit_laws import MPLaw, lsd_density_on_grid, solve_lsd
from rmcorr.population import PopulationModel, build_model, esd_of_T
from rmcorr.spectra import DiscreteMeasure, EmpiricalSpectrum

__all__ = [
    "Settings",
    "DistributionSpec",
    "laplace_profile",
    "SampleEnsemble",
    "generate",
    "MPLaw",
    "lsd_density_on_grid",
    "solve_lsd",
    "PopulationModel",
    "build_model",
    "esd_of_T",
    "DiscreteMeasure",
    "EmpiricalSpectrum",
]
