from .concept import DistKind, DistributionSpec
from .laplace import LaplaceMode, LaplaceProfile, laplace_profile
from .utils import make_rng, sample

__all__ = [
    "DistKind",
    "DistributionSpec",
    "LaplaceMode",
    "LaplaceProfile",
    "laplace_profile",
    "make_rng",
    "sample",
]
