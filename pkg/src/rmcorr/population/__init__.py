from .builders import (
    build_banded_toeplitz,
    build_from_sparse_root,
    build_identity,
    build_model,
    esd_of_T,
    from_correlation,
    validate_assumptions,
)
from .concept import AssumptionReport, PopulationMode, PopulationModel
from .utils import hermitian_sqrt, index_sets

__all__ = [
    "AssumptionReport",
    "PopulationMode",
    "PopulationModel",
    "build_banded_toeplitz",
    "build_from_sparse_root",
    "build_identity",
    "build_model",
    "esd_of_T",
    "from_correlation",
    "hermitian_sqrt",
    "index_sets",
    "validate_assumptions",
]
