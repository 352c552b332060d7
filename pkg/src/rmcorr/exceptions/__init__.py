from .config import ConfigError
from .model_definition import DegenerateSample, ModelConstructionError, NotPositiveSemiDefinite, UnsupportedModel
from .numerics import (
    BranchSelectionError,
    DegradedPrecisionWarning,
    IterationInstability,
    NonConvergence,
    NumericalError,
)
from .parameters import ContractError, DomainError, InvalidParameter

__all__ = [
    "ConfigError",
    "DegenerateSample",
    "ModelConstructionError",
    "NotPositiveSemiDefinite",
    "UnsupportedModel",
    "BranchSelectionError",
    "DegradedPrecisionWarning",
    "IterationInstability",
    "NonConvergence",
    "NumericalError",
    "ContractError",
    "DomainError",
    "InvalidParameter",
]
