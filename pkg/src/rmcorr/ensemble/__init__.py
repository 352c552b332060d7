from .concept import (
    SampleEnsemble,
    companion_eigen_check,
    generate,
    remove_row_view,
    self_normalize,
    smallest_sample_eigenvalue,
)

__all__ = [
    "SampleEnsemble",
    "companion_eigen_check",
    "generate",
    "remove_row_view",
    "self_normalize",
    "smallest_sample_eigenvalue",
]
