import pathlib

import numpy as np

from rmcorr.distributions import DistributionSpec
from rmcorr.ensemble import SampleEnsemble, generate
from rmcorr.population import build_banded_toeplitz, build_identity

this_dir = pathlib.Path(__file__).resolve().absolute().parent
example_files = this_dir / ".." / "files"
config_files = example_files / "configs"

BANDED_COEFFS = (0.5, 0.25)


def gaussian_identity(p: int, n: int, seed: int = 1, *keys) -> SampleEnsemble:
    return generate(build_identity(p), DistributionSpec.gaussian(), n, seed, *keys)


def gaussian_banded(p: int, n: int, seed: int = 1, *keys) -> SampleEnsemble:
    return generate(build_banded_toeplitz(p, BANDED_COEFFS), DistributionSpec.gaussian(), n, seed, *keys)


def z_grid(count_re: int = 5, im_values=(0.1, 0.5, 1.0, 2.0)):
    """count_re x len(im_values) points in the upper half-plane"""
    return [complex(re, im) for re in np.linspace(-1.0, 4.0, count_re) for im in im_values]
