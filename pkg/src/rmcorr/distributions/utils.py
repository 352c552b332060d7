import numpy as np

from .concept import DistributionSpec


def make_rng(seed: int, *keys: int) -> np.random.Generator:
    """Counter-based generator for the stream (seed, *keys).

    Streams are derived with a SeedSequence, so (seed, experiment index, replicate index) triples give independent
    streams regardless of the order in which they are consumed.
    """
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF] + [int(k) for k in keys]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def sample(spec: DistributionSpec, count: int, seed: int, *keys: int) -> np.ndarray:
    """Deterministic i.i.d. draws from spec given (seed, *keys)"""
    return spec.sample(count, make_rng(seed, *keys))
