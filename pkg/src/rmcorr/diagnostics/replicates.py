from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Sequence, TypeVar

import numpy as np
import toolz

from rmcorr.config import Settings
from rmcorr.exceptions import InvalidParameter

T = TypeVar("T")


@dataclass(frozen=True)
class BatchEstimate:
    """Replicate mean with a batch-means standard error"""

    mean: complex
    stderr: float
    replicates: int

    @property
    def real(self) -> float:
        return float(np.real(self.mean))

    def within(self, target: complex, k: float = 3.0) -> bool:
        return abs(self.mean - target) <= k * self.stderr

    def to_dict(self) -> dict:
        mean = self.mean
        if isinstance(mean, complex):
            mean = [mean.real, mean.imag]
        return dict(mean=mean, stderr=self.stderr, replicates=self.replicates)


def run_replicates(func: Callable[[int], T], count: int, threads: int = None) -> List[T]:
    """Evaluate func(0), ..., func(count - 1). Results come back in index order whatever the completion order"""
    if count < 1:
        raise InvalidParameter(f"Replicate count must be positive, got {count}")
    if threads is None or threads <= 1:
        return [func(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(func, range(count)))


def _batches(values: np.ndarray, batches: int) -> List[np.ndarray]:
    size = math.ceil(values.shape[0] / batches)
    return [np.asarray(b) for b in toolz.partition_all(size, values)]


def batch_spread(batch_values: Sequence) -> float:
    """Standard error of the overall mean from per-batch statistics; complex values combine real and imaginary parts"""
    b = np.asarray(batch_values)
    if b.shape[0] < 2:
        return float("nan")
    if np.iscomplexobj(b):
        var = np.var(b.real, axis=0, ddof=1) + np.var(b.imag, axis=0, ddof=1)
    else:
        var = np.var(b, axis=0, ddof=1)
    return np.sqrt(var / b.shape[0])


def batch_estimate(values: Sequence, batches: int = None) -> BatchEstimate:
    values = np.asarray(values)
    batches = Settings.batches if batches is None else batches
    batches = min(batches, values.shape[0])
    means = [b.mean() for b in _batches(values, batches)]
    mean = values.mean()
    mean = complex(mean) if np.iscomplexobj(values) else float(mean)
    return BatchEstimate(mean, float(batch_spread(means)), int(values.shape[0]))


def batch_apply(values: np.ndarray, statistic: Callable[[np.ndarray], np.ndarray], batches: int = None):
    """statistic evaluated on the full sample and on every batch, with the batch-means standard error"""
    values = np.asarray(values)
    batches = Settings.batches if batches is None else batches
    batches = min(batches, values.shape[0])
    per_batch = [statistic(b) for b in _batches(values, batches)]
    return statistic(values), batch_spread(per_batch)
