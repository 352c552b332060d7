from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from rmcorr.config import Settings
from rmcorr.exceptions import InvalidParameter


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finitely supported probability measure with ascending atoms"""

    atoms: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if len(self.atoms) != len(self.weights) or len(self.atoms) == 0:
            raise InvalidParameter("atoms and weights must be non-empty and of equal length")
        if np.any(self.weights < 0) or abs(self.weights.sum() - 1.0) > 1e-12:
            raise InvalidParameter(f"weights must be nonnegative and sum to 1 (sum={self.weights.sum()})")

    @classmethod
    def point_mass(cls, atom: float = 1.0) -> DiscreteMeasure:
        return cls(np.array([float(atom)]), np.array([1.0]))

    @classmethod
    def from_values(cls, values, tol: float = None) -> DiscreteMeasure:
        """Uniform measure on values, merging values equal within tol into a single atom"""
        tol = Settings.atom_merge_tol if tol is None else tol
        values = np.sort(np.asarray(values, dtype=float))
        if values.size == 0:
            raise InvalidParameter("Cannot build a measure from an empty set of values")
        starts = np.concatenate([[0], np.flatnonzero(np.diff(values) > tol) + 1])
        counts = np.diff(np.concatenate([starts, [values.size]]))
        atoms = np.add.reduceat(values, starts) / counts
        return cls(atoms, counts / values.size)

    @property
    def mean(self) -> float:
        return float(np.dot(self.atoms, self.weights))

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        cum = np.concatenate([[0.0], np.cumsum(self.weights)])
        return cum[np.searchsorted(self.atoms, x, side="right")]

    def has_atom_at(self, x: float, tol: float = None) -> bool:
        tol = Settings.atom_merge_tol if tol is None else tol
        return bool(np.any(np.abs(self.atoms - x) <= tol))

    def __len__(self):
        return len(self.atoms)
