from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable, Tuple

import numpy as np
import scipy.linalg

from rmcorr.ensemble import SampleEnsemble, remove_row_view
from rmcorr.exceptions import DomainError, InvalidParameter


@dataclass(frozen=True)
class ResolventDiagnostics:
    """Quadratic form W_n(z) = y D(z) y^T - tr D(z)/n and its split into the diagonal part W_n1 and the rest W_n2"""

    z: complex
    W_n: complex
    W_n1: complex
    W_n2: complex
    trace_D_over_n: complex
    bound_check: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("z", "W_n", "W_n1", "W_n2", "trace_D_over_n"):
            d[key] = [d[key].real, d[key].imag]
        return d


def _check_z(z) -> complex:
    z = complex(z)
    if z.imag <= 0:
        raise DomainError(f"Resolvent needs Im z > 0, got z={z}")
    return z


def resolvent_D(ensemble: SampleEnsemble, z: complex, row: int = 1) -> np.ndarray:
    """D(z) = (Y^T Y - y_k^T y_k - z I)^-1 for the removed row k (1-based)"""
    z = _check_z(z)
    _, rest = remove_row_view(ensemble, row)
    n = ensemble.n
    shifted = (rest.T @ rest).astype(complex) - z * np.eye(n)
    return scipy.linalg.solve(shifted, np.eye(n, dtype=complex))


def _w_parts(ensemble: SampleEnsemble, z: complex, row: int) -> Tuple[ResolventDiagnostics, np.ndarray]:
    z = _check_z(z)
    d = resolvent_D(ensemble, z, row)
    y = ensemble.Y[row - 1]
    n = ensemble.n

    diag = np.diag(d)
    trace_over_n = complex(diag.sum() / n)
    quad = complex(y @ d @ y)
    diag_part = complex(np.sum(y * y * diag))
    w = quad - trace_over_n
    w1 = diag_part - trace_over_n
    w2 = quad - diag_part
    bound = bool(abs(w) <= 2 / z.imag + 1e-10)
    return ResolventDiagnostics(z, w, w1, w2, trace_over_n, bound), diag


def compute_w(ensemble: SampleEnsemble, z: complex, row: int = 1) -> ResolventDiagnostics:
    """W_n(z) for one removed row of Y. Row 1 by convention; rows are exchangeable in the i.i.d. model"""
    return _w_parts(ensemble, z, row)[0]


def average_w(ensemble: SampleEnsemble, z: complex, rows: Iterable[int] = None) -> ResolventDiagnostics:
    """Average of compute_w over a subset of removed rows, for variance reduction"""
    rows = list(range(1, ensemble.p + 1)) if rows is None else list(rows)
    if len(rows) == 0:
        raise InvalidParameter("average_w needs at least one row")
    results = [compute_w(ensemble, z, k) for k in rows]
    z = results[0].z
    w, w1, w2, tr = (
        complex(np.mean([getattr(r, key) for r in results])) for key in ("W_n", "W_n1", "W_n2", "trace_D_over_n")
    )
    return ResolventDiagnostics(z, w, w1, w2, tr, all(r.bound_check for r in results))
