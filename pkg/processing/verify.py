"""
verify.py
---------
Reconstruct QSP values from a sequence and measure the processing error

    eps_qsp = max_theta |<b| F(e^{i theta/2}) |b> - (A + iB)(e^{i theta})|

against the truncated target polynomial.
"""

import logging
import time
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
import pandas as pd

from .decompose import BASES, QspSequence
from .errors import DomainError, GridTooCoarse
from .laurent import cosine_theta_grid, eval_on_circle, sample_on_circle, theta_grid
from .serialization import write_csv


logger = logging.getLogger(__name__)

GRIDS = ('theta', 'cosine')
MIN_SAMPLES = 4
DEFAULT_SAMPLES = 8

CSV_COLUMNS = ['theta', 'target_re', 'target_im', 'qsp_re', 'qsp_im', 'abs_err']


@dataclass
class VerificationReport:
    eps_qsp: float
    grid_points: int
    basis: str
    worst_theta: float
    per_point_csv_path: Optional[str] = None
    elapsed_seconds: float = 0.0
    grid: str = 'theta'

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> 'VerificationReport':
        return cls(**data)


def reconstruct(seq: QspSequence, theta) -> np.ndarray:
    """
    E0 E_{p_1}(w) ... E_{p_L}(w) at w = e^{i theta/2}, multiplied left to right.

    Returns a 2x2 matrix for scalar theta, shape (len(theta), 2, 2) otherwise.
    """
    scalar = np.ndim(theta) == 0
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    result = np.broadcast_to(np.asarray(seq.E0, dtype=np.complex128), (theta.size, 2, 2)).copy()
    for p in seq.projectors:
        result = result @ p.factor(theta)
    return result[0] if scalar else result


def _expectation(matrices, basis):
    if basis == 'plus':
        return 0.5 * matrices.sum(axis=(-2, -1))
    return matrices[..., 0, 0]


def qsp_value(seq: QspSequence, theta, basis: Optional[str] = None):
    """<+|F|+> (basis 'plus') or <0|F|0> (basis 'zero'); defaults to seq.basis."""
    basis = basis or seq.basis
    if basis not in BASES:
        raise DomainError(f"basis must be one of {BASES}, got {basis!r}")
    values = _expectation(reconstruct(seq, theta), basis)
    if np.ndim(values) == 0:
        return complex(values)
    return values


def target_values(target, theta) -> np.ndarray:
    """(A + iB)(e^{i theta}) for anything with A and B Laurent attributes."""
    return eval_on_circle(target.A, theta) + 1j * eval_on_circle(target.B, theta)


def per_point_frame(theta, target, qsp) -> pd.DataFrame:
    return pd.DataFrame({
        'theta': theta,
        'target_re': target.real,
        'target_im': target.imag,
        'qsp_re': qsp.real,
        'qsp_im': qsp.imag,
        'abs_err': np.abs(qsp - target),
    }, columns=CSV_COLUMNS)


def epsilon_qsp(seq: QspSequence, target, grid_points: Optional[int] = None, basis: Optional[str] = None,
                grid: str = 'theta', csv_path: Optional[str] = None, run_config=None) -> VerificationReport:
    """
    Sampled l-infinity distance between the QSP value and A + iB.

    grid 'theta' is uniform on [0, 2 pi); grid 'cosine' samples the angles
    of Chebyshev nodes in x = cos(theta). Default size 8(L+1) for L
    projectors; at least 4(L+1) is required.

    Raises:
        GridTooCoarse: grid_points below 4(L+1)
    """
    basis = basis or seq.basis
    if grid not in GRIDS:
        raise DomainError(f"grid must be one of {GRIDS}, got {grid!r}")
    length = max(len(seq.projectors), 2 * getattr(target, 'degree', 0))
    needed = MIN_SAMPLES * (length + 1)
    points = grid_points or DEFAULT_SAMPLES * (length + 1)
    if points < needed:
        raise GridTooCoarse(f"{points} grid points cannot resolve {length} projectors; need at least {needed}")

    start = time.perf_counter()
    theta = theta_grid(points) if grid == 'theta' else cosine_theta_grid(points)
    qsp = qsp_value(seq, theta, basis)
    if grid == 'theta':
        expected = (sample_on_circle(target.A, points) + 1j * sample_on_circle(target.B, points))
    else:
        expected = target_values(target, theta)
    errors = np.abs(qsp - expected)
    worst = int(np.argmax(errors))
    elapsed = time.perf_counter() - start

    report = VerificationReport(
        eps_qsp=float(errors[worst]),
        grid_points=points,
        basis=basis,
        worst_theta=float(theta[worst]),
        elapsed_seconds=elapsed,
        grid=grid,
    )
    if csv_path:
        write_csv(per_point_frame(theta, expected, qsp), csv_path, run_config=run_config)
        report.per_point_csv_path = str(csv_path)
    logger.info("eps_qsp %.3e over %d points (worst theta %.6f)", report.eps_qsp, points, report.worst_theta)
    return report
