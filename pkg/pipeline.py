"""
pipeline.py
-----------
Dispatcher module for the processing stages.
Routes a target through completion, decomposition and verification, and
runs benchmark sweeps over target families.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import pandas as pd

from config import RunConfig
from processing.completion import CompletedQuadruple, complete, handle_zero_component
from processing.decompose import QspSequence, assemble_matrix_poly, decompose
from processing.errors import QspProcessingError, StageFailure
from processing.verify import VerificationReport, epsilon_qsp
from targets import TargetPair, get_builder


logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = ['family', 'n', 'iterations', 'residual', 'eps_qsp', 'seconds']
BENCH_COLUMNS = ['family', 'param', 'n', 'iterations', 'residual', 'eps_qsp', 'completion_seconds']
BENCH_FAMILIES = ('random', 'hs')


@dataclass
class PipelineResult:
    target: TargetPair
    completed: CompletedQuadruple
    sequence: QspSequence
    verification: VerificationReport

    def summary(self) -> dict:
        wilson = self.completed.report.wilson
        return {
            'family': self.target.meta.family,
            'n': self.target.degree,
            'iterations': wilson.iterations if wilson else 0,
            'residual': wilson.residual_linf if wilson else 0.0,
            'eps_qsp': self.verification.eps_qsp,
            'seconds': self.completed.report.elapsed_seconds,
        }


def build_target(family, **params) -> TargetPair:
    """Build a target through the family registry."""
    return get_builder(family).build(**params)


def prepare_target(pair: TargetPair, eps_fejer: float) -> TargetPair:
    """Fill an identically zero A or B so the deficiency stays strictly positive."""
    if pair.degree > 0 and pair.A.is_zero() != pair.B.is_zero():
        return handle_zero_component(pair, eps_fejer)
    return pair


def _stage(name, func, *args, **kwargs):
    try:
        return func(*args, **kwargs)
    except QspProcessingError as exc:
        logger.error("stage %s failed: %s", name, exc)
        raise StageFailure(name, exc) from exc


def run_completion(pair: TargetPair, config: RunConfig) -> CompletedQuadruple:
    prepared = _stage('pad', prepare_target, pair, config.eps_fejer)
    return _stage('complete', complete, prepared, eps_fejer=config.eps_fejer, max_iter=config.max_iter)


def run_decomposition(completed: CompletedQuadruple, config: RunConfig) -> QspSequence:
    matrix = _stage('assemble', assemble_matrix_poly, completed, basis=config.basis)
    return _stage('decompose', decompose, matrix, basis=config.basis)


def run_verification(sequence: QspSequence, pair: TargetPair, config: RunConfig, csv_path=None) -> VerificationReport:
    return _stage(
        'verify', epsilon_qsp, sequence, pair,
        grid_points=config.resolve_grid_points(pair.degree),
        basis=sequence.basis, csv_path=csv_path, run_config=config,
    )


def run_pipeline(pair: TargetPair, config: Optional[RunConfig] = None, csv_path=None) -> PipelineResult:
    """
    complete -> assemble -> decompose -> verify for one target.

    eps_qsp is measured against the target as given, so any zero-component
    filler counts toward the reported error.

    Raises:
        StageFailure: naming the stage that failed
    """
    config = config or RunConfig()
    completed = run_completion(pair, config)
    sequence = run_decomposition(completed, config)
    verification = run_verification(sequence, pair, config, csv_path)
    return PipelineResult(target=pair, completed=completed, sequence=sequence, verification=verification)


# =============================================================================
# Benchmark sweeps
# =============================================================================

def bench_target(family: str, param, config: RunConfig, eps: float) -> TargetPair:
    if family == 'random':
        return build_target('random', n=int(param), seed=config.seed)
    if family == 'hs':
        return build_target('hs', tau=float(param), eps=eps)
    raise ValueError(f"Unknown bench family: {family}. Supported: {list(BENCH_FAMILIES)}")


def bench_instance(family: str, param, config: RunConfig, eps: float) -> dict:
    """One summary row; failures produce NaN metrics and are logged."""
    row = {'family': family, 'param': param, 'n': math.nan, 'iterations': math.nan,
           'residual': math.nan, 'eps_qsp': math.nan, 'completion_seconds': math.nan}
    try:
        pair = bench_target(family, param, config, eps)
        row['n'] = pair.degree
        summary = run_pipeline(pair, config).summary()
    except QspProcessingError as exc:
        logger.warning("bench %s param=%s failed: %s", family, param, exc)
        return row
    row.update(iterations=summary['iterations'], residual=summary['residual'],
               eps_qsp=summary['eps_qsp'], completion_seconds=summary['seconds'])
    return row


def run_bench(family: str, params, config: Optional[RunConfig] = None, eps: float = 1e-14) -> pd.DataFrame:
    """
    Sweep a family over params; rows come back in sweep order.

    Instances run concurrently on config.threads workers.
    """
    config = config or RunConfig()
    params = list(params)
    if not params:
        raise ValueError("bench sweep needs at least one parameter")
    if family not in BENCH_FAMILIES:
        raise ValueError(f"Unknown bench family: {family}. Supported: {list(BENCH_FAMILIES)}")

    logger.info("bench %s: %d instances on %d threads", family, len(params), config.threads)
    if config.threads > 1 and len(params) > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            rows = list(pool.map(lambda p: bench_instance(family, p, config, eps), params))
    else:
        rows = [bench_instance(family, p, config, eps) for p in params]
    return pd.DataFrame(rows, columns=BENCH_COLUMNS)
