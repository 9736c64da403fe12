"""
serialization.py
----------------
JSON and CSV encodings of the pipeline artifacts.

Complex numbers are [re, im] pairs; floats are written with Python's
shortest round-trip repr so a write/read cycle is exact. Every writer
embeds the run configuration: as a "run_config" key in JSON and as a
leading "# run_config=<json>" comment line in CSV.
"""

import json
from pathlib import Path

import numpy as np
import pandas as pd

from targets.base_builder import TargetMeta, TargetPair

from .completion import CompletedQuadruple, CompletionReport
from .decompose import Projector, QspSequence
from .errors import DomainError
from .fejer import WilsonReport
from .laurent import LaurentPolynomial


def _pair(value) -> list:
    value = complex(value)
    return [float(value.real), float(value.imag)]


def _complex(pair) -> complex:
    re, im = pair
    return complex(float(re), float(im))


def _matrix_to_list(M) -> list:
    return [_pair(x) for x in np.asarray(M).reshape(-1)]


def _matrix_from_list(items) -> np.ndarray:
    if len(items) != 4:
        raise DomainError(f"2x2 matrix needs 4 entries, got {len(items)}")
    return np.array([_complex(x) for x in items], dtype=np.complex128).reshape(2, 2)


def _config_dict(run_config):
    if run_config is None:
        return None
    return run_config.to_dict() if hasattr(run_config, 'to_dict') else dict(run_config)


# =============================================================================
# Laurent polynomials and targets
# =============================================================================

def laurent_to_dict(p: LaurentPolynomial) -> dict:
    return {'kind': 'laurent', 'degree': p.degree, 'coeffs': [_pair(c) for c in p.coeffs]}


def laurent_from_dict(data: dict) -> LaurentPolynomial:
    if data.get('kind') != 'laurent':
        raise DomainError(f"expected a laurent record, got kind={data.get('kind')!r}")
    coeffs = [_complex(c) for c in data['coeffs']]
    if len(coeffs) != 2 * int(data['degree']) + 1:
        raise DomainError(f"degree {data['degree']} needs {2 * int(data['degree']) + 1} coefficients")
    return LaurentPolynomial(coeffs)


def target_to_dict(pair: TargetPair) -> dict:
    return {'A': laurent_to_dict(pair.A), 'B': laurent_to_dict(pair.B), 'meta': pair.meta.to_dict()}


def target_from_dict(data: dict) -> TargetPair:
    return TargetPair(
        A=laurent_from_dict(data['A']),
        B=laurent_from_dict(data['B']),
        meta=TargetMeta.from_dict(data['meta']),
    )


# =============================================================================
# Completion
# =============================================================================

def quadruple_to_dict(q: CompletedQuadruple) -> dict:
    out = {name: laurent_to_dict(getattr(q, name)) for name in ('A', 'B', 'C', 'D')}
    out['report'] = q.report.to_dict()
    return out


def quadruple_from_dict(data: dict) -> CompletedQuadruple:
    rep = dict(data['report'])
    wilson_data = rep.pop('wilson', None)
    wilson = WilsonReport(**wilson_data) if wilson_data else None
    return CompletedQuadruple(
        A=laurent_from_dict(data['A']),
        B=laurent_from_dict(data['B']),
        C=laurent_from_dict(data['C']),
        D=laurent_from_dict(data['D']),
        report=CompletionReport(wilson=wilson, **rep),
    )


# =============================================================================
# Sequences and gates
# =============================================================================

def sequence_to_dict(seq: QspSequence) -> dict:
    return {
        'E0': _matrix_to_list(seq.E0),
        'projectors': [[_pair(x) for x in p.v] for p in seq.projectors],
        'truncation_error': float(seq.truncation_error),
        'source_degree': int(seq.source_degree),
        'basis': seq.basis,
    }


def sequence_from_dict(data: dict) -> QspSequence:
    projectors = tuple(Projector(np.array([_complex(x) for x in v])) for v in data['projectors'])
    return QspSequence(
        E0=_matrix_from_list(data['E0']),
        projectors=projectors,
        truncation_error=float(data.get('truncation_error', 0.0)),
        source_degree=int(data.get('source_degree', len(projectors) // 2)),
        basis=data.get('basis', 'plus'),
    )


def gates_to_dict(gates) -> dict:
    return {'gates': [_matrix_to_list(G) for G in gates]}


def gates_from_dict(data: dict) -> list:
    return [_matrix_from_list(G) for G in data['gates']]


# =============================================================================
# Files
# =============================================================================

def write_json(path, payload: dict, run_config=None) -> Path:
    data = dict(payload)
    config = _config_dict(run_config)
    if config is not None:
        data['run_config'] = config
    path = Path(path)
    path.write_text(json.dumps(data, indent=2) + '\n', encoding='utf-8')
    return path


def read_json(path) -> dict:
    return json.loads(Path(path).read_text(encoding='utf-8'))


def write_csv(frame: pd.DataFrame, path, run_config=None, notes=None) -> Path:
    """notes is an optional mapping written as extra "# key=value" lines."""
    path = Path(path)
    config = _config_dict(run_config)
    with path.open('w', encoding='utf-8', newline='') as fh:
        if config is not None:
            fh.write(f"# run_config={json.dumps(config, sort_keys=True)}\n")
        for key, value in (notes or {}).items():
            fh.write(f"# {key}={value}\n")
        frame.to_csv(fh, index=False)
    return path


def read_csv(path) -> pd.DataFrame:
    """Read a CSV written by write_csv, skipping the run_config line."""
    return pd.read_csv(path, comment='#')
