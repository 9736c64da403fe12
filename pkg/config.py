"""
config.py
---------
Run configuration shared by every CLI subcommand.

The configuration is serialized into every output file so each artifact
records the settings that produced it.
"""

import os
from dataclasses import asdict, dataclass, field
from typing import Optional

from processing.decompose import BASES
from processing.errors import DomainError
from processing.fejer import DEFAULT_EPS_FEJER, DEFAULT_MAX_ITER


THREADS_ENV = 'QSP_THREADS'


def default_threads() -> int:
    return os.cpu_count() or 1


def threads_from_env(fallback, environ=None):
    """QSP_THREADS wins over the command-line value when set."""
    environ = os.environ if environ is None else environ
    raw = environ.get(THREADS_ENV)
    if raw is None or raw.strip() == '':
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"{THREADS_ENV} must be an integer, got {raw!r}")


@dataclass(frozen=True)
class RunConfig:
    eps_fejer: float = DEFAULT_EPS_FEJER
    max_iter: int = DEFAULT_MAX_ITER
    grid_points: Optional[int] = None
    basis: str = 'plus'
    threads: int = field(default_factory=default_threads)
    seed: int = 0

    def __post_init__(self):
        if not self.eps_fejer > 0:
            raise DomainError(f"eps_fejer must be positive, got {self.eps_fejer}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be positive, got {self.max_iter}")
        if self.grid_points is not None and self.grid_points < 1:
            raise DomainError(f"grid_points must be positive, got {self.grid_points}")
        if self.threads < 1:
            raise DomainError(f"threads must be positive, got {self.threads}")
        if self.basis not in BASES:
            raise DomainError(f"basis must be one of {BASES}, got {self.basis!r}")

    def resolve_grid_points(self, degree: int) -> int:
        """Explicit grid size, or 8(2n+1) for a degree-n target."""
        return self.grid_points or 8 * (2 * degree + 1)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_args(cls, args, environ=None) -> 'RunConfig':
        """Build from an argparse namespace; missing attributes keep defaults."""
        values = {}
        for name in ('eps_fejer', 'max_iter', 'grid_points', 'basis', 'seed'):
            value = getattr(args, name, None)
            if value is not None:
                values[name] = value
        threads = threads_from_env(getattr(args, 'threads', None), environ)
        if threads is not None:
            values['threads'] = threads
        return cls(**values)
