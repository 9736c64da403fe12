"""
targets package
---------------
Builders for the benchmark target polynomials, the truncation formulas they
rely on and the floating-point accessibility analysis.
"""

from .base_builder import BaseTargetBuilder, TargetMeta, TargetPair
from .hamiltonian_sim import HamiltonianSimBuilder, build_hamiltonian_sim
from .random_poly import RandomBuilder, build_random
from .threshold import ThresholdBuilder, ThresholdExpansion, build_threshold
from .erf_sign import ErfBuilder, RectBuilder, SignBuilder, build_erf, build_rect, build_sign
from .inverse import InverseBuilder, MatrixInversionBuilder, build_inverse, build_matrix_inversion
from .accessibility import AccessibilityCell, accessibility_map, direct_log10_range

__all__ = [
    'BaseTargetBuilder',
    'TargetMeta',
    'TargetPair',
    'ThresholdExpansion',
    'AccessibilityCell',
    'build_hamiltonian_sim',
    'build_random',
    'build_threshold',
    'build_erf',
    'build_sign',
    'build_rect',
    'build_inverse',
    'build_matrix_inversion',
    'accessibility_map',
    'direct_log10_range',
    'get_builder',
    'supported_families',
]

_BUILDERS = {
    'hs': HamiltonianSimBuilder,
    'random': RandomBuilder,
    'threshold': ThresholdBuilder,
    'erf': ErfBuilder,
    'sign': SignBuilder,
    'rect': RectBuilder,
    'inverse': InverseBuilder,
    'matrix_inversion': MatrixInversionBuilder,
}


def supported_families():
    return list(_BUILDERS)


def get_builder(family):
    """
    Factory function to get the builder for a target family.

    Args:
        family: one of supported_families()

    Returns:
        Builder instance
    """
    if family not in _BUILDERS:
        raise ValueError(f"Unknown target family: {family}. Supported: {list(_BUILDERS.keys())}")

    return _BUILDERS[family]()
