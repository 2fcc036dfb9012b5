"""Counts of fine gradings on matrix and classical Lie algebras."""

from ._core import (
    OrbitCounter,
    constants,
    count,
    export_cycle_index,
    n_matrix,
    verify,
    version,
)

__all__ = [
    "OrbitCounter",
    "constants",
    "count",
    "export_cycle_index",
    "n_matrix",
    "verify",
    "version",
]
__version__ = version()
