"""Casimir free energy of concentric hyperspheres (Rust core)."""

from ._native import *  # noqa: F401,F403
from ._native import NonConvergenceError, PrecisionLossError, selftest

__all__ = [name for name in dir() if not name.startswith("_")]
