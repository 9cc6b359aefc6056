"""Jacobi-ensemble reduction of characteristic polynomial moments over Sp(2N) and SO(2N)."""

from .jacobi import JacobiParams, build_basis, gauss_jacobi_nodes, KernelEvaluator
from .ensemble import EnsembleSample, AngleSample, sample_jacobi, haar_eigenangles, to_angles

__all__ = [
    "JacobiParams",
    "build_basis",
    "gauss_jacobi_nodes",
    "KernelEvaluator",
    "EnsembleSample",
    "AngleSample",
    "sample_jacobi",
    "haar_eigenangles",
    "to_angles",
]

__version__ = "0.1.0"
