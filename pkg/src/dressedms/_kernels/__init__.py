"""Propagation kernels: compiled Cython core with a pure-numpy fallback.

The backend is chosen once at import: the Cython extension if it built,
otherwise the numpy reference implementation.  Both expose the same two
entry points and produce identical results to floating-point accuracy;
``benchmarks/bench_kernels.py`` compares their speed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import pykernels

try:  # pragma: no cover - exercised only when the extension is built
    from . import _cykernels

    _IMPL = _cykernels
    _BACKEND = "cython"
except ImportError:  # pragma: no cover
    _IMPL = pykernels
    _BACKEND = "python"


@dataclass
class KernelProblem:
    """Arrays describing one propagation run (see pykernels for the model)."""

    dim: int
    dt: float
    n_steps: int
    rot_diag: np.ndarray | None      # float64[dim], rad/s; None = no rotation
    indices: np.ndarray              # int32[nnz], shared CSR pattern
    indptr: np.ndarray               # int32[dim+1]
    static_vals: np.ndarray          # complex128[nnz]
    term_vals: np.ndarray            # complex128[K, nnz]
    term_dag_vals: np.ndarray        # complex128[K, nnz]
    coeffs: np.ndarray               # complex128[K, 2*n_steps+1]
    record_steps: np.ndarray         # int64[R], ascending step indices
    obs_weights: np.ndarray          # float64[n_obs, dim]
    jumps: list = field(default_factory=list)   # [(data, indices, indptr), ...]
    m_half_diag: np.ndarray | None = None       # float64[dim], 0.5*sum L^dag L diagonal

    @property
    def n_terms(self) -> int:
        return self.term_vals.shape[0]


def active_backend() -> str:
    return _BACKEND


def set_backend(name: str):
    """Force a backend ('python' or 'cython'); used by tests and benchmarks."""
    global _IMPL, _BACKEND
    if name == "python":
        _IMPL, _BACKEND = pykernels, "python"
    elif name == "cython":
        from . import _cykernels  # raises ImportError if not built

        _IMPL, _BACKEND = _cykernels, "cython"
    else:
        raise ValueError(f"unknown backend {name!r}")


def propagate_schrodinger(problem: KernelProblem, psi0: np.ndarray):
    return _IMPL.propagate_schrodinger(problem, psi0)


def propagate_lindblad(problem: KernelProblem, rho0: np.ndarray):
    return _IMPL.propagate_lindblad(problem, rho0)
