"""Composite Hilbert space for one or two four-level ions plus a single boson mode.

Basis ordering is fixed and documented so serialized states are portable:
ion 1 is the slowest index, ion 2 (if present) the middle index, and the Fock
(boson) index is fastest.  A flat index decodes as

    flat = ((i_1 * L + i_2) * (n_cut + 1)) + n        (two ions)
    flat = i_1 * (n_cut + 1) + n                      (one ion)

with ``L`` the number of internal levels per ion.

The default internal levels are labelled ``"0"``, ``"0p"``, ``"-1"`` and
``"+1"``.  The dressed-basis change maps the slots to ``"u"``, ``"0p"``,
``"d"`` and ``"D"``; the RF-insensitive clock level ``"0p"`` is untouched.

All matrices here are dense complex arrays; at the dimensions this package
needs (<= 256) dense algebra is simpler and fast enough.  Dynamics converts
to sparse form where it matters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

BARE_LEVELS = ("0", "0p", "-1", "+1")
DRESSED_LEVELS = ("u", "0p", "d", "D")

# Hard cap on the composite dimension; the physics here never needs more.
_MAX_DIM = 8192

HERMITICITY_TOL = 1e-12
STATE_NORM_TOL = 1e-10


class BasisMismatchError(ValueError):
    """Operands carry different basis tags."""


class TruncationError(RuntimeError):
    """Boson-space truncation leaks more population than allowed."""


@dataclass(frozen=True)
class HilbertConfig:
    """Shape of the composite space: internal levels, boson cutoff, ion count."""

    ion_levels: tuple[str, ...] = BARE_LEVELS
    n_cut: int = 15
    ion_count: int = 2

    def __post_init__(self):
        if self.ion_count not in (1, 2):
            raise ValueError(f"ion_count must be 1 or 2, got {self.ion_count}")
        if self.n_cut < 0:
            raise ValueError(f"n_cut must be >= 0, got {self.n_cut}")
        if len(self.ion_levels) == 0:
            raise ValueError("ion_levels must be non-empty")
        if len(set(self.ion_levels)) != len(self.ion_levels):
            raise ValueError("ion_levels must be unique")
        if self.dim > _MAX_DIM:
            raise ValueError(f"composite dimension {self.dim} exceeds {_MAX_DIM}")

    @property
    def n_fock(self) -> int:
        return self.n_cut + 1

    @property
    def dim(self) -> int:
        return len(self.ion_levels) ** self.ion_count * (self.n_cut + 1)


@dataclass
class Operator:
    """Dense operator with a basis tag checked on every algebraic combination."""

    data: np.ndarray
    basis: str

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=complex)
        if self.data.ndim != 2 or self.data.shape[0] != self.data.shape[1]:
            raise ValueError("operator must be a square matrix")

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def _check(self, other: "Operator"):
        if not isinstance(other, Operator):
            raise TypeError("expected an Operator")
        if other.basis != self.basis:
            raise BasisMismatchError(f"basis {other.basis!r} != {self.basis!r}")

    def __add__(self, other: "Operator") -> "Operator":
        self._check(other)
        return Operator(self.data + other.data, self.basis)

    def __sub__(self, other: "Operator") -> "Operator":
        self._check(other)
        return Operator(self.data - other.data, self.basis)

    def __mul__(self, scalar) -> "Operator":
        return Operator(self.data * scalar, self.basis)

    __rmul__ = __mul__

    def __matmul__(self, other: "Operator") -> "Operator":
        self._check(other)
        return Operator(self.data @ other.data, self.basis)

    def dag(self) -> "Operator":
        return Operator(self.data.conj().T, self.basis)

    def is_hermitian(self, tol: float = HERMITICITY_TOL) -> bool:
        scale = max(np.linalg.norm(self.data), 1.0)
        return np.linalg.norm(self.data - self.data.conj().T) <= tol * scale

    def is_unitary(self, tol: float = 1e-12) -> bool:
        eye = np.eye(self.dim)
        return np.linalg.norm(self.data @ self.data.conj().T - eye) <= tol * self.dim


@dataclass
class QuantumState:
    """Pure ket or density matrix on the composite space, with basis tag."""

    data: np.ndarray
    basis: str
    kind: str = "ket"  # "ket" | "dm"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=complex)
        if self.kind not in ("ket", "dm"):
            raise ValueError(f"kind must be 'ket' or 'dm', got {self.kind!r}")
        if self.kind == "ket" and self.data.ndim != 1:
            raise ValueError("ket state must be a vector")
        if self.kind == "dm" and self.data.ndim != 2:
            raise ValueError("density matrix state must be a matrix")

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def to_dm(self) -> "QuantumState":
        if self.kind == "dm":
            return self
        return QuantumState(np.outer(self.data, self.data.conj()), self.basis, "dm", dict(self.meta))

    def validate(self, norm_tol: float = STATE_NORM_TOL, psd_floor: float = -1e-10):
        """Raise if the state violates its representation invariants."""
        if self.kind == "ket":
            n = np.linalg.norm(self.data)
            if abs(n - 1.0) > norm_tol:
                raise ValueError(f"ket norm {n} deviates from 1 by more than {norm_tol}")
        else:
            herm = np.linalg.norm(self.data - self.data.conj().T)
            if herm > 1e-10 * max(1.0, np.linalg.norm(self.data)):
                raise ValueError("density matrix is not Hermitian")
            tr = np.trace(self.data).real
            if abs(tr - 1.0) > norm_tol:
                raise ValueError(f"density matrix trace {tr} deviates from 1")
            w = np.linalg.eigvalsh(self.data)
            if w.min() < psd_floor:
                raise ValueError(f"density matrix eigenvalue {w.min()} below floor {psd_floor}")
        return self


class HilbertSpace:
    """Index bookkeeping and elementary operators for a HilbertConfig."""

    def __init__(self, config: HilbertConfig, basis: str = "bare"):
        self.config = config
        self.basis = basis
        self.levels = config.ion_levels
        self.n_levels = len(config.ion_levels)
        self.n_fock = config.n_fock
        self.ion_count = config.ion_count
        self.dim = config.dim
        self._level_index = {lab: i for i, lab in enumerate(config.ion_levels)}

    # ---- index maps -----------------------------------------------------

    def index(self, levels, n: int) -> int:
        """Flat index of |levels[0], levels[1], n>."""
        if isinstance(levels, str):
            levels = (levels,)
        if len(levels) != self.ion_count:
            raise ValueError(f"expected {self.ion_count} level labels, got {len(levels)}")
        if not 0 <= n < self.n_fock:
            raise ValueError(f"Fock index {n} outside 0..{self.n_fock - 1}")
        flat = 0
        for lab in levels:
            try:
                flat = flat * self.n_levels + self._level_index[lab]
            except KeyError:
                raise KeyError(f"unknown level label {lab!r}") from None
        return flat * self.n_fock + n

    def unindex(self, flat: int):
        """Inverse of :meth:`index`: (levels tuple, fock n)."""
        if not 0 <= flat < self.dim:
            raise ValueError(f"flat index {flat} outside 0..{self.dim - 1}")
        flat, n = divmod(flat, self.n_fock)
        labs = []
        for _ in range(self.ion_count):
            flat, i = divmod(flat, self.n_levels)
            labs.append(self.levels[i])
        return tuple(reversed(labs)), n

    # ---- elementary operators -------------------------------------------

    def identity(self) -> Operator:
        return Operator(np.eye(self.dim), self.basis)

    def _embed(self, ion_ops: dict[int, np.ndarray] | None, fock_op: np.ndarray | None) -> np.ndarray:
        """Kronecker-embed per-ion operators and/or a Fock operator."""
        mats = []
        for ion in range(1, self.ion_count + 1):
            if ion_ops and ion in ion_ops:
                mats.append(ion_ops[ion])
            else:
                mats.append(np.eye(self.n_levels))
        mats.append(fock_op if fock_op is not None else np.eye(self.n_fock))
        out = mats[0]
        for m in mats[1:]:
            out = np.kron(out, m)
        return out

    def ladder(self) -> tuple[Operator, Operator]:
        """Annihilation and creation operators on the truncated boson factor."""
        a = np.zeros((self.n_fock, self.n_fock), dtype=complex)
        for n in range(1, self.n_fock):
            a[n - 1, n] = math.sqrt(n)
        return (
            Operator(self._embed(None, a), self.basis),
            Operator(self._embed(None, a.conj().T), self.basis),
        )

    def number_op(self) -> Operator:
        a, adag = self.ladder()
        return adag @ a

    def transition_op(self, ion: int, from_level: str, to_level: str) -> Operator:
        """|to><from| on the chosen ion, identity elsewhere."""
        self._check_ion(ion)
        for lab in (from_level, to_level):
            if lab not in self._level_index:
                raise KeyError(f"unknown level label {lab!r}")
        m = np.zeros((self.n_levels, self.n_levels), dtype=complex)
        m[self._level_index[to_level], self._level_index[from_level]] = 1.0
        return Operator(self._embed({ion: m}, None), self.basis)

    def level_projector(self, ion: int, level: str) -> Operator:
        return self.transition_op(ion, level, level)

    def sigma_z(self, ion: int) -> Operator:
        """|+1><+1| - |-1><-1| on one ion (bare labels)."""
        return self.level_projector(ion, "+1") - self.level_projector(ion, "-1")

    def fock_projector(self, n: int) -> Operator:
        p = np.zeros((self.n_fock, self.n_fock), dtype=complex)
        p[n, n] = 1.0
        return Operator(self._embed(None, p), self.basis)

    def _check_ion(self, ion: int):
        if not 1 <= ion <= self.ion_count:
            raise ValueError(f"ion must be 1..{self.ion_count}, got {ion}")

    # ---- dressed basis ----------------------------------------------------

    def dressed_transform(self, ion: int | None = None) -> Operator:
        """Unitary change of coordinates from bare to dressed labels.

        Maps bare coordinates (|0>, |0p>, |-1>, |+1>) to dressed coordinates
        (|u>, |0p>, |d>, |D>) on the chosen ion (both ions if ``ion`` is None):

            |u> = |+1>/2 + |-1>/2 + |0>/sqrt(2)
            |d> = |+1>/2 + |-1>/2 - |0>/sqrt(2)
            |D> = (|+1> - |-1>)/sqrt(2)

        Applied to a bare-basis vector it returns the dressed-coordinate
        representation, e.g. (|+1> - |-1>)/sqrt(2) -> unit vector on |D>.
        """
        if set(BARE_LEVELS) - set(self.levels):
            raise ValueError("dressed transform requires the standard four levels")
        w = np.zeros((self.n_levels, self.n_levels), dtype=complex)
        ix = self._level_index
        s2 = 1.0 / math.sqrt(2.0)
        # rows: dressed slot («u», «0p», «d», «D» occupy the slots of 0, 0p, -1, +1)
        w[ix["0"], ix["0"]] = s2
        w[ix["0"], ix["+1"]] = 0.5
        w[ix["0"], ix["-1"]] = 0.5
        w[ix["0p"], ix["0p"]] = 1.0
        w[ix["-1"], ix["0"]] = -s2
        w[ix["-1"], ix["+1"]] = 0.5
        w[ix["-1"], ix["-1"]] = 0.5
        w[ix["+1"], ix["+1"]] = s2
        w[ix["+1"], ix["-1"]] = -s2
        ops = None
        if ion is None:
            ops = {i: w for i in range(1, self.ion_count + 1)}
        else:
            self._check_ion(ion)
            ops = {ion: w}
        return Operator(self._embed(ops, None), self.basis)

    def dressed_space(self) -> "HilbertSpace":
        """Space with the same shape whose labels are the dressed ones."""
        cfg = HilbertConfig(DRESSED_LEVELS, self.config.n_cut, self.ion_count)
        return HilbertSpace(cfg, basis="dressed")

    # ---- states -----------------------------------------------------------

    def basis_ket(self, levels, n: int = 0) -> QuantumState:
        v = np.zeros(self.dim, dtype=complex)
        v[self.index(levels, n)] = 1.0
        return QuantumState(v, self.basis, "ket")

    def thermal_state(self, nbar: float, spin=None, leakage_tol: float = 1e-6) -> QuantumState:
        """Thermal (geometric) boson state, optionally with a definite spin ket.

        P(n) = nbar^n / (1 + nbar)^(n+1), renormalized over 0..n_cut.  The
        truncated tail (leakage) is recorded in ``meta['leakage']`` and must
        stay below ``leakage_tol``.
        """
        if nbar < 0:
            raise ValueError("nbar must be >= 0")
        ns = np.arange(self.n_fock)
        if nbar == 0:
            p = np.zeros(self.n_fock)
            p[0] = 1.0
            leakage = 0.0
        else:
            r = nbar / (1.0 + nbar)
            p = r**ns / (1.0 + nbar)
            leakage = r ** self.n_fock
        if leakage > leakage_tol:
            raise TruncationError(
                f"thermal tail {leakage:.3e} above n_cut={self.config.n_cut} "
                f"exceeds tolerance {leakage_tol:.1e}"
            )
        p = p / p.sum()
        rho_b = np.diag(p).astype(complex)
        if spin is None and self.ion_count == 2:
            spin = ("0p", "0p")
        elif spin is None:
            spin = ("0p",)
        if isinstance(spin, str):
            spin = (spin,)
        spin_vec = np.zeros(self.n_levels**self.ion_count, dtype=complex)
        flat = 0
        for lab in spin:
            flat = flat * self.n_levels + self._level_index[lab]
        spin_vec[flat] = 1.0
        rho = np.kron(np.outer(spin_vec, spin_vec.conj()), rho_b)
        return QuantumState(rho, self.basis, "dm", {"leakage": leakage, "nbar": nbar})


def build_space(config: HilbertConfig) -> HilbertSpace:
    """Construct the space descriptor for a config (validates size limits)."""
    return HilbertSpace(config)


def partial_trace_fock(state: QuantumState | np.ndarray, space: HilbertSpace) -> np.ndarray:
    """Reduced spin density matrix: trace out the boson factor."""
    rho = state.to_dm().data if isinstance(state, QuantumState) else np.asarray(state)
    if rho.ndim == 1:
        rho = np.outer(rho, rho.conj())
    s = space.n_levels**space.ion_count
    f = space.n_fock
    return rho.reshape(s, f, s, f).trace(axis1=1, axis2=3)


def fock_populations(state: QuantumState | np.ndarray, space: HilbertSpace) -> np.ndarray:
    """Population per Fock level, traced over the internal states."""
    rho = state.to_dm().data if isinstance(state, QuantumState) else np.asarray(state)
    if rho.ndim == 1:
        rho = np.outer(rho, rho.conj())
    s = space.n_levels**space.ion_count
    f = space.n_fock
    diag = np.real(np.diagonal(rho)).reshape(s, f)
    return diag.sum(axis=0)
