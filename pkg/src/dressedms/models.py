"""Time-dependent Hamiltonians for the gradient-mediated entangling gate.

Three pictures of the same physics are provided, each as an explicit
builder so they can be cross-checked against each other:

``bare-rotating``
    Interaction picture with respect to the internal level energies, with a
    rotating-wave approximation only at the hyperfine (GHz) and RF (MHz)
    carriers.  Contains the stretch mode, the explicit gradient coupling
    nu*eta_i*(a^dag + a)*sigma_zi, the always-on dressing drive and the four
    RF gate tones as a cos[(nu+delta)t] drive.

``transformed``
    The polaron-transformed model: the gradient coupling is absorbed into
    exact displacement factors exp(eta_i (a^dag - a)) on every spin-flip
    operator, leaving nu*a^dag*a - nu*(sum_i eta_i sigma_zi)^2 plus dressed
    and RF terms.  Note the minus sign of the quadratic term: conjugating
    H_ext + H_couple with U_p = exp(sum eta_i (a^dag - a) sigma_zi) gives
    nu a^dag a - nu (sum eta_i sigma_zi)^2 identically.

``effective``
    The resonant Molmer-Sorensen frame: a single spin-motion term
    -g (Y_1 - Y_2)(a e^{i delta t} - a^dag e^{-i delta t}) with
    Y_i = |D><0'| - |0'><D| and g = eta*Omega_0/2.  Closed phase-space
    loops at t = 2*pi/delta entangle the {|0'>, |D>} qubits.

Conventions
-----------
* Config values are plain frequencies in Hz, in the "Omega/2pi = ..."
  style; every matrix built here is in angular units (rad/s).
* All gate models are expressed in dressed coordinates (|u>, |0p>, |d>,
  |D>) so qubit populations are diagonal entries.
* Builders return either a static ``Operator`` or a ``HamiltonianModel``
  whose drive terms contribute  c(t) W + conj(c(t)) W^dag.
* Lightshift compensation is carried as per-tone frequency offsets on the
  drive records; in the Hamiltonian it is realised as the gauge-equivalent
  static counter-shift of the |0'> and |D> levels.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np
import scipy.linalg

from .constants import E_CHARGE, EPSILON_0, HBAR, M_YB171, MU_B, TWO_PI, ZEEMAN_HZ_PER_T
from .qspace import HilbertSpace, Operator

SQRT3 = math.sqrt(3.0)
SQRT2 = math.sqrt(2.0)

# 171Yb+ S1/2 hyperfine splitting (|0> <-> |0'> clock transition), Hz.
HYPERFINE_HZ = 12.642812e9


class FrameAssumptionWarning(UserWarning):
    """A frame was built outside its validity hierarchy delta << O_mw/sqrt2 << nu."""


def eta_effective(nu_s_hz: float, gradient: float, mass: float = M_YB171) -> float:
    """Effective Lamb-Dicke parameter z0*mu_B*dB/dz / (sqrt(2)*hbar*nu)."""
    nu = TWO_PI * nu_s_hz
    z0 = math.sqrt(HBAR / (2.0 * mass * nu))
    return z0 * MU_B * gradient / (SQRT2 * HBAR * nu)


def ion_separation(nu_z_hz: float, mass: float = M_YB171) -> float:
    """Equilibrium two-ion spacing (e^2 / (2 pi eps0 M nu_z^2))^(1/3), metres."""
    if nu_z_hz <= 0:
        raise ValueError("nu_z must be positive")
    nu = TWO_PI * nu_z_hz
    return (E_CHARGE**2 / (2.0 * math.pi * EPSILON_0 * mass * nu**2)) ** (1.0 / 3.0)


@dataclass(frozen=True)
class PhysicalParams:
    """Experimental constants; plain Hz throughout (angular = 2*pi*value).

    Derivable fields may be left as None: nu_s = sqrt(3)*nu_z, eta from the
    gradient formula, omega_rf = sqrt(2)*omega_0, delta = 2*eta*omega_0,
    Delta_B from the ion spacing.  When both a value and its derivation are
    available they must agree (1e-9 relative for nu_s, 2% for eta).
    """

    nu_z: float = 265.2e3
    nu_s: float | None = None
    gradient: float = 23.6                 # T/m
    mass: float = M_YB171                  # kg
    eta: float | None = None
    omega_0: float = 45.4e3
    omega_rf: float | None = None
    omega_mw1: float = 20.5e3
    omega_mw2: float = 21.6e3
    delta: float | None = None
    dressing_detune: float = 0.0
    Delta1: float = 9.93e3                 # assumed; see corrections module
    Delta2: float = 6.30e3                 # assumed; see corrections module
    Delta_B: float | None = None
    zeeman1: float = 12.0e6
    zeeman2: float = 14.8e6
    clock_split: float = 11.9e3

    def __post_init__(self):
        nu_s = self.nu_s
        if nu_s is None:
            object.__setattr__(self, "nu_s", SQRT3 * self.nu_z)
        elif abs(nu_s - SQRT3 * self.nu_z) > 1e-9 * nu_s:
            raise ValueError(
                f"nu_s={nu_s} inconsistent with sqrt(3)*nu_z={SQRT3 * self.nu_z}"
            )
        if self.nu_s <= 0:
            raise ValueError("stretch frequency must be positive")
        eta_calc = eta_effective(self.nu_s, self.gradient, self.mass)
        if self.eta is None:
            object.__setattr__(self, "eta", eta_calc)
        elif self.gradient > 0 and abs(self.eta - eta_calc) > 0.02 * abs(self.eta):
            raise ValueError(
                f"eta={self.eta} deviates more than 2% from computed {eta_calc:.6f}"
            )
        if self.omega_rf is None:
            object.__setattr__(self, "omega_rf", SQRT2 * self.omega_0)
        if self.delta is None:
            object.__setattr__(self, "delta", 2.0 * self.eta * self.omega_0)
        for name in ("omega_0", "omega_rf", "omega_mw1", "omega_mw2", "delta"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.Delta_B is None:
            dz = ion_separation(self.nu_z, self.mass)
            object.__setattr__(self, "Delta_B", ZEEMAN_HZ_PER_T * self.gradient * dz)

    # -- derived scalars ---------------------------------------------------

    @property
    def delta0(self) -> float:
        """Dressing Rabi imbalance Omega_mw1 - Omega_mw2 (Hz)."""
        return self.omega_mw1 - self.omega_mw2

    @property
    def omega_mw_mean(self) -> float:
        return 0.5 * (self.omega_mw1 + self.omega_mw2)

    def omega_mw(self, ion: int) -> float:
        return self.omega_mw1 if ion == 1 else self.omega_mw2

    def eta_ion(self, ion: int) -> float:
        """Per-ion Lamb-Dicke parameter of the stretch mode (eta_1 = -eta_2)."""
        return self.eta if ion == 1 else -self.eta

    def with_(self, **kw) -> "PhysicalParams":
        """Copy with replacements; rederives dependent None fields."""
        cur = dict(
            nu_z=self.nu_z, nu_s=self.nu_s, gradient=self.gradient, mass=self.mass,
            eta=self.eta, omega_0=self.omega_0, omega_rf=self.omega_rf,
            omega_mw1=self.omega_mw1, omega_mw2=self.omega_mw2, delta=self.delta,
            dressing_detune=self.dressing_detune, Delta1=self.Delta1,
            Delta2=self.Delta2, Delta_B=self.Delta_B, zeeman1=self.zeeman1,
            zeeman2=self.zeeman2, clock_split=self.clock_split,
        )
        for name in ("nu_s", "eta", "omega_rf", "delta", "Delta_B"):
            if name not in kw and any(k in kw for k in _DERIVES[name]):
                cur[name] = None
        cur.update(kw)
        return PhysicalParams(**cur)

    @classmethod
    def demonstrated(cls) -> "PhysicalParams":
        """Parameters of the demonstrated 2.7 ms gate (delta = 2*eta*Omega_0)."""
        return cls(eta=0.0041)

    @classmethod
    def improved(cls) -> "PhysicalParams":
        """Faster-gate parameter set: 150 T/m, nu = 1.1 MHz, Omega_0 = 198 kHz."""
        return cls(
            nu_z=1.1e6 / SQRT3,
            gradient=150.0,
            eta=0.0071,
            omega_0=198e3,
            omega_mw1=10e3,
            omega_mw2=10e3,
            dressing_detune=500.0,
            zeeman1=12.0e6,
            zeeman2=12.0e6 + 9.8e6,
        )


_DERIVES = {
    "nu_s": ("nu_z",),
    "eta": ("nu_z", "gradient", "mass"),
    "omega_rf": ("omega_0",),
    "delta": ("eta", "omega_0", "nu_z", "gradient"),
    "Delta_B": ("nu_z", "gradient", "mass"),
}


@dataclass(frozen=True)
class PulseEnvelope:
    """Amplitude window: sin^2 ramp up, hold, sin^2 ramp down (C1 at joins)."""

    shape: str = "rectangular"           # "rectangular" | "sin2_ramp"
    t_ramp: float = 0.0                  # s
    t_hold: float = 0.0                  # s

    def __post_init__(self):
        if self.shape not in ("rectangular", "sin2_ramp"):
            raise ValueError(f"unknown envelope shape {self.shape!r}")
        if self.t_ramp < 0 or self.t_hold < 0:
            raise ValueError("envelope times must be >= 0")
        if self.shape == "rectangular" and self.t_ramp != 0:
            raise ValueError("rectangular envelope has no ramp")

    @property
    def duration(self) -> float:
        return 2.0 * self.t_ramp + self.t_hold

    def __call__(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.shape == "rectangular":
            return np.where((t >= 0) & (t <= self.t_hold), 1.0, 0.0)
        up = np.sin(0.5 * math.pi * np.clip(t / self.t_ramp, 0.0, 1.0)) ** 2
        dn_arg = (self.duration - t) / self.t_ramp
        dn = np.sin(0.5 * math.pi * np.clip(dn_arg, 0.0, 1.0)) ** 2
        inside = (t >= 0) & (t <= self.duration)
        return np.where(inside, np.minimum(up, dn), 0.0)

    def with_hold(self, t_hold: float) -> "PulseEnvelope":
        return replace(self, t_hold=t_hold)


@dataclass(frozen=True)
class DriveField:
    """One applied RF/microwave tone (bookkeeping record for config echo)."""

    target: tuple                      # (ion, "0p<->+1") or (ion, "qubit")
    rabi: float                        # Hz
    detuning: float                    # Hz, relative to named transition/sideband
    sideband: str = "carrier"          # "carrier" | "red" | "blue"
    phase: float = 0.0                 # rad
    envelope: PulseEnvelope = PulseEnvelope()

    def __post_init__(self):
        if self.rabi < 0:
            raise ValueError("rabi must be >= 0")
        if self.sideband not in ("carrier", "red", "blue"):
            raise ValueError(f"unknown sideband {self.sideband!r}")


@dataclass
class DriveTerm:
    """One rotating drive term: contributes c(t) * op + conj(c(t)) * op^dag."""

    op: np.ndarray
    coeff: Callable[[np.ndarray], np.ndarray]
    name: str = ""


@dataclass
class HamiltonianModel:
    """Static part + drive terms + the exactly-integrated diagonal.

    ``rot_diag`` (rad/s) is split off for the integrator, which treats it in
    an interaction picture with no step-size cost.  ``max_frequency`` (Hz)
    is the fastest oscillation carrying non-negligible amplitude in this
    frame; integrators bound their step by 1/(50 * max_frequency).
    """

    space: HilbertSpace
    basis: str
    frame: str
    static: np.ndarray
    terms: list[DriveTerm]
    rot_diag: np.ndarray | None
    max_frequency: float
    duration_hint: float | None = None
    meta: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.static.shape[0]

    def evaluate(self, t: float) -> np.ndarray:
        """Full Hamiltonian matrix at time t (rad/s), for tests and checks."""
        h = np.array(self.static, dtype=complex)
        if self.rot_diag is not None:
            h[np.diag_indices_from(h)] += self.rot_diag
        for term in self.terms:
            c = complex(np.asarray(term.coeff(np.array([t])))[0])
            h += c * term.op + np.conj(c) * term.op.conj().T
        return h

    def is_hermitian_at(self, t: float, tol: float = 1e-12) -> bool:
        h = self.evaluate(t)
        return np.linalg.norm(h - h.conj().T) <= tol * max(1.0, np.linalg.norm(h))


# ---------------------------------------------------------------------------
# static builders (bare coordinates unless stated)
# ---------------------------------------------------------------------------


def h_internal(params: PhysicalParams, space: HilbertSpace) -> Operator:
    """Bare internal energies relative to |0'>: -w0|0><0| - w-|-1><-1| + w+|+1><+1|."""
    h = np.zeros((space.dim, space.dim), dtype=complex)
    op = Operator(h, space.basis)
    for ion in range(1, space.ion_count + 1):
        zeeman = params.zeeman1 if ion == 1 else params.zeeman2
        big_delta = params.Delta1 if ion == 1 else params.Delta2
        w_plus = TWO_PI * (zeeman + 0.5 * big_delta)
        w_minus = TWO_PI * (zeeman - 0.5 * big_delta)
        w_clock = TWO_PI * (HYPERFINE_HZ + (ion - 1) * params.clock_split)
        op = (
            op
            + (-w_clock) * space.level_projector(ion, "0")
            + (-w_minus) * space.level_projector(ion, "-1")
            + w_plus * space.level_projector(ion, "+1")
        )
    return op


def h_gradient_coupling(params: PhysicalParams, space: HilbertSpace) -> Operator:
    """Gradient-induced spin-motion coupling nu * sum_i eta_i (a^dag + a) sigma_zi."""
    a, adag = space.ladder()
    x = a + adag
    nu = TWO_PI * params.nu_s
    out = Operator(np.zeros((space.dim, space.dim), dtype=complex), space.basis)
    for ion in range(1, space.ion_count + 1):
        out = out + (nu * params.eta_ion(ion)) * (x @ space.sigma_z(ion))
    return out


def polaron_transform(params: PhysicalParams, space: HilbertSpace) -> Operator:
    """Unitary U_p = exp(sum_i eta_i (a^dag - a) sigma_zi).

    U_p (H_ext + H_couple) U_p^dag = nu a^dag a - nu (sum_i eta_i sigma_zi)^2.
    """
    a, adag = space.ladder()
    gen = np.zeros((space.dim, space.dim), dtype=complex)
    for ion in range(1, space.ion_count + 1):
        gen += params.eta_ion(ion) * ((adag - a) @ space.sigma_z(ion)).data
    return Operator(scipy.linalg.expm(gen), space.basis)


def displacement_fock(n_fock: int, lam: float) -> np.ndarray:
    """exp(lam * (a^dag - a)) on the truncated Fock factor."""
    a = np.zeros((n_fock, n_fock), dtype=complex)
    for n in range(1, n_fock):
        a[n - 1, n] = math.sqrt(n)
    return scipy.linalg.expm(lam * (a.conj().T - a))


def h_dressing(params: PhysicalParams, space: HilbertSpace) -> Operator:
    """Always-on dressing drive in its interaction picture (bare coordinates).

    (Omega_mw,i / 2)(|0><+1| + |0><-1| + h.c.) per ion, plus the common
    detune as +detune * |0><0|.  Eigenvalues per ion are
    {+Omega/sqrt2, -Omega/sqrt2, 0, 0} at zero detune, with |D> and |0'>
    spanning the zero eigenspace.
    """
    out = Operator(np.zeros((space.dim, space.dim), dtype=complex), space.basis)
    for ion in range(1, space.ion_count + 1):
        w = TWO_PI * params.omega_mw(ion)
        flip = space.transition_op(ion, "+1", "0") + space.transition_op(ion, "-1", "0")
        out = out + (0.5 * w) * (flip + flip.dag())
        if params.dressing_detune:
            out = out + (TWO_PI * params.dressing_detune) * space.level_projector(ion, "0")
    return out


def h_sideband_mw(
    params: PhysicalParams,
    space: HilbertSpace,
    which: str,
    delta: float,
    ion: int = 1,
    omega_mw: float | None = None,
) -> HamiltonianModel:
    """Single microwave tone near a motional sideband of |0> <-> |+1>.

    Polaron frame, first order in eta: the blue tone gives the
    anti-Jaynes-Cummings term +(eta*Omega/2)(|+1><0| a^dag e^{-i delta t} +
    h.c.), the red tone the Jaynes-Cummings term with a minus sign.
    """
    if which not in ("red", "blue"):
        raise ValueError("which must be 'red' or 'blue'")
    omega = params.omega_mw(ion) if omega_mw is None else omega_mw
    g = 0.5 * params.eta_ion(ion) * TWO_PI * omega
    a, adag = space.ladder()
    flip = space.transition_op(ion, "0", "+1")  # |+1><0|
    if which == "blue":
        w = g * (flip @ adag).data
    else:
        w = -g * (flip @ a).data
    delta_ang = TWO_PI * delta
    term = DriveTerm(w, lambda t: np.exp(-1j * delta_ang * np.asarray(t)), f"{which} sideband")
    return HamiltonianModel(
        space=space,
        basis=space.basis,
        frame="sideband",
        static=np.zeros((space.dim, space.dim), dtype=complex),
        terms=[term],
        rot_diag=None,
        max_frequency=abs(delta) + params.eta * omega,
        meta={"which": which, "ion": ion},
    )


# ---------------------------------------------------------------------------
# gate-frame models (dressed coordinates)
# ---------------------------------------------------------------------------


def _dressed(space: HilbertSpace, mat: np.ndarray) -> np.ndarray:
    w = space.dressed_transform().data
    return w @ mat @ w.conj().T


def _assumption_check(params: PhysicalParams):
    om = params.omega_mw_mean / SQRT2
    if not (params.delta < 0.5 * om and om < 0.5 * params.nu_s):
        warnings.warn(
            f"hierarchy delta << Omega_mw/sqrt2 << nu is strained: "
            f"delta={params.delta:.3g}, Omega_mw/sqrt2={om:.3g}, nu={params.nu_s:.3g}",
            FrameAssumptionWarning,
            stacklevel=3,
        )


def _quadratic_gradient_term(params: PhysicalParams, space: HilbertSpace) -> np.ndarray:
    """-nu * (sum_i eta_i sigma_zi)^2 from the exact polaron conjugation."""
    h = np.zeros((space.dim, space.dim), dtype=complex)
    for ion in range(1, space.ion_count + 1):
        h += params.eta_ion(ion) * space.sigma_z(ion).data
    return -TWO_PI * params.nu_s * (h @ h)


def _rf_flip_with_displacement(
    params: PhysicalParams, space: HilbertSpace, order: int | None
) -> np.ndarray:
    """sum_i |+1><0'|_i D(eta_i), exact or Lamb-Dicke-expanded displacement."""
    out = np.zeros((space.dim, space.dim), dtype=complex)
    a = np.zeros((space.n_fock, space.n_fock), dtype=complex)
    for n in range(1, space.n_fock):
        a[n - 1, n] = math.sqrt(n)
    for ion in range(1, space.ion_count + 1):
        eta_i = params.eta_ion(ion)
        if order is None:
            disp = displacement_fock(space.n_fock, eta_i)
        else:
            disp = np.eye(space.n_fock, dtype=complex)
            gen = eta_i * (a.conj().T - a)
            pw = np.eye(space.n_fock, dtype=complex)
            for k in range(1, order + 1):
                pw = pw @ gen / k
                disp = disp + pw
        flip = space.transition_op(ion, "0p", "+1").data  # |+1><0'|
        out += flip @ space._embed(None, disp)
    return out


def _mw_flip_with_displacement(
    params: PhysicalParams, space: HilbertSpace, ion: int, order: int | None
) -> np.ndarray:
    """(|+1><0| + |0><-1|)_i D(eta_i): microwave dressing with recoil."""
    eta_i = params.eta_ion(ion)
    if order is None:
        disp = displacement_fock(space.n_fock, eta_i)
    else:
        a = np.zeros((space.n_fock, space.n_fock), dtype=complex)
        for n in range(1, space.n_fock):
            a[n - 1, n] = math.sqrt(n)
        gen = eta_i * (a.conj().T - a)
        disp = np.eye(space.n_fock, dtype=complex)
        pw = np.eye(space.n_fock, dtype=complex)
        for k in range(1, order + 1):
            pw = pw @ gen / k
            disp = disp + pw
    flip = (space.transition_op(ion, "0", "+1") + space.transition_op(ion, "-1", "0")).data
    return flip @ space._embed(None, disp)


def _compensation_static(space_d: HilbertSpace, compensation) -> np.ndarray:
    """Static counter-shifts (dressed coords) realising tone-frequency offsets."""
    h = np.zeros((space_d.dim, space_d.dim), dtype=complex)
    if not compensation:
        return h
    for ion in range(1, space_d.ion_count + 1):
        s0p = compensation.get("0p", (0.0, 0.0))[ion - 1]
        s_d = compensation.get("D", (0.0, 0.0))[ion - 1]
        h -= TWO_PI * s0p * space_d.level_projector(ion, "0p").data
        h -= TWO_PI * s_d * space_d.level_projector(ion, "D").data
    return h


def _rf_coeff(params: PhysicalParams, envelope: PulseEnvelope | None):
    """Coefficient Omega_rf * env(t) * cos[(nu + delta) t] / 2 for the rf term."""
    w_drive = TWO_PI * (params.nu_s + params.delta)
    amp = TWO_PI * params.omega_rf

    def coeff(t):
        t = np.asarray(t, dtype=float)
        env = envelope(t) if envelope is not None else 1.0
        return 0.5 * amp * env * np.cos(w_drive * t) + 0j

    return coeff


def _gate_drive_records(params: PhysicalParams, space, envelope, compensation):
    recs = []
    offs = {"0p": (0.0, 0.0), "D": (0.0, 0.0)}
    if compensation:
        offs.update(compensation)
    for ion in range(1, space.ion_count + 1):
        shift = offs["0p"][ion - 1] - offs["D"][ion - 1]
        for sb in ("red", "blue"):
            recs.append(
                DriveField(
                    target=(ion, "0p<->+1"),
                    rabi=params.omega_rf,
                    detuning=params.delta + shift,
                    sideband=sb,
                    envelope=envelope or PulseEnvelope(),
                )
            )
    return recs


def h_full_gate(
    params: PhysicalParams,
    space: HilbertSpace,
    envelope: PulseEnvelope | None = None,
    drives: bool = True,
    compensation: dict | None = None,
    lamb_dicke_order: int | None = None,
    check_assumptions: bool = True,
) -> HamiltonianModel:
    """Polaron-transformed gate model (dressed coordinates).

    Static part: the quadratic gradient term, the dressing drive with exact
    displacement factors, the common dressing detune and the compensation
    counter-shifts.  The boson energy nu*a^dag*a goes into ``rot_diag``.
    Drive: Omega_rf * sum_i (|+1><0'|_i D(eta_i) + h.c.) * cos[(nu+delta)t],
    windowed by the envelope.

    ``lamb_dicke_order`` of None keeps the exact matrix-exponential
    displacement; an integer truncates the expansion at that order.
    """
    if check_assumptions:
        _assumption_check(params)
    if lamb_dicke_order is not None and lamb_dicke_order < 2 and space.n_fock > 2:
        warnings.warn(
            "first-order Lamb-Dicke with a deep Fock space: displacement "
            "truncation may be inconsistent with n_cut",
            FrameAssumptionWarning,
            stacklevel=2,
        )
    space_d = space.dressed_space()

    static = _quadratic_gradient_term(params, space)
    for ion in range(1, space.ion_count + 1):
        w = TWO_PI * params.omega_mw(ion)
        mw = _mw_flip_with_displacement(params, space, ion, lamb_dicke_order)
        static = static + 0.5 * w * (mw + mw.conj().T)
        if params.dressing_detune:
            static = static + TWO_PI * params.dressing_detune * space.level_projector(ion, "0").data
    static = _dressed(space, static)
    static += _compensation_static(space_d, compensation)

    nu = TWO_PI * params.nu_s
    rot = nu * np.tile(np.arange(space.n_fock, dtype=float), space.dim // space.n_fock)

    terms = []
    if drives and params.omega_rf > 0:
        rf = _dressed(space, _rf_flip_with_displacement(params, space, lamb_dicke_order))
        terms.append(
            DriveTerm(rf + rf.conj().T, _rf_coeff(params, envelope), "rf gate tones")
        )

    return HamiltonianModel(
        space=space_d,
        basis="dressed",
        frame="transformed",
        static=static,
        terms=terms,
        rot_diag=rot,
        max_frequency=params.nu_s + params.delta + params.omega_mw_mean / SQRT2,
        duration_hint=envelope.duration if envelope is not None else None,
        meta={
            "params": params,
            "envelope": envelope,
            "compensation": compensation or {},
            "drives": _gate_drive_records(params, space, envelope, compensation) if drives else [],
        },
    )


def h_bare_gate(
    params: PhysicalParams,
    space: HilbertSpace,
    envelope: PulseEnvelope | None = None,
    drives: bool = True,
    compensation: dict | None = None,
    check_assumptions: bool = True,
) -> HamiltonianModel:
    """Bare-rotating-frame gate model (dressed coordinates, no polaron step).

    Keeps the explicit gradient coupling nu*eta_i*(a^dag+a)*sigma_zi and
    undisplaced drive operators; unitarily equivalent to ``h_full_gate``
    through the polaron transform.  RWA is applied only at the hyperfine
    and RF carriers (counter-rotating terms at ~2*omega_rf, a Bloch-Siegert
    scale of well under a hertz here, are dropped).
    """
    if check_assumptions:
        _assumption_check(params)
    space_d = space.dressed_space()

    static = h_gradient_coupling(params, space).data.copy()
    for ion in range(1, space.ion_count + 1):
        w = TWO_PI * params.omega_mw(ion)
        flip = (
            space.transition_op(ion, "0", "+1") + space.transition_op(ion, "-1", "0")
        ).data
        static += 0.5 * w * (flip + flip.conj().T)
        if params.dressing_detune:
            static += TWO_PI * params.dressing_detune * space.level_projector(ion, "0").data
    static = _dressed(space, static)
    static += _compensation_static(space_d, compensation)

    nu = TWO_PI * params.nu_s
    rot = nu * np.tile(np.arange(space.n_fock, dtype=float), space.dim // space.n_fock)

    terms = []
    if drives and params.omega_rf > 0:
        rf_bare = np.zeros((space.dim, space.dim), dtype=complex)
        for ion in range(1, space.ion_count + 1):
            rf_bare += space.transition_op(ion, "0p", "+1").data
        rf = _dressed(space, rf_bare)
        terms.append(
            DriveTerm(rf + rf.conj().T, _rf_coeff(params, envelope), "rf gate tones")
        )

    return HamiltonianModel(
        space=space_d,
        basis="dressed",
        frame="bare-rotating",
        static=static,
        terms=terms,
        rot_diag=rot,
        max_frequency=params.nu_s + params.delta + params.omega_mw_mean / SQRT2,
        duration_hint=envelope.duration if envelope is not None else None,
        meta={
            "params": params,
            "envelope": envelope,
            "compensation": compensation or {},
            "drives": _gate_drive_records(params, space, envelope, compensation) if drives else [],
        },
    )


def h_effective_gate(
    params: PhysicalParams,
    space: HilbertSpace,
    envelope: PulseEnvelope | None = None,
    coupling_scale: float = 1.0,
    check_assumptions: bool = True,
) -> HamiltonianModel:
    """Resonant MS frame: -g (Y1 - Y2)(a e^{i delta t} - a^dag e^{-i delta t}).

    g = eta * Omega_0 / 2 (times ``coupling_scale``), Y_i = |D><0'|_i - h.c.
    At delta = 2*eta*Omega_0 a closed loop at t_g = 2*pi/delta produces the
    maximally entangled state (|0'0'> - i |DD>)/sqrt(2) from |0'0'>.
    """
    if check_assumptions:
        _assumption_check(params)
    space_d = space.dressed_space()

    g = coupling_scale * 0.5 * params.eta * TWO_PI * params.omega_0
    a, _ = space_d.ladder()
    b = np.zeros((space_d.dim, space_d.dim), dtype=complex)
    for ion, sign in ((1, 1.0), (2, -1.0)) if space_d.ion_count == 2 else ((1, 1.0),):
        y = space_d.transition_op(ion, "0p", "D") - space_d.transition_op(ion, "D", "0p")
        b += sign * y.data
    w_op = b @ a.data
    delta_ang = TWO_PI * params.delta

    def coeff(t, _g=g, _d=delta_ang, _env=envelope):
        t = np.asarray(t, dtype=float)
        amp = _env(t) if _env is not None else 1.0
        return -_g * amp * np.exp(1j * _d * t)

    term = DriveTerm(w_op, coeff, "ms drive")
    return HamiltonianModel(
        space=space_d,
        basis="dressed",
        frame="effective",
        static=np.zeros((space_d.dim, space_d.dim), dtype=complex),
        terms=[term],
        rot_diag=None,
        max_frequency=max(params.delta, params.eta * params.omega_0),
        duration_hint=envelope.duration if envelope is not None else None,
        meta={"params": params, "envelope": envelope, "g": g},
    )
