"""Pure-numpy reference implementation of the propagation kernels.

Fixed-step RK4 for a Hamiltonian

    H(t) = diag(rot_diag) + A(t),
    A(t) = static + sum_k [ c_k(t) W_k + conj(c_k(t)) W_k^dag ]

where ``static``, ``W_k`` and ``W_k^dag`` live on one shared CSR pattern.
The diagonal part is treated exactly by propagating in its interaction
picture: with P(t) = exp(-i*diag*t) the working state is phi = P^dag psi and

    i dphi/dt = [P(t)^dag A(t) P(t)] phi .

Conjugation by the diagonal phase is two elementwise vector scalings per
product, so the fast diagonal (boson energy ladder) costs nothing in step
size.  Recorded observables are diagonal population weights, which are
invariant under P; recorded states are rotated back to lab coordinates.

For the Lindblad path the jump operators must commute with the interaction
picture up to a scalar phase (true for all channels built in this package:
ladder operators under a number-operator diagonal, qubit Paulis under a
spin-blind diagonal), which makes the dissipator frame-invariant; the
wrapper in ``dynamics`` enforces this.  Density matrices stay Hermitian
through every RK4 stage, so rho @ G^dag is computed as (G @ rho)^dag.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

BACKEND_NAME = "python"


def _template(problem):
    """Shared-pattern CSR matrix whose data is rewritten every stage."""
    n = problem.dim
    return sp.csr_matrix(
        (problem.static_vals.copy(), problem.indices, problem.indptr), shape=(n, n)
    )


def _assemble(problem, tmpl, sub):
    """Write A(t_sub) values into the template and return it."""
    data = tmpl.data
    np.copyto(data, problem.static_vals)
    for k in range(problem.n_terms):
        c = problem.coeffs[k, sub]
        if c != 0.0:
            data += c * problem.term_vals[k]
            data += np.conj(c) * problem.term_dag_vals[k]
    return tmpl


def propagate_schrodinger(problem, psi0):
    """RK4 unitary propagation.

    Returns (psi_final, observable trajectory [R, n_obs], recorded states
    or None).
    """
    dt = problem.dt
    n = problem.n_steps
    diag = problem.rot_diag
    has_diag = diag is not None and np.any(diag)
    tmpl = _template(problem)
    psi = np.array(psi0, dtype=complex)

    rec = {int(s): i for i, s in enumerate(problem.record_steps)}
    obs = np.empty((len(problem.record_steps), problem.obs_weights.shape[0]))
    states = (
        np.empty((len(problem.record_steps), problem.dim), dtype=complex)
        if problem.record_states
        else None
    )

    def record(i, step, phi):
        obs[i] = problem.obs_weights @ np.abs(phi) ** 2
        if states is not None:
            if has_diag:
                states[i] = np.exp(-1j * diag * (step * dt)) * phi
            else:
                states[i] = phi

    if 0 in rec:
        record(rec[0], 0, psi)

    def rhs(sub, phi):
        a = _assemble(problem, tmpl, sub)
        if has_diag:
            ph = np.exp((1j * (sub * 0.5 * dt)) * diag)
            return -1j * (ph.conj() * (a @ (ph * phi)))
        return -1j * (a @ phi)

    for step in range(n):
        s0 = 2 * step
        k1 = rhs(s0, psi)
        k2 = rhs(s0 + 1, psi + (0.5 * dt) * k1)
        k3 = rhs(s0 + 1, psi + (0.5 * dt) * k2)
        k4 = rhs(s0 + 2, psi + dt * k3)
        psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if step + 1 in rec:
            record(rec[step + 1], step + 1, psi)

    if has_diag:
        psi = np.exp(-1j * diag * (n * dt)) * psi
    return psi, obs, states


def propagate_lindblad(problem, rho0):
    """RK4 Lindblad propagation of a batch of density matrices.

    rho0 has shape (B, dim, dim); every input must be Hermitian.  Returns
    (rho_final [B, dim, dim], observable trajectory [R, B, n_obs],
    recorded states or None).
    """
    dt = problem.dt
    n = problem.n_steps
    diag = problem.rot_diag
    has_diag = diag is not None and np.any(diag)
    tmpl = _template(problem)
    jumps = [
        sp.csr_matrix((jd, ji, jp), shape=(problem.dim, problem.dim))
        for jd, ji, jp in problem.jumps
    ]
    m_half = problem.m_half_diag
    rho = np.array(rho0, dtype=complex)
    if rho.ndim == 2:
        rho = rho[None]
    batch = rho.shape[0]

    rec = {int(s): i for i, s in enumerate(problem.record_steps)}
    nobs = problem.obs_weights.shape[0]
    obs = np.empty((len(problem.record_steps), batch, nobs))
    states = (
        np.empty((len(problem.record_steps), batch, problem.dim, problem.dim), dtype=complex)
        if problem.record_states
        else None
    )

    def record(i, step, r):
        d = np.real(np.einsum("bii->bi", r))
        obs[i] = d @ problem.obs_weights.T
        if states is not None:
            if has_diag:
                ph = np.exp(-1j * diag * (step * dt))
                states[i] = ph[None, :, None] * r * ph.conj()[None, None, :]
            else:
                states[i] = r

    if 0 in rec:
        record(rec[0], 0, rho)

    def rhs_one(a, ph, r):
        if ph is not None:
            y = a @ (ph.conj()[:, None] * r)
            y *= ph[:, None]
        else:
            y = a @ r
        t = -1j * y
        if m_half is not None:
            t -= m_half[:, None] * r
        out = t + t.conj().T
        for L in jumps:
            z = L @ r
            out += (L @ z.conj().T).conj().T
        return out

    def rhs(sub, r):
        a = _assemble(problem, tmpl, sub)
        ph = np.exp((1j * (sub * 0.5 * dt)) * diag) if has_diag else None
        return np.stack([rhs_one(a, ph, r[b]) for b in range(batch)])

    for step in range(n):
        s0 = 2 * step
        k1 = rhs(s0, rho)
        k2 = rhs(s0 + 1, rho + (0.5 * dt) * k1)
        k3 = rhs(s0 + 1, rho + (0.5 * dt) * k2)
        k4 = rhs(s0 + 2, rho + dt * k3)
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if step + 1 in rec:
            record(rec[step + 1], step + 1, rho)

    if has_diag:
        ph = np.exp(-1j * diag * (n * dt))
        rho = ph[None, :, None] * rho * ph.conj()[None, None, :]
    return rho, obs, states
