"""Schrodinger integration under H_total(t) = H0(t) + H_drive + H_delta.

The integrator works in the co-rotating interaction picture
chi(t) = exp(+i omega t G) psi(t), where omega G = H_drive + H_delta is
diagonal in the working basis. The change of variables is exact (a phase
multiply per component), removes the only stiff diagonal at small omega,
and costs three matrix-vector products per right-hand-side call:

    i d(chi)/dt = e^{+i w t G} H0(t) e^{-i w t G} chi.

Lab-frame states are recovered sample-by-sample. The state is never
renormalized; norm drift is reported as a diagnostic so integrator error
stays visible to phase extraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import InvalidInputError, StiffnessError
from .models import HamiltonianSet
from .spectra import EigenBranch

__all__ = ["Trajectory", "evolve", "instantaneous_fidelity"]


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled solution of the driven Schrodinger equation.

    times : strictly increasing, times[0] = start of the run (0 by default)
    states : complex array, one row per sample, lab frame, unnormalized
    tolerance : integrator accuracy target the run was made with
    norm_drift : max over samples of | ||psi(t)|| - 1 |
    """

    times: np.ndarray
    states: np.ndarray
    tolerance: float
    norm_drift: float


def evolve(hset: HamiltonianSet, psi0, t_end: float, tolerance: float,
           t_start: float = 0.0, samples_per_period: int = 400) -> Trajectory:
    """Integrate i d(psi)/dt = H_total(t) psi from t_start to t_end.

    Parameters
    ----------
    hset : HamiltonianSet
    psi0 : normalized StateVector of matching dimension (the state at t_start)
    t_end : final time, > t_start
    tolerance : relative accuracy target, in [1e-12, 1e-4]
    t_start : start time (nonzero only to compose partial periods)
    samples_per_period : dense-output density, floor 400

    Returns
    -------
    Trajectory
        Deterministic for identical inputs; uniform time grid.

    Raises
    ------
    InvalidInputError
        Bad tolerance, dimension mismatch, unnormalized psi0, empty span.
    StiffnessError
        Step-size underflow, reporting the failing time.
    """
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (hset.dim,):
        raise InvalidInputError(f"psi0 has shape {psi0.shape}, expected ({hset.dim},)")
    if abs(np.linalg.norm(psi0) - 1.0) > 1e-6:
        raise InvalidInputError("psi0 must be normalized")
    if not 1e-12 <= tolerance <= 1e-4:
        raise InvalidInputError(f"tolerance {tolerance} outside [1e-12, 1e-4]")
    if not t_end > t_start:
        raise InvalidInputError(f"t_end = {t_end} must exceed t_start = {t_start}")

    omega = hset.omega
    gd = hset.gen_diag
    a = hset.static_part
    c = hset.rotating_part
    cd = c.conj().T

    def rhs(t, chi):
        ph = np.exp(-1j * omega * t * gd)
        y = ph * chi
        hy = a @ y + np.exp(-1j * omega * t) * (c @ y) + np.exp(1j * omega * t) * (cd @ y)
        return -1j * (np.conj(ph) * hy)

    span = t_end - t_start
    n_seg = max(int(math.ceil(max(samples_per_period, 400) * span / hset.period)), 2)
    times = t_start + span * np.arange(n_seg + 1) / n_seg
    times[-1] = t_end  # rounding must not push the last sample past t_end

    chi0 = np.exp(1j * omega * t_start * gd) * psi0
    sol = solve_ivp(rhs, (t_start, t_end), chi0, method="DOP853", t_eval=times,
                    rtol=tolerance, atol=tolerance * 1e-2)
    if not sol.success:
        t_fail = float(sol.t[-1]) if sol.t.size else t_start
        raise StiffnessError(t_fail, sol.message)

    states = np.exp(-1j * omega * np.outer(times, gd)) * sol.y.T
    norms = np.linalg.norm(states, axis=1)
    return Trajectory(
        times=times,
        states=states,
        tolerance=tolerance,
        norm_drift=float(np.max(np.abs(norms - 1.0))),
    )


def instantaneous_fidelity(traj: Trajectory, branch: EigenBranch):
    """Overlap of the trajectory with one instantaneous eigenbranch.

    Returns a list of (t, |<branch ket(t)|psi(t)>|^2) pairs, one per sample.
    """
    if traj.states.shape[1] != branch.hset.dim:
        raise InvalidInputError("trajectory and branch dimensions differ")
    out = []
    for t, psi in zip(traj.times, traj.states):
        amp = np.vdot(branch.ket_at(t), psi)
        out.append((float(t), float(abs(amp) ** 2)))
    return out
