"""Phase extraction: total, dynamic, geometric, noncyclic, and mixed-state.

Conventions shared by every routine here:

* the dynamic phase excludes the drive term: its generator is
  H_system = H0 + H_delta (the models module encodes this split);
* reported phases are wrapped to (-pi, pi]; unwrapped companions are kept
  wherever the raw winding matters;
* expectation values are Rayleigh quotients <psi|A|psi> / <psi|psi>.
  The trajectory norm drifts at the integrator tolerance, and an
  unnormalized second moment leaks that drift into variance-level
  quantities through catastrophic cancellation; dividing by the norm
  removes the leak without ever renormalizing the stored states.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import cumulative_simpson, simpson
from scipy.linalg import eigh

from .errors import (
    CyclicityError,
    InvalidInputError,
    TrackingError,
    UndefinedPhaseError,
)
from .evolution import Trajectory
from .models import HybridModel, OscillatorModel
from .operators import wrap_angle
from .spectra import branch_alpha

__all__ = [
    "PhaseReport",
    "ClosedPhase",
    "NoncyclicCurve",
    "cyclic_phase_decomposition",
    "berry_closed",
    "mixed_geometric_closed",
    "mixed_geometric_kinematic",
    "noncyclic_phase_curve",
    "mean_energy_curve",
]


@dataclass(frozen=True)
class PhaseReport:
    """Cyclic phase bookkeeping over one period.

    phi_total : arg<psi(0)|psi(T)>, in (-pi, pi]
    phi_dynamic : -integral of <H_system>, unwrapped (unbounded)
    gamma : wrap(phi_total - phi_dynamic)
    gamma_closed : closed-form prediction when the caller supplies one
    return_fidelity : |<psi(0)|psi(T)>|
    """

    phi_total: float
    phi_dynamic: float
    gamma: float
    return_fidelity: float
    gamma_closed: float | None = None


class ClosedPhase(NamedTuple):
    wrapped: float
    unwrapped: float


def mean_energy_curve(traj: Trajectory, h_sys) -> np.ndarray:
    """<H_system>(t) at each trajectory sample, as a Rayleigh quotient."""
    out = np.empty(len(traj.times))
    for i, (t, psi) in enumerate(zip(traj.times, traj.states)):
        h = h_sys(t)
        out[i] = np.real(np.vdot(psi, h @ psi)) / np.real(np.vdot(psi, psi))
    return out


def cyclic_phase_decomposition(traj: Trajectory, h_sys,
                               gamma_closed: float | None = None) -> PhaseReport:
    """Split one cyclic evolution into total, dynamic, and geometric phases.

    Parameters
    ----------
    traj : Trajectory over exactly one cycle
    h_sys : evaluator t -> H_system(t) = H0(t) + H_delta (drive excluded)
    gamma_closed : optional closed-form value to carry in the report

    Raises
    ------
    CyclicityError
        If |<psi(0)|psi(T)>| <= 1 - 1e-4; the trajectory must return to its
        initial ray for a cyclic decomposition to mean anything.
    """
    psi0, psi_t = traj.states[0], traj.states[-1]
    overlap = np.vdot(psi0, psi_t)
    fid = abs(overlap) / (np.linalg.norm(psi0) * np.linalg.norm(psi_t))
    if fid <= 1.0 - 1e-4:
        raise CyclicityError(fid)

    phi_total = float(np.angle(overlap))
    energies = mean_energy_curve(traj, h_sys)
    phi_dynamic = -float(simpson(energies, x=traj.times))
    gamma = float(wrap_angle(phi_total - phi_dynamic))
    return PhaseReport(phi_total, phi_dynamic, gamma, float(fid), gamma_closed)


def berry_closed(model, index, branch: str) -> ClosedPhase:
    """Closed-form cyclic geometric phase for one eigenbranch.

    Hybrid (classical included): -+ pi (1 - cos(theta) cos(alpha)) for the
    +/- branch. Oscillator: 2 pi |beta|^2 +- pi (1 - cos(alpha_n)). Both
    returned wrapped to (-pi, pi] alongside the unwrapped value.
    """
    alpha = branch_alpha(model, index, branch)
    sign = -1.0 if branch == "+" else 1.0
    if isinstance(model, OscillatorModel):
        unwrapped = 2.0 * np.pi * model.beta_mag**2 - sign * np.pi * (1.0 - np.cos(alpha))
    else:
        unwrapped = sign * np.pi * (1.0 - np.cos(model.theta) * np.cos(alpha))
    return ClosedPhase(float(wrap_angle(unwrapped)), float(unwrapped))


def mixed_geometric_closed(alpha: float, theta: float, branch: str = "-") -> float:
    """Closed-form mixed-state geometric phase of the reduced qubit.

    Weighs the two classical-path phases gamma_-+ = +-pi(1 - cos theta) by
    the reduced-state populations and takes the arg of the complex sum,
    which collapses to atan2(cos(alpha) sin(gamma_-), cos(gamma_-)). The
    '+' branch substitutes alpha -> pi + alpha. Two-argument arctangent
    keeps the quadrant that a plain arctan of the ratio loses.
    """
    if not 0.0 <= alpha <= np.pi:
        raise InvalidInputError(f"alpha must lie in [0, pi], got {alpha}")
    if not 0.0 <= theta <= np.pi:
        raise InvalidInputError(f"theta must lie in [0, pi], got {theta}")
    if branch == "+":
        alpha = np.pi + alpha
    elif branch != "-":
        raise InvalidInputError(f"branch must be '+' or '-', got {branch!r}")
    gamma_minus = np.pi * (1.0 - np.cos(theta))
    x = np.cos(gamma_minus)
    y = np.cos(alpha) * np.sin(gamma_minus)
    if np.hypot(x, y) < 1e-12:
        raise UndefinedPhaseError(
            "mixed phase undefined: cos(alpha) and cos(gamma_-) both vanish"
        )
    return float(np.arctan2(y, x))


def mixed_geometric_kinematic(rhos, gap_floor: float = 1e-6,
                              weight_floor: float = 1e-10) -> float:
    """Kinematic mixed-state geometric phase of a sampled density matrix path.

    Spectral-decomposes every sample, chains the eigenvectors of each
    significantly populated level by maximum overlap, and parallel-transports
    each chain: the transported phase of level k is -arg of the closed
    Wilson loop prod_i <phi_i|phi_i+1> * <phi_N|phi_0>, which cancels every
    per-sample gauge choice. Levels are then recombined as

        arg sum_k p_k |<phi_k(0)|phi_k(T)>| exp(-i arg L_k)

    with weights p_k taken at the first sample.

    Raises
    ------
    TrackingError
        If a populated eigenvalue approaches another within gap_floor
        anywhere along the path, or the overlap chain stops being decisive.
    UndefinedPhaseError
        If the recombined complex sum has negligible magnitude.
    """
    rhos = np.asarray(rhos, dtype=complex)
    if rhos.ndim != 3 or rhos.shape[1] != rhos.shape[2] or rhos.shape[0] < 3:
        raise InvalidInputError("need a (n_samples, d, d) stack with n_samples >= 3")
    n_samp, d, _ = rhos.shape

    vals = np.empty((n_samp, d))
    vecs = np.empty((n_samp, d, d), dtype=complex)
    for i, r in enumerate(rhos):
        w, v = eigh(0.5 * (r + r.conj().T))
        order = np.argsort(w)[::-1]
        vals[i] = w[order]
        vecs[i] = v[:, order]

    tracked = [k for k in range(d) if vals[0, k] > weight_floor]
    # gap precondition: populated levels must stay spectrally isolated
    for k in tracked:
        others = np.delete(vals, k, axis=1)
        gap = np.min(np.abs(others - vals[:, [k]]))
        if gap <= gap_floor:
            raise TrackingError(
                f"eigenvalue gap {gap:.3g} at level {k} below {gap_floor:.3g}"
            )

    total = 0.0j
    for k in tracked:
        col = vecs[0][:, k]
        first = col
        loop = 1.0 + 0.0j
        for i in range(1, n_samp):
            ovl = vecs[i].conj().T @ col
            pick = int(np.argmax(np.abs(ovl)))
            if abs(ovl[pick]) ** 2 < 0.5:
                raise TrackingError(
                    f"eigenvector continuity lost at sample {i}, level {k}"
                )
            loop *= np.conj(ovl[pick])  # forward bond <phi_{i-1}|phi_i>
            col = vecs[i][:, pick]
        closing = np.vdot(col, first)   # closing bond <phi(T)|phi(0)>
        loop *= closing
        total += vals[0, k] * abs(closing) * np.exp(-1j * np.angle(loop))

    if abs(total) < 1e-12:
        raise UndefinedPhaseError("kinematic mixed phase undefined: zero-magnitude sum")
    return float(np.angle(total))


@dataclass(frozen=True, eq=False)
class NoncyclicCurve:
    """Noncyclic geometric phase along a trajectory.

    times, gammas : kept samples (visibility above the floor), gamma
        continuously unwrapped along t
    kept_indices : positions of the kept samples in the source trajectory
    jump_times : kept-sample times reached through a phase jump > pi/2
        (visibility dips hide the underlying continuous branch there)
    crossed : whether |gamma| reached pi - crossing_tol
    crossing_time : first attainment time; jump-mediated attainments snap
        forward to the enclosing full period when one is supplied
    """

    times: np.ndarray
    gammas: np.ndarray
    kept_indices: np.ndarray
    jump_times: np.ndarray
    crossed: bool
    crossing_time: float | None


def noncyclic_phase_curve(traj: Trajectory, h_sys, period: float | None = None,
                          visibility_floor: float = 1e-6,
                          crossing_tol: float = 1e-6) -> NoncyclicCurve:
    """Noncyclic geometric phase gamma(t) = arg<psi(0)|psi(t)> + int <H_sys>.

    Samples whose overlap with the initial state has magnitude at or below
    visibility_floor are skipped: the total phase is unobservable there.
    The curve is unwrapped by nearest-branch continuation; a step larger
    than pi/2 between kept samples is flagged as a jump (a hidden branch
    passage under a visibility dip).

    The first time |gamma| reaches pi - crossing_tol is reported. A smooth
    attainment is refined by linear interpolation; a jump-mediated one is
    snapped forward to the end of the running period when `period` is
    given, since the underlying continuous curve completes the crossing
    only as the cycle closes. No crossing is a report, not an error.
    """
    psi0 = traj.states[0]
    n0 = np.linalg.norm(psi0)
    overlaps = traj.states @ psi0.conj()
    norms = np.linalg.norm(traj.states, axis=1)
    vis = np.abs(overlaps) / (norms * n0)

    energies = mean_energy_curve(traj, h_sys)
    dyn = cumulative_simpson(energies, x=traj.times, initial=0.0)

    kept = np.flatnonzero(vis > visibility_floor)
    if kept.size == 0 or kept[0] != 0:
        raise InvalidInputError("initial sample must be visible")

    raw = np.angle(overlaps[kept]) + dyn[kept]
    gammas = np.empty_like(raw)
    gammas[0] = wrap_angle(raw[0])
    jumps = []
    for i in range(1, raw.size):
        step = wrap_angle(raw[i] - gammas[i - 1])
        gammas[i] = gammas[i - 1] + step
        if abs(step) > np.pi / 2:
            jumps.append(i)

    times = traj.times[kept]
    crossed = False
    crossing_time = None
    hit = np.flatnonzero(np.abs(gammas) >= np.pi - crossing_tol)
    if hit.size:
        i = int(hit[0])
        crossed = True
        if i in jumps or i == 0:
            t_hit = times[i]
            if period is not None:
                crossing_time = float(np.ceil(t_hit / period - 1e-9) * period)
            else:
                crossing_time = float(t_hit)
        else:
            target = np.sign(gammas[i]) * np.pi
            g0, g1 = gammas[i - 1], gammas[i]
            frac = (target - g0) / (g1 - g0) if g1 != g0 else 1.0
            frac = min(max(frac, 0.0), 1.0)
            crossing_time = float(times[i - 1] + frac * (times[i] - times[i - 1]))

    return NoncyclicCurve(
        times=times,
        gammas=gammas,
        kept_indices=kept,
        jump_times=times[jumps] if jumps else np.empty(0),
        crossed=crossed,
        crossing_time=crossing_time,
    )
