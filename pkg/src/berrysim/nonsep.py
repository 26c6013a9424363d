"""Nonseparability and the time-energy tradeoff.

The geometric action S = 2 * integral of the energy spread Delta E over a
cycle bounds the qubit-field entanglement: C <= S / 2 pi, with equality
exactly when sin(theta) cos(alpha) = 0. The uncertainty probe checks the
time-energy relation <Delta E> Delta t >= h/2 at the first fringe reversal
of the noncyclic geometric phase.

Reading of the time-energy product (recorded prominently on purpose):
with hbar = 1 the Planck constant is h = 2 pi, and <Delta E> Delta t is
interpreted as the accumulated integral of Delta E(t) up to Delta t, so
the bound tested is

    integral_0^{Delta t} Delta E dt >= pi.

This is the only reading under which the perpendicular-field case
(theta = pi/2, Delta t = one period) is an equality.

Energy spreads are computed as Rayleigh-quotient residual norms,
|| (H - <H>) psi || / ||psi||, which is exactly sqrt(<H^2> - <H>^2) for
normalized states but immune to the catastrophic cancellation that the
moment difference suffers when the trajectory norm drifts at the
integrator tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson, simpson

from .errors import InvalidInputError
from .evolution import Trajectory, evolve
from .models import (
    HamiltonianSet,
    HybridModel,
    OscillatorModel,
    build_hybrid,
    build_oscillator,
)
from .operators import wrap_angle
from .phases import mixed_geometric_closed, noncyclic_phase_curve
from .spectra import branch_alpha, hybrid_eigensystem, oscillator_eigensystem

__all__ = [
    "NonsepReport",
    "ProbeResult",
    "concurrence",
    "energy_uncertainty",
    "delta_e_curve",
    "action",
    "action_closed",
    "mixed_closed_for_model",
    "complementarity_report",
    "uncertainty_relation_probe",
]


@dataclass(frozen=True, eq=False)
class NonsepReport:
    """Complementarity summary for one eigenbranch over one cycle.

    concurrence : C of the eigenstate, in [0, 1]
    delta_e_curve : (t, Delta E) samples along the cycle
    action : numeric S = 2 integral Delta E dt
    action_closed : closed-form S
    effective_angle : theta_m with cos(theta_m) = cos(theta) cos(alpha);
        NaN for the oscillator, whose drive has no polar angle
    gamma_mixed : closed-form mixed-state geometric phase of the qubit
    bound_ratio : C / (S_closed / 2 pi), at most 1 + 1e-9
    saturates_bound : True when the C = S/2pi equality condition holds
        (sin theta cos alpha = 0 for the hybrid, |beta| = 0 for the
        oscillator)
    """

    concurrence: float
    delta_e_curve: np.ndarray
    action: float
    action_closed: float
    effective_angle: float
    gamma_mixed: float
    bound_ratio: float
    saturates_bound: bool


@dataclass(frozen=True)
class ProbeResult:
    """Outcome of the time-energy uncertainty probe.

    crossed : whether |gamma_nc| reached pi within the probed window;
        when False the remaining fields are None/False (a report, not an
        error)
    delta_t : first crossing time
    integral : integral of Delta E from 0 to delta_t
    satisfied : integral >= pi (1 - 1e-2)
    """

    crossed: bool
    delta_t: float | None
    integral: float | None
    satisfied: bool


def concurrence(state, field_dim: int) -> float:
    """Concurrence of a pure field (x) qubit state: 2 sqrt(det rho_qubit).

    det(rho_qubit) is expanded by Cauchy-Binet into a sum of squared 2x2
    minors of the amplitude matrix.  Forming rho and its determinant
    directly would subtract equal products and leave sqrt-amplified
    round-off (~1e-8) on product states; the minor sum is nonnegative
    term by term and exactly zero there.
    """
    psi = np.asarray(state, dtype=complex)
    if psi.ndim != 1 or field_dim < 1 or psi.size != 2 * field_dim:
        raise InvalidInputError(
            "state length must equal 2 * field_dim for a qubit factor")
    m = psi.reshape(field_dim, 2)
    minors = np.outer(m[:, 0], m[:, 1]) - np.outer(m[:, 1], m[:, 0])
    det = 0.5 * float(np.sum(np.abs(minors) ** 2))
    n2 = float(np.real(np.vdot(psi, psi)))
    return float(2.0 * np.sqrt(det) / n2)


def energy_uncertainty(state, h_sys) -> float:
    """Energy spread sqrt(<H^2> - <H>^2) of a state under a hermitian H.

    Evaluated as the residual norm ||(H - <H>) psi|| / ||psi||, which is
    algebraically identical but cannot go negative from round-off.
    """
    psi = np.asarray(state, dtype=complex)
    h = np.asarray(h_sys, dtype=complex)
    if h.shape != (psi.size, psi.size):
        raise InvalidInputError("state and Hamiltonian dimensions differ")
    hpsi = h @ psi
    n2 = np.real(np.vdot(psi, psi))
    mean = np.real(np.vdot(psi, hpsi)) / n2
    return float(np.linalg.norm(hpsi - mean * psi) / np.sqrt(n2))


def delta_e_curve(traj: Trajectory, h_sys) -> np.ndarray:
    """(t, Delta E(t)) at every trajectory sample; h_sys maps t to a matrix."""
    out = np.empty((len(traj.times), 2))
    for i, (t, psi) in enumerate(zip(traj.times, traj.states)):
        out[i, 0] = t
        out[i, 1] = energy_uncertainty(psi, h_sys(t))
    return out


def action(traj: Trajectory, h_sys) -> float:
    """Geometric action S = 2 integral Delta E dt over the trajectory window."""
    curve = delta_e_curve(traj, h_sys)
    return float(2.0 * simpson(curve[:, 1], x=curve[:, 0]))


def action_closed(model, index, branch: str) -> float:
    """Closed-form action over one period.

    Hybrid (classical included): S = 2 pi sqrt(1 - cos^2 theta cos^2 alpha),
    branch independent. Oscillator:
    S = 2 pi sqrt(sin^2 alpha + 4 |beta|^2 (2n + 1 + 2q)) with
    q = sin^2(alpha/2) on the '+' branch and cos^2(alpha/2) on '-'; the
    displacement-excitation cross term 8 |beta|^2 q is kept, it is required
    for agreement with the integrated spread.
    """
    alpha = branch_alpha(model, index, branch)
    if isinstance(model, OscillatorModel):
        q = np.sin(alpha / 2.0) ** 2 if branch == "+" else np.cos(alpha / 2.0) ** 2
        radicand = np.sin(alpha) ** 2 + 4.0 * model.beta_mag**2 * (2.0 * index + 1.0 + 2.0 * q)
        return float(2.0 * np.pi * np.sqrt(radicand))
    ct = np.cos(model.theta) * np.cos(alpha)
    return float(2.0 * np.pi * np.sqrt(max(1.0 - ct * ct, 0.0)))


def mixed_closed_for_model(model, index, branch: str) -> float:
    """Closed-form mixed-state geometric phase for one eigenbranch.

    Hybrid: the population-weighted arg form at (alpha, theta).
    Oscillator: 2 pi |beta|^2 mod 2 pi, independent of index and branch.
    """
    if isinstance(model, OscillatorModel):
        return float(wrap_angle(2.0 * np.pi * model.beta_mag**2))
    alpha = branch_alpha(model, index, branch)
    return mixed_geometric_closed(alpha, model.theta, branch)


def _build_for(model) -> HamiltonianSet:
    if isinstance(model, OscillatorModel):
        return build_oscillator(model)
    return build_hybrid(model)


def complementarity_report(model, index, branch: str, tolerance: float = 1e-9,
                           samples_per_period: int = 400,
                           hset: HamiltonianSet | None = None,
                           traj: Trajectory | None = None) -> NonsepReport:
    """Assemble the complementarity quantities for one eigenbranch.

    Evolves the branch eigenstate over one period (unless a matching
    trajectory is supplied) and reports concurrence, the Delta E curve,
    numeric and closed action, the effective angle, the closed mixed
    phase, and the bound ratio C / (S_closed / 2 pi).
    """
    if hset is None:
        hset = _build_for(model)
    if isinstance(model, OscillatorModel):
        br = oscillator_eigensystem(model, int(index), branch, hset)
        effective_angle = math.nan
        saturates = model.beta_mag < 1e-12
    else:
        br = hybrid_eigensystem(model, index, branch, hset)
        effective_angle = float(np.arccos(np.clip(
            np.cos(model.theta) * np.cos(br.alpha), -1.0, 1.0)))
        saturates = abs(np.sin(model.theta) * np.cos(br.alpha)) < 1e-12

    psi0 = br.ket_at(0.0)
    conc = concurrence(psi0, hset.field_dim)
    if traj is None:
        traj = evolve(hset, psi0, hset.period, tolerance,
                      samples_per_period=samples_per_period)
    curve = delta_e_curve(traj, hset.h_system_at)
    s_num = float(2.0 * simpson(curve[:, 1], x=curve[:, 0]))
    s_cl = action_closed(model, index, branch)
    gamma_mixed = mixed_closed_for_model(model, index, branch)

    denom = s_cl / (2.0 * np.pi)
    if denom > 1e-15:
        ratio = conc / denom
    else:
        # degenerate point S = 0 forces C = 0; report the continuous limit
        ratio = 1.0 if conc <= 1e-15 else math.inf

    return NonsepReport(
        concurrence=conc,
        delta_e_curve=curve,
        action=s_num,
        action_closed=s_cl,
        effective_angle=effective_angle,
        gamma_mixed=gamma_mixed,
        bound_ratio=float(ratio),
        saturates_bound=bool(saturates),
    )


def uncertainty_relation_probe(model: HybridModel, tolerance: float = 1e-9,
                               samples_per_period: int = 2000,
                               max_periods: int | None = None) -> ProbeResult:
    """Time-energy uncertainty check at the first fringe reversal.

    Evolves the '-' branch of a classical-field model until the noncyclic
    geometric phase first reaches |gamma| = pi, then integrates Delta E up
    to that time and compares against pi (1 - 1e-2).

    Restricted to mu = 0, adiabatic drive (omega/B <= 1e-2), and
    theta in (0, pi/2]; beyond pi/2 the per-period phase exceeds pi and
    the bound statement stops being meaningful under this convention.
    max_periods defaults to the per-period accumulation estimate
    1 / (1 - cos theta) plus margin, capped at 16; steeper-than-estimate
    curves simply cross earlier.
    """
    if model.mu != 0.0:
        raise InvalidInputError("probe requires the classical field: mu = 0")
    if model.omega > 1e-2 * model.B:
        raise InvalidInputError("probe requires adiabatic drive: omega/B <= 1e-2")
    if not 0.0 < model.theta <= np.pi / 2.0 + 1e-12:
        raise InvalidInputError("probe domain is theta in (0, pi/2]")

    if max_periods is None:
        per_period = 1.0 - np.cos(model.theta)
        max_periods = int(min(np.ceil(1.0 / per_period) + 2.0, 16.0))

    hset = build_hybrid(model)
    br = hybrid_eigensystem(model, -(model.j + 1), "-", hset)
    traj = evolve(hset, br.ket_at(0.0), max_periods * hset.period, tolerance,
                  samples_per_period=samples_per_period)
    curve = noncyclic_phase_curve(traj, hset.h_system_at, period=hset.period)
    if not curve.crossed:
        return ProbeResult(crossed=False, delta_t=None, integral=None, satisfied=False)

    de = delta_e_curve(traj, hset.h_system_at)
    accum = cumulative_simpson(de[:, 1], x=de[:, 0], initial=0.0)
    integral = float(np.interp(curve.crossing_time, de[:, 0], accum))
    return ProbeResult(
        crossed=True,
        delta_t=float(curve.crossing_time),
        integral=integral,
        satisfied=bool(integral >= np.pi * (1.0 - 1e-2)),
    )
