"""Single-point and path scenario drivers shared by the CLI.

``verify`` and ``sweep`` both consume :func:`hybrid_point` /
:func:`oscillator_point`, so a one-point sweep reproduces the verify
numbers exactly: every quantity is computed once from one trajectory.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import simpson

from .errors import InvalidParameterError
from .evolution import evolve, instantaneous_fidelity
from .models import HybridModel, OscillatorModel, build_hybrid, build_oscillator
from .nonsep import complementarity_report, energy_uncertainty, uncertainty_relation_probe
from .operators import reduced_density_matrix
from .phases import berry_closed, cyclic_phase_decomposition, mixed_geometric_kinematic
from .spectra import hybrid_eigensystem, oscillator_eigensystem

__all__ = [
    "hybrid_point",
    "oscillator_point",
    "tradeoff_path",
    "uncertainty_table",
    "oscillator_static_action",
    "HYBRID_COLUMNS",
    "OSCILLATOR_COLUMNS",
]

# sweep column contract; oscillator swaps the model-parameter block
HYBRID_COLUMNS = (
    "scenario", "theta", "mu", "B", "omega", "j", "m", "branch",
    "alpha", "concurrence", "action_numeric", "action_closed",
    "gamma_berry", "gamma_mixed", "bound_ratio",
)
OSCILLATOR_COLUMNS = (
    "scenario", "nu", "g", "beta", "omega", "n", "branch",
    "alpha", "concurrence", "action_numeric", "action_closed",
    "gamma_berry", "gamma_mixed", "bound_ratio",
)


def _kinematic_phase(traj, field_dim: int, keep: str, stride: int = 1):
    states = traj.states[::stride]
    rhos = []
    for psi in states:
        rho = reduced_density_matrix(psi, field_dim, keep=keep)
        rhos.append(rho / np.trace(rho).real)
    return mixed_geometric_kinematic(rhos)


def hybrid_point(*, B: float, theta: float, omega: float, mu: float = 0.0,
                 j: float = 0.0, m: float | None = None, branch: str = "-",
                 scenario: str = "hybrid", tolerance: float = 1e-9,
                 samples_per_period: int = 2000, kinematic: bool = False) -> dict:
    """Evolve one spin-block eigenstate through a full drive period and
    collect every derived quantity from that single trajectory.

    Returns a dict keyed by the sweep columns plus closed-form and
    diagnostic extras (``gamma_closed``, ``min_fidelity``, ...).  The
    ``kinematic`` flag only adds a quantity computed from the same
    trajectory, so it never perturbs the shared numbers.
    """
    model = HybridModel(B=B, theta=theta, omega=omega, mu=mu, j=j)
    if m is None:
        m = -(j + 1.0) if branch == "-" else j
    hset = build_hybrid(model)
    br = hybrid_eigensystem(model, m, branch, hset=hset)
    traj = evolve(hset, br.ket_at(0.0), hset.period, tolerance,
                  samples_per_period=samples_per_period)
    rep = cyclic_phase_decomposition(traj, hset.h_system_at)
    closed = berry_closed(model, m, branch)
    nsr = complementarity_report(model, m, branch, tolerance=tolerance,
                                 hset=hset, traj=traj)
    fid = min(f for _, f in instantaneous_fidelity(traj, br))
    out = {
        "scenario": scenario, "theta": theta, "mu": mu, "B": B,
        "omega": omega, "j": j, "m": m, "branch": branch,
        "alpha": br.alpha, "concurrence": nsr.concurrence,
        "action_numeric": nsr.action, "action_closed": nsr.action_closed,
        "gamma_berry": rep.gamma, "gamma_mixed": nsr.gamma_mixed,
        "bound_ratio": nsr.bound_ratio,
        "gamma_closed": closed.wrapped,
        "gamma_closed_unwrapped": closed.unwrapped,
        "concurrence_closed": math.sin(br.alpha),
        "return_fidelity": rep.return_fidelity,
        "min_fidelity": fid,
        "norm_drift": traj.norm_drift,
        "effective_angle": nsr.effective_angle,
    }
    if kinematic:
        out["gamma_mixed_kinematic"] = _kinematic_phase(
            traj, hset.field_dim, keep="qubit")
    return out


def oscillator_static_action(model: OscillatorModel, n: int, branch: str,
                             n_samples: int = 801) -> float:
    """Phase-space action from the closed-form eigenstate alone: quadrature
    of the energy spread along the transported ket, no integrator involved.

    Used for truncation checks (double ``n_max``, compare) since it costs
    one matrix-vector product per sample.
    """
    hset = build_oscillator(model)
    br = oscillator_eigensystem(model, n, branch, hset=hset)
    times = np.linspace(0.0, hset.period, n_samples)
    spread = [energy_uncertainty(br.ket_at(t), hset.h_system_at(t))
              for t in times]
    return 2.0 * float(simpson(np.asarray(spread), x=times))


def oscillator_point(*, nu: float, g: float, beta: float, omega: float,
                     n: int = 0, n_max: int = 60, branch: str = "-",
                     tolerance: float = 1e-9, samples_per_period: int = 2000,
                     kinematic: bool = False, truncation_check: bool = False) -> dict:
    """Oscillator counterpart of :func:`hybrid_point`; one trajectory in the
    truncated Fock space feeds every reported quantity."""
    model = OscillatorModel(nu=nu, g=g, beta_mag=beta, omega=omega, n_max=n_max)
    hset = build_oscillator(model)
    br = oscillator_eigensystem(model, n, branch, hset=hset)
    traj = evolve(hset, br.ket_at(0.0), hset.period, tolerance,
                  samples_per_period=samples_per_period)
    rep = cyclic_phase_decomposition(traj, hset.h_system_at)
    closed = berry_closed(model, n, branch)
    nsr = complementarity_report(model, n, branch, tolerance=tolerance,
                                 hset=hset, traj=traj)
    fid = min(f for _, f in instantaneous_fidelity(traj, br))
    out = {
        "scenario": "oscillator", "nu": nu, "g": g, "beta": beta,
        "omega": omega, "n": n, "branch": branch,
        "alpha": br.alpha, "concurrence": nsr.concurrence,
        "action_numeric": nsr.action, "action_closed": nsr.action_closed,
        "gamma_berry": rep.gamma, "gamma_mixed": nsr.gamma_mixed,
        "bound_ratio": nsr.bound_ratio,
        "gamma_closed": closed.wrapped,
        "gamma_closed_unwrapped": closed.unwrapped,
        "concurrence_closed": math.sin(br.alpha),
        "return_fidelity": rep.return_fidelity,
        "min_fidelity": fid,
        "norm_drift": traj.norm_drift,
        "effective_angle": nsr.effective_angle,
    }
    if kinematic:
        # trace out the qubit, keep the field factor; stride keeps the
        # per-sample eigendecompositions affordable at large n_max
        stride = 2 if n_max > 30 else 1
        out["gamma_mixed_kinematic"] = _kinematic_phase(
            traj, hset.field_dim, keep="field", stride=stride)
    if truncation_check:
        doubled = OscillatorModel(nu=nu, g=g, beta_mag=beta, omega=omega,
                                  n_max=2 * n_max)
        out["action_static"] = oscillator_static_action(model, n, branch)
        out["action_static_doubled"] = oscillator_static_action(doubled, n, branch)
    return out


def tradeoff_path(*, effective_angle: float = math.pi / 3.0, steps: int = 10,
                  B: float = 1.0, omega: float = 1e-2, branch: str = "-",
                  mu_start: float = 1.5, mu_stop: float = 1e-4,
                  tolerance: float = 1e-9, samples_per_period: int = 2000) -> list:
    """Constant-action path: j=1/2 blocks with ``cos(theta)*cos(alpha)``
    pinned to ``cos(effective_angle)`` while the coupling ramps down.

    Geometrically-spaced ``mu`` from ``mu_start`` to ``mu_stop``; the polar
    angle is re-solved at each point so the action stays fixed while the
    entanglement drains out.
    """
    if steps < 1:
        raise InvalidParameterError("steps must be >= 1")
    if not 0.0 < effective_angle < math.pi / 2.0 + 1e-12:
        raise InvalidParameterError(
            "effective angle must lie in (0, pi/2] for the constant-action path")
    target = math.cos(effective_angle)
    mus = np.geomspace(mu_start, mu_stop, steps) if steps > 1 else np.array([mu_start])
    rows = []
    for mu in mus:
        alpha = math.atan2(float(mu), B)  # j=1/2, m=-1/2 block angle
        cos_theta = target / math.cos(alpha)
        if cos_theta > 1.0:
            raise InvalidParameterError(
                "mu/B too large to hold the effective angle at "
                f"{effective_angle:.6g}: cos(theta) would need {cos_theta:.6g}")
        theta = math.acos(cos_theta)
        rows.append(hybrid_point(
            B=B, theta=theta, omega=omega, mu=float(mu), j=0.5, m=-0.5,
            branch=branch, scenario="tradeoff", tolerance=tolerance,
            samples_per_period=samples_per_period))
    return rows


def uncertainty_table(*, thetas=(math.pi / 6, math.pi / 4, math.pi / 3, math.pi / 2),
                      B: float = 1.0, omega: float = 1e-2,
                      tolerance: float = 1e-9,
                      samples_per_period: int = 2000) -> list:
    """Run the spread-time probe for each polar angle and pair the measured
    phase-flip integral with the uniform-accumulation estimate
    ``pi*sin(theta)/(1-cos(theta))``."""
    rows = []
    for theta in thetas:
        model = HybridModel(B=B, theta=float(theta), omega=omega)
        probe = uncertainty_relation_probe(model, tolerance=tolerance,
                                           samples_per_period=samples_per_period)
        estimate = math.pi * math.sin(theta) / (1.0 - math.cos(theta))
        rows.append({
            "theta": float(theta),
            "crossed": probe.crossed,
            "delta_t": probe.delta_t,
            "integral": probe.integral,
            "estimate": estimate,
            "satisfied": probe.satisfied,
        })
    return rows
