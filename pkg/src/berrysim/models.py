"""Model assembly: rotating-field Hamiltonians, their split into parts, and
the exact co-rotating frames.

Two physical settings share one container type:

* hybrid: a qubit coupled to a spin-j and driven by a rotating classical
  field of fixed polar angle theta (the classical limit is mu=0, j=0);
* oscillator: a Jaynes-Cummings qubit whose boson mode is displaced along
  a circle in phase space, beta(t) = |beta| e^{-i omega t}.

The full propagation Hamiltonian is H_total(t) = H0(t) + H_drive + H_delta.
Phase bookkeeping (dynamic phase, energy spread) uses H_system = H0 + H_delta
with the drive excluded; that asymmetry is encoded here, once, through the
two evaluators on :class:`HamiltonianSet`.

Both H0(t) evaluators share the structure

    H0(t) = A + e^{-i omega t} C + e^{+i omega t} C^dag

with constant A (hermitian) and C. The co-rotating frame factorizes as
F(t) = exp(-i omega t G) F(0) with G diagonal in the working basis, so
frame evaluation is a phase multiply, not a matrix exponential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.linalg import expm

from . import operators as ops
from .errors import InvalidParameterError

__all__ = [
    "HybridModel",
    "OscillatorModel",
    "HamiltonianSet",
    "build_hybrid",
    "build_oscillator",
    "build_classical",
    "min_fock_truncation",
]


def min_fock_truncation(n: int, beta_mag: float) -> int:
    """Smallest Fock cutoff trusted for excitation number n at displacement
    |beta|: n + 10 + ceil(8 |beta|^2)."""
    return int(n) + 10 + math.ceil(8.0 * beta_mag * beta_mag)


@dataclass(frozen=True)
class HybridModel:
    """Parameters of the rotating qubit-spin hybrid.

    B : classical field magnitude (energy, hbar = 1)
    theta : polar angle of the field axis, radians, 0 <= theta <= pi
    omega : azimuthal rotation frequency, > 0
    mu : qubit-spin coupling, >= 0
    j : spin quantum number, nonnegative half-integer
    """

    B: float
    theta: float
    omega: float
    mu: float = 0.0
    j: float = 0.0

    def __post_init__(self):
        if self.B < 0:
            raise InvalidParameterError(f"B must be >= 0, got {self.B}")
        if self.mu < 0:
            raise InvalidParameterError(f"mu must be >= 0, got {self.mu}")
        if not 0.0 <= self.theta <= np.pi:
            raise InvalidParameterError(f"theta must lie in [0, pi], got {self.theta}")
        if self.omega <= 0:
            raise InvalidParameterError(f"omega must be > 0, got {self.omega}")
        two_j = 2.0 * self.j
        if two_j < 0 or abs(two_j - round(two_j)) > 1e-12:
            raise InvalidParameterError(f"j must be a nonnegative half-integer, got {self.j}")
        if self.B == 0 and self.mu == 0:
            raise InvalidParameterError("B and mu cannot both vanish")


@dataclass(frozen=True)
class OscillatorModel:
    """Parameters of the displaced Jaynes-Cummings model.

    nu : oscillator frequency, > 0
    g : qubit-boson coupling, >= 0
    beta_mag : displacement magnitude |beta|, >= 0
    omega : displacement rotation frequency, > 0
    n_max : Fock truncation, at least min_fock_truncation(0, beta_mag)
    """

    nu: float
    g: float
    beta_mag: float
    omega: float
    n_max: int

    def __post_init__(self):
        if self.nu <= 0:
            raise InvalidParameterError(f"nu must be > 0, got {self.nu}")
        if self.g < 0:
            raise InvalidParameterError(f"g must be >= 0, got {self.g}")
        if self.beta_mag < 0:
            raise InvalidParameterError(f"beta_mag must be >= 0, got {self.beta_mag}")
        if self.omega <= 0:
            raise InvalidParameterError(f"omega must be > 0, got {self.omega}")
        floor = min_fock_truncation(0, self.beta_mag)
        if self.n_max < floor:
            raise InvalidParameterError(
                f"n_max = {self.n_max} too small; need at least {floor} "
                f"for |beta| = {self.beta_mag}"
            )


@dataclass(frozen=True, eq=False)
class HamiltonianSet:
    """Immutable bundle of one model's Hamiltonian parts and frame.

    Attributes
    ----------
    model_kind : {"classical", "hybrid", "oscillator"}
    model : HybridModel or OscillatorModel
    dim : total Hilbert dimension
    field_dim : dimension of the field factor (spin or Fock)
    omega : rotation frequency
    h_drive : constant hermitian matrix, excluded from phase bookkeeping
    h_neglected : constant hermitian matrix H_delta, included in H_system
    static_part, rotating_part : A and C of H0(t) = A + e^{-iwt} C + h.c.
    frame_static : F(0), a theta-rotation (hybrid) or displacement (oscillator)
    gen_diag : real diagonal of G, where h_drive + h_neglected = omega * G
    h_static : F(0)^dag H0(0) F(0), the time-independent frame Hamiltonian

    All evaluators are pure functions of t and safe for concurrent use.
    """

    model_kind: str
    model: object
    dim: int
    field_dim: int
    omega: float
    h_drive: np.ndarray
    h_neglected: np.ndarray
    static_part: np.ndarray
    rotating_part: np.ndarray
    frame_static: np.ndarray
    gen_diag: np.ndarray
    h_static: np.ndarray = field(init=False)

    def __post_init__(self):
        h_stat = self.frame_static.conj().T @ self.h0_at(0.0) @ self.frame_static
        object.__setattr__(self, "h_static", 0.5 * (h_stat + h_stat.conj().T))

    @property
    def period(self) -> float:
        return 2.0 * np.pi / self.omega

    def h0_at(self, t: float) -> np.ndarray:
        ph = np.exp(-1j * self.omega * t)
        return (
            self.static_part
            + ph * self.rotating_part
            + np.conj(ph) * self.rotating_part.conj().T
        )

    def h_system_at(self, t: float) -> np.ndarray:
        """H0(t) + H_delta: the operator whose expectation feeds the dynamic
        phase and the energy spread."""
        return self.h0_at(t) + self.h_neglected

    def h_total_at(self, t: float) -> np.ndarray:
        """H0(t) + H_drive + H_delta: generates the actual time evolution."""
        return self.h0_at(t) + self.h_drive + self.h_neglected

    def frame_at(self, t: float) -> np.ndarray:
        """Co-rotating frame F(t) = exp(-i omega t G) F(0)."""
        ph = np.exp(-1j * self.omega * t * self.gen_diag)
        return ph[:, None] * self.frame_static


def _hybrid_set(model: HybridModel, kind: str) -> HamiltonianSet:
    jx, jy, jz = ops.spin_matrices(model.j)
    sdim = jx.shape[0]
    eye_s = np.eye(sdim, dtype=complex)
    eye_q = np.eye(2, dtype=complex)

    coupling = -model.mu * (
        ops.tensor(jx, ops.SIGMA_X)
        + ops.tensor(jy, ops.SIGMA_Y)
        + ops.tensor(jz, ops.SIGMA_Z)
    )
    static_part = coupling - model.B * np.cos(model.theta) * ops.tensor(eye_s, ops.SIGMA_Z)
    rotating_part = -model.B * np.sin(model.theta) * ops.tensor(eye_s, ops.SIGMA_PLUS)

    h_drive = model.omega * ops.tensor(jz - model.j * eye_s, eye_q)
    h_neglected = 0.5 * model.omega * ops.tensor(eye_s, ops.SIGMA_Z)

    # G = (-j + Jz) + sigma_z/2, diagonal in the product basis
    gen_diag = (np.diag(h_drive).real + np.diag(h_neglected).real) / model.omega
    frame_static = expm(
        -1j * model.theta * (ops.tensor(jy, eye_q) + 0.5 * ops.tensor(eye_s, ops.SIGMA_Y))
    )

    return HamiltonianSet(
        model_kind=kind,
        model=model,
        dim=2 * sdim,
        field_dim=sdim,
        omega=model.omega,
        h_drive=h_drive,
        h_neglected=h_neglected,
        static_part=static_part,
        rotating_part=rotating_part,
        frame_static=frame_static,
        gen_diag=gen_diag,
    )


def build_hybrid(model: HybridModel) -> HamiltonianSet:
    """Assemble H0(t) = -mu J.sigma - B(t).sigma with
    B(t) = B (sin theta cos wt, sin theta sin wt, cos theta), the drive
    omega (Jz - j), the neglected part omega sigma_z / 2, and the frame
    F(t) = exp[-i w t (Jz - j + sigma_z/2)] exp[-i theta (Jy + sigma_y/2)].
    """
    return _hybrid_set(model, "hybrid")


def build_classical(B: float, theta: float, omega: float) -> HamiltonianSet:
    """Bare qubit in the rotating classical field: the mu = 0, j = 0 point
    of the hybrid family, H0(t) = -B(t).sigma."""
    return _hybrid_set(HybridModel(B=B, theta=theta, omega=omega, mu=0.0, j=0.0), "classical")


def build_oscillator(model: OscillatorModel) -> HamiltonianSet:
    """Assemble the displaced Jaynes-Cummings set.

    H0(t) = nu b(t)^dag b(t) + g (sigma_- b(t)^dag + sigma_+ b(t)) with
    b(t) = a - beta(t), beta(t) = |beta| e^{-i omega t}; the drive is
    omega (sigma_z + 1)/2 on the qubit, the neglected part omega a^dag a
    on the field. The frame F(t) = exp(-i w t N_exc) D(|beta|), with
    N_exc = a^dag a + (sigma_z + 1)/2, carries the static eigenvectors
    onto the instantaneous ones exactly, and its phase factor commutes
    with truncation.
    """
    a, ad = ops.boson_operators(model.n_max)
    fdim = model.n_max + 1
    eye_f = np.eye(fdim, dtype=complex)
    eye_q = np.eye(2, dtype=complex)
    nu, g, b = model.nu, model.g, model.beta_mag

    static_part = (
        nu * ops.tensor(ad @ a, eye_q)
        + g * (ops.tensor(ad, ops.SIGMA_MINUS) + ops.tensor(a, ops.SIGMA_PLUS))
        + nu * b * b * ops.tensor(eye_f, eye_q)
    )
    rotating_part = -b * (nu * ops.tensor(ad, eye_q) + g * ops.tensor(eye_f, ops.SIGMA_PLUS))

    h_drive = 0.5 * model.omega * ops.tensor(eye_f, ops.SIGMA_Z + np.eye(2))
    h_neglected = model.omega * ops.tensor(ad @ a, eye_q)

    # N_exc is integer-valued: n for |n, down>, n+1 for |n, up>
    gen_diag = (np.diag(h_drive).real + np.diag(h_neglected).real) / model.omega
    frame_static = ops.tensor(ops.displacement(b, model.n_max), eye_q)

    return HamiltonianSet(
        model_kind="oscillator",
        model=model,
        dim=2 * fdim,
        field_dim=fdim,
        omega=model.omega,
        h_drive=h_drive,
        h_neglected=h_neglected,
        static_part=static_part,
        rotating_part=rotating_part,
        frame_static=frame_static,
        gen_diag=gen_diag,
    )
