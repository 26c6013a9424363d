"""Instantaneous eigenstructure of the rotating Hamiltonians.

Closed forms come from 2x2 block diagonalization: the static-frame
Hamiltonian conserves the excitation label (Jz + sigma_z/2 for the hybrid,
a^dag a + (sigma_z + 1)/2 for the oscillator), so it splits into two-state
blocks spanned by |m, up> and |m+1, down> plus one-dimensional edge blocks.
Each block is (trace/2) I + R (cos(alpha) sz +/- sin(alpha) sx) for a mixing
angle alpha, and the instantaneous eigenkets at time t are the frame image
of the static block eigenvectors. Tracking across t therefore never touches
a time-local diagonalizer and has no continuity ambiguity.

A dense numerical diagonalizer with explicit label bookkeeping
(:func:`numeric_eigensystem`) serves as the independent oracle the closed
forms are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh

from . import operators as ops
from .errors import EdgeBranchError, InvalidInputError, LabelingError
from .models import (
    HamiltonianSet,
    HybridModel,
    OscillatorModel,
    build_hybrid,
    build_oscillator,
)

__all__ = [
    "EigenBranch",
    "hybrid_eigensystem",
    "oscillator_eigensystem",
    "numeric_eigensystem",
    "all_branches",
    "hybrid_block_angle",
    "branch_alpha",
]

BRANCHES = ("+", "-")

# block kinds
_TOP, _BOTTOM, _INTERIOR = "top-edge", "bottom-edge", "interior"


@dataclass(frozen=True, eq=False)
class EigenBranch:
    """One instantaneous eigenstate family epsilon, |psi(t)>.

    index is the block label: m in [-(j+1), j] for hybrid blocks (pairing
    |m, up> with |m+1, down>) or n >= -1 for oscillator blocks. Edge indices
    (m = j, m = -(j+1), n = -1) carry exactly one branch and alpha = 0.
    """

    model_kind: str
    index: float
    branch: str
    alpha: float
    energy: float
    hset: HamiltonianSet
    static_ket: np.ndarray

    def ket_at(self, t: float) -> np.ndarray:
        """Instantaneous eigenket: the frame image of the static block vector."""
        return self.hset.frame_at(t) @ self.static_ket


def _check_branch(branch: str):
    if branch not in BRANCHES:
        raise InvalidInputError(f"branch must be '+' or '-', got {branch!r}")


def _hybrid_block_kind(model: HybridModel, m: float, branch: str) -> str:
    _check_branch(branch)
    j = model.j
    if abs((j - m) - round(j - m)) > 1e-9 or not (-(j + 1) - 1e-9 <= m <= j + 1e-9):
        raise InvalidInputError(f"block index m = {m} invalid for j = {j}")
    if abs(m - j) < 1e-9:
        if branch == "-":
            raise EdgeBranchError(f"edge m = j = {j} has only the '+' branch")
        return _TOP
    if abs(m + j + 1) < 1e-9:
        if branch == "+":
            raise EdgeBranchError(f"edge m = -(j+1) = {m} has only the '-' branch")
        return _BOTTOM
    return _INTERIOR


def _oscillator_block_kind(model: OscillatorModel, n: int, branch: str) -> str:
    _check_branch(branch)
    if not -1 <= n <= model.n_max - 1:
        raise InvalidInputError(
            f"block index n = {n} outside [-1, {model.n_max - 1}]"
        )
    if n == -1:
        if branch == "+":
            raise EdgeBranchError("edge n = -1 has only the '-' branch")
        return _BOTTOM
    return _INTERIOR


def hybrid_block_angle(model: HybridModel, m: float) -> float:
    """Mixing angle alpha_m = atan2(mu sqrt(j(j+1) - m(m+1)), B + mu(m + 1/2)).

    The two-argument form keeps alpha in [0, pi] when the denominator
    turns negative, where a bare arctan of the ratio would flip sign.
    """
    w = np.sqrt(max(model.j * (model.j + 1) - m * (m + 1), 0.0))
    return float(np.arctan2(model.mu * w, model.B + model.mu * (m + 0.5)))


def branch_alpha(model, index, branch: str) -> float:
    """Mixing angle of a validated (index, branch) block; 0 at edges.

    Dispatches on the model type: hybrid blocks use
    atan2(mu w, B + mu(m+1/2)); oscillator blocks use
    atan2(2 g sqrt(n+1), nu).
    """
    if isinstance(model, OscillatorModel):
        if _oscillator_block_kind(model, int(index), branch) == _BOTTOM:
            return 0.0
        return float(np.arctan2(2.0 * model.g * np.sqrt(int(index) + 1.0), model.nu))
    if _hybrid_block_kind(model, index, branch) != _INTERIOR:
        return 0.0
    return hybrid_block_angle(model, index)


def hybrid_eigensystem(model: HybridModel, m: float, branch: str,
                       hset: HamiltonianSet | None = None) -> EigenBranch:
    """Closed-form eigenbranch of the hybrid model at block index m.

    Interior blocks (-j <= m <= j-1) host both branches with energies
    mu/2 -+ sqrt(D^2 + mu^2 w^2), D = B + mu(m + 1/2),
    w = sqrt(j(j+1) - m(m+1)); kets are
    cos(a/2)|m,up> + sin(a/2)|m+1,down> (+) and
    sin(a/2)|m,up> - cos(a/2)|m+1,down> (-). Edges: m = j exists only as
    '+' (product state |j,up>, energy -(B + mu j)); m = -(j+1) only as '-'
    (|-j,down>, energy B - mu j).
    """
    kind = _hybrid_block_kind(model, m, branch)
    if hset is None:
        hset = build_hybrid(model)
    j = model.j
    ket = np.zeros(hset.dim, dtype=complex)

    def row_up(mm):
        return 2 * int(round(j - mm))

    def row_down(mm):
        return 2 * int(round(j - mm)) + 1

    if kind == _TOP:
        alpha = 0.0
        energy = -(model.B + model.mu * j)
        ket[row_up(j)] = 1.0
    elif kind == _BOTTOM:
        # overall sign of the lone down-state is pure gauge, dropped
        alpha = 0.0
        energy = model.B - model.mu * j
        ket[row_down(-j)] = 1.0
    else:
        alpha = hybrid_block_angle(model, m)
        d = model.B + model.mu * (m + 0.5)
        w = np.sqrt(j * (j + 1) - m * (m + 1))
        gap = np.hypot(d, model.mu * w)
        c, s = np.cos(alpha / 2.0), np.sin(alpha / 2.0)
        if branch == "+":
            energy = 0.5 * model.mu - gap
            ket[row_up(m)] = c
            ket[row_down(m + 1)] = s
        else:
            energy = 0.5 * model.mu + gap
            ket[row_up(m)] = s
            ket[row_down(m + 1)] = -c

    return EigenBranch(hset.model_kind, float(m), branch, float(alpha),
                       float(energy), hset, ket)


def oscillator_eigensystem(model: OscillatorModel, n: int, branch: str,
                           hset: HamiltonianSet | None = None) -> EigenBranch:
    """Closed-form eigenbranch of the displaced JC model at block index n.

    Interior blocks (0 <= n <= n_max - 1) mix |n,up> and |n+1,down> with
    tan(alpha_n) = 2 g sqrt(n+1) / nu and energies
    nu(n + 1/2) -+ sqrt(nu^2/4 + g^2 (n+1)); the lower branch '+' has ket
    cos(a/2)|n,up> - sin(a/2)|n+1,down>, the upper branch '-' has
    sin(a/2)|n,up> + cos(a/2)|n+1,down>. The edge n = -1 exists only as
    '-' with ket |0,down> and energy 0.
    """
    n = int(n)
    kind = _oscillator_block_kind(model, n, branch)
    if hset is None:
        hset = build_oscillator(model)

    ket = np.zeros(hset.dim, dtype=complex)
    if kind == _BOTTOM:
        alpha = 0.0
        energy = 0.0
        ket[1] = 1.0  # |0, down>
    else:
        alpha = branch_alpha(model, n, branch)
        gap = np.sqrt(0.25 * model.nu**2 + model.g**2 * (n + 1.0))
        c, s = np.cos(alpha / 2.0), np.sin(alpha / 2.0)
        if branch == "+":
            energy = model.nu * (n + 0.5) - gap
            ket[2 * n] = c          # |n, up>
            ket[2 * n + 3] = -s     # |n+1, down>
        else:
            energy = model.nu * (n + 0.5) + gap
            ket[2 * n] = s
            ket[2 * n + 3] = c

    return EigenBranch(hset.model_kind, float(n), branch, float(alpha),
                       float(energy), hset, ket)


def all_branches(hset: HamiltonianSet) -> list:
    """Every closed-form branch of a built model, edges included.

    For the oscillator the list spans the whole truncated space except the
    topmost |n_max, up> state, which has no partner below the cutoff.
    """
    out = []
    if hset.model_kind == "oscillator":
        model = hset.model
        out.append(oscillator_eigensystem(model, -1, "-", hset))
        for n in range(model.n_max):
            for br in BRANCHES:
                out.append(oscillator_eigensystem(model, n, br, hset))
    else:
        model = hset.model
        j = model.j
        out.append(hybrid_eigensystem(model, j, "+", hset))
        two_j = int(round(2 * j))
        for k in range(two_j):
            m = -j + k  # interior m = -j .. j-1
            for br in BRANCHES:
                out.append(hybrid_eigensystem(model, m, br, hset))
        out.append(hybrid_eigensystem(model, -(j + 1), "-", hset))
    return out


def numeric_eigensystem(h: np.ndarray, conserved_label: np.ndarray,
                        block_tol: float = 1e-9):
    """Label-resolved dense diagonalization, the oracle for the closed forms.

    Parameters
    ----------
    h : hermitian ComplexMatrix
    conserved_label : hermitian ComplexMatrix commuting with h
        (Jz + sigma_z/2 for the hybrid, a^dag a + (sigma_z+1)/2 for the
        oscillator).

    Returns
    -------
    list of (eigenvalue, eigenvector, label)
        Sorted by label, then eigenvalue. Eigenvectors are gauge fixed:
        first component of magnitude > 1e-8 made real positive.

    Raises
    ------
    InvalidInputError
        If h is not hermitian.
    LabelingError
        If h couples distinct label eigenspaces beyond block_tol * ||h||.
    """
    h = np.asarray(h, dtype=complex)
    lab = np.asarray(conserved_label, dtype=complex)
    hnorm = np.linalg.norm(h, 2)
    if np.max(np.abs(h - h.conj().T)) > 1e-10 * max(1.0, hnorm):
        raise InvalidInputError("matrix is not hermitian")

    lam, v = eigh(lab)
    # cluster label eigenvalues into degenerate groups
    groups = []
    for i in np.argsort(lam):
        if groups and abs(lam[i] - lam[groups[-1][0]]) < 1e-6:
            groups[-1].append(i)
        else:
            groups.append([i])

    ht = v.conj().T @ h @ v
    mask = np.ones_like(ht, dtype=bool)
    for g in groups:
        mask[np.ix_(g, g)] = False
    off = np.max(np.abs(ht[mask])) if mask.any() else 0.0
    if off > block_tol * max(hnorm, 1e-300):
        raise LabelingError(
            f"label couples distinct eigenspaces: off-block weight {off:.3g}"
        )

    out = []
    for g in groups:
        sub = ht[np.ix_(g, g)]
        w, u = eigh(0.5 * (sub + sub.conj().T))
        vecs = v[:, g] @ u
        label = float(np.mean(lam[g]).real)
        for k in range(len(g)):
            out.append((float(w[k]), ops.gauge_fix(vecs[:, k]), label))
    out.sort(key=lambda rec: (rec[2], rec[0]))
    return out
