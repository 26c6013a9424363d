"""Finite-dimensional operator algebra: spin-j, Pauli, and truncated boson.

Basis conventions, fixed once for every module and every file emitted:

* spin-j basis ordered by m descending, ``m = j, j-1, ..., -j``;
* Fock basis ordered by n ascending, ``n = 0, 1, ..., n_max``;
* qubit basis ordered up then down;
* composite spaces are field factor (x) qubit factor, see :func:`tensor`.

Everything is a dense complex ndarray. Dimensions in this problem stay at a
few hundred, so sparsity machinery would be unjustified complexity.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import expm

from .errors import InvalidInputError, InvalidParameterError

__all__ = [
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "SIGMA_PLUS",
    "SIGMA_MINUS",
    "spin_matrices",
    "boson_operators",
    "displacement",
    "tensor",
    "reduced_density_matrix",
    "gauge_fix",
    "wrap_angle",
    "circular_distance",
]

# Pauli matrices in the (up, down) basis.
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)  # |up><down|
SIGMA_MINUS = SIGMA_PLUS.conj().T


def _check_half_integer(j) -> int:
    two_j = 2.0 * j
    if two_j < 0 or abs(two_j - round(two_j)) > 1e-12:
        raise InvalidParameterError(f"j must be a nonnegative half-integer, got {j}")
    return int(round(two_j))


def spin_matrices(j):
    """Angular-momentum matrices (Jx, Jy, Jz) for spin j.

    Parameters
    ----------
    j : float
        Nonnegative half-integer. j=0 yields 1x1 zero matrices.

    Returns
    -------
    (Jx, Jy, Jz) : tuple of complex ndarray, shape (2j+1, 2j+1)
        Standard matrices in the Jz eigenbasis ordered m = j, j-1, ..., -j.
    """
    two_j = _check_half_integer(j)
    dim = two_j + 1
    m = j - np.arange(dim)
    jz = np.diag(m).astype(complex)
    jp = np.zeros((dim, dim), dtype=complex)
    for k in range(1, dim):
        # J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>; column k holds m = m[k]
        jp[k - 1, k] = np.sqrt(j * (j + 1) - m[k] * (m[k] + 1))
    jm = jp.conj().T
    jx = (jp + jm) / 2.0
    jy = (jp - jm) / 2.0j
    return jx, jy, jz


def boson_operators(n_max: int):
    """Truncated annihilation/creation pair (a, a_dagger) on n = 0..n_max.

    The truncated commutator [a, a+] equals identity except in the
    bottom-right corner; that defect is quantified by callers through
    truncation-doubling checks, never hidden.
    """
    if n_max < 1:
        raise InvalidParameterError(f"n_max must be >= 1, got {n_max}")
    a = np.zeros((n_max + 1, n_max + 1), dtype=complex)
    for n in range(1, n_max + 1):
        a[n - 1, n] = np.sqrt(n)
    return a, a.conj().T


def displacement(beta, n_max: int):
    """Displacement operator exp(beta a+ - beta* a) on the truncated Fock space.

    Unitary within truncation tolerance provided |beta|^2 << n_max.
    """
    a, ad = boson_operators(n_max)
    return expm(beta * ad - np.conj(beta) * a)


def tensor(a, b):
    """Kronecker product, field factor first, qubit factor second."""
    return np.kron(a, b)


def reduced_density_matrix(state, field_dim: int, keep: str = "qubit"):
    """Partial trace of a pure field-qubit state.

    Parameters
    ----------
    state : complex ndarray, shape (2*field_dim,)
        Pure state on field (x) qubit, amplitudes in the tensor ordering
        of :func:`tensor`.
    field_dim : int
        Dimension of the field factor.
    keep : {"qubit", "field"}
        Which factor survives the trace.

    Returns
    -------
    rho : complex ndarray
        (2, 2) for keep="qubit", (field_dim, field_dim) for keep="field".
    """
    state = np.asarray(state, dtype=complex)
    if state.shape != (2 * field_dim,):
        raise InvalidInputError(
            f"state has dim {state.shape}, expected ({2 * field_dim},)"
        )
    m = state.reshape(field_dim, 2)
    if keep == "qubit":
        # rho[s, s'] = sum_n psi_{n s} conj(psi_{n s'})
        return m.T @ m.conj()
    if keep == "field":
        return m @ m.conj().T
    raise InvalidInputError(f"keep must be 'qubit' or 'field', got {keep!r}")


def gauge_fix(vec, tol: float = 1e-8):
    """Return vec rescaled by a phase so its first significant component
    is real and positive. Significant means magnitude > tol."""
    vec = np.asarray(vec, dtype=complex)
    for c in vec:
        if abs(c) > tol:
            return vec * (np.conj(c) / abs(c))
    return vec.copy()


def wrap_angle(x):
    """Wrap angle(s) to the half-open interval (-pi, pi]."""
    return np.pi - np.mod(np.pi - np.asarray(x), 2.0 * np.pi)


def circular_distance(a, b):
    """Distance between two angles on the circle, in [0, pi]."""
    return np.abs(wrap_angle(np.asarray(a) - np.asarray(b)))
