"""Dense complex linear-algebra kernels.

All matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.
Every function here is pure and returns freshly allocated arrays.
"""

from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NonHermitianInput, NonSquare

HERMITIAN_TOL = 1e-10

N_ATOMIC = 4


class HermitianEigen(NamedTuple):
    """Eigenvalues (ascending) and unitary matrix of column eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m) -> np.ndarray:
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {arr.shape}")
    return arr


def _require_square(m: np.ndarray) -> None:
    if m.shape[0] != m.shape[1]:
        raise NonSquare(f"matrix must be square, got shape {m.shape}")


def dagger(m) -> np.ndarray:
    return as_matrix(m).conj().T


def kron(a, b) -> np.ndarray:
    """Kronecker product ``a ⊗ b``; dimensions multiply."""
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(*factors) -> np.ndarray:
    out = np.ones((1, 1), dtype=np.complex128)
    for f in factors:
        out = kron(out, f)
    return out


def commutator(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    return a @ b - b @ a


def hermiticity_error(h) -> float:
    h = as_matrix(h)
    _require_square(h)
    return float(np.linalg.norm(h - h.conj().T))


def hermitian_eig(h) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix.

    The input is symmetrised as ``(h + h†)/2`` before decomposition so that
    roundoff-level asymmetry does not leak into the eigenvectors.

    Raises
    ------
    NonSquare
        If ``h`` is not square.
    NonHermitianInput
        If ``‖h - h†‖_F`` exceeds ``HERMITIAN_TOL``.
    """
    h = as_matrix(h)
    _require_square(h)
    err = float(np.linalg.norm(h - h.conj().T))
    if err > HERMITIAN_TOL:
        raise NonHermitianInput(f"‖h - h†‖_F = {err:.3e} exceeds {HERMITIAN_TOL:.0e}")
    w, v = np.linalg.eigh(0.5 * (h + h.conj().T))
    return HermitianEigen(w, v)


def unitary_propagator(h, t: float) -> np.ndarray:
    """``exp(-i h t)`` for Hermitian ``h`` (ħ = 1), via the spectral decomposition."""
    w, v = hermitian_eig(h)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def partial_trace_field(rho_full, field_dim: int) -> np.ndarray:
    """Trace out the cavity field from an (atom A ⊗ atom B ⊗ field) operator.

    The composite index is ``atomic * field_dim + photons``, so the field is
    the fast (last) tensor factor.
    """
    rho = as_matrix(rho_full)
    _require_square(rho)
    if field_dim < 1 or rho.shape[0] != N_ATOMIC * field_dim:
        raise DimensionMismatch(
            f"operator of dimension {rho.shape[0]} is not {N_ATOMIC} x field_dim={field_dim}"
        )
    blocks = rho.reshape(N_ATOMIC, field_dim, N_ATOMIC, field_dim)
    return np.einsum("injn->ij", blocks)


def unitarity_error(u) -> float:
    u = as_matrix(u)
    _require_square(u)
    return float(np.linalg.norm(u @ u.conj().T - np.eye(u.shape[0])))
