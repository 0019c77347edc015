"""Time evolution of the atoms + field and the reduced two-atom states.

Two independent routes are provided:

* numeric: ``U = exp(-i H_I t)`` from the eigendecomposition of the truncated
  interaction Hamiltonian, followed by a partial trace over the field;
* closed form: the 4x4 operator-valued propagator whose entries are
  functions of the photon-number operator, and the resulting analytic
  reduced matrices.

Notation: the symbol ``Ω`` is reserved for the plates' mechanical frequency.
The Rabi operator of the propagator is written ``rabi`` here,
``rabi² = 1/theta = 2 g² (2 a†a + 1)``.
"""

import numpy as np

from . import qops
from .errors import DimensionMismatch, InvalidDensityMatrix
from .model import (
    SystemParams,
    annihilation,
    build_initial_state,
    build_interaction_hamiltonian,
    excitation_numbers,
)

DENSITY_TOL = 1e-10

SQRT6 = np.sqrt(6.0)
SQRT2 = np.sqrt(2.0)


def validate_density4(rho, tol: float = DENSITY_TOL) -> np.ndarray:
    """Check that ``rho`` is a 4x4 Hermitian, unit-trace, PSD matrix and return it."""
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (4, 4):
        raise InvalidDensityMatrix(f"expected a 4x4 matrix, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise InvalidDensityMatrix("matrix has non-finite entries")
    herm = np.linalg.norm(rho - rho.conj().T)
    if herm > tol:
        raise InvalidDensityMatrix(f"not Hermitian: ‖ρ - ρ†‖ = {herm:.3e}")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > tol:
        raise InvalidDensityMatrix(f"trace is {tr!r}, expected 1")
    lowest = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0]
    if lowest < -tol:
        raise InvalidDensityMatrix(f"negative eigenvalue {lowest:.3e}")
    return rho


def interaction_propagator(p: SystemParams, gt: float) -> np.ndarray:
    return qops.unitary_propagator(build_interaction_hamiltonian(p), gt / p.g)


def propagate_numeric(rho0, p: SystemParams, gt: float) -> np.ndarray:
    """``U ρ0 U†`` with ``U = exp(-i H_I t)`` and ``t = gt / g``."""
    rho0 = qops.as_matrix(rho0)
    if rho0.shape != (p.dim, p.dim):
        raise DimensionMismatch(f"state has shape {rho0.shape}, model dimension is {p.dim}")
    u = interaction_propagator(p, gt)
    return u @ rho0 @ u.conj().T


def reduced_atoms_numeric(kind, p: SystemParams, gt: float) -> np.ndarray:
    rho = propagate_numeric(build_initial_state(kind, p), p, gt)
    return qops.partial_trace_field(rho, p.field_dim)


def analytic_rho_state1(gt: float, kz0: float = 0.0) -> np.ndarray:
    """Reduced atomic state at ``gt`` for the initial state ``(|ee>+|gg>)/√2 ⊗ |0>``."""
    c = np.cos(SQRT6 * gt)
    s2 = np.sin(SQRT6 * gt) ** 2
    rho = np.zeros((4, 4), dtype=np.complex128)
    rho[0, 0] = (c + 2.0) ** 2 / 18.0
    rho[0, 3] = rho[3, 0] = (c + 2.0) / 6.0
    rho[1, 1] = rho[2, 2] = s2 / 12.0
    rho[1, 2] = s2 / 12.0 * np.exp(-2j * kz0)
    rho[2, 1] = np.conj(rho[1, 2])
    rho[3, 3] = (c - 1.0) ** 2 / 9.0 + 0.5
    return rho


def analytic_rho_state2(gt: float, kz0: float = 0.0) -> np.ndarray:
    """Reduced atomic state at ``gt`` for the initial state ``|gg> ⊗ |1>``.

    The single-excitation coherence carries the phase ``exp(-2i k z0)``, the
    same phase as in :func:`analytic_rho_state1`.
    """
    s2 = np.sin(SQRT2 * gt) ** 2
    rho = np.zeros((4, 4), dtype=np.complex128)
    rho[1, 1] = rho[2, 2] = s2 / 2.0
    rho[1, 2] = s2 / 2.0 * np.exp(-2j * kz0)
    rho[2, 1] = np.conj(rho[1, 2])
    rho[3, 3] = np.cos(SQRT2 * gt) ** 2
    return rho


def closed_form_propagator(p: SystemParams, gt: float) -> np.ndarray:
    """Operator-valued 4x4 propagator assembled from functions of ``a†a``.

    With ``rabi² = 1/theta = 2g²(2a†a+1)``, ``C = theta cos(rabi t)`` and
    ``S = sin(rabi t)/rabi`` (all diagonal in the Fock basis), the blocks in
    the atomic order ``ee, eg, ge, gg`` are::

        2g² a(C-θ)a† + 1    -ig aS e^{iφ}          -ig aS e^{-iφ}         2g² a(C-θ)a
        -ig S a† e^{-iφ}    (cos+1)/2              (cos-1) e^{-2iφ}/2     -ig S a e^{-iφ}
        -ig S a† e^{iφ}     (cos-1) e^{2iφ}/2      (cos+1)/2              -ig S a e^{iφ}
        2g² a†(C-θ)a†       -ig a†S e^{iφ}         -ig a†S e^{-iφ}        2g² a†(C-θ)a + 1

    with ``φ = k z0``.  The ladder operators are the truncated ones, so the
    result equals ``exp(-i H_I t)`` on every excitation sector that fits in the
    truncated space (see :func:`closed_sector_mask`).
    """
    t = gt / p.g
    g = p.g
    n = np.arange(p.field_dim, dtype=float)
    rabi = np.sqrt(2.0 * g * g * (2.0 * n + 1.0))
    theta = np.diag(1.0 / rabi**2)
    c_minus_theta = np.diag(np.cos(rabi * t) / rabi**2) - theta
    s = np.diag(np.sin(rabi * t) / rabi)
    cos_op = np.diag(np.cos(rabi * t))
    a = annihilation(p.field_dim)
    ad = a.conj().T
    one = np.eye(p.field_dim)
    e = np.exp(1j * p.kz0)

    blocks = [
        [2 * g * g * a @ c_minus_theta @ ad + one, -1j * g * a @ s * e, -1j * g * a @ s / e,
         2 * g * g * a @ c_minus_theta @ a],
        [-1j * g * s @ ad / e, (cos_op + one) / 2, (cos_op - one) / e**2 / 2, -1j * g * s @ a / e],
        [-1j * g * s @ ad * e, (cos_op - one) * e**2 / 2, (cos_op + one) / 2, -1j * g * s @ a * e],
        [2 * g * g * ad @ c_minus_theta @ ad, -1j * g * ad @ s * e, -1j * g * ad @ s / e,
         2 * g * g * ad @ c_minus_theta @ a + one],
    ]
    return np.block(blocks).astype(np.complex128)


def closed_sector_mask(p: SystemParams) -> np.ndarray:
    """Boolean mask of basis states whose excitation sector is complete.

    Sector ``N`` is complete when it contains ``|gg, N>``, i.e. ``N <= n_max``.
    Sector ``n_max + 1`` loses ``|gg, n_max + 1>`` to the truncation, so the
    truncated Hamiltonian has a different spectrum there than the exact one.
    """
    return excitation_numbers(p) <= p.n_max


def restrict(m: np.ndarray, mask: np.ndarray) -> np.ndarray:
    return m[np.ix_(mask, mask)]
