"""Wootters concurrence of two-qubit density matrices."""

import numpy as np

from .errors import InvalidDensityMatrix, NotXState
from .evolution import validate_density4
from .model import SIGMA_Y

SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y)

CLIP_TOL = 1e-9
REJECT_TOL = 1e-6
XSTATE_TOL = 1e-12

_X_MASK = np.eye(4, dtype=bool) | np.fliplr(np.eye(4, dtype=bool))


def spin_flip(rho) -> np.ndarray:
    """``(σʸ⊗σʸ) ρ* (σʸ⊗σʸ)``, conjugating in the ``ee, eg, ge, gg`` basis."""
    rho = np.asarray(rho, dtype=np.complex128)
    return SPIN_FLIP @ rho.conj() @ SPIN_FLIP


def rrtilde_eigenvalues(rho) -> np.ndarray:
    """Eigenvalues of ``ρ ρ̃`` sorted by decreasing real part (complex dtype)."""
    rho = np.asarray(rho, dtype=np.complex128)
    ev = np.linalg.eigvals(rho @ spin_flip(rho))
    return ev[np.argsort(-ev.real)]


def psd_factor(rho) -> np.ndarray:
    """``W`` with ``ρ = W W†`` by Cholesky with diagonal pivoting.

    Stops at the first non-positive pivot, treating the remaining Schur
    complement as zero.  Unlike an eigendecomposition, the backward error on
    each entry scales with ``√(ρii ρjj)``, so tiny populations stay tiny.
    """
    a = np.asarray(rho, dtype=np.complex128)
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    cols = []
    remaining = list(range(n))
    while remaining:
        diag = a[remaining, remaining].real
        k = remaining[int(np.argmax(diag))]
        pivot = a[k, k].real
        if pivot <= 0.0:
            break
        col = a[:, k] / np.sqrt(pivot)
        done = np.ones(n, dtype=bool)
        done[remaining] = False
        col[done] = 0.0
        cols.append(col)
        a = a - np.outer(col, col.conj())
        remaining.remove(k)
    if not cols:
        return np.zeros((n, 0), dtype=np.complex128)
    return np.column_stack(cols)


def sqrt_rrtilde_eigenvalues(rho) -> np.ndarray:
    """``√λi`` of ``ρ ρ̃`` in decreasing order.

    With ``ρ = W W†`` the nonzero eigenvalues of ``ρ ρ̃`` are the squared
    singular values of the symmetric matrix ``τ = Wᵀ (σʸ⊗σʸ) W``.  Reading
    ``√λi`` off as singular values avoids square-rooting eigenvalues that are
    zero up to roundoff.
    """
    w = psd_factor(rho)
    tau = w.T @ SPIN_FLIP @ w
    s = np.linalg.svd(tau, compute_uv=False) if tau.size else np.zeros(0)
    return np.concatenate([np.sort(s)[::-1], np.zeros(4 - s.size)])


def concurrence(rho, validate: bool = True) -> float:
    """Wootters concurrence ``max(0, √λ1 - √λ2 - √λ3 - √λ4)``.

    ``λi`` are the eigenvalues of ``ρ ρ̃`` in decreasing order; their square
    roots come from :func:`sqrt_rrtilde_eigenvalues`.

    Raises
    ------
    InvalidDensityMatrix
        If ``rho`` is not a valid density matrix, or if ``ρ ρ̃`` has an
        eigenvalue below ``-REJECT_TOL``.
    """
    if validate:
        rho = validate_density4(rho)
    lam = rrtilde_eigenvalues(rho).real
    if lam.min() < -REJECT_TOL:
        raise InvalidDensityMatrix(f"ρρ̃ has eigenvalue {lam.min():.3e}; input is not a valid state")
    roots = sqrt_rrtilde_eigenvalues(rho)
    c = roots[0] - roots[1] - roots[2] - roots[3]
    return float(min(max(0.0, c), 1.0))


def is_xstate(rho, tol: float = XSTATE_TOL) -> bool:
    rho = np.asarray(rho)
    return rho.shape == (4, 4) and bool(np.all(np.abs(rho[~_X_MASK]) <= tol))


def concurrence_xstate(rho) -> float:
    """Concurrence of an X-shaped state.

    ``2 max(0, |ρ14| - √(ρ22 ρ33), |ρ23| - √(ρ11 ρ44))`` (1-based indices).
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if not is_xstate(rho):
        raise NotXState("matrix has nonzero entries off the diagonal and anti-diagonal")
    d = np.clip(np.diag(rho).real, 0.0, None)
    c = 2.0 * max(
        0.0,
        abs(rho[0, 3]) - np.sqrt(d[1] * d[2]),
        abs(rho[1, 2]) - np.sqrt(d[0] * d[3]),
    )
    return float(min(c, 1.0))
