"""Two atoms in a single-mode cavity: Hilbert space, Hamiltonians, initial states.

Basis ordering is atom A ⊗ atom B ⊗ field.  The atomic factor uses the order
``|ee>, |eg>, |ge>, |gg>`` (index 0..3) and a single atom has ``|e>`` at
index 0 and ``|g>`` at index 1.  A basis state ``|ab, n>`` has the flat index
``atomic * (n_max + 1) + n``.

Units: ħ = 1 and times enter as the dimensionless product ``g t``.  The atoms
sit at ``z_A = -z0`` and ``z_B = +z0``, which shows up as the phases
``exp(∓i k z0)`` in the interaction.  The plates' centre-of-mass motion is
not represented here; it acts on its own tensor factor and is handled as a
classical probability in :mod:`comentangle.oscillator`.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import qops
from .errors import InvalidParameter, UnknownScenario

ATOMIC_LABELS = ("ee", "eg", "ge", "gg")
N_ATOMIC = qops.N_ATOMIC

# single-atom operators in the (|e>, |g>) basis
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=np.complex128)
SIGMA_MINUS = SIGMA_PLUS.T.copy()
SIGMA_Z = np.diag([1.0, -1.0]).astype(np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
ID2 = np.eye(2, dtype=np.complex128)


class Scenario(str, Enum):
    BELL_VACUUM = "bell-vacuum"
    GG_ONE = "gg-one"


def parse_scenario(kind) -> Scenario:
    if isinstance(kind, Scenario):
        return kind
    try:
        return Scenario(str(kind))
    except ValueError:
        names = ", ".join(s.value for s in Scenario)
        raise UnknownScenario(f"unknown scenario {kind!r}; expected one of: {names}") from None


@dataclass(frozen=True)
class SystemParams:
    """Dimensionless model parameters.

    Attributes
    ----------
    g : float
        Atom-field coupling rate.  Sets the unit of time; results depend on
        ``g t`` only.
    kz0 : float
        Phase ``k z0`` in radians.
    omega : float
        Common atom/cavity frequency in units of ``g`` (resonance is assumed).
        Only the free Hamiltonian uses it.
    n_max : int
        Largest photon number kept in the truncated Fock space.
    """

    g: float = 1.0
    kz0: float = 0.0
    omega: float = 1.0
    n_max: int = 4

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 2:
            raise InvalidParameter(
                f"n_max must be an integer >= 2 (the bell-vacuum sector reaches |gg, 2>), got {self.n_max}"
            )
        if not np.isfinite(self.g) or self.g <= 0:
            raise InvalidParameter(f"g must be positive, got {self.g}")
        if not (np.isfinite(self.kz0) and np.isfinite(self.omega)):
            raise InvalidParameter("kz0 and omega must be finite")

    @property
    def field_dim(self) -> int:
        return self.n_max + 1

    @property
    def dim(self) -> int:
        return N_ATOMIC * self.field_dim


@dataclass(frozen=True)
class BasisIndex:
    atom_a: str
    atom_b: str
    photons: int

    @property
    def atomic(self) -> int:
        return ATOMIC_LABELS.index(self.atom_a + self.atom_b)

    def flat(self, n_max: int) -> int:
        if not 0 <= self.photons <= n_max:
            raise InvalidParameter(f"photon number {self.photons} outside 0..{n_max}")
        return self.atomic * (n_max + 1) + self.photons

    @classmethod
    def from_flat(cls, index: int, n_max: int) -> "BasisIndex":
        atomic, photons = divmod(index, n_max + 1)
        if not 0 <= atomic < N_ATOMIC:
            raise InvalidParameter(f"flat index {index} outside 0..{N_ATOMIC * (n_max + 1) - 1}")
        label = ATOMIC_LABELS[atomic]
        return cls(label[0], label[1], photons)

    def __str__(self):
        return f"|{self.atom_a}{self.atom_b}, {self.photons}>"


def basis_state(label: str, photons: int, p: SystemParams) -> np.ndarray:
    v = np.zeros(p.dim, dtype=np.complex128)
    v[BasisIndex(label[0], label[1], photons).flat(p.n_max)] = 1.0
    return v


def annihilation(field_dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, field_dim)), k=1).astype(np.complex128)


def number_operator(field_dim: int) -> np.ndarray:
    return np.diag(np.arange(field_dim)).astype(np.complex128)


def excitation_numbers(p: SystemParams) -> np.ndarray:
    """Total excitation number (photons + excited atoms) of every basis state."""
    excited = np.array([label.count("e") for label in ATOMIC_LABELS])
    return (excited[:, None] + np.arange(p.field_dim)[None, :]).ravel()


def excitation_operator(p: SystemParams) -> np.ndarray:
    """``a†a + (σ_A^z + σ_B^z)/2 + 1`` as a diagonal matrix."""
    return np.diag(excitation_numbers(p)).astype(np.complex128)


def build_interaction_hamiltonian(p: SystemParams) -> np.ndarray:
    """Rotating-wave interaction ``g Σ_i [a σ_i⁺ e^{ikz_i} + a† σ_i⁻ e^{-ikz_i}]``.

    Uses the projected truncation ``P H P``: ``a†`` acting on ``|n_max>`` is
    dropped.
    """
    a = annihilation(p.field_dim)
    absorb_a = qops.kron_all(SIGMA_PLUS, ID2, a)  # a σ_A⁺
    absorb_b = qops.kron_all(ID2, SIGMA_PLUS, a)  # a σ_B⁺
    # z_A = -z0, z_B = +z0
    absorb = np.exp(-1j * p.kz0) * absorb_a + np.exp(1j * p.kz0) * absorb_b
    return p.g * (absorb + absorb.conj().T)


def build_free_hamiltonian(p: SystemParams) -> np.ndarray:
    """``ω/2 σ_A^z + ω/2 σ_B^z + ω a†a`` (diagonal)."""
    sz = np.diag(SIGMA_Z).real
    atomic = 0.5 * p.omega * (sz[:, None] + sz[None, :]).ravel()
    photons = p.omega * np.arange(p.field_dim)
    return np.diag((atomic[:, None] + photons[None, :]).ravel()).astype(np.complex128)


def build_initial_state(kind, p: SystemParams) -> np.ndarray:
    """Full atoms ⊗ field density matrix for one of the two initial states.

    ``bell-vacuum``: ``(|ee> + |gg>)/√2 ⊗ |0>``.
    ``gg-one``: ``|gg> ⊗ |1>``.
    """
    kind = parse_scenario(kind)
    if kind is Scenario.BELL_VACUUM:
        psi = (basis_state("ee", 0, p) + basis_state("gg", 0, p)) / np.sqrt(2.0)
    else:
        psi = basis_state("gg", 1, p)
    return np.outer(psi, psi.conj())
