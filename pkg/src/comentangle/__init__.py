"""Entanglement of two cavity-coupled two-level atoms with classical plate oscillation.

Core entry points are re-exported here; see the submodules for details.
"""

from .entanglement import concurrence, concurrence_xstate
from .evolution import (
    analytic_rho_state1,
    analytic_rho_state2,
    closed_form_propagator,
    propagate_numeric,
    reduced_atoms_numeric,
)
from .model import Scenario, SystemParams, build_free_hamiltonian, build_initial_state, build_interaction_hamiltonian
from .oscillator import ComFactor, OscillatorSpec, com_factor, density_w, plate_probability, trajectory
from .scenarios import ScenarioResult, concurrence_state1, concurrence_state2, verify_structure
from .sweep import SweepGrid, sweep_concurrence, sweep_factor

__version__ = "0.1.0"

__all__ = [
    "ComFactor",
    "OscillatorSpec",
    "Scenario",
    "ScenarioResult",
    "SweepGrid",
    "SystemParams",
    "analytic_rho_state1",
    "analytic_rho_state2",
    "build_free_hamiltonian",
    "build_initial_state",
    "build_interaction_hamiltonian",
    "closed_form_propagator",
    "com_factor",
    "concurrence",
    "concurrence_state1",
    "concurrence_state2",
    "concurrence_xstate",
    "density_w",
    "plate_probability",
    "propagate_numeric",
    "reduced_atoms_numeric",
    "sweep_concurrence",
    "sweep_factor",
    "trajectory",
    "verify_structure",
]
