"""End-to-end concurrences for the two initial states, and the oracle suite.

The centre-of-mass factor multiplies the concurrence of the bare (normalised)
reduced state, which keeps the reduced matrices valid density matrices.
"""

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import qops
from .entanglement import concurrence, concurrence_xstate
from .evolution import (
    SQRT2,
    SQRT6,
    analytic_rho_state1,
    analytic_rho_state2,
    closed_form_propagator,
    closed_sector_mask,
    interaction_propagator,
    reduced_atoms_numeric,
    restrict,
)
from .model import (
    Scenario,
    SystemParams,
    build_free_hamiltonian,
    build_interaction_hamiltonian,
    parse_scenario,
)
from .oscillator import (
    OscillatorSpec,
    com_factor,
    integrate_density,
    plate_probability,
    plate_probability_quadrature,
)

ANALYTIC_RHO = {
    Scenario.BELL_VACUUM: analytic_rho_state1,
    Scenario.GG_ONE: analytic_rho_state2,
}


@dataclass(frozen=True)
class ScenarioResult:
    scenario: str
    gt: float
    bare_concurrence: float
    k_factor: float
    corrected_concurrence: float

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "gt": self.gt,
            "bare": self.bare_concurrence,
            "k": self.k_factor,
            "corrected": self.corrected_concurrence,
        }


def bare_state1(gt):
    """Concurrence of the bare bell-vacuum state, ``((cos √6gt + 1)² + 2) / 6``."""
    c = np.cos(SQRT6 * gt)
    return ((c + 1.0) ** 2 + 2.0) / 6.0


def bare_state1_printed(gt):
    """The same quantity as ``2[(cos √6gt + 2)/6 - sin² √6gt / 12]``."""
    return 2.0 * ((np.cos(SQRT6 * gt) + 2.0) / 6.0 - np.sin(SQRT6 * gt) ** 2 / 12.0)


def bare_state2(gt):
    return np.sin(SQRT2 * gt) ** 2


def _scenario_concurrence(kind: Scenario, gt, spec1, spec2, kz0) -> ScenarioResult:
    k = com_factor(spec1, spec2).k
    bare = concurrence_xstate(ANALYTIC_RHO[kind](gt, kz0))
    return ScenarioResult(kind.value, float(gt), bare, k, bare * k)


def concurrence_state1(gt: float, spec1: OscillatorSpec, spec2: OscillatorSpec, kz0: float = 0.0) -> ScenarioResult:
    return _scenario_concurrence(Scenario.BELL_VACUUM, gt, spec1, spec2, kz0)


def concurrence_state2(gt: float, spec1: OscillatorSpec, spec2: OscillatorSpec, kz0: float = 0.0) -> ScenarioResult:
    return _scenario_concurrence(Scenario.GG_ONE, gt, spec1, spec2, kz0)


def scenario_concurrence(kind, gt, spec1, spec2, kz0=0.0) -> ScenarioResult:
    return _scenario_concurrence(parse_scenario(kind), gt, spec1, spec2, kz0)


# -- verification ------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.max_deviation <= self.tolerance)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


@dataclass
class VerificationReport:
    params: dict
    samples: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "params": self.params,
            "samples": self.samples,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _propagator_deviation(p: SystemParams, gt: float) -> tuple:
    mask = closed_sector_mask(p)
    exact = restrict(interaction_propagator(p, gt), mask)
    closed = restrict(closed_form_propagator(p, gt), mask)
    return float(np.linalg.norm(closed - exact)), qops.unitarity_error(closed)


def _state_deviations(p: SystemParams, gt: float) -> tuple:
    dev_rho = []
    dev_c = []
    for kind, analytic in ANALYTIC_RHO.items():
        numeric = reduced_atoms_numeric(kind, p, gt)
        exact = analytic(gt, p.kz0)
        dev_rho.append(float(np.linalg.norm(numeric - exact)))
        for rho in (numeric, exact):
            dev_c.append(abs(concurrence(rho) - concurrence_xstate(rho)))
    return tuple(dev_rho), max(dev_c)


def _sample_specs(rng: np.random.Generator, count: int) -> list:
    specs = []
    for _ in range(count):
        r = rng.uniform(1e-3, 0.999)
        delta = rng.uniform(0.0, np.arcsin(1.0 - r))
        n = int(rng.integers(0, 50))
        specs.append(OscillatorSpec(r=r, delta=delta, n=n))
    return specs


def verify_structure(
    p: SystemParams,
    samples: int = 50,
    tol: float = 1e-9,
    seed: int = 0,
    kz0_values=(0.0, 0.7),
    gt_max: float = 4 * np.pi,
    workers: int = 1,
) -> VerificationReport:
    """Run the numeric-vs-closed-form oracle checks and report max deviations.

    Checks cover the commutator ``[H0, H_I]``, the closed-form propagator
    (distance and unitarity on the complete excitation sectors), numeric vs
    analytic reduced states for both initial states, general vs X-state
    concurrence, and the oscillator closed form vs quadrature.  Failures are
    reported, not raised.

    ``gt`` samples are drawn once from ``seed``; the result does not depend
    on ``workers``.
    """
    rng = np.random.default_rng(seed)
    gts = rng.uniform(0.0, gt_max, size=samples)
    kz0s = sorted(set(float(k) for k in kz0_values) | {float(p.kz0)})
    points = [SystemParams(g=p.g, kz0=k, omega=p.omega, n_max=p.n_max) for k in kz0s]
    jobs = [(q, gt) for q in points for gt in gts]

    def run(job):
        q, gt = job
        return _propagator_deviation(q, gt), _state_deviations(q, gt)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(j) for j in jobs]

    comm = max(
        float(np.linalg.norm(qops.commutator(build_free_hamiltonian(q), build_interaction_hamiltonian(q))))
        for q in points
    )
    prop_dist = max((r[0][0] for r in results), default=0.0)
    prop_unit = max((r[0][1] for r in results), default=0.0)
    rho1 = max((r[1][0][0] for r in results), default=0.0)
    rho2 = max((r[1][0][1] for r in results), default=0.0)
    conc = max((r[1][1] for r in results), default=0.0)

    specs = _sample_specs(rng, max(samples, 1) * 2)
    quad = max(abs(plate_probability(s) - plate_probability_quadrature(s)) for s in specs)
    norm = max(
        abs(integrate_density(-np.sqrt(2 * n + 1), np.sqrt(2 * n + 1), n) - 1.0) for n in (0, 1, 5)
    )

    report = VerificationReport(
        params={"g": p.g, "omega": p.omega, "n_max": p.n_max, "kz0": kz0s, "seed": seed},
        samples=samples,
    )
    report.checks = [
        CheckResult("commutator_h0_hi", comm, tol),
        CheckResult("closed_form_propagator_distance", prop_dist, tol),
        CheckResult("closed_form_propagator_unitarity", prop_unit, tol),
        CheckResult("rho_numeric_vs_analytic_bell_vacuum", rho1, tol),
        CheckResult("rho_numeric_vs_analytic_gg_one", rho2, tol),
        CheckResult("concurrence_general_vs_xstate", conc, tol),
        CheckResult("plate_probability_vs_quadrature", quad, tol),
        CheckResult("density_normalization", norm, tol),
    ]
    return report
