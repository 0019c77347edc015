"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line with the measured value and
the tolerance.  Run with ``pytest tests/test_acceptance.py -s`` to see them.
"""

import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from comentangle import qops
from comentangle.cli import main
from comentangle.entanglement import concurrence, concurrence_xstate
from comentangle.evolution import (
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
from comentangle.gridio import read_grid
from comentangle.model import Scenario, SystemParams, build_free_hamiltonian, build_interaction_hamiltonian
from comentangle.oscillator import (
    OscillatorSpec,
    com_factor,
    integrate_density,
    max_phase,
    plate_probability,
    plate_probability_quadrature,
)
from comentangle.scenarios import scenario_concurrence
from comentangle.sweep import sweep_factor

R = 0.05
K_MAX_CLOSED = (math.pi / 2 - math.asin(0.95)) ** 2 / math.pi**2
SEED = 7


def report(number, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
    assert ok, detail


def specs_at(delta1, delta2, r=R):
    return OscillatorSpec(r, delta1), OscillatorSpec(r, delta2)


def test_criterion_01_k_maximum():
    t0 = time.perf_counter()
    dmax = max_phase(R)
    k = com_factor(*specs_at(dmax, dmax)).k
    elapsed = time.perf_counter() - t0
    closed_err = abs(k - K_MAX_CLOSED)
    target_rel = abs(k - 0.01) / 0.01
    ok = closed_err <= 1e-6 and target_rel <= 0.15 and abs(dmax - 1.2532) < 1e-4 and elapsed < 0.1
    report(
        1,
        ok,
        f"K_max={k:.6g} at delta={dmax:.5f}; |K-closed|={closed_err:.1e} (tol 1e-6); "
        f"|K-0.01|/0.01={target_rel:.3f} (tol 0.15); {elapsed * 1e3:.2f} ms",
    )


def test_criterion_02_three_orders_reduction():
    t0 = time.perf_counter()
    grid = sweep_factor(R, 101)
    elapsed = time.perf_counter() - t0
    lo, hi = float(grid.values.min()), float(grid.values.max())
    ok = 2.5e-4 <= lo and hi <= 1.1e-2 and elapsed < 1.0
    report(2, ok, f"K in [{lo:.4e}, {hi:.4e}] within [2.5e-4, 1.1e-2] on 101x101; {elapsed:.3f} s (limit 1 s)")


def test_criterion_03_oracle_equivalence():
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED)
    gts = rng.uniform(0.0, 4 * math.pi, size=50)
    analytic = {Scenario.BELL_VACUUM: analytic_rho_state1, Scenario.GG_ONE: analytic_rho_state2}
    dev_rho = dev_c = 0.0
    for kz0 in (0.0, 0.7):
        p = SystemParams(kz0=kz0, n_max=4)
        for gt in gts:
            for kind, rho_fn in analytic.items():
                numeric = reduced_atoms_numeric(kind, p, gt)
                exact = rho_fn(gt, kz0)
                dev_rho = max(dev_rho, float(np.linalg.norm(numeric - exact)))
                for rho in (numeric, exact):
                    dev_c = max(dev_c, abs(concurrence(rho) - concurrence_xstate(rho)))
    elapsed = time.perf_counter() - t0
    ok = dev_rho <= 1e-10 and dev_c <= 1e-10 and elapsed < 5.0
    report(
        3,
        ok,
        f"max |rho_analytic - rho_numeric|_F={dev_rho:.1e}, max |C_general - C_X|={dev_c:.1e} "
        f"(tol 1e-10); {elapsed:.2f} s (limit 5 s)",
    )


def _propagator_points():
    rng = np.random.default_rng(SEED + 1)
    return zip(rng.uniform(0.0, 4 * math.pi, 25), rng.uniform(0.0, 2 * math.pi, 25))


def test_criterion_04_closed_form_propagator():
    # the top sector N = n_max + 1 is cut by the truncation; compared on N <= n_max
    dist = unit = full = 0.0
    for gt, kz0 in _propagator_points():
        p = SystemParams(kz0=kz0, n_max=4)
        mask = closed_sector_mask(p)
        exact = interaction_propagator(p, gt)
        closed = closed_form_propagator(p, gt)
        dist = max(dist, float(np.linalg.norm(restrict(closed, mask) - restrict(exact, mask))))
        unit = max(unit, qops.unitarity_error(restrict(closed, mask)))
        full = max(full, float(np.linalg.norm(closed - exact)))
    ok = dist <= 1e-10 and unit <= 1e-11
    report(
        4,
        ok,
        f"complete sectors: distance={dist:.1e} (tol 1e-10), unitarity={unit:.1e} (tol 1e-11); "
        f"full matrix incl. truncated sector: distance={full:.2f}",
    )


@pytest.mark.xfail(strict=True, reason="the truncated top excitation sector has no closed-form counterpart")
def test_criterion_04_full_matrix_literal():
    dist = 0.0
    for gt, kz0 in _propagator_points():
        p = SystemParams(kz0=kz0, n_max=4)
        dist = max(dist, float(np.linalg.norm(closed_form_propagator(p, gt) - interaction_propagator(p, gt))))
    assert dist <= 1e-10


def test_criterion_05_commutation():
    dev = 0.0
    for kz0 in (0.0, 0.7):
        p = SystemParams(kz0=kz0, omega=1.0, n_max=4)
        dev = max(dev, float(np.linalg.norm(qops.commutator(build_free_hamiltonian(p), build_interaction_hamiltonian(p)))))
    report(5, dev <= 1e-12, f"||[H0, H_I]||_F={dev:.1e} (tol 1e-12)")


def test_criterion_06_quadrature():
    rng = np.random.default_rng(SEED + 2)
    dev = 0.0
    for _ in range(100):
        r = rng.uniform(1e-3, 0.999)
        spec = OscillatorSpec(r, rng.uniform(0.0, max_phase(r)), int(rng.integers(0, 100)))
        dev = max(dev, abs(plate_probability(spec) - plate_probability_quadrature(spec)))
    norm = max(abs(integrate_density(-math.sqrt(2 * n + 1), math.sqrt(2 * n + 1), n) - 1.0) for n in (0, 1, 5))
    ok = dev <= 1e-8 and norm <= 1e-8
    report(6, ok, f"closed form vs quadrature={dev:.1e}, |integral w - 1|={norm:.1e} (tol 1e-8)")


def test_criterion_07_fig2(tmp_path, capsys):
    csv_path, svg_path = tmp_path / "fig2.csv", tmp_path / "fig2.svg"
    t0 = time.perf_counter()
    code = main(["sweep", "--preset", "fig2", "-o", str(csv_path), "--svg", str(svg_path)])
    elapsed = time.perf_counter() - t0
    capsys.readouterr()
    v = read_grid(csv_path).values
    symmetric = np.array_equal(v, v.T)
    increasing = bool(np.all(np.diff(v, axis=0) > 0) and np.all(np.diff(v, axis=1) > 0))
    corner, origin = v[-1, -1], v[0, 0]
    ok = (
        code == 0
        and symmetric
        and increasing
        and corner == v.max()
        and origin == v.min()
        and abs(corner - 0.01022) < 5e-6
        and abs(origin - 2.535e-4) < 5e-8
        and svg_path.read_text().startswith("<?xml")
        and elapsed < 2.0
    )
    report(
        7,
        ok,
        f"symmetric={symmetric}, strictly increasing={increasing}, corner={corner:.6g}, origin={origin:.6g}; "
        f"CSV+SVG {elapsed:.2f} s (limit 2 s)",
    )


def test_criterion_08_fig3_shape():
    tol = 1e-9
    dmax = max_phase(R)
    deltas = np.linspace(0.0, dmax, 21)
    gts = np.linspace(0.0, 4 * math.pi, 401)
    period = 2 * math.pi / SQRT6
    worst = 0.0
    ok = True
    for delta in deltas:
        s = OscillatorSpec(R, delta)
        k = com_factor(s, s).k

        c1 = np.array([scenario_concurrence(Scenario.BELL_VACUUM, gt, s, s).corrected_concurrence for gt in gts])
        shifted = np.array(
            [scenario_concurrence(Scenario.BELL_VACUUM, gt + period, s, s).corrected_concurrence for gt in gts]
        )
        worst = max(worst, float(np.max(np.abs(shifted - c1))))
        trough = scenario_concurrence(Scenario.BELL_VACUUM, period / 2, s, s).corrected_concurrence
        worst = max(worst, abs(trough - k / 3), abs(c1[0] - k))
        ok &= bool(np.all(c1 >= k / 3 - tol) and np.all(c1 <= k + tol) and c1.min() > 0)

        c2 = np.array([scenario_concurrence(Scenario.GG_ONE, gt, s, s).corrected_concurrence for gt in gts])
        ok &= bool(np.all(c2 >= 0) and np.all(c2 <= k + tol))
        for m in range(1, 5):
            zero = scenario_concurrence(Scenario.GG_ONE, m * math.pi / SQRT2, s, s).corrected_concurrence
            peak = scenario_concurrence(Scenario.GG_ONE, (m - 0.5) * math.pi / SQRT2, s, s).corrected_concurrence
            worst = max(worst, zero, abs(peak - k))

    monotone = True
    for kind in Scenario:
        for gt in gts[::20]:
            col = [scenario_concurrence(kind, gt, OscillatorSpec(R, d), OscillatorSpec(R, d)).corrected_concurrence
                   for d in deltas]
            monotone &= bool(np.all(np.diff(col) >= -tol))
    ok = ok and monotone and worst <= tol
    report(
        8,
        ok,
        f"bounds hold={ok}, monotone in delta={monotone}, "
        f"max period/zero/extremum deviation={worst:.1e} (tol 1e-9)",
    )


def test_criterion_09_kz0_independence():
    rng = np.random.default_rng(SEED + 3)
    s1, s2 = specs_at(0.4, 1.1)
    dev = 0.0
    for kind in Scenario:
        for gt in rng.uniform(0.0, 4 * math.pi, 25):
            vals = [scenario_concurrence(kind, gt, s1, s2, kz0).corrected_concurrence
                    for kz0 in (0.0, 0.7, math.pi / 3, 2 * math.pi)]
            dev = max(dev, max(vals) - min(vals))
            numeric = [concurrence(reduced_atoms_numeric(kind, SystemParams(kz0=kz0), gt))
                       for kz0 in (0.0, 0.7, math.pi / 3, 2 * math.pi)]
            dev = max(dev, max(numeric) - min(numeric))
    report(9, dev <= 1e-12, f"max spread over kz0 in {{0, 0.7, pi/3, 2pi}}={dev:.1e} (tol 1e-12)")


def test_criterion_10_amplitude_invariance():
    ns = [0, 1, 2, 7, 100, 12345, 999_999, 1_000_000]
    identical = True
    for r in (R, 0.3, 0.8):
        for delta in (0.0, 0.5 * max_phase(r), max_phase(r)):
            ref = com_factor(OscillatorSpec(r, delta, 0), OscillatorSpec(r, delta, 0))
            for n1 in ns:
                for n2 in ns[::3]:
                    identical &= com_factor(OscillatorSpec(r, delta, n1), OscillatorSpec(r, delta, n2)) == ref
    # (n, zeta) with 2n+1 = m^2 and dyadic r: zeta / sqrt(2n+1) recovers r exactly
    r = 0.0625
    ref = com_factor(OscillatorSpec(r, 0.3), OscillatorSpec(r, 0.3))
    for m in (1, 3, 5, 101, 1413):
        n = (m * m - 1) // 2
        spec = OscillatorSpec.from_displacement(n, r * m, 0.3)
        identical &= com_factor(spec, spec) == ref
    report(10, identical, f"com_factor bit-identical across n in [0, 1e6] at fixed r: {identical}")


def test_criterion_11_verify_cli():
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "comentangle", "verify"], capture_output=True, text=True)
    elapsed = time.perf_counter() - t0
    checks = json.loads(proc.stdout)["checks"] if proc.returncode in (0, 1) else []
    worst = max((c["max_deviation"] for c in checks), default=float("nan"))
    ok = proc.returncode == 0 and elapsed < 10.0
    report(11, ok, f"exit={proc.returncode}, {len(checks)} checks, worst deviation={worst:.1e}; {elapsed:.2f} s (limit 10 s)")
