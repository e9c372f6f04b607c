"""Acceptance criteria, one test per criterion.

Each test records PASS/FAIL with a short detail line in ``conftest.ACCEPTANCE``;
the lines are printed at the end of the pytest run.
"""
import itertools
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from nogo.born import all_tables, overlap_consistency
from nogo.config import load_config
from nogo.feasibility import assemble_problem, ch_battery, solve_feasibility, verify_witness
from nogo.scenarios import (
    ancilla_scenario,
    block_spectra,
    hardy_scenario,
    sweep_S,
    singlet_scenario,
)
from nogo.surfaces import Surface, check_no_signaling, effective_observable, state_on

from conftest import ACCEPTANCE, random_scenario

ROOT = Path(__file__).parent.parent
DATA = Path(__file__).parent / "data"
TOL = 1e-9
GRID = np.linspace(0.0, np.pi / 2, 1001)


def record(k, ok, detail):
    ACCEPTANCE[k] = (bool(ok), detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


@pytest.fixture(scope="module")
def random_suite():
    rng = np.random.default_rng(7)
    return [random_scenario(rng, "unitary" if k % 2 else "dephasing") for k in range(250)]


@pytest.fixture(scope="module")
def suite(random_suite):
    named = [("hardy", hardy_scenario()), ("ancilla", ancilla_scenario())]
    named += [(f"singlet phi={phi:.6f}", singlet_scenario(phi)) for phi in GRID[::10]]
    for cfg in ("hardy.yaml", "hardy_dephasing.yaml", "explicit_kraus.yaml"):
        named.append(load_config(DATA / cfg))
    named += [(f"random {k}", sc) for k, sc in enumerate(random_suite)]
    return named


def test_criterion_1_hardy_tables():
    t = all_tables(hardy_scenario())
    got = {
        "alpha ++": t[Surface.ALPHA].probs["+", "+"],
        "gamma ++": t[Surface.GAMMA].probs["+", "+"],
        "delta ++": t[Surface.DELTA].probs["+", "+"],
        "beta --": t[Surface.BETA].probs["-", "-"],
    }
    want = {"alpha ++": 1 / 12, "gamma ++": 0.0, "delta ++": 0.0, "beta --": 0.0}
    err = max(abs(got[k] - want[k]) for k in want)
    assert record(1, err <= 1e-12, f"max |error| {err:.2e} over the four cells")


def logical_oracle_mass(tables):
    """Mass that any joint must put on the zero beta(--) cell.

    The zeros gamma(++) and delta(++) force B1=- and B2=- whenever A1=A2=+,
    so alpha(++) must be carried entirely by beta(--)."""
    forced = [pt for pt in itertools.product("+-", repeat=4) if pt[0] == pt[1] == "+"]
    allowed = [pt for pt in forced if tables[Surface.GAMMA].probs[pt[2], pt[1]] > 1e-12
               and tables[Surface.DELTA].probs[pt[0], pt[3]] > 1e-12]
    assert all(pt[2] == pt[3] == "-" for pt in allowed)
    return tables[Surface.ALPHA].probs["+", "+"]


def test_criterion_2_hardy_verdict():
    tables = all_tables(hardy_scenario())
    v = solve_feasibility(assemble_problem(tables), TOL)
    oracle = logical_oracle_mass(tables)
    cert = v.certificate
    ok = (not v.feasible) and cert is not None and cert.violation >= 1 / 12 - 1e-9
    ok = ok and abs(oracle - 1 / 12) < 1e-12 and tables[Surface.BETA].probs["-", "-"] < 1e-12
    detail = f"status {v.status}, certificate violation {cert.violation if cert else float('nan'):.12f}, oracle mass {oracle:.12f}"
    assert record(2, ok, detail)


def test_criterion_3_supporting_parts():
    """The S(phi) parts of criterion 3 on the full grid, checked on their own."""
    closed = np.cos(GRID) ** 2 + 0.5 * np.sin(2 * GRID) ** 2
    s = np.array([sweep_S(all_tables(singlet_scenario(phi))) for phi in GRID])
    assert np.max(np.abs(s - closed)) <= 1e-10
    assert abs(sweep_S(all_tables(singlet_scenario(np.pi / 8))) - 1.1035533905932737) <= 1e-10
    # S itself exceeds 1 exactly on (0, pi/4)
    inner = (GRID > 1e-6) & (GRID < np.pi / 4 - 1e-6)
    outer = GRID > np.pi / 4 + 1e-6
    assert np.all(s[inner] > 1 + TOL) and np.all(s[outer] <= 1 + TOL)


@pytest.mark.xfail(
    strict=True,
    reason="the LP is also infeasible on (pi/4, pi/2); another CH form is violated there (see README)",
)
def test_criterion_3_singlet_sweep():
    closed = np.cos(GRID) ** 2 + 0.5 * np.sin(2 * GRID) ** 2
    s_err, wrong = 0.0, []
    for phi, c in zip(GRID, closed):
        tables = all_tables(singlet_scenario(phi))
        s_err = max(s_err, abs(sweep_S(tables) - c))
        if min(abs(phi), abs(phi - np.pi / 4)) <= 1e-6:
            continue
        expected_infeasible = 0 < phi < np.pi / 4
        feasible = solve_feasibility(assemble_problem(tables), TOL).feasible
        if feasible == expected_infeasible:
            wrong.append(phi)
    s8 = sweep_S(all_tables(singlet_scenario(np.pi / 8)))
    ok = s_err <= 1e-10 and abs(s8 - 1.1035533905932737) <= 1e-10 and not wrong
    detail = f"S error {s_err:.2e}, S(pi/8) {s8!r}, {len(wrong)} grid points with the wrong LP verdict"
    if wrong:
        detail += f" (phi in [{min(wrong):.6f}, {max(wrong):.6f}])"
    assert record(3, ok, detail)


def test_criterion_4_fine_equivalence(random_suite):
    disagree = infeasible = 0
    for sc in random_suite:
        tables = all_tables(sc)
        lp = solve_feasibility(assemble_problem(tables), TOL).feasible
        ch = all(not r.violated for r in ch_battery(tables, TOL))
        disagree += lp != ch
        infeasible += not lp
    n = len(random_suite)
    ok = n >= 200 and disagree == 0
    assert record(4, ok, f"{n} scenarios, {infeasible} infeasible, {disagree} disagreements")


def test_criterion_5_witness_soundness(suite):
    worst_res, worst_min, count = 0.0, 0.0, 0
    for _, sc in suite:
        prob = assemble_problem(all_tables(sc))
        v = solve_feasibility(prob, TOL)
        if v.feasible:
            rep = verify_witness(prob, v.witness)
            worst_res = max(worst_res, rep.max_residual)
            worst_min = min(worst_min, rep.min_entry)
            count += 1
    ok = count > 0 and worst_res < 1e-8 and worst_min > -1e-9
    assert record(5, ok, f"{count} witnesses, max residual {worst_res:.2e}, min entry {worst_min:.2e}")


def test_criterion_6_consistency(suite):
    ns_max = ov_max = 0.0
    for _, sc in suite:
        ns_max = max(ns_max, check_no_signaling(sc, 1e-10).max_deviation)
        ov_max = max(ov_max, overlap_consistency(all_tables(sc), 1e-10).max_deviation)
    ok = ns_max <= 1e-10 and ov_max <= 1e-10
    assert record(6, ok, f"{len(suite)} scenarios, no-signaling {ns_max:.2e}, overlap {ov_max:.2e}")


def test_criterion_7_expectation_bridge():
    rng = np.random.default_rng(17)
    worst = 0.0
    for kind in ("unitary", "dephasing"):
        for _ in range(50):
            sc = random_scenario(rng, kind)
            b1, a2 = sc.obs_beta[0], sc.obs_alpha[1]
            lhs = np.trace(state_on(sc, Surface.GAMMA).matrix @ np.kron(b1.operator(), a2.operator()))
            c1 = effective_observable(sc.channel_1, b1)
            rhs = np.trace(sc.rho_alpha.matrix @ np.kron(c1, a2.operator()))
            worst = max(worst, abs(lhs - rhs))
    assert record(7, worst <= 1e-10, f"100 scenarios, max |difference| {worst:.2e}")


def test_criterion_8_ancilla():
    sc = ancilla_scenario()
    sp = block_spectra(sc)
    v = solve_feasibility(assemble_problem(all_tables(sc)), TOL)
    ok = sp["min_gap"] > 1e-6 and not v.feasible
    assert record(8, ok, f"min gap {sp['min_gap']:.6f} on all four surfaces, status {v.status}")


def test_criterion_9_determinism():
    outputs = {}
    for cmd in (["hardy"], ["sweep"], ["hardy", "--format", "json"], ["sweep", "--format", "csv"]):
        runs = [
            subprocess.run([sys.executable, "-m", "nogo", *cmd], capture_output=True, cwd=ROOT, check=True).stdout
            for _ in range(2)
        ]
        outputs[" ".join(cmd)] = runs[0] == runs[1] and len(runs[0]) > 0
    ok = all(outputs.values())
    assert record(9, ok, ", ".join(f"{k}: {'identical' if v else 'differs'}" for k, v in outputs.items()))
