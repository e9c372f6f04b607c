"""End-to-end runs: build a scenario, tabulate, check consistency, decide."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .born import MarginalTable, OverlapReport, all_tables, overlap_consistency
from .feasibility import (
    FEAS_TOL,
    Verdict,
    assemble_problem,
    ch_battery,
    four_term_value,
    solve_feasibility,
)
from .linalg import hermitian_eigensystem, partial_trace
from .objects import (
    BLOCKS,
    CORRELATED,
    MINUS,
    PLUS,
    ancilla_extend,
    block_hadamard_channel,
    hadamard_channel,
    hardy_jordan,
    pointer_observable,
    r_observable,
    rotation_channels,
    singlet,
)
from .surfaces import SURFACES, FourSurfaceScenario, NoSignalingReport, Surface, check_no_signaling, state_on

CONSISTENCY_TOL = 1e-10
NONZERO_EIG = 1e-10


@dataclass
class RunReport:
    scenario: str
    tables: dict[Surface, MarginalTable]
    no_signaling: NoSignalingReport
    overlap: OverlapReport
    verdict: Verdict
    ch_max: float | None
    forced: list[str] = field(default_factory=list)
    spectra: dict | None = None
    timing: float | None = None


@dataclass
class SweepRow:
    phi: float
    S: float
    max_ch: float
    lp_feasible: bool


@dataclass
class SweepReport:
    scenario: str
    rows: list[SweepRow]
    max_no_signaling: float
    max_overlap: float
    timing: float | None = None


def role_observables(obs1, obs2):
    """Name copies of the per-subsystem observables A1, A2 (alpha) and B1, B2 (beta)."""
    return (obs1.renamed("A1"), obs2.renamed("A2")), (obs1.renamed("B1"), obs2.renamed("B2"))


def hardy_scenario() -> FourSurfaceScenario:
    a, b = role_observables(r_observable(1), r_observable(2))
    return FourSurfaceScenario(
        hardy_jordan().density(), hadamard_channel(1), hadamard_channel(2), a, b
    )


def ancilla_scenario() -> FourSurfaceScenario:
    a, b = role_observables(pointer_observable(1), pointer_observable(2))
    return FourSurfaceScenario(
        ancilla_extend(hardy_jordan()).density(),
        block_hadamard_channel(1),
        block_hadamard_channel(2),
        a,
        b,
    )


def singlet_scenario(phi: float) -> FourSurfaceScenario:
    a, b = role_observables(r_observable(1), r_observable(2))
    c1, c2 = rotation_channels(phi)
    return FourSurfaceScenario(singlet().density(), c1, c2, a, b)


def forced_values(tables: dict[Surface, MarginalTable], tol: float = 1e-12) -> list[str]:
    """Implications 'X=x forces Y=y' read off zero cells of each table."""
    out = []
    for s in SURFACES:
        t = tables[s]
        o1, o2 = t.obs_pair
        for src, dst, key in ((o1, o2, lambda x, y: (x, y)), (o2, o1, lambda x, y: (y, x))):
            if len(dst.labels) < 2:
                continue
            for x in src.labels:
                support = [y for y in dst.labels if t.probs[key(x, y)] > tol]
                if len(support) == 1:
                    out.append(f"{src.name}={x} forces {dst.name}={support[0]} on {s.value}")
    return out


def sweep_S(tables: dict[Surface, MarginalTable]) -> float:
    """P(A1+,B2- | delta) + P(B1-,A2+ | gamma) + P(B1+,B2+ | beta) - P(A1+,A2+ | alpha)."""
    terms = [
        (Surface.DELTA, (PLUS, MINUS)),
        (Surface.GAMMA, (MINUS, PLUS)),
        (Surface.BETA, (PLUS, PLUS)),
        (Surface.ALPHA, (PLUS, PLUS)),
    ]
    return four_term_value(tables, terms, Surface.ALPHA)


def run_scenario(name: str, scenario: FourSurfaceScenario, tol: float = FEAS_TOL, timed: bool = False) -> RunReport:
    t0 = time.perf_counter()
    tables = all_tables(scenario)
    ns = check_no_signaling(scenario, CONSISTENCY_TOL)
    ov = overlap_consistency(tables, CONSISTENCY_TOL)
    verdict = solve_feasibility(assemble_problem(tables), tol)
    ch_max = None
    if all(len(o.labels) == 2 for t in tables.values() for o in t.obs_pair):
        ch_max = max(r.value for r in ch_battery(tables, tol))
    report = RunReport(name, tables, ns, ov, verdict, ch_max, forced_values(tables))
    if timed:
        report.timing = time.perf_counter() - t0
    return report


def run_hardy(tol: float = FEAS_TOL, timed: bool = False) -> RunReport:
    return run_scenario("hardy", hardy_scenario(), tol, timed)


def block_spectra(scenario: FourSurfaceScenario) -> dict:
    """Spectra of the reduced operators of each block on every surface.

    Reports the smallest gap between distinct nonzero eigenvalues and how far
    the nonzero eigenvectors stray outside span{|r+p+>, |r-p->}.
    """
    outside = [i for i in range(4) if i not in CORRELATED]
    spectra = {}
    min_gap = np.inf
    leak = 0.0
    for s in SURFACES:
        rho = state_on(scenario, s).matrix
        per = {}
        for k, block in ((1, "S1A1"), (2, "S2A2")):
            vals, vecs = hermitian_eigensystem(partial_trace(rho, scenario.layout, k))
            per[block] = [float(v) for v in vals]
            nz = vals > NONZERO_EIG
            if nz.sum() > 1:
                min_gap = min(min_gap, float(np.min(-np.diff(vals[nz]))))
            if nz.any():
                leak = max(leak, float(np.max(np.abs(vecs[np.ix_(outside, np.flatnonzero(nz))]))))
        spectra[s.value] = per
    return {"blocks": spectra, "min_gap": float(min_gap), "subspace_leak": leak}


def run_ancilla(tol: float = FEAS_TOL, timed: bool = False) -> RunReport:
    t0 = time.perf_counter()
    scenario = ancilla_scenario()
    report = run_scenario("ancilla", scenario, tol)
    report.spectra = block_spectra(scenario)
    if timed:
        report.timing = time.perf_counter() - t0
    return report


def sweep_grid(phi_min: float, phi_max: float, steps: int) -> np.ndarray:
    if steps < 2:
        raise ValueError("sweep needs at least 2 steps")
    if not phi_min < phi_max:
        raise ValueError(f"empty sweep range [{phi_min}, {phi_max}]")
    return np.linspace(phi_min, phi_max, steps)


def sweep_point(phi: float, tol: float = FEAS_TOL) -> tuple[SweepRow, float, float]:
    scenario = singlet_scenario(phi)
    tables = all_tables(scenario)
    ns = check_no_signaling(scenario, CONSISTENCY_TOL).max_deviation
    ov = overlap_consistency(tables, CONSISTENCY_TOL).max_deviation
    verdict = solve_feasibility(assemble_problem(tables), tol)
    max_ch = max(r.value for r in ch_battery(tables, tol))
    return SweepRow(float(phi), sweep_S(tables), max_ch, verdict.feasible), ns, ov


def run_singlet_sweep(
    phi_min: float = 0.0,
    phi_max: float = np.pi / 2,
    steps: int = 181,
    tol: float = FEAS_TOL,
    timed: bool = False,
) -> SweepReport:
    t0 = time.perf_counter()
    rows, ns_max, ov_max = [], 0.0, 0.0
    for phi in sweep_grid(phi_min, phi_max, steps):
        row, ns, ov = sweep_point(phi, tol)
        rows.append(row)
        ns_max, ov_max = max(ns_max, ns), max(ov_max, ov)
    report = SweepReport("singlet-sweep", rows, ns_max, ov_max)
    if timed:
        report.timing = time.perf_counter() - t0
    return report


def run_custom(path, tol: float = FEAS_TOL, timed: bool = False) -> RunReport:
    from .config import load_config

    name, scenario = load_config(path)
    return run_scenario(name, scenario, tol, timed)
