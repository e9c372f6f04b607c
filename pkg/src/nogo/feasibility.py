"""Does one joint distribution over (A1, A2, B1, B2) reproduce all four tables?

The question is decided two ways: a phase-one simplex on the marginal
equations, and, for binary observables, a battery of four-term CH-type
inequalities.  For two binary observables per side these agree (Fine).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .born import MarginalTable, overlap_consistency
from .simplex import phase_one
from .surfaces import SURFACES, Surface

FEAS_TOL = 1e-9
MARGINAL_BAND = 1e-6
ROLES = ("A1", "A2", "B1", "B2")

# which roles (positions in the quadruple a1, a2, b1, b2) each table fixes
_TABLE_ROLES = {
    Surface.ALPHA: (0, 1),
    Surface.BETA: (2, 3),
    Surface.GAMMA: (2, 1),
    Surface.DELTA: (0, 3),
}


class InconsistentTables(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FeasibilityProblem:
    tables: dict[Surface, MarginalTable]
    labels: tuple[tuple[str, ...], ...]  # per role A1, A2, B1, B2
    variables: tuple[tuple[str, str, str, str], ...]
    a: np.ndarray
    b: np.ndarray
    rows: tuple[str, ...]

    @property
    def is_binary(self) -> bool:
        return all(len(l) == 2 for l in self.labels)


@dataclass(frozen=True)
class CHResult:
    ident: str
    value: float
    violated: bool

    @property
    def violation(self) -> float:
        """Distance outside [0, 1]; negative when satisfied."""
        return max(-self.value, self.value - 1.0)


@dataclass
class Verdict:
    feasible: bool
    phase1_objective: float
    witness: dict[tuple[str, str, str, str], float] | None = None
    certificate: CHResult | None = None
    marginal: bool = False
    iterations: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "feasible" if self.feasible else "infeasible"


def _role_labels(tables: dict[Surface, MarginalTable]) -> tuple[tuple[str, ...], ...]:
    out: list[tuple[str, ...] | None] = [None] * 4
    for s in SURFACES:
        for pos, obs in zip(_TABLE_ROLES[s], tables[s].obs_pair):
            labs = tuple(obs.labels)
            if out[pos] is None:
                out[pos] = labs
            elif set(out[pos]) != set(labs):
                raise InconsistentTables(f"{ROLES[pos]} has different outcome labels across tables")
    return tuple(out)


def assemble_problem(tables: dict[Surface, MarginalTable], tol: float = 1e-10) -> FeasibilityProblem:
    """Total mass 1 plus one marginal equation per cell of each table."""
    rep = overlap_consistency(tables, tol)
    if not rep.ok:
        raise InconsistentTables(
            f"tables disagree on shared marginals ({rep.worst}: {rep.max_deviation:.3g})"
        )
    labels = _role_labels(tables)
    variables = tuple(itertools.product(*labels))
    rows_a = [np.ones(len(variables))]
    rhs = [1.0]
    names = ["total"]
    for s in SURFACES:
        p, q = _TABLE_ROLES[s]
        for (x, y), prob in sorted(tables[s].probs.items()):
            rows_a.append(np.array([float(v[p] == x and v[q] == y) for v in variables]))
            rhs.append(prob)
            names.append(f"{s.value}({x},{y})")
    return FeasibilityProblem(
        dict(tables), labels, variables, np.array(rows_a), np.array(rhs), tuple(names)
    )


def _term_ident(surface: Surface, tables, x: str, y: str) -> str:
    o1, o2 = tables[surface].obs_pair
    return f"{surface.value}({o1.name or '1'}={x},{o2.name or '2'}={y})"


@lru_cache(maxsize=None)
def _battery_templates():
    """All valid four-term forms on binary outcomes, as (minus surface, cells).

    A form is  P(delta cell) + P(gamma cell) + P(beta cell) - P(alpha cell)
    with the subtracted table free to be any of the four.  A candidate is
    kept when every deterministic assignment of (a1, a2, b1, b2) scores it in
    [0, 1]; duplicates are identified by their coefficient vector on the 16
    joint outcomes.
    """
    order = (Surface.DELTA, Surface.GAMMA, Surface.BETA, Surface.ALPHA)
    points = list(itertools.product((0, 1), repeat=4))
    seen = set()
    out = []
    for minus in order:
        for cells in itertools.product(itertools.product((0, 1), repeat=2), repeat=4):
            coef = []
            for pt in points:
                v = 0
                for s, cell in zip(order, cells):
                    p, q = _TABLE_ROLES[s]
                    hit = pt[p] == cell[0] and pt[q] == cell[1]
                    v += (-hit if s == minus else hit)
                coef.append(v)
            if min(coef) < 0 or max(coef) > 1:
                continue
            key = tuple(coef)
            if key in seen:
                continue
            seen.add(key)
            out.append((minus, tuple(zip(order, cells))))
    return tuple(out)


def four_term_value(tables, terms, minus: Surface) -> float:
    """Sum of P(cell) over ``terms`` with the ``minus`` surface's cell subtracted."""
    val = 0.0
    for s, (x, y) in terms:
        p = tables[s].probs[x, y]
        val += -p if s == minus else p
    return val


def ch_battery(tables: dict[Surface, MarginalTable], tol: float = FEAS_TOL) -> list[CHResult]:
    labels = _role_labels(tables)
    if any(len(l) != 2 for l in labels):
        raise ValueError("CH battery needs binary observables")
    results = []
    for minus, cells in _battery_templates():
        terms = []
        for s, (i, j) in cells:
            p, q = _TABLE_ROLES[s]
            terms.append((s, (labels[p][i], labels[q][j])))
        value = four_term_value(tables, terms, minus)
        plus = [_term_ident(s, tables, x, y) for s, (x, y) in terms if s != minus]
        sub = [_term_ident(s, tables, x, y) for s, (x, y) in terms if s == minus]
        ident = " + ".join(plus) + " - " + sub[0]
        results.append(CHResult(ident, value, value < -tol or value > 1 + tol))
    return results


def most_violated(battery: list[CHResult]) -> CHResult:
    return max(battery, key=lambda r: r.violation)


def solve_feasibility(problem: FeasibilityProblem, tol: float = FEAS_TOL) -> Verdict:
    res = phase_one(problem.a, problem.b)
    feasible = bool(res.objective <= tol)
    verdict = Verdict(feasible, float(res.objective), iterations=res.iterations)
    if feasible:
        verdict.witness = dict(zip(problem.variables, res.x.tolist()))
    else:
        verdict.marginal = bool(res.objective < MARGINAL_BAND)
        if verdict.marginal:
            verdict.notes.append(f"phase-one objective {res.objective:.3g} is within the marginal band")
        if problem.is_binary:
            worst = most_violated(ch_battery(problem.tables, tol))
            if worst.violated:
                verdict.certificate = worst
            else:
                verdict.notes.append("no CH inequality violated beyond tolerance")
    return verdict


@dataclass
class WitnessReport:
    ok: bool
    max_residual: float
    min_entry: float


def verify_witness(problem: FeasibilityProblem, witness, tol: float = FEAS_TOL) -> WitnessReport:
    """Recompute every marginal equation from the witness."""
    if isinstance(witness, dict):
        x = np.array([witness[v] for v in problem.variables])
    else:
        x = np.asarray(witness, dtype=float)
    resid = float(np.max(np.abs(problem.a @ x - problem.b)))
    lo = float(x.min())
    return WitnessReport(resid <= 10 * tol and lo >= -tol, resid, lo)
