"""Born-rule joint probability tables on each hypersurface."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .linalg import embed
from .objects import DensityOperator, LocalObservable
from .surfaces import SURFACES, FourSurfaceScenario, Surface, state_on

log = logging.getLogger(__name__)

DUST = 1e-12


@dataclass(frozen=True, eq=False)
class MarginalTable:
    """Joint outcome probabilities of one observable pair on one surface."""

    surface: Surface
    obs_pair: tuple[LocalObservable, LocalObservable]
    probs: dict[tuple[str, str], float]

    def __getitem__(self, key: tuple[str, str]) -> float:
        return self.probs[key]

    def entries(self):
        """(label1, label2, probability) in lexicographic label order."""
        for key in sorted(self.probs):
            yield key[0], key[1], self.probs[key]

    def total(self) -> float:
        return float(sum(self.probs.values()))


def _clean(p: complex, what: str) -> float:
    if abs(p.imag) > 1e-10:
        raise ArithmeticError(f"{what}: probability has imaginary part {p.imag:.3g}")
    x = p.real
    if x < -DUST or x > 1 + DUST:
        raise ArithmeticError(f"{what}: probability {x!r} outside [0, 1]")
    if x < 0.0 or x > 1.0:
        log.debug("clamping %s probability %r", what, x)
        x = min(max(x, 0.0), 1.0)
    return x


def joint_probability(
    rho: DensityOperator,
    x: tuple[LocalObservable, str],
    y: tuple[LocalObservable, str],
) -> float:
    """Tr[(P_x (x) P_y) rho] for x on subsystem 1 and y on subsystem 2."""
    (ox, lx), (oy, ly) = x, y
    if ox.subsystem != 1 or oy.subsystem != 2:
        raise ValueError(
            f"need observables on subsystems (1, 2), got ({ox.subsystem}, {oy.subsystem})"
        )
    px = embed(ox.projector(lx), rho.layout, 1)
    py = embed(oy.projector(ly), rho.layout, 2)
    p = np.trace(px @ py @ rho.matrix)
    return _clean(complex(p), f"P({ox.name}={lx}, {oy.name}={ly})")


def table_for_state(
    rho: DensityOperator, obs1: LocalObservable, obs2: LocalObservable, surface: Surface
) -> MarginalTable:
    probs = {
        (a, b): joint_probability(rho, (obs1, a), (obs2, b))
        for a in obs1.labels
        for b in obs2.labels
    }
    return MarginalTable(Surface(surface), (obs1, obs2), probs)


def marginal_table(scenario: FourSurfaceScenario, surface: Surface) -> MarginalTable:
    obs1, obs2 = scenario.observables(surface)
    return table_for_state(state_on(scenario, surface), obs1, obs2, surface)


def all_tables(scenario: FourSurfaceScenario) -> dict[Surface, MarginalTable]:
    return {s: marginal_table(scenario, s) for s in SURFACES}


def single_marginals(table: MarginalTable) -> tuple[dict[str, float], dict[str, float]]:
    """Row and column sums: distributions of the subsystem-1 and subsystem-2 observables."""
    o1, o2 = table.obs_pair
    rows = {a: sum(table.probs[a, b] for b in o2.labels) for a in o1.labels}
    cols = {b: sum(table.probs[a, b] for a in o1.labels) for b in o2.labels}
    return rows, cols


@dataclass
class OverlapReport:
    ok: bool
    max_deviation: float
    worst: str
    deviations: dict[str, float]


def overlap_consistency(tables: dict[Surface, MarginalTable], tol: float = 1e-10) -> OverlapReport:
    """Each observable appears in two tables; its marginal must agree in both."""
    m = {s: single_marginals(tables[s]) for s in SURFACES}
    checks = {
        "A1 alpha~delta": (m[Surface.ALPHA][0], m[Surface.DELTA][0]),
        "A2 alpha~gamma": (m[Surface.ALPHA][1], m[Surface.GAMMA][1]),
        "B1 beta~gamma": (m[Surface.BETA][0], m[Surface.GAMMA][0]),
        "B2 beta~delta": (m[Surface.BETA][1], m[Surface.DELTA][1]),
    }
    devs = {}
    for name, (p, q) in checks.items():
        if set(p) != set(q):
            devs[name] = float("inf")
        else:
            devs[name] = max(abs(p[k] - q[k]) for k in p)
    worst = max(devs, key=devs.get)
    return OverlapReport(devs[worst] <= tol, devs[worst], worst, devs)
