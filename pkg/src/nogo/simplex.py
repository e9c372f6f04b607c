"""Dense phase-one simplex for  A x = b, x >= 0."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PIVOT_EPS = 1e-12


class SolverFailure(RuntimeError):
    """The simplex did not terminate within its iteration cap."""


@dataclass
class PhaseOneResult:
    objective: float  # minimised sum of artificial variables
    x: np.ndarray
    basis: list[int]
    iterations: int


def phase_one(a, b, max_iter: int | None = None) -> PhaseOneResult:
    """Minimise the artificial-variable sum with Bland's rule.

    Rows with negative right-hand side are negated first so the all-artificial
    basis is feasible.  Redundant rows are fine: their artificials stay basic
    at level zero.
    """
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    m, n = a.shape
    if max_iter is None:
        max_iter = 1000 * n
    neg = b < 0
    a[neg] *= -1
    b[neg] *= -1

    t = np.zeros((m + 1, n + m + 1))
    t[:m, :n] = a
    t[:m, n:n + m] = np.eye(m)
    t[:m, -1] = b
    # reduced costs with the artificials basic: c_j - 1^T A_j
    t[m, :n] = -a.sum(axis=0)
    t[m, -1] = -b.sum()
    basis = list(range(n, n + m))

    it = 0
    while True:
        cost = t[m, :-1]
        candidates = np.flatnonzero(cost < -PIVOT_EPS)
        if candidates.size == 0:
            break
        if it >= max_iter:
            raise SolverFailure(f"phase one exceeded {max_iter} iterations")
        j = int(candidates[0])
        col = t[:m, j]
        rows = np.flatnonzero(col > PIVOT_EPS)
        if rows.size == 0:
            # cannot happen for a bounded phase-one objective
            raise SolverFailure("phase one reported an unbounded direction")
        ratios = t[rows, -1] / col[rows]
        best = ratios.min()
        tied = rows[ratios <= best + PIVOT_EPS * max(1.0, abs(best))]
        r = int(min(tied, key=lambda i: basis[i]))
        t[r] /= t[r, j]
        for i in range(m + 1):
            if i != r and t[i, j] != 0.0:
                t[i] -= t[i, j] * t[r]
        basis[r] = j
        it += 1

    x = np.zeros(n)
    for i, v in enumerate(basis):
        if v < n:
            x[v] = t[i, -1]
    return PhaseOneResult(max(-t[m, -1], 0.0), x, basis, it)
