"""
Singlet under opposite rotations
================================

Rotate particle 1 by phi and particle 2 by -phi.  The four-term combination

    S = P(delta: A1+, B2-) + P(gamma: B1-, A2+) + P(beta: B1+, B2+) - P(alpha: A1+, A2+)

is bounded by 1 for any joint distribution, and equals cos^2 phi + sin^2(2 phi) / 2.
"""

import numpy as np

from nogo import run_singlet_sweep

rep = run_singlet_sweep(0.0, np.pi / 2, 13)

print(f"{'phi/pi':>8} {'S':>10} {'closed':>10} {'max CH':>10}  LP")
for r in rep.rows:
    closed = np.cos(r.phi) ** 2 + 0.5 * np.sin(2 * r.phi) ** 2
    lp = "feasible" if r.lp_feasible else "infeasible"
    print(f"{r.phi / np.pi:8.4f} {r.S:10.6f} {closed:10.6f} {r.max_ch:10.6f}  {lp}")

# S alone exceeds 1 only on (0, pi/4).  Past pi/4 the full CH battery still
# finds a violated form, so the LP stays infeasible up to pi/2.
best = max(rep.rows, key=lambda r: r.S)
print("largest S on the grid:", best.S, "at phi =", best.phi)
