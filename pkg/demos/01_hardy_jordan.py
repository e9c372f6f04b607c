"""
Hardy-Jordan state on four hypersurfaces
========================================

Two spin-1/2 particles meet a Hadamard gate each.  Four spacelike slices
see the state before both gates (alpha), after both (beta), and after only
one of them (gamma, delta).  The Born tables on the four slices admit no
joint distribution of the four possessed values.
"""

import numpy as np

from nogo import all_tables, assemble_problem, hardy_scenario, solve_feasibility
from nogo.surfaces import SURFACES

sc = hardy_scenario()
tables = all_tables(sc)

# one 2x2 table per slice, rows and columns ordered (+, -)
for s in SURFACES:
    t = tables[s]
    names = ", ".join(o.name for o in t.obs_pair)
    grid = np.array([p for *_, p in t.entries()]).reshape(2, 2)
    print(f"{s.value} ({names})")
    print(np.round(grid, 6))

# the zero cells force values: A2=+ gives B1=- on gamma, A1=+ gives B2=- on delta,
# yet beta never shows B1=B2=-.  alpha(++) = 1/12 has nowhere to go.
print("alpha(++) =", tables[SURFACES[0]].probs["+", "+"])

verdict = solve_feasibility(assemble_problem(tables))
print("joint distribution:", verdict.status)
print("phase-one objective:", verdict.phase1_objective)
print("certificate:", verdict.certificate.ident, "=", verdict.certificate.value)
