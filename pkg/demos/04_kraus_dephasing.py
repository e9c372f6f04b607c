"""
Local interactions as Kraus channels
====================================

Replace the Hadamard on particle 1 with a noisy one: phase-flip noise of
strength p, then the gate.  No-signalling holds for any p.  The largest CH
violation drops linearly as 1/12 - p/2, so a joint distribution appears
once p reaches 1/6.
"""

import numpy as np

from nogo import (
    FourSurfaceScenario,
    all_tables,
    assemble_problem,
    ch_battery,
    check_no_signaling,
    effective_observable,
    hadamard_channel,
    hardy_jordan,
    r_observable,
    role_observables,
    solve_feasibility,
)
from nogo.objects import HADAMARD, PAULI_Z, kraus_channel

obs = role_observables(r_observable(1), r_observable(2))
rho = hardy_jordan().density()

for p in np.linspace(0, 0.3, 7):
    c1 = kraus_channel(1, [np.sqrt(1 - p) * HADAMARD, np.sqrt(p) * HADAMARD @ PAULI_Z])
    sc = FourSurfaceScenario(rho, c1, hadamard_channel(2), *obs)
    tables = all_tables(sc)
    verdict = solve_feasibility(assemble_problem(tables))
    worst = max(r.violation for r in ch_battery(tables))
    ns = check_no_signaling(sc).max_deviation
    print(f"p={p:4.2f}  no-signalling dev {ns:.1e}  max CH violation {worst:+.4f}"
          f"  (1/12 - p/2 = {1 / 12 - p / 2:+.4f})  {verdict.status}")

# noise applied after the gate commutes with R and changes nothing
late = kraus_channel(1, [np.sqrt(0.5) * HADAMARD, np.sqrt(0.5) * PAULI_Z @ HADAMARD])
tables = all_tables(FourSurfaceScenario(rho, late, hadamard_channel(2), *obs))
print("phase flips after the gate:", solve_feasibility(assemble_problem(tables)).status)

# a channel acts on observables through its dual, sum_k K^dag B K
print(np.round(effective_observable(hadamard_channel(1), r_observable(1)).real, 6))
