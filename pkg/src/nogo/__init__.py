"""Born-rule tables on four intersecting spacelike hypersurfaces and the
existence of a joint distribution reproducing them."""
from .born import MarginalTable, all_tables, joint_probability, marginal_table, overlap_consistency, single_marginals
from .feasibility import Verdict, assemble_problem, ch_battery, solve_feasibility, verify_witness
from .linalg import SubsystemLayout
from .objects import (
    DensityOperator,
    LocalObservable,
    QuantumChannel,
    StateVector,
    ancilla_extend,
    block_hadamard_channel,
    computational_observable,
    dephasing_kraus,
    hadamard_channel,
    hardy_jordan,
    make_state,
    r_observable,
    rotation_channels,
    singlet,
    validate_channel,
)
from .scenarios import (
    ancilla_scenario,
    hardy_scenario,
    role_observables,
    run_ancilla,
    run_custom,
    run_hardy,
    run_scenario,
    run_singlet_sweep,
    singlet_scenario,
)
from .surfaces import FourSurfaceScenario, Surface, check_no_signaling, effective_observable, state_on

__version__ = "0.1.0"
