import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nogo.born import (
    MarginalTable,
    all_tables,
    joint_probability,
    marginal_table,
    overlap_consistency,
    single_marginals,
)
from nogo.objects import (
    DensityOperator,
    Outcome,
    LocalObservable,
    QUBITS,
    basis_state,
    computational_observable,
    r_observable,
)
from nogo.scenarios import hardy_scenario, singlet_scenario
from nogo.surfaces import SURFACES, Surface, state_on

from conftest import random_scenario


def test_joint_probability_examples():
    sc = hardy_scenario()
    a1, a2 = sc.obs_alpha
    assert abs(joint_probability(sc.rho_alpha, (a1, "+"), (a2, "+")) - 1 / 12) < 1e-15
    rho_delta = state_on(sc, Surface.DELTA)
    assert joint_probability(rho_delta, (a1, "+"), (sc.obs_beta[1], "+")) < 1e-15
    prod = basis_state(QUBITS, 0, 1).density()
    assert joint_probability(prod, (r_observable(1), "+"), (r_observable(2), "-")) == 1.0


def test_joint_probability_errors():
    rho = basis_state(QUBITS, 0, 0).density()
    with pytest.raises(KeyError):
        joint_probability(rho, (r_observable(1), "x"), (r_observable(2), "+"))
    with pytest.raises(ValueError):
        joint_probability(rho, (r_observable(2), "+"), (r_observable(1), "+"))


def test_hardy_tables():
    t = all_tables(hardy_scenario())
    expected = {
        Surface.ALPHA: [1 / 12, 1 / 12, 1 / 12, 3 / 4],
        Surface.BETA: [1 / 3, 1 / 3, 1 / 3, 0],
        Surface.GAMMA: [0, 2 / 3, 1 / 6, 1 / 6],
        Surface.DELTA: [0, 1 / 6, 2 / 3, 1 / 6],
    }
    for s, vals in expected.items():
        got = [p for _, _, p in t[s].entries()]
        np.testing.assert_allclose(got, vals, atol=1e-12)
    assert [o.name for o in t[Surface.GAMMA].obs_pair] == ["B1", "A2"]
    assert [o.name for o in t[Surface.DELTA].obs_pair] == ["A1", "B2"]


def test_singlet_alpha_table():
    t = marginal_table(singlet_scenario(np.pi / 8), Surface.ALPHA)
    np.testing.assert_allclose([p for *_, p in t.entries()], [0, 0.5, 0.5, 0], atol=1e-15)


def test_single_marginals():
    t = all_tables(hardy_scenario())
    rows, cols = single_marginals(t[Surface.ALPHA])
    assert rows == pytest.approx({"+": 1 / 6, "-": 5 / 6}, abs=1e-15)
    rows, _ = single_marginals(t[Surface.BETA])
    assert rows == pytest.approx({"+": 2 / 3, "-": 1 / 3}, abs=1e-15)
    a, b = r_observable(1), r_observable(2)
    uniform = MarginalTable(Surface.ALPHA, (a, b), {(x, y): 0.25 for x in "+-" for y in "+-"})
    assert single_marginals(uniform) == ({"+": 0.5, "-": 0.5}, {"+": 0.5, "-": 0.5})


def test_tables_are_distributions(rng):
    for kind in ("unitary", "dephasing"):
        for _ in range(10):
            tables = all_tables(random_scenario(rng, kind))
            for t in tables.values():
                assert abs(t.total() - 1) < 1e-10
                assert min(t.probs.values()) >= 0.0


def test_overlap_consistency(rng):
    for phi in np.linspace(0, np.pi / 2, 13):
        assert overlap_consistency(all_tables(singlet_scenario(phi))).ok
    tables = all_tables(hardy_scenario())
    assert overlap_consistency(tables).max_deviation < 1e-10
    a1, b2 = tables[Surface.DELTA].obs_pair
    bad = dict(tables)
    bad[Surface.DELTA] = MarginalTable(
        Surface.DELTA, (a1, b2), {("+", "+"): 0.1, ("+", "-"): 0.1, ("-", "+"): 0.5, ("-", "-"): 0.3}
    )
    rep = overlap_consistency(bad)
    assert not rep.ok
    # A1: 0.2 on delta vs 1/6 on alpha; B2(+): 0.6 on delta vs 2/3 on beta
    assert rep.worst == "B2 beta~delta"
    assert rep.max_deviation == pytest.approx(2 / 3 - 0.6)
    assert rep.deviations["A1 alpha~delta"] == pytest.approx(0.2 - 1 / 6)


def test_clamping_dust():
    # a density with -1e-13 on a diagonal is still accepted as PSD and clamps to 0
    m = np.diag([0.5, 0.5 + 1e-13, -1e-13, 0.0]).astype(complex)
    rho = DensityOperator(QUBITS, m)
    assert joint_probability(rho, (r_observable(1), "-"), (r_observable(2), "+")) == 0.0


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1), st.permutations([0, 1]))
def test_relabeling_equivariance(seed, perm):
    sc = random_scenario(np.random.default_rng(seed), "unitary")
    rho = sc.rho_alpha
    a1 = r_observable(1)
    relabeled = LocalObservable(
        1, tuple(Outcome(o.label, o.eigenvalue, a1.outcomes[perm[k]].projector) for k, o in enumerate(a1.outcomes))
    )
    a2 = r_observable(2)
    for k, lab in enumerate(relabeled.labels):
        orig = a1.labels[perm[k]]
        for y in a2.labels:
            assert joint_probability(rho, (relabeled, lab), (a2, y)) == pytest.approx(
                joint_probability(rho, (a1, orig), (a2, y)), abs=1e-15
            )


def test_three_outcome_observable():
    from nogo.linalg import SubsystemLayout
    from nogo.objects import make_state

    layout = SubsystemLayout((3, 2))
    psi = make_state(layout, np.ones(6) / np.sqrt(6))
    o1 = computational_observable(1, ["a", "b", "c"], [0, 1, 2], dim=3)
    o2 = r_observable(2)
    total = sum(joint_probability(psi.density(), (o1, x), (o2, y)) for x in o1.labels for y in o2.labels)
    assert total == pytest.approx(1.0, abs=1e-14)
