import numpy as np
import pytest

from nogo.objects import (
    dephasing_kraus,
    make_state,
    r_observable,
    unitary_channel,
    QUBITS,
)
from nogo.scenarios import role_observables
from nogo.surfaces import FourSurfaceScenario

ACCEPTANCE = {}


def random_unitary(rng, d=2):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_state(rng, layout=QUBITS):
    v = rng.normal(size=layout.dim) + 1j * rng.normal(size=layout.dim)
    return make_state(layout, v / np.linalg.norm(v))


def random_hermitian(rng, d):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return 0.5 * (z + z.conj().T)


def random_psd(rng, d):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = z @ z.conj().T
    return rho / np.trace(rho)


def qubit_scenario(state, c1, c2):
    a, b = role_observables(r_observable(1), r_observable(2))
    return FourSurfaceScenario(state.density(), c1, c2, a, b)


def random_scenario(rng, kind):
    """Random pure state with random unitary or random dephasing channels."""
    psi = random_state(rng)
    if kind == "unitary":
        c1 = unitary_channel(1, random_unitary(rng))
        c2 = unitary_channel(2, random_unitary(rng))
    else:
        c1 = dephasing_kraus(1, rng.uniform())
        c2 = dephasing_kraus(2, rng.uniform())
    return qubit_scenario(psi, c1, c2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
