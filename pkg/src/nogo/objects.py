"""States, observables and local channels, including the named constructions
used by the demonstrations (Hardy-Jordan state, singlet, Hadamard and
rotation channels, ancilla pointer extension)."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import (
    HERMITIAN_TOL,
    SubsystemLayout,
    as_matrix,
    exp_generator,
    hermiticity_error,
    hermitian_eigensystem,
)

NORM_TOL = 1e-9
CHANNEL_TOL = 1e-10
PLUS, MINUS = "+", "-"

QUBITS = SubsystemLayout((2, 2))


@dataclass(frozen=True, eq=False)
class StateVector:
    layout: SubsystemLayout
    amplitudes: np.ndarray

    def density(self) -> "DensityOperator":
        v = self.amplitudes
        return DensityOperator(self.layout, np.outer(v, v.conj()))


@dataclass(frozen=True, eq=False)
class DensityOperator:
    layout: SubsystemLayout
    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix)
        n = self.layout.dim
        if m.shape != (n, n):
            raise ValueError(f"density matrix shape {m.shape} does not match layout {self.layout.dims}")
        herr = hermiticity_error(m)
        if herr > HERMITIAN_TOL:
            raise ValueError(f"density matrix not Hermitian (deviation {herr:.3g})")
        tr = np.trace(m).real
        if abs(tr - 1.0) > 1e-12 * max(1, n):
            raise ValueError(f"density matrix trace {tr!r} != 1")
        vals, _ = hermitian_eigensystem(m)
        if vals[-1] < -1e-10:
            raise ValueError(f"density matrix has negative eigenvalue {vals[-1]:.3g}")
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True, eq=False)
class Outcome:
    label: str
    eigenvalue: float
    projector: np.ndarray


@dataclass(frozen=True, eq=False)
class LocalObservable:
    """Projective observable on one subsystem, outcomes keyed by string label."""

    subsystem: int
    outcomes: tuple[Outcome, ...]
    name: str = ""

    def __post_init__(self):
        outs = tuple(self.outcomes)
        if not outs:
            raise ValueError("observable needs at least one outcome")
        labels = [o.label for o in outs]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate outcome labels {labels}")
        d = outs[0].projector.shape[0]
        total = np.zeros((d, d), dtype=complex)
        for o in outs:
            p = o.projector
            if p.shape != (d, d):
                raise ValueError("projectors must share one local dimension")
            if hermiticity_error(p) > 1e-10 or np.max(np.abs(p @ p - p)) > 1e-10:
                raise ValueError(f"outcome {o.label!r}: not an orthogonal projector")
            total += p
        for i, a in enumerate(outs):
            for b in outs[i + 1:]:
                if np.max(np.abs(a.projector @ b.projector)) > 1e-10:
                    raise ValueError(f"projectors {a.label!r} and {b.label!r} overlap")
        if np.max(np.abs(total - np.eye(d))) > 1e-12:
            raise ValueError("projectors do not sum to identity")
        object.__setattr__(self, "outcomes", outs)

    @property
    def labels(self) -> list[str]:
        return [o.label for o in self.outcomes]

    @property
    def dim(self) -> int:
        return self.outcomes[0].projector.shape[0]

    def projector(self, label: str) -> np.ndarray:
        for o in self.outcomes:
            if o.label == label:
                return o.projector
        raise KeyError(f"observable {self.name or '?'} has no outcome {label!r}")

    def operator(self) -> np.ndarray:
        """Spectral sum  sum_x x P(x)."""
        return sum(o.eigenvalue * o.projector for o in self.outcomes)

    def renamed(self, name: str) -> "LocalObservable":
        return LocalObservable(self.subsystem, self.outcomes, name)


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    """Local evolution of one subsystem.

    ``kind`` is ``"unitary"`` (``ops`` holds the single unitary) or
    ``"kraus"``.
    """

    subsystem: int
    kind: str
    ops: tuple[np.ndarray, ...]
    name: str = ""

    def __post_init__(self):
        if self.kind not in ("unitary", "kraus"):
            raise ValueError(f"unknown channel kind {self.kind!r}")
        ops = tuple(as_matrix(k) for k in self.ops)
        if not ops:
            raise ValueError("channel needs at least one operator")
        if self.kind == "unitary" and len(ops) != 1:
            raise ValueError("unitary channel takes exactly one matrix")
        shape = ops[0].shape
        if shape[0] != shape[1] or any(k.shape != shape for k in ops):
            raise ValueError("channel operators must be square and of equal shape")
        object.__setattr__(self, "ops", ops)

    @property
    def dim(self) -> int:
        return self.ops[0].shape[0]

    @property
    def unitary(self) -> np.ndarray:
        if self.kind != "unitary":
            raise AttributeError("Kraus channel has no single unitary")
        return self.ops[0]


@dataclass
class ChannelReport:
    ok: bool
    deviation: float
    message: str = field(default="")


def make_state(layout: SubsystemLayout, amplitudes) -> StateVector:
    v = np.array(amplitudes, dtype=complex)
    if v.ndim != 1 or v.shape[0] != layout.dim:
        raise ValueError(f"expected {layout.dim} amplitudes, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("state has non-finite amplitudes")
    norm2 = float(np.vdot(v, v).real)
    if abs(norm2 - 1.0) > NORM_TOL:
        raise ValueError(f"state is not normalised (|psi|^2 = {norm2!r})")
    # absorb the admitted slack so derived density operators have unit trace
    return StateVector(layout, v / np.sqrt(norm2))


def basis_state(layout: SubsystemLayout, *indices: int) -> StateVector:
    v = np.zeros(layout.dim, dtype=complex)
    flat = int(np.ravel_multi_index(indices, layout.dims))
    v[flat] = 1.0
    return make_state(layout, v)


def hardy_jordan() -> StateVector:
    return make_state(QUBITS, np.array([1.0, -1.0, -1.0, -3.0]) / (2 * np.sqrt(3)))


def singlet() -> StateVector:
    return make_state(QUBITS, np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2))


HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2)
PAULI_Z = np.diag([1.0, -1.0]).astype(complex)
# i(|-><+| - |+><-|) in the (+, -) basis, i.e. Pauli Y
ROTATION_GENERATOR = np.array([[0.0, -1j], [1j, 0.0]])


def unitary_channel(subsystem: int, u, name: str = "") -> QuantumChannel:
    return QuantumChannel(subsystem, "unitary", (as_matrix(u),), name)


def kraus_channel(subsystem: int, ops: Sequence, name: str = "") -> QuantumChannel:
    return QuantumChannel(subsystem, "kraus", tuple(ops), name)


def identity_channel(subsystem: int, dim: int = 2) -> QuantumChannel:
    return unitary_channel(subsystem, np.eye(dim), "identity")


def hadamard_channel(subsystem: int, dim: int = 2) -> QuantumChannel:
    if dim != 2:
        raise ValueError(f"Hadamard channel needs a qubit, got local dim {dim}")
    return unitary_channel(subsystem, HADAMARD, "hadamard")


def rotation_unitary(subsystem: int, phi: float) -> np.ndarray:
    """Subsystem 1 rotates |+> towards |->, subsystem 2 the opposite way."""
    sign = {1: 1.0, 2: -1.0}[subsystem]
    return exp_generator(sign * ROTATION_GENERATOR, phi)


def rotation_channels(phi: float) -> tuple[QuantumChannel, QuantumChannel]:
    return (
        unitary_channel(1, rotation_unitary(1, phi), f"rotation:{phi!r}"),
        unitary_channel(2, rotation_unitary(2, phi), f"rotation:{phi!r}"),
    )


def dephasing_kraus(subsystem: int, p: float) -> QuantumChannel:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"dephasing probability {p} outside [0, 1]")
    return kraus_channel(
        subsystem,
        [np.sqrt(1 - p) * np.eye(2), np.sqrt(p) * PAULI_Z],
        f"dephasing:{p!r}",
    )


def validate_channel(ch: QuantumChannel, tol: float = CHANNEL_TOL) -> ChannelReport:
    """Check unitarity or Kraus completeness; never raises for a bad channel."""
    eye = np.eye(ch.dim)
    if ch.kind == "unitary":
        u = ch.ops[0]
        dev = float(np.max(np.abs(u.conj().T @ u - eye)))
        what = "U^H U"
    else:
        s = sum(k.conj().T @ k for k in ch.ops)
        dev = float(np.max(np.abs(s - eye)))
        what = "sum_k K^H K"
    if dev > tol:
        return ChannelReport(False, dev, f"{what} deviates from identity by {dev:.3g}")
    return ChannelReport(True, dev)


def computational_observable(
    subsystem: int, labels: Sequence[str], eigenvalues: Sequence[float], dim: int = 2, name: str = ""
) -> LocalObservable:
    """Observable diagonal in the standard basis, one outcome per basis vector."""
    if len(labels) != dim or len(eigenvalues) != dim:
        raise ValueError(f"need {dim} labels and eigenvalues")
    if len(set(float(e) for e in eigenvalues)) != dim:
        raise ValueError(f"duplicate eigenvalues {list(eigenvalues)}")
    outs = []
    for k, (lab, ev) in enumerate(zip(labels, eigenvalues)):
        p = np.zeros((dim, dim), dtype=complex)
        p[k, k] = 1.0
        outs.append(Outcome(str(lab), float(ev), p))
    return LocalObservable(subsystem, tuple(outs), name)


def grouped_observable(
    subsystem: int, groups: dict[str, Sequence[int]], eigenvalues: dict[str, float], dim: int, name: str = ""
) -> LocalObservable:
    """Diagonal observable whose outcome ``label`` projects onto basis vectors ``groups[label]``."""
    outs = []
    for lab, idx in groups.items():
        p = np.zeros((dim, dim), dtype=complex)
        for k in idx:
            p[k, k] = 1.0
        outs.append(Outcome(lab, float(eigenvalues[lab]), p))
    return LocalObservable(subsystem, tuple(outs), name)


def r_observable(subsystem: int, name: str = "") -> LocalObservable:
    """Qubit R with labels (+, -) and eigenvalues (+1, -1)."""
    return computational_observable(subsystem, (PLUS, MINUS), (1.0, -1.0), name=name)


# Ancilla extension.  Each block S_i A_i is a 4-dim subsystem with basis
# |r p> at index 2*r + p, r, p in {0: +, 1: -}.
BLOCKS = SubsystemLayout((4, 4))
CORRELATED = (0, 3)  # |r+ p+>, |r- p->


def ancilla_extend(state: StateVector) -> StateVector:
    """Replace each |r_i^x> by |r_i^x>|p_i^x> (pointer correlated with R)."""
    if state.layout.dims != (2, 2):
        raise ValueError(f"ancilla extension needs a 2x2 layout, got {state.layout.dims}")
    out = np.zeros(16, dtype=complex)
    for r1 in range(2):
        for r2 in range(2):
            out[4 * CORRELATED[r1] + CORRELATED[r2]] = state.amplitudes[2 * r1 + r2]
    return make_state(BLOCKS, out)


def block_hadamard_channel(subsystem: int, dim: int = 4) -> QuantumChannel:
    """Hadamard on span{|r+p+>, |r-p->}; identity on |r+p->, |r-p+>."""
    if dim != 4:
        raise ValueError(f"block Hadamard needs local dim 4, got {dim}")
    u = np.eye(4, dtype=complex)
    i, j = CORRELATED
    u[np.ix_([i, j], [i, j])] = HADAMARD
    return unitary_channel(subsystem, u, "block-hadamard")


def pointer_observable(subsystem: int, name: str = "") -> LocalObservable:
    """Pointer reading of ancilla A_i inside block S_i A_i."""
    return grouped_observable(
        subsystem, {PLUS: (0, 2), MINUS: (1, 3)}, {PLUS: 1.0, MINUS: -1.0}, 4, name
    )
