"""Dense complex linear algebra on small tensor-product Hilbert spaces.

Matrices are plain complex ``numpy`` arrays.  Subsystem 1 is always the most
significant index, so for two qubits ``|r1 r2>`` sits at index ``2*r1 + r2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

HERMITIAN_TOL = 1e-10


@dataclass(frozen=True)
class SubsystemLayout:
    """Ordered per-subsystem dimensions; subsystem 1 first."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise ValueError("layout needs at least one subsystem")
        if any(d < 2 for d in dims):
            raise ValueError(f"subsystem dimensions must be >= 2, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return prod(self.dims)

    def __len__(self):
        return len(self.dims)

    def local_dim(self, subsystem: int) -> int:
        """Dimension of ``subsystem`` (1-based)."""
        self.check_index(subsystem)
        return self.dims[subsystem - 1]

    def check_index(self, subsystem: int) -> None:
        if not 1 <= subsystem <= len(self.dims):
            raise ValueError(
                f"subsystem index {subsystem} out of range for layout {self.dims}"
            )


def as_matrix(a) -> np.ndarray:
    """Return ``a`` as a 2-d complex array, rejecting NaN/inf entries."""
    m = np.array(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def tensor_product(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def multiply(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def apply(a, v) -> np.ndarray:
    a = as_matrix(a)
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1 or a.shape[1] != v.shape[0]:
        raise ValueError(f"cannot apply {a.shape} matrix to vector of shape {v.shape}")
    return a @ v


def trace(a) -> complex:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"trace of non-square matrix {a.shape}")
    return complex(np.trace(a))


def embed(op, layout: SubsystemLayout, subsystem: int) -> np.ndarray:
    """Lift a local operator on ``subsystem`` to the full space (identity elsewhere)."""
    op = as_matrix(op)
    d = layout.local_dim(subsystem)
    if op.shape != (d, d):
        raise ValueError(
            f"operator of shape {op.shape} does not act on subsystem {subsystem} (dim {d})"
        )
    out = np.ones((1, 1), dtype=complex)
    for k, dk in enumerate(layout.dims, start=1):
        out = np.kron(out, op if k == subsystem else np.eye(dk))
    return out


def partial_trace(rho, layout: SubsystemLayout, keep: int) -> np.ndarray:
    """Reduced operator on subsystem ``keep`` (1-based), tracing out the rest."""
    rho = as_matrix(rho)
    layout.check_index(keep)
    n = layout.dim
    if rho.shape != (n, n):
        raise ValueError(f"matrix shape {rho.shape} does not match layout {layout.dims}")
    k = len(layout)
    t = rho.reshape(layout.dims + layout.dims)
    # move the kept subsystem to the front on both row and column sides
    row = [keep - 1] + [i for i in range(k) if i != keep - 1]
    col = [k + i for i in row]
    d = layout.local_dim(keep)
    rest = n // d
    t = t.transpose(row + col).reshape(d, rest, d, rest)
    return np.einsum("ajbj->ab", t)


def hermiticity_error(a) -> float:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        return float("inf")
    return float(np.max(np.abs(a - a.conj().T), initial=0.0))


def _jacobi_sweeps(a: np.ndarray, max_sweeps: int = 100):
    """Cyclic complex Jacobi; returns (diagonalised matrix, accumulated rotations)."""
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(np.linalg.norm(a), 1e-300)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= 1e-15 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= 1e-18 * scale:
                    continue
                phase = apq / r
                # real symmetric rotation after removing the phase of a[p, q]
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if theta == 0.0:
                    t = 1.0
                elif abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array(
                    [[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=complex
                )
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[q, p] = 0.0
                a[p, q] = 0.0
                v[:, idx] = v[:, idx] @ rot
    return a, v


def hermitian_eigensystem(a, tol: float = HERMITIAN_TOL):
    """Eigen-decompose a Hermitian matrix by cyclic Jacobi rotations.

    Returns
    -------
    eigenvalues : ndarray of float, sorted descending
    eigenvectors : ndarray, orthonormal columns matching ``eigenvalues``

    Degenerate eigenspaces come back in an arbitrary orthonormal basis, so
    callers comparing spectra should look at eigenvalue gaps only.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"eigensystem of non-square matrix {a.shape}")
    err = hermiticity_error(a)
    if err > tol:
        raise ValueError(f"matrix is not Hermitian (max |A - A^H| = {err:.3g})")
    work = 0.5 * (a + a.conj().T)
    d, v = _jacobi_sweeps(work)
    vals = np.real(np.diag(d)).copy()
    order = np.argsort(-vals, kind="stable")
    vals, v = vals[order], v[:, order]
    resid = np.linalg.norm(a @ v - v * vals, axis=0)
    if np.any(resid > 10 * max(tol, 1e-15) * max(1.0, np.abs(vals).max(initial=0.0))):
        raise ArithmeticError(f"Jacobi residual too large: {resid.max():.3g}")
    return vals, v


def exp_generator(h, phi: float) -> np.ndarray:
    """``exp(-i h phi)`` for a Hermitian generator ``h`` and angle ``phi``."""
    vals, vecs = hermitian_eigensystem(h)
    return (vecs * np.exp(-1j * vals * phi)) @ vecs.conj().T
