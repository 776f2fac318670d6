"""Functional verification: dense simulation and diagrammatic equivalence.

Qubit 0 is the least significant bit of a basis index everywhere in this
package, in the simulator, in :func:`zxarith.zxdiag.tensor` and in the
arithmetic register layouts.
"""

from __future__ import annotations

import enum
from typing import Iterable, Optional

import numpy as np

from .circuit import Circuit, Gate, GateKind, adjoint, compose

MAX_SIM_QUBITS = 26
MAX_UNITARY_QUBITS = 12
TOL = 1e-9

_SQ2 = 1 / np.sqrt(2)
MATRICES = {
    GateKind.H: np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.CNOT: np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex),
}


class WidthError(ValueError):
    """Raised when a circuit is too wide for dense simulation."""


class Verdict(enum.Enum):
    EQUIVALENT = "Equivalent"
    UNKNOWN = "Unknown"


def gate_matrix(gate: Gate) -> np.ndarray:
    """Matrix of ``gate`` on its own operands, in operand order.

    The first operand is the most significant bit of the row index, so that the
    CNOT matrix reads with the control first.
    """
    p = gate.z_phase()
    if p is not None:
        return np.diag([1, np.exp(1j * np.pi * float(p))]).astype(complex)
    if gate.kind in MATRICES:
        return MATRICES[gate.kind]
    if gate.kind is GateKind.CZ:
        return np.diag([1, 1, 1, -1]).astype(complex)
    if gate.kind is GateKind.SWAP:
        return np.eye(4, dtype=complex)[[0, 2, 1, 3]]
    if gate.kind is GateKind.Toffoli:
        m = np.eye(8, dtype=complex)
        m[[6, 7]] = m[[7, 6]]
        return m
    raise ValueError(f"no matrix for {gate.kind}")


def _apply(state: np.ndarray, gate: Gate, n: int) -> np.ndarray:
    # state has shape (2,)*n with axis n-1-q holding qubit q
    axes = [n - 1 - q for q in gate.qubits]
    k = len(axes)
    p = gate.z_phase()
    if p is not None:
        idx = [slice(None)] * n
        idx[axes[0]] = 1
        state[tuple(idx)] *= np.exp(1j * np.pi * float(p))
        return state
    if gate.kind in (GateKind.X, GateKind.CNOT, GateKind.Toffoli):
        idx = [slice(None)] * n
        for a in axes[:-1]:
            idx[a] = 1
        sub = state[tuple(idx)]
        # the target axis index shifts left by the number of fixed control axes before it
        t = axes[-1] - sum(1 for a in axes[:-1] if a < axes[-1])
        state[tuple(idx)] = np.flip(sub, axis=t).copy()
        return state
    if gate.kind is GateKind.CZ:
        idx = [slice(None)] * n
        idx[axes[0]] = 1
        idx[axes[1]] = 1
        state[tuple(idx)] *= -1
        return state
    if gate.kind is GateKind.SWAP:
        return np.swapaxes(state, axes[0], axes[1]).copy()
    m = gate_matrix(gate).reshape((2,) * (2 * k))
    out = np.tensordot(m, state, axes=(list(range(k, 2 * k)), axes))
    return np.moveaxis(out, list(range(k)), axes)


def simulate_state(circuit: Circuit, state: np.ndarray) -> np.ndarray:
    n = circuit.qubit_count
    if n > MAX_SIM_QUBITS:
        raise WidthError(f"{n} qubits exceeds the simulation bound of {MAX_SIM_QUBITS}")
    psi = np.array(state, dtype=complex).reshape((2,) * n)
    for g in circuit.gates:
        psi = _apply(psi, g, n)
    return psi.reshape(-1)


def simulate(circuit: Circuit, basis_index: int = 0) -> np.ndarray:
    """Statevector after running ``circuit`` on the computational basis state ``basis_index``."""
    n = circuit.qubit_count
    if n > MAX_SIM_QUBITS:
        raise WidthError(f"{n} qubits exceeds the simulation bound of {MAX_SIM_QUBITS}")
    psi = np.zeros(2**n, dtype=complex)
    psi[basis_index] = 1
    return simulate_state(circuit, psi)


def unitary(circuit: Circuit) -> np.ndarray:
    n = circuit.qubit_count
    if n > MAX_UNITARY_QUBITS:
        raise WidthError(f"{n} qubits exceeds the full-unitary bound of {MAX_UNITARY_QUBITS}")
    # columns are simulated all at once by carrying the input index as an extra axis
    dim = 2**n
    psi = np.eye(dim, dtype=complex).reshape((2,) * n + (dim,))
    for g in circuit.gates:
        # the trailing input axis is never touched since qubit axes are n-1-q < n
        psi = _apply(psi, g, n)
    return psi.reshape(dim, dim)


def global_phase_match(a: np.ndarray, b: np.ndarray, tol: float = TOL) -> bool:
    """True iff a == exp(i phi) b up to max entry deviation ``tol`` (relative to the largest entry)."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        return False
    k = np.argmax(np.abs(b))
    if abs(b.flat[k]) < tol:
        return bool(np.max(np.abs(a)) < tol)
    ratio = a.flat[k] / b.flat[k]
    if abs(abs(ratio) - 1) > tol:
        return False
    return bool(np.max(np.abs(a - ratio * b)) < tol)


def proportional(a: np.ndarray, b: np.ndarray, tol: float = TOL) -> bool:
    """True iff a == c b for some nonzero scalar c, with relative deviation below ``tol``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        return False
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na < tol or nb < tol:
        return na < tol and nb < tol
    k = np.argmax(np.abs(b))
    c = a.flat[k] / b.flat[k]
    return bool(np.linalg.norm(a - c * b) / na < tol)


def equal_unitary(c1: Circuit, c2: Circuit, tol: float = TOL) -> bool:
    if c1.qubit_count != c2.qubit_count:
        return False
    return global_phase_match(unitary(c1), unitary(c2), tol)


def equal_on_basis(c1: Circuit, c2: Circuit, inputs: Iterable[int], tol: float = TOL) -> bool:
    """Compare the two circuits on each listed basis input, allowing one common global phase."""
    if c1.qubit_count != c2.qubit_count:
        return False
    common: Optional[complex] = None
    for i in inputs:
        a, b = simulate(c1, i), simulate(c2, i)
        k = int(np.argmax(np.abs(b)))
        ratio = a[k] / b[k]
        if abs(abs(ratio) - 1) > tol or np.max(np.abs(a - ratio * b)) > tol:
            return False
        if common is None:
            common = ratio
        elif abs(ratio - common) > tol:
            return False
    return True


def adjoint_reduce_check(c1: Circuit, c2: Circuit) -> Verdict:
    """Simplify the diagram of ``c1`` followed by ``c2``'s inverse and test for the identity.

    Sound but incomplete: UNKNOWN is not a counterexample.
    """
    from .rewrite import full_simplify
    from .zxdiag import from_circuit

    if c1.qubit_count != c2.qubit_count:
        return Verdict.UNKNOWN
    d = full_simplify(from_circuit(compose(c1, adjoint(c2))))
    return Verdict.EQUIVALENT if d.is_identity() else Verdict.UNKNOWN
