"""Circuit intermediate representation over the Clifford+T gate set."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .phase import PhaseLike, is_clifford, is_t_like, phase


class GateKind(enum.Enum):
    H = "h"
    X = "x"
    Z = "z"
    S = "s"
    Sdg = "sdg"
    T = "t"
    Tdg = "tdg"
    ZPhase = "rz"
    CNOT = "cx"
    CZ = "cz"
    SWAP = "swap"
    Toffoli = "ccx"

    @property
    def arity(self) -> int:
        return _ARITY.get(self, 1)


_ARITY = {GateKind.CNOT: 2, GateKind.CZ: 2, GateKind.SWAP: 2, GateKind.Toffoli: 3}

# Z-axis rotations with a fixed phase (multiples of pi).
FIXED_PHASES = {
    GateKind.Z: Fraction(1),
    GateKind.S: Fraction(1, 2),
    GateKind.Sdg: Fraction(3, 2),
    GateKind.T: Fraction(1, 4),
    GateKind.Tdg: Fraction(7, 4),
}

_INVERSE = {
    GateKind.S: GateKind.Sdg,
    GateKind.Sdg: GateKind.S,
    GateKind.T: GateKind.Tdg,
    GateKind.Tdg: GateKind.T,
}


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    qubits: tuple[int, ...]
    phase: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if len(self.qubits) != self.kind.arity:
            raise ValueError(f"{self.kind.name} takes {self.kind.arity} qubits, got {len(self.qubits)}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"repeated operand in {self.kind.name}{self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError("negative qubit index")
        if self.kind is GateKind.ZPhase:
            if self.phase is None:
                raise ValueError("ZPhase needs a phase")
            object.__setattr__(self, "phase", phase(self.phase))
        elif self.phase is not None:
            raise ValueError(f"{self.kind.name} takes no phase")

    def z_phase(self) -> Optional[Fraction]:
        """Phase of a diagonal single-qubit gate, or None for other kinds."""
        if self.kind is GateKind.ZPhase:
            return self.phase
        return FIXED_PHASES.get(self.kind)

    def inverse(self) -> Gate:
        if self.kind is GateKind.ZPhase:
            return Gate(self.kind, self.qubits, -self.phase)
        return Gate(_INVERSE.get(self.kind, self.kind), self.qubits)

    def relabel(self, mapping: Sequence[int]) -> Gate:
        return Gate(self.kind, tuple(mapping[q] for q in self.qubits), self.phase)

    def __repr__(self) -> str:
        args = ",".join(map(str, self.qubits))
        if self.kind is GateKind.ZPhase:
            return f"ZPhase({self.phase})({args})"
        return f"{self.kind.name}({args})"


# Convenience constructors used throughout the generators and tests.
def H(q): return Gate(GateKind.H, (q,))
def X(q): return Gate(GateKind.X, (q,))
def Z(q): return Gate(GateKind.Z, (q,))
def S(q): return Gate(GateKind.S, (q,))
def Sdg(q): return Gate(GateKind.Sdg, (q,))
def T(q): return Gate(GateKind.T, (q,))
def Tdg(q): return Gate(GateKind.Tdg, (q,))
def ZPhase(q, p: PhaseLike): return Gate(GateKind.ZPhase, (q,), Fraction(p))
def CNOT(c, t): return Gate(GateKind.CNOT, (c, t))
def CZ(a, b): return Gate(GateKind.CZ, (a, b))
def SWAP(a, b): return Gate(GateKind.SWAP, (a, b))
def Toffoli(c1, c2, t): return Gate(GateKind.Toffoli, (c1, c2, t))


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list on ``qubit_count`` qubits. Immutable once built."""

    qubit_count: int
    gates: tuple[Gate, ...] = field(default=())

    def __post_init__(self):
        if self.qubit_count < 1:
            raise ValueError("a circuit needs at least one qubit")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if max(g.qubits) >= self.qubit_count:
                raise ValueError(f"{g!r} out of range for {self.qubit_count} qubits")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def then(self, gates: Iterable[Gate]) -> Circuit:
        return Circuit(self.qubit_count, self.gates + tuple(gates))

    def relabel(self, mapping: Sequence[int]) -> Circuit:
        return Circuit(self.qubit_count, tuple(g.relabel(mapping) for g in self.gates))


def adjoint(circuit: Circuit) -> Circuit:
    return Circuit(circuit.qubit_count, tuple(g.inverse() for g in reversed(circuit.gates)))


def compose(left: Circuit, right: Circuit) -> Circuit:
    """``left`` followed by ``right``."""
    if left.qubit_count != right.qubit_count:
        raise ValueError(f"qubit count mismatch: {left.qubit_count} vs {right.qubit_count}")
    return Circuit(left.qubit_count, left.gates + right.gates)


def embed(circuit: Circuit, wires: Sequence[int], qubit_count: int) -> list[Gate]:
    """Gates of ``circuit`` with qubit i sent to ``wires[i]`` of a wider register."""
    if len(wires) != circuit.qubit_count:
        raise ValueError("wire map must cover every qubit")
    if max(wires) >= qubit_count:
        raise ValueError("wire map exceeds the target register")
    return [g.relabel(wires) for g in circuit.gates]


@dataclass(frozen=True)
class ResourceReport:
    qubit_count: int
    total_gates: int
    t_count: int
    clifford_count: int
    two_qubit_count: int
    hadamard_count: int
    # Gates outside Clifford+T (Toffoli, arbitrary-angle ZPhase).
    other_count: int = 0

    def as_dict(self) -> dict:
        return {
            "qubits": self.qubit_count,
            "gates": self.total_gates,
            "t_count": self.t_count,
            "clifford_count": self.clifford_count,
            "two_qubit_count": self.two_qubit_count,
            "hadamard_count": self.hadamard_count,
            "other_count": self.other_count,
        }


def count_resources(circuit: Circuit) -> ResourceReport:
    t = cliff = other = two = had = 0
    for g in circuit.gates:
        if g.kind is GateKind.Toffoli:
            other += 1
            continue
        p = g.z_phase()
        if p is not None and is_t_like(p):
            t += 1
        elif p is not None and not is_clifford(p):
            other += 1
        else:
            cliff += 1
        if g.kind.arity == 2:
            two += 1
        elif g.kind is GateKind.H:
            had += 1
    return ResourceReport(circuit.qubit_count, len(circuit.gates), t, cliff, two, had, other)


def t_count(circuit: Circuit) -> int:
    return count_resources(circuit).t_count
