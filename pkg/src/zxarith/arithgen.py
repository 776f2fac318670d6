"""Fault-tolerant arithmetic circuit generators.

Wire maps
---------
``conditional_adder(n)`` acts on 2n + 3 qubits::

    0            ctrl
    1 .. n       A  (a_0 .. a_{n-1}, little-endian)
    n+1 .. 2n    B  (b_0 .. b_{n-1}), receives the low n sum bits
    2n+1         carry-out, receives the sum MSB
    2n+2         scratch ancilla, starts and ends in |0>

``multiplier(n)`` acts on 4n + 1 qubits::

    0 .. n-1       A
    n .. 2n-1      B
    2n .. 4n-1     product P (2n bits, little-endian), starts at |0>
    4n             scratch ancilla shared by every adder, restored to |0>

Stage 1 writes ``a * b_0`` into P[0:n] with n Toffolis.  Stage j (1 <= j < n)
adds ``a`` into P[j : j+n] with carry into P[j+n], controlled by b_j.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import CNOT, Circuit, Gate, GateKind, H, T, Tdg, Toffoli, embed


def toffoli_clifford_t() -> Circuit:
    """Seven-T Clifford+T decomposition of CCX with controls 0, 1 and target 2."""
    a, b, c = 0, 1, 2
    return Circuit(3, (
        H(c), CNOT(b, c), Tdg(c), CNOT(a, c), T(c), CNOT(b, c), Tdg(c), CNOT(a, c),
        T(b), T(c), H(c), CNOT(a, b), T(a), Tdg(b), CNOT(a, b),
    ))


_TOFFOLI = toffoli_clifford_t()


def decompose_toffolis(circuit: Circuit) -> Circuit:
    """Replace every native Toffoli by :func:`toffoli_clifford_t`."""
    out: list[Gate] = []
    for g in circuit.gates:
        if g.kind is GateKind.Toffoli:
            out.extend(embed(_TOFFOLI, g.qubits, circuit.qubit_count))
        else:
            out.append(g)
    return Circuit(circuit.qubit_count, out)


def _controlled_add(ctrl: int, a: list[int], b: list[int], carry: int, scratch: int) -> list[Gate]:
    """Gates for b||carry += ctrl * a, restoring ctrl, a and scratch.

    Controlled form of the ancilla-free ripple-carry adder: the carry chain is
    computed in place on ``a``, only writes into ``b`` and ``carry`` are
    conditioned on ``ctrl``.  Uses 3n + 2 Toffolis for n >= 2; a single bit
    needs only the scratch-routed carry and one sum Toffoli.
    """
    n = len(a)
    gates: list[Gate] = []
    if n == 1:
        return [
            Toffoli(b[0], a[0], scratch),
            Toffoli(ctrl, scratch, carry),
            Toffoli(b[0], a[0], scratch),
            Toffoli(ctrl, a[0], b[0]),
        ]
    for i in range(1, n):
        gates.append(CNOT(a[i], b[i]))
    gates.append(Toffoli(ctrl, a[n - 1], carry))
    for i in range(n - 2, 0, -1):
        gates.append(CNOT(a[i], a[i + 1]))
    for i in range(n - 1):
        gates.append(Toffoli(b[i], a[i], a[i + 1]))
    # carry ^= ctrl * (b_{n-1} a_{n-1}), routed through the scratch qubit
    gates += [
        Toffoli(b[n - 1], a[n - 1], scratch),
        Toffoli(ctrl, scratch, carry),
        Toffoli(b[n - 1], a[n - 1], scratch),
    ]
    gates.append(Toffoli(ctrl, a[n - 1], b[n - 1]))
    for i in range(n - 2, -1, -1):
        gates.append(Toffoli(b[i], a[i], a[i + 1]))
        gates.append(Toffoli(ctrl, a[i], b[i]))
    for i in range(1, n - 1):
        gates.append(CNOT(a[i], a[i + 1]))
    for i in range(1, n):
        gates.append(CNOT(a[i], b[i]))
    return gates


def conditional_adder(n: int, decompose: bool = True) -> Circuit:
    """Controlled n-bit adder on 2n + 3 wires (see module docstring for the map)."""
    if n < 1:
        raise ValueError("adder width must be at least 1")
    a = list(range(1, n + 1))
    b = list(range(n + 1, 2 * n + 1))
    c = Circuit(2 * n + 3, _controlled_add(0, a, b, 2 * n + 1, 2 * n + 2))
    return decompose_toffolis(c) if decompose else c


@dataclass(frozen=True)
class MultiplierLayout:
    n: int

    @property
    def a(self) -> range:
        return range(0, self.n)

    @property
    def b(self) -> range:
        return range(self.n, 2 * self.n)

    @property
    def ancilla(self) -> range:
        return range(2 * self.n, 4 * self.n + 1)

    @property
    def product(self) -> range:
        return range(2 * self.n, 4 * self.n)

    @property
    def scratch(self) -> int:
        return 4 * self.n

    @property
    def qubit_count(self) -> int:
        return 4 * self.n + 1

    def encode(self, a: int, b: int) -> int:
        """Basis index of |a>|b>|0...0>."""
        return a | (b << self.n)

    def decode(self, index: int) -> tuple[int, int, int, int]:
        """Split a basis index into (a, b, product, scratch)."""
        n = self.n
        mask = (1 << n) - 1
        return (index & mask, (index >> n) & mask,
                (index >> 2 * n) & ((1 << 2 * n) - 1), (index >> 4 * n) & 1)


def multiplier(n: int, decompose: bool = True) -> Circuit:
    """Shift-and-add multiplier: |a>|b>|0> -> |a>|b>|a*b>|0>."""
    if n < 2:
        raise ValueError("multiplier width must be at least 2")
    lay = MultiplierLayout(n)
    a, b, p = list(lay.a), list(lay.b), list(lay.product)
    gates: list[Gate] = [Toffoli(b[0], a[i], p[i]) for i in range(n)]
    for j in range(1, n):
        gates += _controlled_add(b[j], a, p[j:j + n], p[j + n], lay.scratch)
    c = Circuit(lay.qubit_count, gates)
    return decompose_toffolis(c) if decompose else c


def toffoli_count(circuit: Circuit) -> int:
    return sum(1 for g in circuit.gates if g.kind is GateKind.Toffoli)
