"""Circuit extraction from simplified graph-like diagrams."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .circuit import CNOT, CZ, SWAP, Circuit, Gate, GateKind, H, S, Sdg, T, Tdg, Z, ZPhase
from .rewrite import _axis_neighbors, _isolate_boundaries, _pivot
from .zxdiag import EdgeType, ZxDiagram, toggle


class ExtractionStuck(RuntimeError):
    """No frontier row can be reduced to a single neighbour."""

    def __init__(self, message: str, frontier: Optional[list[int]] = None):
        super().__init__(message)
        self.frontier = frontier


_PHASE_WORDS = {
    0: (),
    1: (T,),
    2: (S,),
    3: (S, T),
    4: (Z,),
    5: (Z, T),
    6: (Sdg,),
    7: (Tdg,),
}


def phase_gates(q: int, p: Fraction) -> list[Gate]:
    """Shortest {Z, S, Sdg, T, Tdg} word for a multiple of pi/4."""
    k = p * 4
    if k.denominator != 1:
        raise ValueError(f"phase {p}*pi is not a multiple of pi/4")
    return [g(q) for g in _PHASE_WORDS[int(k) % 8]]


def decompose_phases(circuit: Circuit) -> Circuit:
    out: list[Gate] = []
    for g in circuit.gates:
        if g.kind is GateKind.ZPhase:
            out.extend(phase_gates(g.qubits[0], g.phase))
        else:
            out.append(g)
    return Circuit(circuit.qubit_count, out)


def gauss_gf2(m: list[list[int]]) -> list[tuple[int, int]]:
    """Reduce ``m`` in place to reduced row echelon form over GF(2).

    Pivots are taken in the leftmost eligible column, from the lowest row index.
    Returns the row operations as (source, target) pairs, meaning
    ``m[target] ^= m[source]``, in the order they were applied.
    """
    ops: list[tuple[int, int]] = []
    rows = len(m)
    cols = len(m[0]) if m else 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if m[i][c]), None)
        if p is None:
            continue
        if p != r:
            # move the pivot up with xors so every step is a CNOT
            _xor_row(m, p, r)
            ops.append((p, r))
        for i in range(rows):
            if i != r and m[i][c]:
                _xor_row(m, r, i)
                ops.append((r, i))
        r += 1
    return ops


def _xor_row(m, src, dst):
    m[dst] = [a ^ b for a, b in zip(m[dst], m[src])]


def extract_circuit(diagram: ZxDiagram, decompose: bool = True) -> Circuit:
    """Walk back from the outputs, turning the diagram into gates.

    ``diagram`` must be graph-like with gflow, as produced by
    :func:`zxarith.rewrite.full_simplify` from a circuit.  Phases that are
    multiples of pi/4 are emitted as Clifford+T words when ``decompose`` is set.
    """
    d = diagram.copy()
    n = len(d.outputs)
    if len(d.inputs) != n:
        raise ValueError("extraction needs as many inputs as outputs")
    outputs = list(d.outputs)
    inputs = set(d.inputs)
    rev: list[Gate] = []  # gates in output-to-input order

    frontier: list[int] = []
    for q, o in enumerate(outputs):
        (v, et), = d._adj[o].items()
        if et is EdgeType.HADAMARD:
            rev.append(H(q))
            d.set_edge_type(o, v, EdgeType.PLAIN)
        frontier.append(v)

    while True:
        live = [q for q in range(n) if frontier[q] not in inputs]
        where = {frontier[q]: q for q in live}
        for q in live:
            v = frontier[q]
            if d.phase(v):
                rev.append(ZPhase(q, d.phase(v)))
                d.set_phase(v, 0)
        for q in live:
            v = frontier[q]
            for w in sorted(d._adj[v]):
                if w in where and where[w] > q:
                    if d.edge_type(v, w) is not EdgeType.HADAMARD:
                        raise ExtractionStuck("plain edge between frontier spiders", frontier)
                    rev.append(CZ(q, where[w]))
                    d.remove_edge(v, w)
        for q in live:
            v = frontier[q]
            others = [w for w in d._adj[v] if w != outputs[q]]
            bnd = [w for w in others if w in inputs]
            if not bnd:
                continue
            if len(others) == 1:
                b = bnd[0]
                if d.edge_type(v, b) is EdgeType.HADAMARD:
                    rev.append(H(q))
                d.remove_vertex(v)
                d.add_edge(outputs[q], b, EdgeType.PLAIN)
                frontier[q] = b
            else:
                for b in bnd:
                    et = d.edge_type(v, b)
                    d.remove_edge(v, b)
                    z = d.add_vertex(d.type(v), qubit=d.qubit.get(b))
                    d.add_edge(v, z, EdgeType.HADAMARD)
                    d.add_edge(z, b, toggle(et))

        live = [q for q in range(n) if frontier[q] not in inputs]
        if not live:
            break
        fset = set(frontier)
        cols = sorted({w for q in live for w in d._adj[frontier[q]]} - fset - set(outputs))

        hub = next((w for w in cols if _axis_neighbors(d, w)), None)
        if hub is not None:
            q = next(q for q in live if d.connected(frontier[q], hub))
            v = frontier[q]
            (nz,) = _isolate_boundaries(d, v)
            _isolate_boundaries(d, hub)
            _pivot(d, v, hub)
            rev.append(H(q))
            d.set_edge_type(nz, outputs[q], EdgeType.PLAIN)
            frontier[q] = nz
            continue

        m = [[1 if d.connected(frontier[q], w) else 0 for w in cols] for q in live]
        singles = [i for i, row in enumerate(m) if sum(row) == 1]
        if not singles:
            ops = gauss_gf2(m)
            singles = [i for i, row in enumerate(m) if sum(row) == 1]
            if not singles:
                raise ExtractionStuck("no frontier row reduces to a single neighbour", frontier)
            for src, dst in ops:
                rev.append(CNOT(live[dst], live[src]))
            for i, q in enumerate(live):
                v = frontier[q]
                for j, w in enumerate(cols):
                    has = d.connected(v, w)
                    if m[i][j] and not has:
                        d.add_edge(v, w, EdgeType.HADAMARD)
                    elif not m[i][j] and has:
                        d.remove_edge(v, w)
        for i in singles:
            q = live[i]
            v = frontier[q]
            w = cols[m[i].index(1)]
            rev.append(H(q))
            d.remove_vertex(v)
            d.add_edge(outputs[q], w, EdgeType.PLAIN)
            frontier[q] = w

    # frontier[q] is now the input wired to output q
    position = {b: i for i, b in enumerate(d.inputs)}
    want = [position[frontier[q]] for q in range(n)]
    content = list(range(n))
    swaps: list[Gate] = []
    for q in range(n):
        if content[q] != want[q]:
            j = content.index(want[q])
            swaps.append(SWAP(q, j))
            content[q], content[j] = content[j], content[q]
    c = Circuit(n, swaps + rev[::-1])
    if decompose and all(g.phase is None or (g.phase * 4).denominator == 1 for g in c.gates):
        c = decompose_phases(c)
    return c
