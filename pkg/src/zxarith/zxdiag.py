"""ZX-diagrams: representation, circuit translation, graph-like form and tensor evaluation."""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from .circuit import Circuit, GateKind
from .phase import PhaseLike, format_phase, phase


class VertexType(enum.IntEnum):
    BOUNDARY = 0
    Z = 1
    X = 2


class EdgeType(enum.IntEnum):
    PLAIN = 1
    HADAMARD = 2


def toggle(et: EdgeType) -> EdgeType:
    return EdgeType.HADAMARD if et is EdgeType.PLAIN else EdgeType.PLAIN


def compose_edges(t1: EdgeType, t2: EdgeType) -> EdgeType:
    """Edge type of two edges spliced through an identity spider."""
    return EdgeType.PLAIN if t1 is t2 else EdgeType.HADAMARD


class ZxDiagram:
    """Open graph of phased spiders with plain/Hadamard edges.

    Parallel edges and self-loops are never stored: :meth:`add_edge_smart`
    resolves them on insertion with the Hopf law and its relatives.  Vertex ids
    are allocated from a counter and never reused.
    """

    def __init__(self):
        self._type: dict[int, VertexType] = {}
        self._phase: dict[int, Fraction] = {}
        self._adj: dict[int, dict[int, EdgeType]] = {}
        self.qubit: dict[int, int] = {}
        self.inputs: list[int] = []
        self.outputs: list[int] = []
        self._next = 0

    # -- construction -----------------------------------------------------

    def add_vertex(self, ty: VertexType, ph: PhaseLike = 0, qubit: Optional[int] = None) -> int:
        v = self._next
        self._next += 1
        self._type[v] = VertexType(ty)
        self._phase[v] = phase(ph) if ty is not VertexType.BOUNDARY else Fraction(0)
        self._adj[v] = {}
        if qubit is not None:
            self.qubit[v] = qubit
        return v

    def remove_vertex(self, v: int) -> None:
        for w in self._adj.pop(v):
            del self._adj[w][v]
        del self._type[v]
        del self._phase[v]
        self.qubit.pop(v, None)

    def add_edge(self, u: int, v: int, et: EdgeType = EdgeType.PLAIN) -> None:
        if u == v or v in self._adj[u]:
            raise ValueError(f"edge {u}-{v} would be a self-loop or parallel edge")
        self._adj[u][v] = et
        self._adj[v][u] = et

    def remove_edge(self, u: int, v: int) -> None:
        del self._adj[u][v]
        del self._adj[v][u]

    def set_edge_type(self, u: int, v: int, et: EdgeType) -> None:
        self._adj[u][v] = et
        self._adj[v][u] = et

    def add_edge_smart(self, u: int, v: int, et: EdgeType) -> None:
        """Add an edge, simplifying any self-loop or parallel pair it creates.

        Same-colour spiders: H+H cancel, plain+plain is one plain edge, plain+H
        is a plain edge plus a pi phase.  Complementary colours swap the roles
        of plain and Hadamard.
        """
        if u == v:
            if et is EdgeType.HADAMARD:
                self.add_to_phase(u, 1)
            return
        old = self._adj[u].get(v)
        if old is None:
            self.add_edge(u, v, et)
            return
        tu, tv = self._type[u], self._type[v]
        if VertexType.BOUNDARY in (tu, tv):
            raise ValueError("boundary vertices take exactly one edge")
        # work in the same-colour frame
        same = tu is tv
        a, b = (old, et) if same else (toggle(old), toggle(et))
        if a is EdgeType.HADAMARD and b is EdgeType.HADAMARD:
            self.remove_edge(u, v)
            return
        if a is not b:
            self.add_to_phase(u, 1)
        self.set_edge_type(u, v, EdgeType.PLAIN if same else EdgeType.HADAMARD)

    def set_inputs(self, ids) -> None:
        self.inputs = list(ids)

    def set_outputs(self, ids) -> None:
        self.outputs = list(ids)

    # -- queries ------------------------------------------------------------

    def vertices(self) -> list[int]:
        return list(self._type)

    def vertex_count(self) -> int:
        return len(self._type)

    def edges(self) -> Iterator[tuple[int, int, EdgeType]]:
        for u, nb in self._adj.items():
            for v, et in nb.items():
                if u < v:
                    yield u, v, et

    def edge_count(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    def type(self, v: int) -> VertexType:
        return self._type[v]

    def phase(self, v: int) -> Fraction:
        return self._phase[v]

    def set_phase(self, v: int, p: PhaseLike) -> None:
        self._phase[v] = phase(p)

    def add_to_phase(self, v: int, p: PhaseLike) -> None:
        self._phase[v] = phase(self._phase[v] + Fraction(p))

    def set_type(self, v: int, ty: VertexType) -> None:
        self._type[v] = ty

    def neighbors(self, v: int) -> list[int]:
        return list(self._adj[v])

    def neighbor_set(self, v: int) -> set[int]:
        return set(self._adj[v])

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def edge_type(self, u: int, v: int) -> Optional[EdgeType]:
        return self._adj[u].get(v)

    def connected(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def is_boundary(self, v: int) -> bool:
        return self._type[v] is VertexType.BOUNDARY

    def has_boundary_neighbor(self, v: int) -> bool:
        return any(self._type[w] is VertexType.BOUNDARY for w in self._adj[v])

    def is_interior(self, v: int) -> bool:
        """A spider with no boundary among its neighbours."""
        return not self.is_boundary(v) and not self.has_boundary_neighbor(v)

    def spiders(self) -> list[int]:
        return [v for v, t in self._type.items() if t is not VertexType.BOUNDARY]

    def internal_spider_count(self) -> int:
        return sum(1 for v in self.spiders() if self.is_interior(v))

    def non_clifford_count(self) -> int:
        return sum(1 for v in self.spiders() if self._phase[v].denominator > 2)

    def t_like_count(self) -> int:
        return sum(1 for v in self.spiders() if self._phase[v].denominator == 4)

    def copy(self) -> ZxDiagram:
        d = ZxDiagram()
        d._type = dict(self._type)
        d._phase = dict(self._phase)
        d._adj = {v: dict(nb) for v, nb in self._adj.items()}
        d.qubit = dict(self.qubit)
        d.inputs = list(self.inputs)
        d.outputs = list(self.outputs)
        d._next = self._next
        return d

    def structure(self) -> tuple:
        """Hashable snapshot used for determinism and idempotence checks."""
        return (
            tuple(sorted((v, int(t), self._phase[v]) for v, t in self._type.items())),
            tuple(sorted((u, v, int(et)) for u, v, et in self.edges())),
            tuple(self.inputs),
            tuple(self.outputs),
        )

    # -- predicates ---------------------------------------------------------

    def is_graph_like(self, strict: bool = True) -> bool:
        """Check the graph-like invariants.

        With ``strict`` every boundary must hang off a plain edge, as produced by
        :func:`to_graph_like`; simplification may leave Hadamard boundary edges,
        which the relaxed check admits.
        """
        for v, t in self._type.items():
            if t is VertexType.X:
                return False
            if t is VertexType.BOUNDARY:
                if self.degree(v) != 1:
                    return False
                if strict and next(iter(self._adj[v].values())) is not EdgeType.PLAIN:
                    return False
        for u, v, et in self.edges():
            if self.is_boundary(u) or self.is_boundary(v):
                continue
            if et is not EdgeType.HADAMARD:
                return False
        io = set(self.inputs) | set(self.outputs)
        bnd = {v for v, t in self._type.items() if t is VertexType.BOUNDARY}
        return io == bnd and not set(self.inputs) & set(self.outputs)

    def is_identity(self) -> bool:
        """Every input wired straight to the output of the same index, nothing else."""
        if len(self.inputs) != len(self.outputs):
            return False
        if len(self._type) != 2 * len(self.inputs):
            return False
        return all(
            self._adj[i].get(o) is EdgeType.PLAIN for i, o in zip(self.inputs, self.outputs)
        )

    # -- output -------------------------------------------------------------

    def to_dot(self) -> str:
        lines = ["graph zx {"]
        colours = {VertexType.Z: "green", VertexType.X: "red", VertexType.BOUNDARY: "black"}
        for v, t in self._type.items():
            label = f"{v}" if t is VertexType.BOUNDARY else f"{v}:{format_phase(self._phase[v])}"
            lines.append(f'  {v} [label="{label}", color={colours[t]}, kind={t.name}];')
        for u, v, et in self.edges():
            style = "solid" if et is EdgeType.PLAIN else "dashed"
            lines.append(f"  {u} -- {v} [style={style}];")
        lines.append("}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"ZxDiagram({len(self._type)} vertices, {self.edge_count()} edges)"


# -- circuits ---------------------------------------------------------------


def from_circuit(circuit: Circuit) -> ZxDiagram:
    """Translate a Clifford+T circuit gate by gate. Toffolis must be decomposed first."""
    d = ZxDiagram()
    n = circuit.qubit_count
    d.set_inputs(d.add_vertex(VertexType.BOUNDARY, qubit=q) for q in range(n))
    last = list(d.inputs)
    pending = [EdgeType.PLAIN] * n

    def attach(q: int, ty: VertexType, ph=0) -> int:
        v = d.add_vertex(ty, ph, qubit=q)
        d.add_edge(last[q], v, pending[q])
        last[q] = v
        pending[q] = EdgeType.PLAIN
        return v

    for g in circuit.gates:
        k = g.kind
        p = g.z_phase()
        if p is not None:
            attach(g.qubits[0], VertexType.Z, p)
        elif k is GateKind.H:
            q = g.qubits[0]
            pending[q] = toggle(pending[q])
        elif k is GateKind.X:
            attach(g.qubits[0], VertexType.X, 1)
        elif k is GateKind.CNOT:
            c = attach(g.qubits[0], VertexType.Z)
            t = attach(g.qubits[1], VertexType.X)
            d.add_edge(c, t, EdgeType.PLAIN)
        elif k is GateKind.CZ:
            a = attach(g.qubits[0], VertexType.Z)
            b = attach(g.qubits[1], VertexType.Z)
            d.add_edge(a, b, EdgeType.HADAMARD)
        elif k is GateKind.SWAP:
            a, b = g.qubits
            last[a], last[b] = last[b], last[a]
            pending[a], pending[b] = pending[b], pending[a]
        else:
            raise ValueError(f"{k.name} has no direct diagram translation; decompose it first")
    outs = []
    for q in range(n):
        o = d.add_vertex(VertexType.BOUNDARY, qubit=q)
        d.add_edge(last[q], o, pending[q])
        outs.append(o)
    d.set_outputs(outs)
    return d


def color_change(d: ZxDiagram, v: int) -> None:
    """Swap a spider's colour, toggling every incident edge (in place)."""
    t = d.type(v)
    if t is VertexType.BOUNDARY:
        raise ValueError("cannot colour-change a boundary")
    d.set_type(v, VertexType.X if t is VertexType.Z else VertexType.Z)
    for w in d.neighbors(v):
        d.set_edge_type(v, w, toggle(d.edge_type(v, w)))


def fuse(d: ZxDiagram, u: int, v: int) -> None:
    """Merge spider ``v`` into ``u`` (same colour, plain edge), in place."""
    d.add_to_phase(u, d.phase(v))
    for w, et in list(d._adj[v].items()):
        if w != u:
            d.add_edge_smart(u, w, et)
    d.remove_vertex(v)


def _fusable_neighbor(d: ZxDiagram, u: int) -> Optional[int]:
    t = d.type(u)
    for w, et in d._adj[u].items():
        if et is EdgeType.PLAIN and d.type(w) is t:
            return w
    return None


def _fuse_all(d: ZxDiagram) -> int:
    count = 0
    changed = True
    while changed:
        changed = False
        for u in sorted(d.vertices()):
            if u not in d._type or d.type(u) is VertexType.BOUNDARY:
                continue
            while (w := _fusable_neighbor(d, u)) is not None:
                fuse(d, u, w)
                count += 1
                changed = True
    return count


def to_graph_like(diagram: ZxDiagram) -> ZxDiagram:
    """Return a graph-like copy: Z spiders only, Hadamard edges between spiders,
    boundaries attached by plain edges."""
    d = diagram.copy()
    for v in sorted(d.vertices()):
        if d.type(v) is VertexType.X:
            color_change(d, v)
    _fuse_all(d)
    for b in d.inputs + d.outputs:
        (w, et), = d._adj[b].items()
        if et is EdgeType.PLAIN:
            continue
        d.remove_edge(b, w)
        z = d.add_vertex(VertexType.Z, qubit=d.qubit.get(b))
        d.add_edge(b, z, EdgeType.PLAIN)
        if d.is_boundary(w):
            z2 = d.add_vertex(VertexType.Z, qubit=d.qubit.get(w))
            d.add_edge(z, z2, EdgeType.HADAMARD)
            d.add_edge(z2, w, EdgeType.PLAIN)
        else:
            d.add_edge(z, w, EdgeType.HADAMARD)
    return d


# -- tensor evaluation ------------------------------------------------------

MAX_TENSOR_SPIDERS = 24
_HMAT = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


class TensorSizeError(ValueError):
    """The diagram has too many spiders for brute-force contraction."""


def _spider_tensor(ty: VertexType, ph: Fraction, deg: int) -> np.ndarray:
    t = np.zeros((2,) * deg, dtype=complex)
    if deg == 0:
        return np.array(1 + np.exp(1j * np.pi * float(ph)))
    t[(0,) * deg] = 1
    t[(1,) * deg] += np.exp(1j * np.pi * float(ph))
    if ty is VertexType.X:
        for ax in range(deg):
            t = np.moveaxis(np.tensordot(_HMAT, t, axes=([1], [ax])), 0, ax)
    return t


def tensor(diagram: ZxDiagram, max_spiders: int = MAX_TENSOR_SPIDERS) -> np.ndarray:
    """Matrix of the diagram, rows indexed by outputs and columns by inputs.

    Boundary index q is bit q of the row/column index (little-endian).
    """
    d = diagram
    spiders = d.spiders()
    if len(spiders) > max_spiders:
        raise TensorSizeError(f"{len(spiders)} spiders exceeds the bound of {max_spiders}")
    # one label per edge; boundaries contribute open labels
    label = {}
    for i, (u, v, et) in enumerate(d.edges()):
        label[(u, v)] = label[(v, u)] = i
    tensors: list[tuple[np.ndarray, list[int]]] = []
    open_label = {}
    for b in d.inputs + d.outputs:
        (w, et), = d._adj[b].items()
        open_label[b] = label[(b, w)]
    done_bb = set()
    for v in spiders:
        nbs = d.neighbors(v)
        t = _spider_tensor(d.type(v), d.phase(v), len(nbs))
        for ax, w in enumerate(nbs):
            # each Hadamard edge is absorbed by its lower-id spider endpoint, or by a spider
            # when the other end is a boundary
            if d.edge_type(v, w) is EdgeType.HADAMARD and (d.is_boundary(w) or v < w):
                t = np.moveaxis(np.tensordot(_HMAT, t, axes=([1], [ax])), 0, ax)
        tensors.append((t, [label[(v, w)] for w in nbs]))
    for b in d.inputs + d.outputs:
        (w, et), = d._adj[b].items()
        if d.is_boundary(w) and (w, b) not in done_bb:
            done_bb.add((b, w))
            # a bare wire needs two labels so each boundary keeps its own index
            fresh = -1 - len(done_bb)
            m = np.eye(2, dtype=complex) if et is EdgeType.PLAIN else _HMAT
            tensors.append((m, [label[(b, w)], fresh]))
            open_label[w] = fresh
    result, labels = _contract(tensors)
    order = [open_label[o] for o in reversed(d.outputs)] + [open_label[i] for i in reversed(d.inputs)]
    result = np.transpose(result, [labels.index(l) for l in order]) if order else result
    return np.asarray(result).reshape(2 ** len(d.outputs), 2 ** len(d.inputs))


def _contract(tensors: list[tuple[np.ndarray, list[int]]]) -> tuple[np.ndarray, list[int]]:
    """Greedy pairwise contraction over shared labels."""
    tensors = list(tensors)
    scalar = complex(1)
    while len(tensors) > 1:
        best = None
        for i in range(len(tensors)):
            li = set(tensors[i][1])
            for j in range(i + 1, len(tensors)):
                shared = li & set(tensors[j][1])
                if not shared:
                    continue
                size = len(li) + len(tensors[j][1]) - 2 * len(shared)
                if best is None or size < best[0]:
                    best = (size, i, j, shared)
        if best is None:
            # disconnected pieces: outer product of the two smallest
            tensors.sort(key=lambda t: len(t[1]))
            (a, la), (b, lb) = tensors[0], tensors[1]
            tensors = tensors[2:] + [(np.multiply.outer(a, b), la + lb)]
            continue
        _, i, j, shared = best
        (a, la), (b, lb) = tensors[i], tensors[j]
        sh = sorted(shared)
        c = np.tensordot(a, b, axes=([la.index(s) for s in sh], [lb.index(s) for s in sh]))
        lc = [l for l in la if l not in shared] + [l for l in lb if l not in shared]
        tensors = [t for k, t in enumerate(tensors) if k not in (i, j)] + [(c, lc)]
    if not tensors:
        return np.array(scalar), []
    return tensors[0][0] * scalar, tensors[0][1]
