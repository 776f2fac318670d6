"""ZX rewrite rules and the T-count reducing simplification strategy.

Every rule has a checker, which raises :class:`RewriteError` when the site does
not match, and an in-place rewriter prefixed with an underscore.  The public
functions copy their input.  :func:`full_simplify` drives the in-place
rewriters over a private copy, scanning vertices in increasing id order and
re-checking each site just before it fires, so runs are deterministic.

Global scalars are dropped throughout.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .phase import is_clifford, is_pauli, is_proper_clifford
from .zxdiag import (
    EdgeType,
    VertexType,
    ZxDiagram,
    compose_edges,
    fuse,
    to_graph_like,
    toggle,
)


class RewriteError(ValueError):
    """A rule was applied to a site that does not satisfy its precondition."""


class RewriteRule(enum.Enum):
    Fusion = "fusion"
    IdentityRemoval = "id"
    Hopf = "hopf"
    Bialgebra = "bialgebra"
    PiCopy = "pi_copy"
    LocalComplement = "lcomp"
    Pivot = "pivot"
    PivotBoundary = "pivot_boundary"
    PivotGadget = "pivot_gadget"
    GadgetFusion = "gadget_fusion"


@dataclass(frozen=True)
class RewriteSite:
    rule: RewriteRule
    vertices: tuple[int, ...]
    # only read by Hopf: type of the incoming parallel edge
    edge_type: Optional[EdgeType] = None


@dataclass(frozen=True)
class PhaseGadget:
    axis: int
    hub: int
    support: frozenset


@dataclass
class TraceRecord:
    rule: RewriteRule
    vertices: tuple[int, ...]
    spiders: int
    non_clifford: int

    def line(self) -> str:
        vs = ",".join(map(str, self.vertices))
        return f"{self.rule.value}\t{vs}\t{self.spiders}\t{self.non_clifford}"


@dataclass
class Trace:
    records: list[TraceRecord] = field(default_factory=list)

    def add(self, d: ZxDiagram, rule: RewriteRule, vertices) -> None:
        nb = len(d.inputs) + len(d.outputs)
        self.records.append(
            TraceRecord(rule, tuple(vertices), d.vertex_count() - nb, d.non_clifford_count())
        )

    def to_text(self) -> str:
        return "".join(r.line() + "\n" for r in self.records)

    def __len__(self) -> int:
        return len(self.records)


# -- helpers -----------------------------------------------------------------


def _is_spider(d: ZxDiagram, v: int) -> bool:
    return v in d._type and not d.is_boundary(v)


def _interior_z(d: ZxDiagram, v: int) -> bool:
    """Z spider whose edges all go to Z spiders through Hadamard edges."""
    if not _is_spider(d, v) or d.type(v) is not VertexType.Z:
        return False
    for w, et in d._adj[v].items():
        if d.type(w) is not VertexType.Z or et is not EdgeType.HADAMARD:
            return False
    return True


def _axis_neighbors(d: ZxDiagram, v: int) -> list[int]:
    return [w for w in d._adj[v] if d.degree(w) == 1 and not d.is_boundary(w)]


def _is_nonclifford_hub(d: ZxDiagram, v: int) -> bool:
    return any(not is_clifford(d.phase(a)) for a in _axis_neighbors(d, v))


def _remove_isolated(d: ZxDiagram, v: int) -> None:
    # an isolated spider is the scalar 1 + e^{i alpha}; keep the zero one
    if v in d._type and not d.is_boundary(v) and d.degree(v) == 0 and d.phase(v) != 1:
        d.remove_vertex(v)


# -- basic rules -------------------------------------------------------------


def check_fusion(d: ZxDiagram, u: int, v: int) -> None:
    if not (_is_spider(d, u) and _is_spider(d, v)):
        raise RewriteError("fusion needs two spiders")
    if d.type(u) is not d.type(v) or d.edge_type(u, v) is not EdgeType.PLAIN:
        raise RewriteError("fusion needs same-colour spiders joined by a plain edge")


def check_identity(d: ZxDiagram, v: int) -> None:
    if not _is_spider(d, v) or d.phase(v) != 0 or d.degree(v) != 2:
        raise RewriteError("identity removal needs a phase-0 spider of degree 2")


def _remove_identity(d: ZxDiagram, v: int) -> None:
    (n1, t1), (n2, t2) = d._adj[v].items()
    d.remove_vertex(v)
    d.add_edge_smart(n1, n2, compose_edges(t1, t2))


def check_hopf(d: ZxDiagram, u: int, v: int, et: Optional[EdgeType]) -> None:
    if et is None or not (_is_spider(d, u) and _is_spider(d, v)):
        raise RewriteError("Hopf needs two spiders and the type of the parallel edge")
    old = d.edge_type(u, v)
    if old is None:
        raise RewriteError("Hopf needs an existing edge")
    same = d.type(u) is d.type(v)
    want = EdgeType.HADAMARD if same else EdgeType.PLAIN
    if old is not want or et is not want:
        raise RewriteError("the parallel pair is not a Hopf pair")


def check_bialgebra(d: ZxDiagram, u: int, v: int) -> None:
    if not (_is_spider(d, u) and _is_spider(d, v)):
        raise RewriteError("bialgebra needs two spiders")
    if {d.type(u), d.type(v)} != {VertexType.Z, VertexType.X}:
        raise RewriteError("bialgebra needs a Z and an X spider")
    if d.phase(u) != 0 or d.phase(v) != 0 or d.edge_type(u, v) is not EdgeType.PLAIN:
        raise RewriteError("bialgebra needs phase-0 spiders joined by a plain edge")


def _bialgebra(d: ZxDiagram, u: int, v: int) -> list[int]:
    """Replace the Z-X pair by a complete bipartite graph of X and Z spiders."""
    tu, tv = d.type(u), d.type(v)
    nu = [(w, et) for w, et in d._adj[u].items() if w != v]
    nv = [(w, et) for w, et in d._adj[v].items() if w != u]
    qu, qv = d.qubit.get(u), d.qubit.get(v)
    d.remove_vertex(u)
    d.remove_vertex(v)
    # u's legs now end on copies of v's colour and vice versa
    xs = [(d.add_vertex(tv, qubit=qu), w, et) for w, et in nu]
    zs = [(d.add_vertex(tu, qubit=qv), w, et) for w, et in nv]
    for s_, w, et in xs + zs:
        d.add_edge(s_, w, et)
    for x, _, _ in xs:
        for z, _, _ in zs:
            d.add_edge(x, z, EdgeType.PLAIN)
    return [x for x, _, _ in xs] + [z for z, _, _ in zs]


def check_pi_copy(d: ZxDiagram, x: int, u: int) -> None:
    if not (_is_spider(d, x) and _is_spider(d, u)):
        raise RewriteError("pi-copy needs two spiders")
    if d.phase(x) != 1 or d.degree(x) != 2:
        raise RewriteError("pi-copy needs a degree-2 pi spider")
    if d.type(x) is d.type(u) or d.edge_type(x, u) is not EdgeType.PLAIN:
        raise RewriteError("pi-copy pushes through a complementary spider on a plain edge")


def _pi_copy(d: ZxDiagram, x: int, u: int) -> None:
    """Push the pi spider ``x`` through ``u``, copying it onto u's other legs."""
    (w, et), = [(w, et) for w, et in d._adj[x].items() if w != u]
    colour = d.type(x)
    d.remove_vertex(x)
    d.set_phase(u, -d.phase(u))
    others = list(d._adj[u].items())
    for n, ent in others:
        p = d.add_vertex(colour, 1, qubit=d.qubit.get(u))
        d.remove_edge(u, n)
        d.add_edge(u, p, EdgeType.PLAIN)
        d.add_edge(p, n, ent)
    d.add_edge_smart(u, w, et)


# -- graph-like rules ----------------------------------------------------------


def check_lcomp(d: ZxDiagram, v: int) -> None:
    if not _interior_z(d, v):
        raise RewriteError("local complementation needs an internal graph-like spider")
    if not is_proper_clifford(d.phase(v)):
        raise RewriteError("local complementation needs phase +-pi/2")


def _lcomp(d: ZxDiagram, v: int) -> None:
    a = d.phase(v)
    ns = sorted(d._adj[v])
    d.remove_vertex(v)
    for i, n in enumerate(ns):
        d.add_to_phase(n, -a)
        for m in ns[i + 1:]:
            d.add_edge_smart(n, m, EdgeType.HADAMARD)
    for n in ns:
        _remove_isolated(d, n)


def check_pivot(d: ZxDiagram, u: int, v: int) -> None:
    if u == v or not (_interior_z(d, u) and _interior_z(d, v)):
        raise RewriteError("pivot needs two distinct internal graph-like spiders")
    if not d.connected(u, v):
        raise RewriteError("pivot needs adjacent spiders")
    if not (is_pauli(d.phase(u)) and is_pauli(d.phase(v))):
        raise RewriteError("pivot needs Pauli phases")


def _pivot(d: ZxDiagram, u: int, v: int) -> None:
    pu, pv = d.phase(u), d.phase(v)
    nu = d.neighbor_set(u) - {v}
    nv = d.neighbor_set(v) - {u}
    shared = nu & nv
    only_u = sorted(nu - shared)
    only_v = sorted(nv - shared)
    shared = sorted(shared)
    d.remove_vertex(u)
    d.remove_vertex(v)
    for x in only_u:
        d.add_to_phase(x, pv)
    for x in only_v:
        d.add_to_phase(x, pu)
    for x in shared:
        d.add_to_phase(x, pu + pv + 1)
    for group1, group2 in ((only_u, only_v), (only_u, shared), (only_v, shared)):
        for x in group1:
            for y in group2:
                d.add_edge_smart(x, y, EdgeType.HADAMARD)
    for x in only_u + only_v + shared:
        _remove_isolated(d, x)


def _isolate_boundaries(d: ZxDiagram, v: int) -> list[int]:
    """Put a fresh phase-0 spider between ``v`` and each boundary it touches."""
    added = []
    for b in [w for w in d.neighbors(v) if d.is_boundary(w)]:
        et = d.edge_type(v, b)
        d.remove_edge(v, b)
        n = d.add_vertex(VertexType.Z, qubit=d.qubit.get(b))
        d.add_edge(v, n, EdgeType.HADAMARD)
        d.add_edge(n, b, toggle(et))
        added.append(n)
    return added


def _graph_like_except_boundaries(d: ZxDiagram, v: int) -> bool:
    if not _is_spider(d, v) or d.type(v) is not VertexType.Z:
        return False
    for w, et in d._adj[v].items():
        if d.is_boundary(w):
            continue
        if d.type(w) is not VertexType.Z or et is not EdgeType.HADAMARD:
            return False
    return True


def check_pivot_boundary(d: ZxDiagram, u: int, v: int) -> None:
    if u == v or not _interior_z(d, u) or not _graph_like_except_boundaries(d, v):
        raise RewriteError("boundary pivot needs an internal spider and a graph-like boundary spider")
    if not d.connected(u, v):
        raise RewriteError("boundary pivot needs adjacent spiders")
    if not (is_pauli(d.phase(u)) and is_pauli(d.phase(v))):
        raise RewriteError("boundary pivot needs Pauli phases")
    if sum(1 for w in d._adj[v] if d.is_boundary(w)) != 1:
        raise RewriteError("boundary pivot needs exactly one boundary on the partner")


def _pivot_boundary(d: ZxDiagram, u: int, v: int) -> list[int]:
    added = _isolate_boundaries(d, v)
    _pivot(d, u, v)
    return added


def check_pivot_gadget(d: ZxDiagram, u: int, v: int) -> None:
    if u == v or not (_interior_z(d, u) and _interior_z(d, v)):
        raise RewriteError("gadget pivot needs two internal graph-like spiders")
    if not d.connected(u, v):
        raise RewriteError("gadget pivot needs adjacent spiders")
    if not is_pauli(d.phase(u)):
        raise RewriteError("gadget pivot needs a Pauli partner")
    if is_clifford(d.phase(v)) or d.degree(v) < 2:
        raise RewriteError("gadget pivot extrudes a non-Clifford spider that is not a gadget axis")


def _unfuse_gadget(d: ZxDiagram, v: int) -> tuple[int, int]:
    """Move v's phase onto a new gadget hanging off v; returns (hub, axis)."""
    hub = d.add_vertex(VertexType.Z, qubit=d.qubit.get(v))
    axis = d.add_vertex(VertexType.Z, d.phase(v), qubit=d.qubit.get(v))
    d.set_phase(v, 0)
    d.add_edge(v, hub, EdgeType.HADAMARD)
    d.add_edge(hub, axis, EdgeType.HADAMARD)
    return hub, axis


def _normalize_hub(d: ZxDiagram, hub: int, axis: int) -> None:
    # a pi on the hub copies through to the axis as a sign flip
    if d.phase(hub) == 1:
        d.set_phase(hub, 0)
        d.set_phase(axis, -d.phase(axis))


def _pivot_gadget(d: ZxDiagram, u: int, v: int) -> tuple[int, int]:
    hub, axis = _unfuse_gadget(d, v)
    _pivot(d, u, v)
    _normalize_hub(d, hub, axis)
    return hub, axis


# -- phase gadgets -------------------------------------------------------------


def find_gadgets(d: ZxDiagram) -> list[PhaseGadget]:
    """All phase gadgets, one per hub, ordered by hub id.

    A gadget is a degree-1 spider (the axis) hanging by a Hadamard edge off a
    Pauli-phase internal hub.  A hub with two degree-1 neighbours is skipped:
    its leaves do not add up to one parity phase.
    """
    found = {}
    for a in sorted(d.spiders()):
        if d.degree(a) != 1 or d.type(a) is not VertexType.Z:
            continue
        (h, et), = d._adj[a].items()
        if h in found or et is not EdgeType.HADAMARD or not _interior_z(d, h):
            continue
        if not is_pauli(d.phase(h)) or d.degree(h) < 2 or len(_axis_neighbors(d, h)) != 1:
            continue
        support = frozenset(w for w in d._adj[h] if not (d.degree(w) == 1 and not d.is_boundary(w)))
        found[h] = PhaseGadget(a, h, support)
    return [found[h] for h in sorted(found)]


def check_gadget_fusion(d: ZxDiagram, g1: PhaseGadget, g2: PhaseGadget) -> None:
    for g in (g1, g2):
        if g.hub not in d._type or g.axis not in d._type or not d.connected(g.hub, g.axis):
            raise RewriteError("stale gadget")
        if _axis_neighbors(d, g.hub) != [g.axis]:
            raise RewriteError("gadget hub must carry exactly one axis")
    if g1.hub == g2.hub:
        raise RewriteError("gadget fusion needs two different gadgets")
    s1 = d.neighbor_set(g1.hub) - {g1.axis}
    s2 = d.neighbor_set(g2.hub) - {g2.axis}
    if s1 != s2:
        raise RewriteError("gadget fusion needs identical supports")


def _gadget_fusion(d: ZxDiagram, keep: PhaseGadget, drop: PhaseGadget) -> None:
    a1, a2 = keep.axis, drop.axis
    _normalize_hub(d, keep.hub, a1)
    _normalize_hub(d, drop.hub, a2)
    d.add_to_phase(a1, d.phase(a2))
    d.remove_vertex(a2)
    d.remove_vertex(drop.hub)
    if d.phase(a1) == 0:
        d.remove_vertex(a1)
        d.remove_vertex(keep.hub)


# -- public single-rule API ------------------------------------------------------


def apply_rule(diagram: ZxDiagram, site: RewriteSite) -> ZxDiagram:
    """Return a copy of ``diagram`` with ``site`` rewritten. Never a silent no-op."""
    d = diagram.copy()
    vs = site.vertices
    r = site.rule

    def need(k):
        if len(vs) != k:
            raise RewriteError(f"{r.name} takes {k} vertices")

    if r is RewriteRule.Fusion:
        need(2)
        check_fusion(d, *vs)
        fuse(d, *vs)
    elif r is RewriteRule.IdentityRemoval:
        need(1)
        check_identity(d, vs[0])
        _remove_identity(d, vs[0])
    elif r is RewriteRule.Hopf:
        need(2)
        check_hopf(d, vs[0], vs[1], site.edge_type)
        d.add_edge_smart(vs[0], vs[1], site.edge_type)
    elif r is RewriteRule.Bialgebra:
        need(2)
        check_bialgebra(d, *vs)
        _bialgebra(d, *vs)
    elif r is RewriteRule.PiCopy:
        need(2)
        check_pi_copy(d, *vs)
        _pi_copy(d, *vs)
    elif r is RewriteRule.LocalComplement:
        need(1)
        check_lcomp(d, vs[0])
        _lcomp(d, vs[0])
    elif r is RewriteRule.Pivot:
        need(2)
        check_pivot(d, *vs)
        _pivot(d, *vs)
    elif r is RewriteRule.PivotBoundary:
        need(2)
        check_pivot_boundary(d, *vs)
        _pivot_boundary(d, *vs)
    elif r is RewriteRule.PivotGadget:
        need(2)
        check_pivot_gadget(d, *vs)
        _pivot_gadget(d, *vs)
    elif r is RewriteRule.GadgetFusion:
        need(2)
        g1, g2 = (_gadget_at(d, h) for h in vs)
        check_gadget_fusion(d, g1, g2)
        _gadget_fusion(d, g1, g2)
    else:  # pragma: no cover
        raise RewriteError(f"unknown rule {r}")
    return d


def _gadget_at(d: ZxDiagram, hub: int) -> PhaseGadget:
    for g in find_gadgets(d):
        if g.hub == hub:
            return g
    raise RewriteError(f"{hub} is not a gadget hub")


def local_complement(diagram: ZxDiagram, v: int) -> ZxDiagram:
    return apply_rule(diagram, RewriteSite(RewriteRule.LocalComplement, (v,)))


def pivot(diagram: ZxDiagram, u: int, v: int) -> ZxDiagram:
    return apply_rule(diagram, RewriteSite(RewriteRule.Pivot, (u, v)))


def gadget_fusion(diagram: ZxDiagram, g1: PhaseGadget, g2: PhaseGadget) -> ZxDiagram:
    d = diagram.copy()
    check_gadget_fusion(d, g1, g2)
    _gadget_fusion(d, g1, g2)
    return d


# -- strategy ------------------------------------------------------------------


def _note(trace: Optional[Trace], d: ZxDiagram, rule: RewriteRule, vs) -> None:
    if trace is not None:
        trace.add(d, rule, vs)


def _spider_pass(d: ZxDiagram, trace: Optional[Trace]) -> int:
    """Identity removal and fusion until neither applies."""
    total = 0
    changed = True
    while changed:
        changed = False
        for v in sorted(d.vertices()):
            if not _is_spider(d, v):
                continue
            if d.degree(v) == 0:
                _remove_isolated(d, v)
                continue
            if d.phase(v) == 0 and d.degree(v) == 2:
                _remove_identity(d, v)
                _note(trace, d, RewriteRule.IdentityRemoval, (v,))
                total += 1
                changed = True
                continue
            while True:
                w = next((w for w, et in d._adj[v].items()
                          if et is EdgeType.PLAIN and d.type(w) is d.type(v)), None)
                if w is None:
                    break
                fuse(d, v, w)
                _note(trace, d, RewriteRule.Fusion, (v, w))
                total += 1
                changed = True
    return total


def _lcomp_pass(d: ZxDiagram, trace: Optional[Trace]) -> int:
    n = 0
    for v in sorted(d.vertices()):
        if v in d._type and _interior_z(d, v) and is_proper_clifford(d.phase(v)):
            _lcomp(d, v)
            _note(trace, d, RewriteRule.LocalComplement, (v,))
            n += 1
    return n


def _pivot_candidate(d: ZxDiagram, v: int) -> bool:
    return _interior_z(d, v) and is_pauli(d.phase(v)) and not _is_nonclifford_hub(d, v)


def _pivot_pass(d: ZxDiagram, trace: Optional[Trace]) -> int:
    n = 0
    for u in sorted(d.vertices()):
        if u not in d._type or not _pivot_candidate(d, u):
            continue
        for w in sorted(d._adj[u]):
            if _pivot_candidate(d, w):
                _pivot(d, u, w)
                _note(trace, d, RewriteRule.Pivot, (u, w))
                n += 1
                break
    return n


def _pivot_boundary_pass(d: ZxDiagram, trace: Optional[Trace]) -> int:
    n = 0
    for u in sorted(d.vertices()):
        if u not in d._type or not _pivot_candidate(d, u):
            continue
        for w in sorted(d._adj[u]):
            if not (_graph_like_except_boundaries(d, w) and is_pauli(d.phase(w))):
                continue
            if _is_nonclifford_hub(d, w):
                continue
            if sum(1 for b in d._adj[w] if d.is_boundary(b)) != 1:
                continue
            _pivot_boundary(d, u, w)
            _note(trace, d, RewriteRule.PivotBoundary, (u, w))
            n += 1
            break
    return n


def _pivot_gadget_pass(d: ZxDiagram, trace: Optional[Trace]) -> int:
    n = 0
    for u in sorted(d.vertices()):
        if u not in d._type or not _interior_z(d, u) or not is_pauli(d.phase(u)):
            continue
        if _axis_neighbors(d, u):
            continue
        for w in sorted(d._adj[u]):
            if (_interior_z(d, w) and not is_clifford(d.phase(w)) and d.degree(w) > 1
                    and not _axis_neighbors(d, w)):
                _pivot_gadget(d, u, w)
                _note(trace, d, RewriteRule.PivotGadget, (u, w))
                n += 1
                break
    return n


def _gadget_fusion_pass(d: ZxDiagram, trace: Optional[Trace]) -> int:
    groups: dict[frozenset, list[PhaseGadget]] = {}
    for g in find_gadgets(d):
        groups.setdefault(g.support, []).append(g)
    n = 0
    for gs in groups.values():
        keep = gs[0]
        for other in gs[1:]:
            if keep.hub not in d._type:
                # the previous fusion cancelled to zero; restart the group from here
                keep = other
                continue
            try:
                check_gadget_fusion(d, keep, other)
            except RewriteError:
                # an earlier fusion in this pass touched one of the supports
                continue
            _gadget_fusion(d, keep, other)
            _note(trace, d, RewriteRule.GadgetFusion, (keep.hub, other.hub))
            n += 1
    return n


def _interior_clifford(d: ZxDiagram, trace: Optional[Trace]) -> None:
    while True:
        n = _spider_pass(d, trace)
        n += _lcomp_pass(d, trace)
        n += _pivot_pass(d, trace)
        if n == 0:
            return


def _clifford(d: ZxDiagram, trace: Optional[Trace]) -> None:
    while True:
        _interior_clifford(d, trace)
        if _pivot_boundary_pass(d, trace) == 0:
            return


def full_simplify(diagram: ZxDiagram, trace: Optional[Trace] = None) -> ZxDiagram:
    """Simplify to a graph-like fixpoint, reducing the number of non-Clifford phases.

    Clifford spiders are removed with local complementation and pivoting,
    non-Clifford ones next to Pauli spiders are pulled out as phase gadgets,
    and gadgets acting on the same support are fused.
    """
    d = to_graph_like(diagram)
    _interior_clifford(d, trace)
    _pivot_gadget_pass(d, trace)
    while True:
        _clifford(d, trace)
        i = _gadget_fusion_pass(d, trace)
        _interior_clifford(d, trace)
        j = _pivot_gadget_pass(d, trace)
        if i + j == 0:
            return d
