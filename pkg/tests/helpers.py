"""Random circuits and diagrams shared by the test modules."""

import itertools
import random
from collections import Counter, defaultdict
from fractions import Fraction

from hypothesis import strategies as st

from zxarith.circuit import (
    CNOT, CZ, SWAP, Circuit, H, S, Sdg, T, Tdg, Toffoli, X, Z, ZPhase,
)
from zxarith.rewrite import (
    RewriteError,
    RewriteRule,
    RewriteSite,
    apply_rule,
    check_bialgebra,
    check_fusion,
    check_gadget_fusion,
    check_hopf,
    check_identity,
    check_lcomp,
    check_pi_copy,
    check_pivot,
    check_pivot_boundary,
    check_pivot_gadget,
    find_gadgets,
)
from zxarith.verify import proportional
from zxarith.zxdiag import EdgeType, VertexType, ZxDiagram, from_circuit, tensor, to_graph_like

ONE_QUBIT = [H, X, Z, S, Sdg, T, Tdg]
TWO_QUBIT = [CNOT, CZ, SWAP]


def random_circuit(rng, n, m, toffoli=False, zphase=False):
    kinds = ONE_QUBIT + (TWO_QUBIT if n > 1 else [])
    if toffoli and n > 2:
        kinds = kinds + [Toffoli]
    if zphase:
        kinds = kinds + [ZPhase]
    gates = []
    for _ in range(m):
        k = rng.choice(kinds)
        if k is ZPhase:
            gates.append(ZPhase(rng.randrange(n), Fraction(rng.randrange(16), rng.choice([1, 2, 4, 8]))))
        elif k is Toffoli:
            gates.append(k(*rng.sample(range(n), 3)))
        elif k in TWO_QUBIT:
            gates.append(k(*rng.sample(range(n), 2)))
        else:
            gates.append(k(rng.randrange(n)))
    return Circuit(n, gates)


@st.composite
def circuits(draw, max_qubits=4, max_gates=20, toffoli=False, zphase=False):
    n = draw(st.integers(1, max_qubits))
    m = draw(st.integers(0, max_gates))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_circuit(random.Random(seed), n, m, toffoli=toffoli, zphase=zphase)


_PHASES = [Fraction(k, 4) for k in range(8)]
_CLIFFORD_BIASED = [Fraction(0), Fraction(1), Fraction(1, 2), Fraction(3, 2)] * 2 + _PHASES


def random_graph_like(rng, spiders=8, io=2, density=0.4, gadgets=0):
    """A random graph-like diagram with ``io`` inputs and outputs.

    Optional phase gadgets are attached to random supports; each gets a twin
    on the same support half of the time so gadget fusion has somewhere to fire.
    """
    d = ZxDiagram()
    vs = [d.add_vertex(VertexType.Z, rng.choice(_CLIFFORD_BIASED)) for _ in range(spiders)]
    for u, v in itertools.combinations(vs, 2):
        if rng.random() < density:
            d.add_edge(u, v, EdgeType.HADAMARD)
    ins, outs = [], []
    free = list(vs)
    rng.shuffle(free)
    for q in range(io):
        for lst in (ins, outs):
            b = d.add_vertex(VertexType.BOUNDARY, qubit=q)
            d.add_edge(b, free.pop() if free else rng.choice(vs), rng.choice(list(EdgeType)))
            lst.append(b)
    d.set_inputs(ins)
    d.set_outputs(outs)
    for _ in range(gadgets):
        support = rng.sample(vs, rng.randint(2, min(3, len(vs))))
        for _ in range(2 if rng.random() < 0.5 else 1):
            hub = d.add_vertex(VertexType.Z, rng.choice([0, 0, 1]))
            axis = d.add_vertex(VertexType.Z, rng.choice(_PHASES[1::2]))
            d.add_edge(hub, axis, EdgeType.HADAMARD)
            for s in support:
                d.add_edge(hub, s, EdgeType.HADAMARD)
    return d


def random_open_diagram(rng, spiders=8, io=2):
    """Random Z/X diagram with mixed edges, for the rules that need colour."""
    d = ZxDiagram()
    vs = [d.add_vertex(rng.choice([VertexType.Z, VertexType.X]),
                       rng.choice([0, 0, 0, 1] + _PHASES)) for _ in range(spiders)]
    for u, v in itertools.combinations(vs, 2):
        if rng.random() < 0.35:
            d.add_edge(u, v, rng.choice(list(EdgeType)))
    ins, outs = [], []
    for q in range(io):
        for lst in (ins, outs):
            b = d.add_vertex(VertexType.BOUNDARY, qubit=q)
            d.add_edge(b, rng.choice(vs), rng.choice(list(EdgeType)))
            lst.append(b)
    d.set_inputs(ins)
    d.set_outputs(outs)
    return d


_PAIR_CHECKS = {
    RewriteRule.Fusion: check_fusion,
    RewriteRule.Bialgebra: check_bialgebra,
    RewriteRule.PiCopy: check_pi_copy,
    RewriteRule.Pivot: check_pivot,
    RewriteRule.PivotBoundary: check_pivot_boundary,
    RewriteRule.PivotGadget: check_pivot_gadget,
}
_SINGLE_CHECKS = {
    RewriteRule.IdentityRemoval: check_identity,
    RewriteRule.LocalComplement: check_lcomp,
}


def valid_sites(d):
    """Every site of every rule that passes its checker, in a fixed order."""
    sites = []
    vs = sorted(d.vertices())
    for rule, chk in _SINGLE_CHECKS.items():
        for v in vs:
            try:
                chk(d, v)
            except RewriteError:
                continue
            sites.append(RewriteSite(rule, (v,)))
    for rule, chk in _PAIR_CHECKS.items():
        for u, v in itertools.permutations(vs, 2):
            try:
                chk(d, u, v)
            except RewriteError:
                continue
            sites.append(RewriteSite(rule, (u, v)))
    for u, v in itertools.combinations(vs, 2):
        for et in EdgeType:
            try:
                check_hopf(d, u, v, et)
            except RewriteError:
                continue
            sites.append(RewriteSite(RewriteRule.Hopf, (u, v), et))
    gs = find_gadgets(d)
    for g1, g2 in itertools.permutations(gs, 2):
        try:
            check_gadget_fusion(d, g1, g2)
        except RewriteError:
            continue
        sites.append(RewriteSite(RewriteRule.GadgetFusion, (g1.hub, g2.hub)))
    return sites


def hopf_before(d, site):
    """The diagram a Hopf site describes, with the extra parallel edge realised.

    Parallel edges cannot be stored, so the second edge goes through a phase-0
    spider of u's colour, which fuses back into u.
    """
    e = d.copy()
    u, v = site.vertices
    w = e.add_vertex(e.type(u))
    e.add_edge(u, w, EdgeType.PLAIN)
    e.add_edge(w, v, site.edge_type)
    return e


def random_diagram(rng):
    k = rng.randrange(4)
    if k == 0:
        return random_open_diagram(rng, rng.randint(3, 9), rng.randint(1, 2))
    if k == 1:
        return from_circuit(random_circuit(rng, rng.randint(1, 3), rng.randint(1, 6)))
    if k == 2:
        return to_graph_like(from_circuit(random_circuit(rng, rng.randint(1, 3), rng.randint(1, 8))))
    return random_graph_like(rng, rng.randint(3, 7), rng.randint(1, 2), gadgets=rng.randint(0, 2))


def soundness_run(applications, seed=0, max_spiders=14):
    """Apply random valid rule sites and compare tensors before and after.

    Rules are drawn least-used first so every rule gets exercised.  Returns
    (per-rule application counts, list of failing sites).
    """
    rng = random.Random(seed)
    used = Counter()
    failures = []
    while sum(used.values()) < applications:
        d = random_diagram(rng)
        if len(d.spiders()) > max_spiders:
            continue
        by_rule = defaultdict(list)
        for s in valid_sites(d):
            by_rule[s.rule].append(s)
        if not by_rule:
            continue
        rule = min(by_rule, key=lambda r: (used[r], r.value))
        site = rng.choice(by_rule[rule])
        used[rule] += 1
        before = hopf_before(d, site) if rule is RewriteRule.Hopf else d
        if not proportional(tensor(before), tensor(apply_rule(d, site))):
            failures.append(site)
    return used, failures
